// tilesim: simulate, enumerate and verify abstract tile assembly systems.

#include <unistd.h>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tilesim/core.hpp"
#include "tilesim/dynamics.hpp"
#include "tilesim/io.hpp"
#include "tilesim/verification.hpp"

namespace {

using namespace tilesim;

// sysexits-style process codes. Verdicts map Holds/Fails/Unknown to 0/1/2.
constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitNoInput = 66;
constexpr int kExitSoftware = 70;

int status_exit(Status s) {
  switch (s) {
    case Status::Holds: return kExitHolds;
    case Status::Fails: return kExitFails;
    case Status::Unknown: return kExitUnknown;
  }
  return kExitSoftware;
}

void print_diagnostics(const std::vector<Diagnostic>& diags) {
  for (const Diagnostic& d : diags) {
    std::cerr << diag_code_name(d.code) << ": " << d.message << "\n";
  }
}

// Loads and fully validates a tileset document; on failure prints
// diagnostics and stores the exit code.
std::optional<TilesetDoc> load_tileset(const std::string& path, int& code) {
  auto text = read_file(path);
  if (!text) {
    std::cerr << "cannot read " << path << "\n";
    code = kExitNoInput;
    return std::nullopt;
  }
  TilesetParse parse = parse_tileset(*text);
  if (!parse.ok()) {
    print_diagnostics(parse.diagnostics);
    std::cerr << path << ": invalid tileset document\n";
    code = kExitData;
    return std::nullopt;
  }
  return parse.doc;
}

std::optional<std::vector<Pos>> load_shape(const std::string& path,
                                           int& code) {
  auto text = read_file(path);
  if (!text) {
    std::cerr << "cannot read " << path << "\n";
    code = kExitNoInput;
    return std::nullopt;
  }
  ShapeParse parse = parse_shape(*text);
  if (!parse.ok()) {
    print_diagnostics(parse.diagnostics);
    std::cerr << path << ": invalid shape document\n";
    code = kExitData;
    return std::nullopt;
  }
  return parse.points;
}

std::optional<Assembly> load_assembly(const std::string& path,
                                      const TileSet& ts, int& code) {
  auto text = read_file(path);
  if (!text) {
    std::cerr << "cannot read " << path << "\n";
    code = kExitNoInput;
    return std::nullopt;
  }
  AssemblyParse parse = parse_assembly(*text, ts);
  if (!parse.ok()) {
    print_diagnostics(parse.diagnostics);
    std::cerr << path << ": invalid assembly document\n";
    code = kExitData;
    return std::nullopt;
  }
  return parse.assembly;
}

bool color_stdout() {
  return isatty(1) != 0 && std::getenv("NO_COLOR") == nullptr;
}

bool write_or_complain(const std::string& path, const std::string& bytes) {
  if (write_file(path, bytes)) return true;
  std::cerr << "cannot write " << path << "\n";
  return false;
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

struct ValidateOpts {
  std::string tileset;
};

int run_validate(const ValidateOpts& o) {
  auto text = read_file(o.tileset);
  if (!text) {
    std::cerr << "cannot read " << o.tileset << "\n";
    return kExitNoInput;
  }
  TilesetParse parse = parse_tileset(*text);
  print_diagnostics(parse.diagnostics);
  return parse.diagnostics.empty() ? 0 : 1;
}

struct SimulateOpts {
  std::string tileset;
  std::uint64_t rng_seed = 0;
  std::size_t max_steps = 0;
  std::string render_format = "ascii";
  std::string trace_out;
};

int run_simulate(const SimulateOpts& o) {
  int code = 0;
  auto doc = load_tileset(o.tileset, code);
  if (!doc) return code;
  AssemblySequence seq = random_sequence(doc->tas, o.rng_seed, o.max_steps);
  Assembly final_assembly = replay(doc->tas, seq);
  if (o.render_format == "svg") {
    std::cout << render_svg(final_assembly, doc->tas.tileset);
  } else {
    std::cout << render_ascii(final_assembly, doc->tas.tileset,
                              color_stdout());
  }
  if (!o.trace_out.empty() &&
      !write_or_complain(o.trace_out,
                         serialize_trace(seq, doc->tas.tileset))) {
    return kExitSoftware;
  }
  std::cerr << seq.steps.size() << " steps, " << final_assembly.size()
            << " tiles\n";
  return 0;
}

struct EnumerateOpts {
  std::string tileset;
  std::size_t max_tiles = 0;
  std::optional<std::size_t> max_states;
  std::string graph_out;
  int jobs = 1;
};

int run_enumerate(const EnumerateOpts& o) {
  int code = 0;
  auto doc = load_tileset(o.tileset, code);
  if (!doc) return code;
  Bounds b;
  b.max_tiles = o.max_tiles;
  b.max_states = o.max_states;
  AssemblyGraph g = enumerate_assemblies(doc->tas, b, o.jobs);
  std::cout << "nodes: " << g.nodes.size() << "\n"
            << "edges: " << g.edges.size() << "\n"
            << "terminals: " << g.terminal_count() << "\n"
            << "truncated: " << (g.truncated_any() ? "yes" : "no") << "\n"
            << "budget_exceeded: " << (g.budget_exceeded ? "yes" : "no")
            << "\n";
  if (!o.graph_out.empty() &&
      !write_or_complain(o.graph_out, serialize_graph(g, doc->tas.tileset))) {
    return kExitSoftware;
  }
  return 0;
}

struct FrontierOpts {
  std::string tileset;
  std::string assembly;
};

int run_frontier(const FrontierOpts& o) {
  int code = 0;
  auto doc = load_tileset(o.tileset, code);
  if (!doc) return code;
  Assembly a = doc->tas.seed;
  if (!o.assembly.empty()) {
    auto loaded = load_assembly(o.assembly, doc->tas.tileset, code);
    if (!loaded) return code;
    a = std::move(*loaded);
  }
  for (const Attachment& step : frontier(doc->tas, a)) {
    std::cout << step.position.x << " " << step.position.y << " "
              << doc->tas.tileset.tile(step.tile).name << " "
              << step.bound_strength << "\n";
  }
  return 0;
}

struct CheckDirectedOpts {
  std::string tileset;
  std::size_t max_tiles = 0;
  std::optional<std::size_t> max_states;
  std::string witness_prefix = "witness";
  int jobs = 1;
};

int run_check_directed(const CheckDirectedOpts& o) {
  int code = 0;
  auto doc = load_tileset(o.tileset, code);
  if (!doc) return code;
  Bounds b;
  b.max_tiles = o.max_tiles;
  b.max_states = o.max_states;
  Verdict v = is_directed(doc->tas, b, o.jobs);
  std::cout << status_name(v.status) << "\n";
  if (!v.note.empty()) std::cerr << v.note << "\n";
  for (std::size_t i = 0; i < v.witnesses.size(); ++i) {
    const std::string path =
        o.witness_prefix + "-" + std::to_string(i + 1) + ".trace";
    if (!write_or_complain(
            path, serialize_trace(v.witnesses[i].trace, doc->tas.tileset))) {
      return kExitSoftware;
    }
    std::cerr << "witness written to " << path << "\n";
  }
  return status_exit(v.status);
}

struct VerifyShapeOpts {
  std::string tileset;
  std::string shape;
  std::string mode;
  std::string window;
  std::size_t max_states = 1000000;
  std::string witness_out = "witness.trace";
};

// --window WxH is the exactness window of an infinite shape: columns
// 0..W-1, rows 0..H-1. The shape file lists the members inside it.
std::optional<std::vector<Pos>> parse_window(const std::string& spec) {
  auto sep = spec.find('x');
  if (sep == std::string::npos) return std::nullopt;
  long w = 0, h = 0;
  try {
    std::size_t used = 0;
    w = std::stol(spec.substr(0, sep), &used);
    if (used != sep) return std::nullopt;
    std::string rest = spec.substr(sep + 1);
    h = std::stol(rest, &used);
    if (used != rest.size()) return std::nullopt;
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (w < 1 || h < 1) return std::nullopt;
  std::vector<Pos> window;
  window.reserve(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  for (long x = 0; x < w; ++x) {
    for (long y = 0; y < h; ++y) window.push_back({x, y});
  }
  return window;
}

int run_verify_shape(const VerifyShapeOpts& o) {
  int code = 0;
  auto doc = load_tileset(o.tileset, code);
  if (!doc) return code;
  auto points = load_shape(o.shape, code);
  if (!points) return code;

  Shape x = Shape::finite({{0, 0}});
  if (!o.window.empty()) {
    auto window = parse_window(o.window);
    if (!window) {
      std::cerr << "--window must look like 8x2 with positive sizes\n";
      return kExitUsage;
    }
    std::unordered_set<Pos, PosHash> members(points->begin(), points->end());
    std::unordered_set<Pos, PosHash> inside(window->begin(), window->end());
    for (const Pos& p : *points) {
      if (!inside.count(p)) {
        std::cerr << "shape point " << to_string(p)
                  << " lies outside the window\n";
        return kExitData;
      }
    }
    x = Shape::windowed(
        [members](const Pos& p) { return members.count(p) != 0; },
        std::move(*window));
  } else {
    try {
      x = Shape::finite(std::move(*points));
    } catch (const ShapeError& e) {
      std::cerr << o.shape << ": " << e.what() << "\n";
      return kExitData;
    }
  }

  Bounds b;
  b.max_states = o.max_states;
  Verdict v;
  try {
    v = o.mode == "strict" ? self_assembles(doc->tas, x, b)
                           : finitely_self_assembles(doc->tas, x, b);
  } catch (const ShapeError& e) {
    std::cerr << e.what() << "\n";
    return kExitData;
  }
  std::cout << status_name(v.status) << "\n";
  if (!v.note.empty()) std::cerr << v.note << "\n";
  if (!v.witnesses.empty()) {
    const Witness& w = v.witnesses.front();
    if (!write_or_complain(
            o.witness_out, serialize_trace(w.trace, doc->tas.tileset))) {
      return kExitSoftware;
    }
    std::cerr << "witness written to " << o.witness_out;
    if (w.violating_position) {
      std::cerr << " (violating position " << to_string(*w.violating_position)
                << ")";
    }
    std::cerr << "\n";
  }
  return status_exit(v.status);
}

struct RenderOpts {
  std::string tileset;
  std::string assembly;
  std::string format = "ascii";
};

int run_render(const RenderOpts& o) {
  int code = 0;
  auto doc = load_tileset(o.tileset, code);
  if (!doc) return code;
  Assembly a = doc->tas.seed;
  if (!o.assembly.empty()) {
    auto loaded = load_assembly(o.assembly, doc->tas.tileset, code);
    if (!loaded) return code;
    a = std::move(*loaded);
  }
  if (o.format == "svg") {
    std::cout << render_svg(a, doc->tas.tileset);
  } else {
    std::cout << render_ascii(a, doc->tas.tileset, color_stdout());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"abstract tile assembly model simulator and verifier"};
  app.require_subcommand(1);

  ValidateOpts validate_opts;
  CLI::App* cmd_validate =
      app.add_subcommand("validate", "check a tileset document");
  cmd_validate->add_option("tileset", validate_opts.tileset, "tileset file")
      ->required();

  SimulateOpts simulate_opts;
  CLI::App* cmd_simulate =
      app.add_subcommand("simulate", "grow one random assembly sequence");
  cmd_simulate->add_option("tileset", simulate_opts.tileset, "tileset file")
      ->required();
  cmd_simulate->add_option("--rng-seed", simulate_opts.rng_seed, "PRNG seed")
      ->required();
  cmd_simulate
      ->add_option("--max-steps", simulate_opts.max_steps,
                   "stop after this many attachments")
      ->required();
  cmd_simulate
      ->add_option("--render", simulate_opts.render_format,
                   "final render format")
      ->check(CLI::IsMember({"ascii", "svg"}));
  cmd_simulate->add_option("--trace", simulate_opts.trace_out,
                           "write the replayable step trace here");

  EnumerateOpts enumerate_opts;
  CLI::App* cmd_enumerate =
      app.add_subcommand("enumerate", "enumerate producible assemblies");
  cmd_enumerate->add_option("tileset", enumerate_opts.tileset, "tileset file")
      ->required();
  cmd_enumerate
      ->add_option("--max-tiles", enumerate_opts.max_tiles,
                   "explore assemblies up to this many tiles")
      ->required();
  cmd_enumerate->add_option("--max-states", enumerate_opts.max_states,
                            "state budget");
  cmd_enumerate->add_option("--out", enumerate_opts.graph_out,
                            "write the machine-readable graph here");
  cmd_enumerate->add_option("--jobs", enumerate_opts.jobs, "worker threads")
      ->check(CLI::PositiveNumber);

  FrontierOpts frontier_opts;
  CLI::App* cmd_frontier =
      app.add_subcommand("frontier", "list attachable (position, tile) pairs");
  cmd_frontier->add_option("tileset", frontier_opts.tileset, "tileset file")
      ->required();
  cmd_frontier->add_option("--assembly", frontier_opts.assembly,
                           "assembly snapshot (default: the seed)");

  CheckDirectedOpts directed_opts;
  CLI::App* cmd_directed = app.add_subcommand(
      "check-directed", "does the system have a unique terminal assembly?");
  cmd_directed->add_option("tileset", directed_opts.tileset, "tileset file")
      ->required();
  cmd_directed
      ->add_option("--max-tiles", directed_opts.max_tiles,
                   "explore assemblies up to this many tiles")
      ->required();
  cmd_directed->add_option("--max-states", directed_opts.max_states,
                           "state budget");
  cmd_directed->add_option("--witness-out", directed_opts.witness_prefix,
                           "prefix for witness trace files");
  cmd_directed->add_option("--jobs", directed_opts.jobs, "worker threads")
      ->check(CLI::PositiveNumber);

  VerifyShapeOpts shape_opts;
  CLI::App* cmd_shape = app.add_subcommand(
      "verify-shape", "check strict or finite self-assembly of a shape");
  cmd_shape->add_option("tileset", shape_opts.tileset, "tileset file")
      ->required();
  cmd_shape->add_option("shape", shape_opts.shape, "shape file")->required();
  cmd_shape->add_option("--mode", shape_opts.mode, "strict or finite")
      ->required()
      ->check(CLI::IsMember({"strict", "finite"}));
  cmd_shape->add_option(
      "--window", shape_opts.window,
      "treat the shape as infinite with this exactness window (WxH)");
  cmd_shape->add_option("--max-states", shape_opts.max_states, "state budget");
  cmd_shape->add_option("--witness-out", shape_opts.witness_out,
                        "witness trace file");

  RenderOpts render_opts;
  CLI::App* cmd_render = app.add_subcommand("render", "draw an assembly");
  cmd_render->add_option("tileset", render_opts.tileset, "tileset file")
      ->required();
  cmd_render
      ->add_option("--assembly", render_opts.assembly,
                   "assembly snapshot (default: the seed)")
      ->required();
  cmd_render->add_option("--format", render_opts.format, "ascii or svg")
      ->check(CLI::IsMember({"ascii", "svg"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(cmd_validate)) return run_validate(validate_opts);
    if (app.got_subcommand(cmd_simulate)) return run_simulate(simulate_opts);
    if (app.got_subcommand(cmd_enumerate)) {
      return run_enumerate(enumerate_opts);
    }
    if (app.got_subcommand(cmd_frontier)) return run_frontier(frontier_opts);
    if (app.got_subcommand(cmd_directed)) {
      return run_check_directed(directed_opts);
    }
    if (app.got_subcommand(cmd_shape)) return run_verify_shape(shape_opts);
    if (app.got_subcommand(cmd_render)) return run_render(render_opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSoftware;
  }
  return kExitUsage;
}
