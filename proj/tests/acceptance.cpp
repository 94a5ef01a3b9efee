// Acceptance gate: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. argv[1] is the path to the CLI binary.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "helpers.hpp"
#include "tilesim/io.hpp"
#include "tilesim/verification.hpp"

using namespace tilesim;
using testutil::corpus_path;
using testutil::draw;
using testutil::load_corpus;
using testutil::load_corpus_shape;

namespace {

// Pinned budgets and trial counts.
constexpr int kStabilityTrials = 500;
constexpr double kStabilityBudgetSeconds = 10.0;
constexpr double kEnumerationBudgetSeconds = 1.0;
constexpr int kMutationsPerSystem = 100;
constexpr int kReplayTrials = 1000;
constexpr int kEquivalenceTrials = 200;
constexpr double kSquare8BudgetSeconds = 30.0;

std::string g_cli;
int g_failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void report(int number, const std::string& title, bool pass,
            const std::string& detail) {
  std::printf("%s  %d. %s (%s)\n", pass ? "PASS" : "FAIL", number,
              title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = "\"" + g_cli + "\" " + args + " 2>acc-stderr.tmp";
  FILE* pipe = popen(cmd.c_str(), "r");
  RunResult r;
  if (!pipe) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int rc = pclose(pipe);
  r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

std::string cli_stderr() { return read_file("acc-stderr.tmp").value_or(""); }

// --- 1. stability oracle ----------------------------------------------------

void criterion_stability() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20260815);
  int mismatches = 0;
  for (int trial = 0; trial < kStabilityTrials; ++trial) {
    TileSet ts = testutil::random_tileset(rng, 3 + draw(rng, 3),
                                          2 + draw(rng, 3), 3);
    Assembly a = testutil::random_blob(rng, ts, 8);
    for (int tau = 1; tau <= 3; ++tau) {
      if (is_tau_stable(a, ts, tau) != testutil::stable_bruteforce(a, ts, tau)) {
        ++mismatches;
      }
    }
  }
  double dt = seconds_since(t0);
  std::ostringstream detail;
  detail << kStabilityTrials << " assemblies x 3 temperatures, " << mismatches
         << " mismatches, " << dt << " s";
  report(1, "is_tau_stable matches the brute-force bipartition oracle",
         mismatches == 0 && dt < kStabilityBudgetSeconds, detail.str());
}

// --- 2. enumeration exactness -----------------------------------------------

void criterion_enumeration() {
  auto t0 = std::chrono::steady_clock::now();
  TAS coop = load_corpus("sys-coop.json");
  TAS nondir = load_corpus("sys-nondir.json");
  Bounds b;
  b.max_tiles = 8;
  AssemblyGraph gc = enumerate_assemblies(coop, b);
  AssemblyGraph gn = enumerate_assemblies(nondir, b);
  double dt = seconds_since(t0);
  bool pass = gc.nodes.size() == 5 && gc.terminal_count() == 1 &&
              !gc.truncated_any() && gn.terminal_count() == 2 &&
              !gn.truncated_any() && dt < kEnumerationBudgetSeconds;
  std::ostringstream detail;
  detail << "SYS-COOP " << gc.nodes.size() << " producible / "
         << gc.terminal_count() << " terminal, SYS-NONDIR "
         << gn.terminal_count() << " terminals, " << dt << " s";
  report(2, "hand-enumerated corpus counts are reproduced exactly", pass,
         detail.str());
}

// --- 3. producibility oracle ------------------------------------------------

// One random single-tile mutation: replace a tile, add an adjacent tile, or
// drop a cell. Returns nullopt when the draw produced no change.
std::optional<Assembly> mutate(std::mt19937_64& rng, const Assembly& base,
                               const TileSet& ts) {
  std::vector<Cell> cells(base.cells().begin(), base.cells().end());
  switch (draw(rng, 3)) {
    case 0: {  // replace
      if (ts.size() < 2) return std::nullopt;
      std::size_t at = draw(rng, cells.size());
      TileIndex other = static_cast<TileIndex>(draw(rng, ts.size()));
      if (other == cells[at].tile) return std::nullopt;
      cells[at].tile = other;
      break;
    }
    case 1: {  // add next to a random cell
      const Cell& c = cells[draw(rng, cells.size())];
      Pos p;
      try {
        p = neighbor(c.pos, kAllDirs[draw(rng, 4)]);
      } catch (const PositionOverflowError&) {
        return std::nullopt;
      }
      if (base.occupied(p)) return std::nullopt;
      cells.push_back({p, static_cast<TileIndex>(draw(rng, ts.size()))});
      break;
    }
    default: {  // drop
      if (cells.size() < 2) return std::nullopt;
      cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(
                                      draw(rng, cells.size())));
      break;
    }
  }
  return Assembly::from_cells(std::move(cells));
}

void criterion_producibility() {
  struct Row {
    const char* name;
    std::size_t max_tiles;
  };
  const Row rows[] = {
      {"sys-l.json", 8},         {"sys-coop.json", 8},
      {"sys-nondir.json", 8},    {"sys-square-4.json", 16},
      {"sys-square-5.json", 25}, {"sys-square-6.json", 36},
      {"sys-square-7.json", 49}, {"sys-square-8.json", 64},
  };
  std::mt19937_64 rng(31337);
  int node_misses = 0;
  int mutation_mismatches = 0;
  int mutations_checked = 0;
  bool closed = true;
  for (const Row& row : rows) {
    TAS t = load_corpus(row.name);
    Bounds b;
    b.max_tiles = row.max_tiles;
    AssemblyGraph g = enumerate_assemblies(t, b);
    if (g.truncated_any() || g.budget_exceeded) {
      closed = false;
      continue;
    }
    for (const auto& n : g.nodes) {
      if (!is_producible(t, n.assembly)) ++node_misses;
    }
    int done = 0;
    while (done < kMutationsPerSystem) {
      const Assembly& base = g.nodes[draw(rng, g.nodes.size())].assembly;
      auto mutated = mutate(rng, base, t.tileset);
      if (!mutated) continue;
      ++done;
      ++mutations_checked;
      bool in_graph = g.find(*mutated).has_value();
      // Membership in the graph node set is the ground truth whenever the
      // mutant fits inside the closed exploration bound.
      if (mutated->size() <= row.max_tiles) {
        if (is_producible(t, *mutated) != in_graph) ++mutation_mismatches;
      } else if (is_producible(t, *mutated)) {
        ++mutation_mismatches;  // nothing grows past a closed graph
      }
    }
  }
  std::ostringstream detail;
  detail << "8 closed graphs, " << node_misses << " node misses, "
         << mutation_mismatches << " mutation mismatches over "
         << mutations_checked << " mutants";
  report(3, "is_producible agrees with enumerated node sets",
         closed && node_misses == 0 && mutation_mismatches == 0,
         detail.str());
}

// --- 4. sequence semantics --------------------------------------------------

void criterion_sequences() {
  const char* systems[] = {
      "sys-line.json",     "sys-l.json",        "sys-coop.json",
      "sys-nondir.json",   "sys-fsa-sep.json",  "sys-square-4.json",
      "sys-square-5.json", "sys-square-6.json", "sys-square-7.json",
      "sys-square-8.json"};
  std::vector<TAS> loaded;
  for (const char* name : systems) loaded.push_back(load_corpus(name));

  std::mt19937_64 rng(4242);
  int violations = 0;
  for (int trial = 0; trial < kReplayTrials; ++trial) {
    const TAS& t = loaded[static_cast<std::size_t>(trial) % loaded.size()];
    AssemblySequence s = random_sequence(t, rng(), 1 + draw(rng, 40));

    std::vector<Assembly> stages = {s.start};
    for (const Attachment& step : s.steps) {
      stages.push_back(attach(t, stages.back(), step));
    }
    const Assembly& result = stages.back();

    std::unordered_set<Pos, PosHash> dom_union;
    for (const Assembly& stage : stages) {
      if (!is_subassembly(stage, result)) ++violations;
      for (const Cell& c : stage.cells()) dom_union.insert(c.pos);
    }
    if (dom_union.size() != result.size()) ++violations;
    for (const Cell& c : result.cells()) {
      if (!dom_union.count(c.pos)) ++violations;
    }

    ReplayOptions verify;
    verify.verify_result_invariants = true;
    try {
      if (!(replay(t, s, verify) == result)) ++violations;
    } catch (const ReplayError&) {
      ++violations;
    }
  }
  std::ostringstream detail;
  detail << kReplayTrials << " replays, " << violations << " violations";
  report(4, "sequence results equal the union of their prefixes",
         violations == 0, detail.str());
}

// --- 5. finite-shape equivalence ---------------------------------------------

void criterion_equivalence() {
  std::mt19937_64 rng(90210);
  int agreed = 0;
  int disagreed = 0;
  int attempts = 0;
  while (agreed + disagreed < kEquivalenceTrials && attempts < 3000) {
    ++attempts;
    TAS t = testutil::random_tas(rng);
    Bounds probe;
    probe.max_tiles = 5;
    probe.max_states = 300;
    AssemblyGraph g = enumerate_assemblies(t, probe);
    const Assembly& pick = g.nodes[draw(rng, g.nodes.size())].assembly;
    std::vector<Pos> pts;
    for (const Cell& c : pick.cells()) pts.push_back(c.pos);
    if (!points_connected(pts)) continue;
    Shape x = Shape::finite(pts);

    Bounds b;
    b.max_states = 100000;
    Verdict sa = self_assembles(t, x, b);
    Verdict fsa = finitely_self_assembles(t, x, b);
    if (sa.status == Status::Unknown || fsa.status == Status::Unknown) {
      continue;  // exactness bound hit; not an equivalence sample
    }
    if (sa.status == fsa.status) {
      ++agreed;
    } else {
      ++disagreed;
    }
  }
  std::ostringstream detail;
  detail << agreed + disagreed << " finite-shape queries, " << disagreed
         << " disagreements";
  report(5,
         "self_assembles and finitely_self_assembles coincide on finite "
         "shapes",
         disagreed == 0 && agreed + disagreed >= kEquivalenceTrials,
         detail.str());
}

// --- 6. square shape verification via the CLI --------------------------------

void criterion_squares() {
  bool pass = true;
  std::ostringstream detail;
  double square8_seconds = 0;
  for (int n = 4; n <= 8; ++n) {
    const std::string sys = corpus_path("sys-square-" + std::to_string(n) +
                                        ".json");
    const std::string shp = corpus_path("square-" + std::to_string(n) +
                                        ".shape");
    auto t0 = std::chrono::steady_clock::now();
    RunResult holds = run_cli("verify-shape \"" + sys + "\" \"" + shp +
                              "\" --mode strict --witness-out acc-w.trace");
    if (n == 8) square8_seconds = seconds_since(t0);
    if (holds.code != 0 || holds.out != "Holds\n") {
      pass = false;
      detail << "N=" << n << " strict expected Holds; ";
    }

    // Perturb the target by one cell: punch a hole in the middle.
    std::vector<Pos> pts = load_corpus_shape("square-" + std::to_string(n) +
                                             ".shape");
    const Pos hole{n / 2, n / 2};
    std::vector<Pos> holed;
    for (const Pos& p : pts) {
      if (p != hole) holed.push_back(p);
    }
    const std::string holed_path = "acc-holed.shape.tmp";
    write_file(holed_path, serialize_shape(holed));
    RunResult fails =
        run_cli("verify-shape \"" + sys + "\" " + holed_path +
                " --mode strict --witness-out acc-w.trace");
    if (fails.code != 1 || fails.out != "Fails\n") {
      pass = false;
      detail << "N=" << n << " perturbed expected Fails; ";
    } else {
      TAS t = load_corpus("sys-square-" + std::to_string(n) + ".json");
      auto wtext = read_file("acc-w.trace");
      TraceParse parsed =
          wtext ? parse_trace(*wtext, t.tileset) : TraceParse{};
      if (!parsed.ok()) {
        pass = false;
        detail << "N=" << n << " witness unreadable; ";
      } else {
        try {
          Assembly a = replay(t, *parsed.sequence);
          bool offered = false;
          for (const Attachment& step : frontier(t, a)) {
            if (step.position == hole) offered = true;
          }
          if (!offered) {
            pass = false;
            detail << "N=" << n << " witness does not reach the hole; ";
          }
        } catch (const ReplayError&) {
          pass = false;
          detail << "N=" << n << " witness replay failed; ";
        }
      }
    }
    std::remove(holed_path.c_str());
    std::remove("acc-w.trace");
  }

  // The finite mode agrees at both ends of the size range.
  for (int n : {4, 8}) {
    const std::string sys = corpus_path("sys-square-" + std::to_string(n) +
                                        ".json");
    const std::string shp = corpus_path("square-" + std::to_string(n) +
                                        ".shape");
    RunResult holds = run_cli("verify-shape \"" + sys + "\" \"" + shp +
                              "\" --mode finite --witness-out acc-w.trace");
    if (holds.code != 0 || holds.out != "Holds\n") {
      pass = false;
      detail << "N=" << n << " finite expected Holds; ";
    }
  }
  if (square8_seconds >= kSquare8BudgetSeconds) pass = false;
  detail << "N=8 strict in " << square8_seconds << " s";
  report(6, "square systems verify and one-cell perturbations refute", pass,
         detail.str());
}

// --- 7. worker-count determinism ---------------------------------------------

void criterion_determinism() {
  struct Row {
    const char* name;
    const char* flags;
  };
  const Row rows[] = {
      {"sys-line.json", "--max-tiles 12"},
      {"sys-l.json", "--max-tiles 8"},
      {"sys-coop.json", "--max-tiles 8"},
      {"sys-nondir.json", "--max-tiles 8"},
      {"sys-fsa-sep.json", "--max-tiles 12 --max-states 3000"},
      {"sys-square-4.json", "--max-tiles 16"},
      {"sys-square-5.json", "--max-tiles 25"},
      {"sys-square-6.json", "--max-tiles 36 --max-states 2000"},
      {"sys-square-7.json", "--max-tiles 49 --max-states 2000"},
      {"sys-square-8.json", "--max-tiles 64 --max-states 2000"},
  };
  bool pass = true;
  std::ostringstream detail;
  for (const Row& row : rows) {
    const std::string sys = corpus_path(row.name);
    std::vector<std::string> enum_out, enum_dump, dir_out, dir_w1, dir_w2;
    for (int jobs : {1, 2, 8}) {
      RunResult e = run_cli("enumerate \"" + sys + "\" " + row.flags +
                            " --jobs " + std::to_string(jobs) +
                            " --out acc-graph.tmp");
      enum_out.push_back(e.out);
      enum_dump.push_back(read_file("acc-graph.tmp").value_or("<none>"));
      std::remove("acc-graph.tmp");

      RunResult d = run_cli("check-directed \"" + sys + "\" " + row.flags +
                            " --jobs " + std::to_string(jobs) +
                            " --witness-out acc-dw");
      dir_out.push_back(d.out);
      dir_w1.push_back(read_file("acc-dw-1.trace").value_or("<none>"));
      dir_w2.push_back(read_file("acc-dw-2.trace").value_or("<none>"));
      std::remove("acc-dw-1.trace");
      std::remove("acc-dw-2.trace");
    }
    for (int i : {1, 2}) {
      if (enum_out[i] != enum_out[0] || enum_dump[i] != enum_dump[0] ||
          dir_out[i] != dir_out[0] || dir_w1[i] != dir_w1[0] ||
          dir_w2[i] != dir_w2[0]) {
        pass = false;
        detail << row.name << " differs at jobs " << (i == 1 ? 2 : 8) << "; ";
      }
    }
  }
  detail << "10 systems x jobs {1,2,8}";
  report(7, "enumerate and check-directed output is worker-count invariant",
         pass, detail.str());
}

// --- 8. CLI contract ----------------------------------------------------------

void criterion_cli_contract() {
  bool pass = true;
  std::ostringstream detail;
  auto expect = [&](const std::string& args, int want) {
    int got = run_cli(args).code;
    if (got != want) {
      pass = false;
      detail << "`" << args << "` exited " << got << ", want " << want
             << "; ";
    }
  };
  expect("validate \"" + corpus_path("sys-coop.json") + "\"", 0);
  expect("check-directed \"" + corpus_path("sys-coop.json") +
             "\" --max-tiles 8",
         0);
  expect("check-directed \"" + corpus_path("sys-nondir.json") +
             "\" --max-tiles 8 --witness-out acc-cc",
         1);
  std::remove("acc-cc-1.trace");
  std::remove("acc-cc-2.trace");
  expect("check-directed \"" + corpus_path("sys-line.json") +
             "\" --max-tiles 10",
         2);
  expect("enumerate \"" + corpus_path("sys-coop.json") + "\"", 64);
  expect("bogus-subcommand", 64);
  expect("validate no-such-file.json", 66);
  write_file("acc-junk.tmp", "][");
  expect("render \"" + corpus_path("sys-l.json") +
             "\" --assembly acc-junk.tmp",
         65);
  std::remove("acc-junk.tmp");

  // Fixed-seed simulations replay to byte-identical renders.
  const std::string sim = "simulate \"" + corpus_path("sys-square-5.json") +
                          "\" --rng-seed 7 --max-steps 100";
  RunResult first = run_cli(sim + " --trace acc-sim.trace");
  RunResult second = run_cli(sim);
  if (first.code != 0 || first.out != second.out) {
    pass = false;
    detail << "fixed-seed simulate runs diverged; ";
  }
  TAS t = load_corpus("sys-square-5.json");
  auto text = read_file("acc-sim.trace");
  TraceParse parsed = text ? parse_trace(*text, t.tileset) : TraceParse{};
  if (!parsed.ok()) {
    pass = false;
    detail << "simulate trace unreadable; ";
  } else if (render_ascii(replay(t, *parsed.sequence), t.tileset) !=
             first.out) {
    pass = false;
    detail << "trace replay render differs from CLI stdout; ";
  }
  std::remove("acc-sim.trace");
  detail << "exit codes 0/1/2/64/65/66 + trace replay";
  report(8, "CLI exit codes and trace replays hold end-to-end", pass,
         detail.str());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <tilesim-cli>\n", argv[0]);
    return 2;
  }
  g_cli = argv[1];

  criterion_stability();
  criterion_enumeration();
  criterion_producibility();
  criterion_sequences();
  criterion_equivalence();
  criterion_squares();
  criterion_determinism();
  criterion_cli_contract();

  std::remove("acc-stderr.tmp");
  if (g_failures == 0) {
    std::printf("all 8 acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria failed\n", g_failures);
  return 1;
}
