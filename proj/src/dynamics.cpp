#include "tilesim/dynamics.hpp"

#include <algorithm>
#include <future>
#include <random>
#include <thread>

namespace tilesim {

namespace {

// Distinct empty positions adjacent to the assembly, sorted by (x, y).
std::vector<Pos> boundary_positions(const Assembly& a) {
  std::vector<Pos> out;
  out.reserve(a.size() * 2);
  for (const Cell& c : a.cells()) {
    for (Dir d : kAllDirs) {
      Pos q;
      try {
        q = neighbor(c.pos, d);
      } catch (const PositionOverflowError&) {
        continue;  // the lattice edge is simply not a candidate
      }
      if (!a.occupied(q)) out.push_back(q);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::int64_t bond_strength(const TAS& t, const Assembly& a, const Pos& p,
                           TileIndex tile) {
  const TileType& tt = t.tileset.tile(tile);
  std::int64_t total = 0;
  for (Dir d : kAllDirs) {
    Pos q;
    try {
      q = neighbor(p, d);
    } catch (const PositionOverflowError&) {
      continue;
    }
    auto other = a.tile_at(q);
    if (!other) continue;
    total += glue_interaction(tt.glue(d),
                              t.tileset.tile(*other).glue(opposite(d)));
  }
  return total;
}

// Unbiased draw from [0, n) via rejection; the generator sequence is fully
// specified by the standard, so results are portable.
std::size_t bounded_draw(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      (std::numeric_limits<std::uint64_t>::max() % n + 1) % n;
  std::uint64_t v = rng();
  while (v > limit) v = rng();
  return static_cast<std::size_t>(v % n);
}

}  // namespace

std::optional<Attachment> attachable(const TAS& t, const Assembly& a,
                                     const Pos& p, TileIndex tile) {
  if (tile >= t.tileset.size()) {
    throw std::out_of_range("tile index " + std::to_string(tile) +
                            " outside the tile set");
  }
  if (a.occupied(p)) return std::nullopt;
  bool adjacent = false;
  for (Dir d : kAllDirs) {
    try {
      if (a.occupied(neighbor(p, d))) {
        adjacent = true;
        break;
      }
    } catch (const PositionOverflowError&) {
    }
  }
  if (!adjacent) return std::nullopt;
  std::int64_t s = bond_strength(t, a, p, tile);
  if (s < t.temperature) return std::nullopt;
  return Attachment{p, tile, s};
}

std::vector<Attachment> frontier(const TAS& t, const Assembly& a) {
  std::vector<Attachment> out;
  if (a.empty()) return out;
  for (const Pos& p : boundary_positions(a)) {
    for (TileIndex tile = 0; tile < t.tileset.size(); ++tile) {
      std::int64_t s = bond_strength(t, a, p, tile);
      if (s >= t.temperature) out.push_back({p, tile, s});
    }
  }
  // boundary_positions is already (x, y)-sorted; order tiles by name within
  // a position so the frontier is reproducible across tileset orderings.
  std::stable_sort(out.begin(), out.end(),
                   [&t](const Attachment& l, const Attachment& r) {
                     if (l.position != r.position) return l.position < r.position;
                     return t.tileset.tile(l.tile).name <
                            t.tileset.tile(r.tile).name;
                   });
  return out;
}

Assembly attach(const TAS& t, const Assembly& a, const Attachment& step) {
  auto legal = attachable(t, a, step.position, step.tile);
  if (!legal) {
    std::int64_t s = a.occupied(step.position)
                         ? 0
                         : bond_strength(t, a, step.position, step.tile);
    throw NotAttachableError(step.position, t.tileset.tile(step.tile).name, s,
                             t.temperature);
  }
  return a.with_cell(step.position, step.tile);
}

Assembly replay(const TAS& t, const AssemblySequence& s,
                const ReplayOptions& opts) {
  Assembly current = s.start;
  std::vector<Assembly> stages;
  if (opts.verify_result_invariants) stages.push_back(current);

  for (std::size_t i = 0; i < s.steps.size(); ++i) {
    const Attachment& step = s.steps[i];
    std::optional<Attachment> legal;
    try {
      legal = attachable(t, current, step.position, step.tile);
    } catch (const std::out_of_range& e) {
      throw ReplayError(i, e.what());
    }
    if (!legal) {
      throw ReplayError(i, "tile \"" + t.tileset.tile(step.tile).name +
                               "\" is not attachable at " +
                               to_string(step.position));
    }
    if (step.bound_strength != 0 &&
        step.bound_strength != legal->bound_strength) {
      throw ReplayError(i, "stored bound strength " +
                               std::to_string(step.bound_strength) +
                               " disagrees with recomputed " +
                               std::to_string(legal->bound_strength));
    }
    current = current.with_cell(step.position, step.tile);
    if (opts.verify_result_invariants) stages.push_back(current);
  }

  if (opts.verify_result_invariants) {
    std::size_t union_size = 0;
    for (const Assembly& stage : stages) {
      if (!is_subassembly(stage, current)) {
        throw std::logic_error("replay: a stage is not a subassembly of the result");
      }
      union_size = std::max(union_size, stage.size());
    }
    if (union_size != current.size()) {
      throw std::logic_error("replay: result domain differs from the union of stages");
    }
  }
  return current;
}

AssemblySequence random_sequence(const TAS& t, std::uint64_t rng_seed,
                                 std::size_t max_steps) {
  std::mt19937_64 rng(rng_seed);
  AssemblySequence seq;
  seq.start = t.seed;
  Assembly current = t.seed;
  for (std::size_t i = 0; i < max_steps; ++i) {
    std::vector<Attachment> f = frontier(t, current);
    if (f.empty()) break;
    const Attachment& pick = f[bounded_draw(rng, f.size())];
    current = current.with_cell(pick.position, pick.tile);
    seq.steps.push_back(pick);
  }
  return seq;
}

std::optional<std::int64_t> AssemblyGraph::find(const Assembly& a) const {
  auto it = index.find(a);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

bool AssemblyGraph::truncated_any() const {
  if (budget_exceeded) return true;
  return std::any_of(nodes.begin(), nodes.end(),
                     [](const Node& n) { return n.truncated; });
}

std::size_t AssemblyGraph::terminal_count() const {
  return static_cast<std::size_t>(std::count_if(
      nodes.begin(), nodes.end(), [](const Node& n) { return n.terminal; }));
}

AssemblySequence AssemblyGraph::trace_to(std::int64_t node) const {
  std::vector<Attachment> steps;
  std::int64_t cur = node;
  while (cur >= 0 && nodes[static_cast<std::size_t>(cur)].parent >= 0) {
    const Node& n = nodes[static_cast<std::size_t>(cur)];
    steps.push_back(n.parent_attachment);
    cur = n.parent;
  }
  std::reverse(steps.begin(), steps.end());
  AssemblySequence seq;
  seq.start = nodes.empty() ? Assembly{} : nodes[0].assembly;
  seq.steps = std::move(steps);
  return seq;
}

namespace {

struct Expansion {
  std::vector<Attachment> kept;  // attachments permitted by the bounds
  bool terminal = false;
  bool truncated = false;
};

Expansion expand_node(const TAS& t, const Assembly& a, const Bounds& b) {
  Expansion out;
  std::vector<Attachment> f = frontier(t, a);
  out.terminal = f.empty();
  for (const Attachment& step : f) {
    bool allowed = true;
    if (b.max_tiles && a.size() + 1 > *b.max_tiles) allowed = false;
    if (allowed && b.region && !b.region->count(step.position)) allowed = false;
    if (allowed) {
      out.kept.push_back(step);
    } else {
      out.truncated = true;
    }
  }
  return out;
}

}  // namespace

AssemblyGraph enumerate_assemblies(const TAS& t, const Bounds& b, int jobs) {
  if (!b.any()) {
    throw std::invalid_argument(
        "enumeration requires at least one bound (max_tiles, region, or "
        "max_states)");
  }
  if (jobs < 1) jobs = 1;

  AssemblyGraph g;
  g.nodes.push_back({t.seed});
  g.index.emplace(t.seed, 0);

  std::vector<std::int64_t> layer = {0};
  while (!layer.empty() && !g.budget_exceeded) {
    // Expand the whole layer (in parallel when asked to), then merge the
    // results sequentially in node order, so the graph is identical for any
    // worker count.
    std::vector<Expansion> expansions(layer.size());
    if (jobs == 1 || layer.size() < 2) {
      for (std::size_t i = 0; i < layer.size(); ++i) {
        expansions[i] =
            expand_node(t, g.nodes[static_cast<std::size_t>(layer[i])].assembly, b);
      }
    } else {
      const std::size_t chunk =
          (layer.size() + static_cast<std::size_t>(jobs) - 1) /
          static_cast<std::size_t>(jobs);
      std::vector<std::future<void>> futures;
      for (std::size_t begin = 0; begin < layer.size(); begin += chunk) {
        const std::size_t end = std::min(begin + chunk, layer.size());
        futures.push_back(std::async(std::launch::async, [&, begin, end] {
          for (std::size_t i = begin; i < end; ++i) {
            expansions[i] = expand_node(
                t, g.nodes[static_cast<std::size_t>(layer[i])].assembly, b);
          }
        }));
      }
      for (auto& f : futures) f.get();
    }

    std::vector<std::int64_t> next_layer;
    for (std::size_t i = 0; i < layer.size(); ++i) {
      const std::int64_t id = layer[i];
      {
        AssemblyGraph::Node& node = g.nodes[static_cast<std::size_t>(id)];
        node.terminal = expansions[i].terminal;
        node.truncated = expansions[i].truncated;
      }
      for (const Attachment& step : expansions[i].kept) {
        if (g.budget_exceeded) {
          // The rest of this node's expansion is cut off.
          g.nodes[static_cast<std::size_t>(id)].truncated = true;
          continue;
        }
        Assembly target =
            g.nodes[static_cast<std::size_t>(id)].assembly.with_cell(
                step.position, step.tile);
        auto it = g.index.find(target);
        std::int64_t target_id;
        if (it != g.index.end()) {
          target_id = it->second;
        } else if (b.max_states && g.nodes.size() >= *b.max_states) {
          g.budget_exceeded = true;
          g.nodes[static_cast<std::size_t>(id)].truncated = true;
          continue;
        } else {
          target_id = static_cast<std::int64_t>(g.nodes.size());
          AssemblyGraph::Node node;
          node.assembly = std::move(target);
          node.parent = id;
          node.parent_attachment = step;
          g.index.emplace(node.assembly, target_id);
          g.nodes.push_back(std::move(node));
          next_layer.push_back(target_id);
        }
        g.edges.push_back({id, target_id, step});
      }
    }
    layer = std::move(next_layer);
  }
  return g;
}

bool is_producible(const TAS& t, const Assembly& target) {
  if (!is_subassembly(t.seed, target)) return false;
  Assembly current = t.seed;
  // Greedy closure: keep a worklist of still-missing target positions and
  // re-scan until no candidate attaches. Monotonicity of bond strength makes
  // the scan order irrelevant.
  std::vector<Cell> missing;
  for (const Cell& c : target.cells()) {
    if (!current.occupied(c.pos)) missing.push_back(c);
  }
  bool progress = true;
  while (progress && !missing.empty()) {
    progress = false;
    std::vector<Cell> still_missing;
    for (const Cell& c : missing) {
      if (attachable(t, current, c.pos, c.tile)) {
        current = current.with_cell(c.pos, c.tile);
        progress = true;
      } else {
        still_missing.push_back(c);
      }
    }
    missing = std::move(still_missing);
  }
  return missing.empty() && current == target;
}

}  // namespace tilesim
