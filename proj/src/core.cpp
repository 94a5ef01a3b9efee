#include "tilesim/core.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace tilesim {

int glue_interaction(const Glue& a, const Glue& b) {
  if (a.is_null() || b.is_null()) return 0;
  if (a.label != b.label) return 0;
  if (a.strength != b.strength) return 0;  // ill-formed pairing never binds
  return a.strength;
}

TileSet::TileSet(std::vector<TileType> tiles) : tiles_(std::move(tiles)) {
  for (std::size_t i = 0; i < tiles_.size(); ++i) {
    index_.emplace(tiles_[i].name, i);  // first occurrence wins on duplicates
  }
}

std::optional<std::size_t> TileSet::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Assembly Assembly::from_cells(std::vector<Cell> cells) {
  std::sort(cells.begin(), cells.end(),
            [](const Cell& a, const Cell& b) { return a.pos < b.pos; });
  for (std::size_t i = 1; i < cells.size(); ++i) {
    if (cells[i].pos == cells[i - 1].pos) {
      throw std::invalid_argument("duplicate cell at " +
                                  to_string(cells[i].pos));
    }
  }
  Assembly a;
  a.cells_ = std::move(cells);
  return a;
}

std::optional<TileIndex> Assembly::tile_at(const Pos& p) const {
  auto it = std::lower_bound(
      cells_.begin(), cells_.end(), p,
      [](const Cell& c, const Pos& q) { return c.pos < q; });
  if (it == cells_.end() || it->pos != p) return std::nullopt;
  return it->tile;
}

Assembly Assembly::with_cell(const Pos& p, TileIndex tile) const {
  auto it = std::lower_bound(
      cells_.begin(), cells_.end(), p,
      [](const Cell& c, const Pos& q) { return c.pos < q; });
  if (it != cells_.end() && it->pos == p) {
    throw std::invalid_argument("cell already occupied at " + to_string(p));
  }
  Assembly out;
  out.cells_.reserve(cells_.size() + 1);
  out.cells_.assign(cells_.begin(), it);
  out.cells_.push_back({p, tile});
  out.cells_.insert(out.cells_.end(), it, cells_.end());
  return out;
}

std::size_t AssemblyHash::operator()(const Assembly& a) const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  for (const Cell& c : a.cells()) {
    mix(static_cast<std::uint64_t>(c.pos.x));
    mix(static_cast<std::uint64_t>(c.pos.y));
    mix(c.tile);
  }
  return static_cast<std::size_t>(h);
}

bool is_subassembly(const Assembly& a, const Assembly& b) {
  if (a.size() > b.size()) return false;
  for (const Cell& c : a.cells()) {
    auto t = b.tile_at(c.pos);
    if (!t || *t != c.tile) return false;
  }
  return true;
}

BindingGraph binding_graph(const Assembly& a, const TileSet& ts) {
  BindingGraph g;
  g.nodes.reserve(a.size());
  std::unordered_map<Pos, std::size_t, PosHash> index;
  for (const Cell& c : a.cells()) {
    if (c.tile >= ts.size()) {
      throw std::out_of_range("assembly references tile index " +
                              std::to_string(c.tile) + " outside the tile set");
    }
    index.emplace(c.pos, g.nodes.size());
    g.nodes.push_back(c.pos);
  }
  // One pass over north/east sides covers every unordered adjacent pair once.
  for (const Cell& c : a.cells()) {
    for (Dir d : {Dir::North, Dir::East}) {
      Pos q = neighbor(c.pos, d);
      auto other = a.tile_at(q);
      if (!other) continue;
      int w = glue_interaction(ts.tile(c.tile).glue(d),
                               ts.tile(*other).glue(opposite(d)));
      if (w <= 0) continue;
      g.edges.push_back({index.at(c.pos), index.at(q), w});
    }
  }
  return g;
}

bool BindingGraph::connected() const {
  if (nodes.size() <= 1) return true;
  std::vector<std::vector<std::size_t>> adj(nodes.size());
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> seen(nodes.size(), 0);
  std::vector<std::size_t> stack = {0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == nodes.size();
}

std::int64_t BindingGraph::min_cut() const {
  const std::size_t n = nodes.size();
  if (n < 2) {
    throw std::logic_error("min_cut requires at least two nodes");
  }
  // Stoer–Wagner over an adjacency matrix; desk-scale graphs only.
  std::vector<std::vector<std::int64_t>> w(n, std::vector<std::int64_t>(n, 0));
  for (const Edge& e : edges) {
    w[e.u][e.v] += e.weight;
    w[e.v][e.u] += e.weight;
  }
  std::vector<std::size_t> vertices(n);
  for (std::size_t i = 0; i < n; ++i) vertices[i] = i;

  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::size_t m = n;
  while (m > 1) {
    // Maximum-adjacency order of the remaining vertices.
    std::vector<std::int64_t> conn(m, 0);
    std::vector<char> in_a(m, 0);
    std::size_t prev = 0, last = 0;
    for (std::size_t round = 0; round < m; ++round) {
      std::size_t pick = m;  // index into `vertices`
      for (std::size_t i = 0; i < m; ++i) {
        if (!in_a[i] && (pick == m || conn[i] > conn[pick])) pick = i;
      }
      in_a[pick] = 1;
      prev = last;
      last = pick;
      for (std::size_t i = 0; i < m; ++i) {
        if (!in_a[i]) conn[i] += w[vertices[pick]][vertices[i]];
      }
      if (round + 1 == m) best = std::min(best, conn[pick]);
    }
    // Merge the last vertex into the one added before it.
    std::size_t a = vertices[prev], b = vertices[last];
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t v = vertices[i];
      w[a][v] += w[b][v];
      w[v][a] += w[v][b];
    }
    vertices.erase(vertices.begin() + static_cast<std::ptrdiff_t>(last));
    --m;
  }
  return best;
}

bool is_tau_stable(const Assembly& a, const TileSet& ts, int tau) {
  if (a.size() <= 1) return true;
  BindingGraph g = binding_graph(a, ts);
  if (!g.connected()) return false;
  return g.min_cut() >= tau;
}

const char* diag_code_name(DiagCode code) {
  switch (code) {
    case DiagCode::EmptyTileSet: return "EmptyTileSet";
    case DiagCode::EmptyTileName: return "EmptyTileName";
    case DiagCode::DuplicateTileName: return "DuplicateTileName";
    case DiagCode::NegativeGlueStrength: return "NegativeGlueStrength";
    case DiagCode::NullGlueNonzeroStrength: return "NullGlueNonzeroStrength";
    case DiagCode::GlueStrengthConflict: return "GlueStrengthConflict";
    case DiagCode::InvalidTemperature: return "InvalidTemperature";
    case DiagCode::EmptySeed: return "EmptySeed";
    case DiagCode::UnknownSeedTile: return "UnknownSeedTile";
    case DiagCode::SeedNotStable: return "SeedNotStable";
    case DiagCode::SyntaxError: return "SyntaxError";
    case DiagCode::SchemaViolation: return "SchemaViolation";
    case DiagCode::DuplicateSeedPosition: return "DuplicateSeedPosition";
    case DiagCode::InvalidShape: return "InvalidShape";
  }
  return "?";
}

std::vector<Diagnostic> validate_tas(const TAS& t) {
  std::vector<Diagnostic> out;
  auto diag = [&out](DiagCode code, std::string msg) {
    out.push_back({code, std::move(msg)});
  };

  if (t.tileset.empty()) diag(DiagCode::EmptyTileSet, "tile set is empty");

  std::unordered_map<std::string, std::size_t> seen_names;
  std::unordered_map<std::string, int> label_strength;
  for (std::size_t i = 0; i < t.tileset.size(); ++i) {
    const TileType& tt = t.tileset.tile(i);
    if (tt.name.empty()) {
      diag(DiagCode::EmptyTileName, "tile #" + std::to_string(i) +
                                        " has an empty name");
    } else if (auto [it, inserted] = seen_names.emplace(tt.name, i);
               !inserted) {
      diag(DiagCode::DuplicateTileName,
           "tile name \"" + tt.name + "\" used by tiles #" +
               std::to_string(it->second) + " and #" + std::to_string(i));
    }
    for (Dir d : kAllDirs) {
      const Glue& g = tt.glue(d);
      if (g.strength < 0) {
        diag(DiagCode::NegativeGlueStrength,
             "tile \"" + tt.name + "\" " + dir_name(d) + " glue \"" + g.label +
                 "\" has negative strength " + std::to_string(g.strength));
        continue;
      }
      if (g.is_null()) {
        if (g.strength != 0) {
          diag(DiagCode::NullGlueNonzeroStrength,
               "tile \"" + tt.name + "\" " + dir_name(d) +
                   " null glue has strength " + std::to_string(g.strength));
        }
        continue;
      }
      auto [it, inserted] = label_strength.emplace(g.label, g.strength);
      if (!inserted && it->second != g.strength) {
        diag(DiagCode::GlueStrengthConflict,
             "glue label \"" + g.label + "\" has strength " +
                 std::to_string(it->second) + " elsewhere but " +
                 std::to_string(g.strength) + " on tile \"" + tt.name +
                 "\" (" + dir_name(d) + ")");
      }
    }
  }

  if (t.temperature < 1) {
    diag(DiagCode::InvalidTemperature,
         "temperature must be a positive integer, got " +
             std::to_string(t.temperature));
  }

  if (t.seed.empty()) {
    diag(DiagCode::EmptySeed, "seed assembly is empty");
    return out;
  }
  bool seed_refs_ok = true;
  for (const Cell& c : t.seed.cells()) {
    if (c.tile >= t.tileset.size()) {
      diag(DiagCode::UnknownSeedTile,
           "seed cell at " + to_string(c.pos) + " references tile index " +
               std::to_string(c.tile) + " outside the tile set");
      seed_refs_ok = false;
    }
  }
  if (seed_refs_ok && t.temperature >= 1 &&
      !is_tau_stable(t.seed, t.tileset, t.temperature)) {
    diag(DiagCode::SeedNotStable,
         "seed assembly is not " + std::to_string(t.temperature) + "-stable");
  }
  return out;
}

}  // namespace tilesim
