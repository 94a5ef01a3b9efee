#pragma once

// Shared plumbing for the unit suites and the acceptance driver: corpus
// loading, a brute-force stability oracle, and randomized generators.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "tilesim/core.hpp"
#include "tilesim/dynamics.hpp"
#include "tilesim/io.hpp"
#include "tilesim/verification.hpp"

namespace testutil {

using namespace tilesim;

inline std::string corpus_path(const std::string& name) {
  return std::string(TILESIM_CORPUS_DIR) + "/" + name;
}

inline TilesetDoc load_corpus_doc(const std::string& name) {
  auto text = read_file(corpus_path(name));
  if (!text) throw std::runtime_error("cannot read corpus file " + name);
  TilesetParse p = parse_tileset(*text);
  if (!p.ok()) {
    std::string msg = "corpus file " + name + " is invalid:";
    for (const auto& d : p.diagnostics) msg += " " + d.message;
    throw std::runtime_error(msg);
  }
  return *p.doc;
}

inline TAS load_corpus(const std::string& name) {
  return load_corpus_doc(name).tas;
}

inline std::vector<Pos> load_corpus_shape(const std::string& name) {
  auto text = read_file(corpus_path(name));
  if (!text) throw std::runtime_error("cannot read corpus file " + name);
  ShapeParse p = parse_shape(*text);
  if (!p.ok()) throw std::runtime_error("corpus shape " + name + " invalid");
  return *p.points;
}

// Direct reading of the stability definition: every bipartition of the
// domain must be crossed by bonds of total strength >= tau. Exponential and
// only for <= 8 tiles; the real implementation uses a global min cut.
inline bool stable_bruteforce(const Assembly& a, const TileSet& ts, int tau) {
  const std::size_t n = a.size();
  if (n <= 1) return true;
  BindingGraph g = binding_graph(a, ts);
  for (std::uint64_t mask = 1; mask < (1ull << (n - 1)); ++mask) {
    std::int64_t cross = 0;
    for (const auto& e : g.edges) {
      const bool su = e.u < n - 1 && ((mask >> e.u) & 1) != 0;
      const bool sv = e.v < n - 1 && ((mask >> e.v) & 1) != 0;
      if (su != sv) cross += e.weight;
    }
    if (cross < tau) return false;
  }
  return true;
}

inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) {
  // Unbiased bounded draw by rejection; n must be positive.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return v % n;
}

// Random tile set with a consistent label -> strength table, so generated
// systems always pass validation.
inline TileSet random_tileset(std::mt19937_64& rng, std::size_t tile_count,
                              std::size_t label_count, int max_strength) {
  std::vector<Glue> glues;
  glues.push_back(kNullGlue);
  for (std::size_t i = 0; i < label_count; ++i) {
    glues.push_back({"g" + std::to_string(i),
                     static_cast<int>(draw(rng, max_strength)) + 1});
  }
  std::vector<TileType> tiles;
  for (std::size_t i = 0; i < tile_count; ++i) {
    TileType t;
    t.name = "t" + std::to_string(i);
    for (Dir d : kAllDirs) {
      t.glue(d) = glues[draw(rng, glues.size())];
    }
    tiles.push_back(std::move(t));
  }
  return TileSet(std::move(tiles));
}

// Random connected blob of tiles near the origin (any placement, not
// necessarily producible). Suitable input for the stability oracle.
inline Assembly random_blob(std::mt19937_64& rng, const TileSet& ts,
                            std::size_t max_cells) {
  std::vector<Cell> cells;
  std::vector<Pos> placed = {{0, 0}};
  cells.push_back({{0, 0}, static_cast<TileIndex>(draw(rng, ts.size()))});
  const std::size_t target = 1 + draw(rng, max_cells);
  while (placed.size() < target) {
    const Pos base = placed[draw(rng, placed.size())];
    const Pos p = neighbor(base, kAllDirs[draw(rng, 4)]);
    bool taken = false;
    for (const Pos& q : placed) {
      if (q == p) {
        taken = true;
        break;
      }
    }
    if (taken) continue;
    placed.push_back(p);
    cells.push_back({p, static_cast<TileIndex>(draw(rng, ts.size()))});
  }
  return Assembly::from_cells(std::move(cells));
}

// Random valid TAS: singleton seed of tile 0 at the origin.
inline TAS random_tas(std::mt19937_64& rng) {
  TileSet ts = random_tileset(rng, 2 + draw(rng, 3), 2 + draw(rng, 3), 2);
  const int tau = 1 + static_cast<int>(draw(rng, 2));
  Assembly seed = Assembly::from_cells({{{0, 0}, 0}});
  return {std::move(ts), std::move(seed), tau};
}

}  // namespace testutil
