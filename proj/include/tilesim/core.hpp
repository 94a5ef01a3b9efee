#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tilesim/position.hpp"

namespace tilesim {

// ---------------------------------------------------------------------------
// Glues and tiles
// ---------------------------------------------------------------------------

// A glue is a labeled bond site. The empty label is the null glue and always
// has strength 0. Within one tile set every occurrence of a label carries the
// same strength (checked by validate_tas).
struct Glue {
  std::string label;
  int strength = 0;

  bool is_null() const { return label.empty(); }
  friend bool operator==(const Glue&, const Glue&) = default;
};

inline const Glue kNullGlue{};

// Interaction strength of two abutting glues: the common strength when the
// labels match, are nonempty, and the strengths agree; otherwise 0.
int glue_interaction(const Glue& a, const Glue& b);

// Optional rendering hints for a tile type.
struct Display {
  std::string glyph;  // one character for ascii grids; empty = derive from name
  std::string color;  // css color for svg; empty = palette by tile index
  friend bool operator==(const Display&, const Display&) = default;
};

struct TileType {
  std::string name;
  std::array<Glue, 4> glues;  // indexed by Dir
  Display display;

  const Glue& glue(Dir d) const { return glues[static_cast<std::size_t>(d)]; }
  Glue& glue(Dir d) { return glues[static_cast<std::size_t>(d)]; }
  friend bool operator==(const TileType&, const TileType&) = default;
};

// The finite alphabet of growth. Order is significant (document order); tiles
// are referred to by index internally and by name at the file boundary.
class TileSet {
 public:
  TileSet() = default;
  explicit TileSet(std::vector<TileType> tiles);

  std::size_t size() const { return tiles_.size(); }
  bool empty() const { return tiles_.empty(); }
  const TileType& tile(std::size_t i) const { return tiles_.at(i); }
  const std::vector<TileType>& tiles() const { return tiles_; }

  // First tile with the given name, if any.
  std::optional<std::size_t> find(const std::string& name) const;

  friend bool operator==(const TileSet&, const TileSet&) = default;

 private:
  std::vector<TileType> tiles_;
  std::unordered_map<std::string, std::size_t> index_;
};

// ---------------------------------------------------------------------------
// Assemblies
// ---------------------------------------------------------------------------

using TileIndex = std::uint32_t;

struct Cell {
  Pos pos;
  TileIndex tile = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

// A finite partial map from lattice positions to tile types, stored as a
// vector of cells sorted by position. Value type: operations that grow an
// assembly return a new one.
class Assembly {
 public:
  Assembly() = default;

  // Builds from cells in any order. Throws std::invalid_argument on duplicate
  // positions (parsers are expected to have screened these already).
  static Assembly from_cells(std::vector<Cell> cells);

  bool empty() const { return cells_.empty(); }
  std::size_t size() const { return cells_.size(); }
  std::span<const Cell> cells() const { return cells_; }

  bool occupied(const Pos& p) const { return tile_at(p).has_value(); }
  std::optional<TileIndex> tile_at(const Pos& p) const;

  // Copy of this assembly with one extra cell. Throws on occupied position.
  Assembly with_cell(const Pos& p, TileIndex tile) const;

  friend bool operator==(const Assembly&, const Assembly&) = default;

 private:
  std::vector<Cell> cells_;  // sorted by Pos
};

struct AssemblyHash {
  std::size_t operator()(const Assembly& a) const;
};

// dom(a) ⊆ dom(b) with agreeing tiles on dom(a).
bool is_subassembly(const Assembly& a, const Assembly& b);

// ---------------------------------------------------------------------------
// Binding graph and stability
// ---------------------------------------------------------------------------

// Weighted undirected bond graph of an assembly: one node per occupied
// position, one edge per lattice-adjacent pair with positive interaction.
struct BindingGraph {
  struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;
    std::int64_t weight = 0;
  };

  std::vector<Pos> nodes;
  std::vector<Edge> edges;

  bool connected() const;

  // Global minimum cut weight (Stoer–Wagner). Requires a connected graph
  // with at least two nodes.
  std::int64_t min_cut() const;
};

BindingGraph binding_graph(const Assembly& a, const TileSet& ts);

// τ-stability: empty and singleton assemblies are stable; otherwise the bond
// graph must be connected with global min cut ≥ tau. Assemblies grown by
// legal attachment sequences are stable by construction and never need this.
bool is_tau_stable(const Assembly& a, const TileSet& ts, int tau);

// ---------------------------------------------------------------------------
// Tile assembly systems and validation
// ---------------------------------------------------------------------------

struct TAS {
  TileSet tileset;
  Assembly seed;
  int temperature = 1;

  friend bool operator==(const TAS&, const TAS&) = default;
};

enum class DiagCode {
  // tileset-level
  EmptyTileSet,
  EmptyTileName,
  DuplicateTileName,
  NegativeGlueStrength,
  NullGlueNonzeroStrength,
  GlueStrengthConflict,
  // system-level
  InvalidTemperature,
  EmptySeed,
  UnknownSeedTile,
  SeedNotStable,
  // document-level (reported by parsers)
  SyntaxError,
  SchemaViolation,
  DuplicateSeedPosition,
  InvalidShape,
};

const char* diag_code_name(DiagCode code);

struct Diagnostic {
  DiagCode code;
  std::string message;  // human-readable, carries position/name context
};

// Empty result iff the system is well-formed: unique nonempty tile names,
// nonnegative strengths, one strength per label, null glue at strength 0,
// τ ≥ 1, and a finite, nonempty, τ-stable seed over known tiles.
std::vector<Diagnostic> validate_tas(const TAS& t);

}  // namespace tilesim
