#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tilesim/core.hpp"

namespace tilesim {

// ---------------------------------------------------------------------------
// Single-tile attachment
// ---------------------------------------------------------------------------

// One legal growth step: a tile placed at a position with total bond
// strength ≥ τ at the moment of attachment.
struct Attachment {
  Pos position;
  TileIndex tile = 0;
  std::int64_t bound_strength = 0;

  friend bool operator==(const Attachment&, const Attachment&) = default;
};

// Legal single-tile addition test. Present iff p is empty, lattice-adjacent
// to the assembly, and the abutting glue interactions sum to ≥ τ.
std::optional<Attachment> attachable(const TAS& t, const Assembly& a,
                                     const Pos& p, TileIndex tile);

// Every legal attachment of `a`, ordered lexicographically by
// (x, y, tile name). Empty iff `a` is terminal.
std::vector<Attachment> frontier(const TAS& t, const Assembly& a);

class NotAttachableError : public std::runtime_error {
 public:
  NotAttachableError(const Pos& p, std::string tile_name,
                     std::int64_t strength, int tau)
      : std::runtime_error("tile \"" + tile_name + "\" not attachable at " +
                           to_string(p) + ": bound strength " +
                           std::to_string(strength) + " < " +
                           std::to_string(tau)),
        position(p),
        tile_name(std::move(tile_name)),
        computed_strength(strength) {}

  Pos position;
  std::string tile_name;
  std::int64_t computed_strength;
};

// Applies one attachment; the result is τ-stable by construction.
Assembly attach(const TAS& t, const Assembly& a, const Attachment& step);

// ---------------------------------------------------------------------------
// Assembly sequences
// ---------------------------------------------------------------------------

struct AssemblySequence {
  Assembly start;  // the seed of the ambient system
  std::vector<Attachment> steps;
};

class ReplayError : public std::runtime_error {
 public:
  ReplayError(std::size_t index, const std::string& reason)
      : std::runtime_error("replay step " + std::to_string(index) + ": " +
                           reason),
        step_index(index) {}

  std::size_t step_index;
};

struct ReplayOptions {
  // Re-check the defining properties of a sequence result: the final domain
  // is the union of all stage domains and every stage is a subassembly of
  // the result.
  bool verify_result_invariants = false;
};

// Folds attach over the steps; the first invalid step raises ReplayError
// with its index. A stored bound_strength that disagrees with the
// recomputed one is also an error.
Assembly replay(const TAS& t, const AssemblySequence& s,
                const ReplayOptions& opts = {});

// Uniform random growth: repeatedly draws one attachment uniformly from the
// current frontier until it is empty or max_steps have been taken.
// Deterministic for a fixed rng_seed (mt19937_64 + rejection sampling).
AssemblySequence random_sequence(const TAS& t, std::uint64_t rng_seed,
                                 std::size_t max_steps);

// ---------------------------------------------------------------------------
// Exhaustive enumeration
// ---------------------------------------------------------------------------

// Exploration limits. Enumerating a potentially unbounded system requires at
// least one bound to be present.
struct Bounds {
  std::optional<std::size_t> max_tiles;
  std::optional<std::unordered_set<Pos, PosHash>> region;
  std::optional<std::size_t> max_states;

  bool any() const {
    return max_tiles.has_value() || region.has_value() ||
           max_states.has_value();
  }
};

// Deduplicated transition graph of producible assemblies under single-tile
// addition, explored breadth-first from the seed.
struct AssemblyGraph {
  struct Node {
    Assembly assembly;
    bool terminal = false;   // true frontier is empty
    bool truncated = false;  // some legal attachment was cut off by a bound
    std::int64_t parent = -1;         // discovery parent, -1 for the seed
    Attachment parent_attachment{};   // step from parent to this node
  };
  struct Edge {
    std::int64_t from = 0;
    std::int64_t to = 0;
    Attachment attachment;
  };

  std::vector<Node> nodes;
  std::vector<Edge> edges;
  bool budget_exceeded = false;  // max_states hit; graph is partial

  std::optional<std::int64_t> find(const Assembly& a) const;
  bool truncated_any() const;
  std::size_t terminal_count() const;

  // Seed-to-node witness sequence along discovery parents.
  AssemblySequence trace_to(std::int64_t node) const;

  std::unordered_map<Assembly, std::int64_t, AssemblyHash> index;
};

// Breadth-first closure of the seed under all attachments permitted by `b`.
// Nodes are deduplicated by placement-map equality; ids and edge order are
// identical for every worker count. Layers are expanded in parallel when
// jobs > 1. Throws std::invalid_argument when `b` has no bound at all.
AssemblyGraph enumerate_assemblies(const TAS& t, const Bounds& b,
                                   int jobs = 1);

// Membership test for the producible set: greedy fixed point that attaches
// any position of `target` whose tile matches and is currently attachable.
// Complete because bond strength is monotone in the assembly, so a candidate
// never stops being attachable while it remains absent.
bool is_producible(const TAS& t, const Assembly& target);

}  // namespace tilesim
