#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace tilesim {

using Coord = std::int64_t;

// A point of the integer lattice. Ordering is lexicographic (x, then y),
// which is the canonical order used for cells, frontiers and node identity.
struct Pos {
  Coord x = 0;
  Coord y = 0;

  friend auto operator<=>(const Pos&, const Pos&) = default;
};

enum class Dir : std::uint8_t { North = 0, East = 1, South = 2, West = 3 };

inline constexpr std::array<Dir, 4> kAllDirs = {Dir::North, Dir::East,
                                                Dir::South, Dir::West};

constexpr Dir opposite(Dir d) {
  switch (d) {
    case Dir::North: return Dir::South;
    case Dir::East: return Dir::West;
    case Dir::South: return Dir::North;
    case Dir::West: return Dir::East;
  }
  return Dir::North;  // unreachable
}

constexpr const char* dir_name(Dir d) {
  switch (d) {
    case Dir::North: return "north";
    case Dir::East: return "east";
    case Dir::South: return "south";
    case Dir::West: return "west";
  }
  return "?";
}

// Thrown when a neighbor computation would leave the representable lattice.
class PositionOverflowError : public std::range_error {
 public:
  explicit PositionOverflowError(const Pos& p)
      : std::range_error("position overflow stepping from (" +
                         std::to_string(p.x) + "," + std::to_string(p.y) +
                         ")") {}
};

// Offset per direction: North = (0,+1), East = (+1,0), South = (0,-1),
// West = (-1,0). Stepping off the int64 edge is an error, never a wrap.
inline Pos neighbor(const Pos& p, Dir d) {
  switch (d) {
    case Dir::North:
      if (p.y == INT64_MAX) throw PositionOverflowError(p);
      return {p.x, p.y + 1};
    case Dir::East:
      if (p.x == INT64_MAX) throw PositionOverflowError(p);
      return {p.x + 1, p.y};
    case Dir::South:
      if (p.y == INT64_MIN) throw PositionOverflowError(p);
      return {p.x, p.y - 1};
    case Dir::West:
      if (p.x == INT64_MIN) throw PositionOverflowError(p);
      return {p.x - 1, p.y};
  }
  return p;  // unreachable
}

struct PosHash {
  std::size_t operator()(const Pos& p) const {
    // 64-bit FNV-1a over both coordinates.
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
      for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 1099511628211ull;
      }
    };
    mix(static_cast<std::uint64_t>(p.x));
    mix(static_cast<std::uint64_t>(p.y));
    return static_cast<std::size_t>(h);
  }
};

inline std::string to_string(const Pos& p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

}  // namespace tilesim
