#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tilesim/core.hpp"
#include "tilesim/dynamics.hpp"

namespace tilesim {

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EmptyAssemblyError : public std::invalid_argument {
 public:
  EmptyAssemblyError() : std::invalid_argument("assembly is empty") {}
};

// A target shape X ⊆ Z². Finite shapes are explicit point sets, validated
// nonempty and edge-connected. Infinite shapes are a membership predicate
// plus a finite window inside which the predicate is exact; membership is
// never extrapolated outside the window.
class Shape {
 public:
  static Shape finite(std::vector<Pos> points);
  static Shape windowed(std::function<bool(const Pos&)> membership,
                        std::vector<Pos> window);

  bool is_finite() const { return finite_; }

  // Membership. For windowed shapes this is only meaningful inside the
  // window; callers must gate on in_window first.
  bool contains(const Pos& p) const;
  bool in_window(const Pos& p) const;

  // Finite mode: the point set. Windowed mode: the window.
  const std::vector<Pos>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

 private:
  Shape() = default;
  bool finite_ = true;
  std::vector<Pos> points_;  // sorted; point set or window
  std::function<bool(const Pos&)> membership_;
};

// Shared helper: is a sorted point set edge-connected?
bool points_connected(const std::vector<Pos>& sorted_points);

// The domain of a nonempty assembly as a finite shape. Throws
// EmptyAssemblyError / ShapeError (disconnected domains are not shapes).
Shape shape_of(const Assembly& a);

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

enum class Status { Holds, Fails, Unknown };

const char* status_name(Status s);

enum class WitnessKind {
  DistinctTerminal,   // one of ≥2 terminal assemblies (directedness)
  OutsidePlacement,   // a tile attaches strictly outside the target shape
  TerminalMismatch,   // a terminal assembly whose domain is not the shape
  UnreachableTarget,  // a producible assembly that cannot grow into the shape
};

struct Witness {
  WitnessKind kind;
  AssemblySequence trace;               // replays to the violating assembly
  std::optional<Pos> violating_position;  // for OutsidePlacement
};

// Three-valued answer for semi-decidable queries. Fails always carries at
// least one replayable witness; Unknown explains which bound was hit.
struct Verdict {
  Status status = Status::Unknown;
  std::vector<Witness> witnesses;
  std::string note;
};

// ---------------------------------------------------------------------------
// Decision procedures
// ---------------------------------------------------------------------------

// Does the system produce exactly one terminal assembly? Exact on an
// untruncated exploration; two genuine terminals refute it even when the
// exploration was truncated.
Verdict is_directed(const TAS& t, const Bounds& b, int jobs = 1);

// Strict self-assembly of X: every producible terminal assembly places
// tiles exactly on X. Fail-fast: an attachment outside X refutes it
// immediately, which makes the finite-shape check exact and terminating.
Verdict self_assembles(const TAS& t, const Shape& x, const Bounds& b);

// Finite self-assembly of X: every finite producible assembly can grow into
// an assembly placing tiles exactly on X. Exact for finite X (reachability
// over the deduplicated graph); for windowed X only refutations are
// definitive and positive evidence is reported as Unknown.
Verdict finitely_self_assembles(const TAS& t, const Shape& x, const Bounds& b);

}  // namespace tilesim
