#include "tilesim/verification.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace tilesim {

bool points_connected(const std::vector<Pos>& sorted_points) {
  if (sorted_points.size() <= 1) return true;
  std::unordered_set<Pos, PosHash> todo(sorted_points.begin(),
                                        sorted_points.end());
  std::vector<Pos> stack = {sorted_points.front()};
  todo.erase(sorted_points.front());
  while (!stack.empty()) {
    Pos p = stack.back();
    stack.pop_back();
    for (Dir d : kAllDirs) {
      Pos q;
      try {
        q = neighbor(p, d);
      } catch (const PositionOverflowError&) {
        continue;
      }
      auto it = todo.find(q);
      if (it != todo.end()) {
        todo.erase(it);
        stack.push_back(q);
      }
    }
  }
  return todo.empty();
}

Shape Shape::finite(std::vector<Pos> points) {
  std::sort(points.begin(), points.end());
  if (points.empty()) throw ShapeError("a finite shape must be nonempty");
  if (std::adjacent_find(points.begin(), points.end()) != points.end()) {
    throw ShapeError("shape contains a duplicate point");
  }
  if (!points_connected(points)) {
    throw ShapeError("a finite shape must be edge-connected");
  }
  Shape s;
  s.finite_ = true;
  s.points_ = std::move(points);
  return s;
}

Shape Shape::windowed(std::function<bool(const Pos&)> membership,
                      std::vector<Pos> window) {
  std::sort(window.begin(), window.end());
  window.erase(std::unique(window.begin(), window.end()), window.end());
  if (window.empty()) throw ShapeError("shape window must be nonempty");
  if (!membership) throw ShapeError("shape membership test must be provided");
  Shape s;
  s.finite_ = false;
  s.points_ = std::move(window);
  s.membership_ = std::move(membership);
  return s;
}

bool Shape::contains(const Pos& p) const {
  if (finite_) {
    return std::binary_search(points_.begin(), points_.end(), p);
  }
  return membership_(p);
}

bool Shape::in_window(const Pos& p) const {
  if (finite_) return true;
  return std::binary_search(points_.begin(), points_.end(), p);
}

Shape shape_of(const Assembly& a) {
  if (a.empty()) throw EmptyAssemblyError();
  std::vector<Pos> points;
  points.reserve(a.size());
  for (const Cell& c : a.cells()) points.push_back(c.pos);
  return Shape::finite(std::move(points));
}

const char* status_name(Status s) {
  switch (s) {
    case Status::Holds: return "Holds";
    case Status::Fails: return "Fails";
    case Status::Unknown: return "Unknown";
  }
  return "?";
}

// ---------------------------------------------------------------------------

Verdict is_directed(const TAS& t, const Bounds& b, int jobs) {
  AssemblyGraph g = enumerate_assemblies(t, b, jobs);
  std::vector<std::int64_t> terminals;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (g.nodes[i].terminal) terminals.push_back(static_cast<std::int64_t>(i));
  }

  Verdict v;
  if (terminals.size() >= 2) {
    // Two genuine terminal assemblies refute directedness even when the
    // exploration itself was truncated.
    v.status = Status::Fails;
    for (std::size_t k = 0; k < 2; ++k) {
      v.witnesses.push_back(
          {WitnessKind::DistinctTerminal, g.trace_to(terminals[k]), {}});
    }
    v.note = std::to_string(terminals.size()) + " terminal assemblies found";
    return v;
  }
  if (g.truncated_any()) {
    v.status = Status::Unknown;
    v.note = g.budget_exceeded
                 ? "state budget exhausted before the producible set closed"
                 : "exploration truncated by bounds with at most one terminal "
                   "assembly found";
    return v;
  }
  if (terminals.size() == 1) {
    v.status = Status::Holds;
    v.note = "unique terminal assembly among " +
             std::to_string(g.nodes.size()) + " producible assemblies";
    return v;
  }
  v.status = Status::Unknown;  // not reachable for a well-formed system
  v.note = "untruncated exploration found no terminal assembly";
  return v;
}

// ---------------------------------------------------------------------------
// Shape verification
// ---------------------------------------------------------------------------

namespace {

struct ShapeExploration {
  AssemblyGraph graph;
  // First attachment found at a position inside the window but outside X.
  std::optional<std::pair<std::int64_t, Attachment>> violation;
  bool window_truncated = false;  // growth reached positions outside the window
  bool bounds_truncated = false;  // b.max_tiles/b.region clipped something
};

// BFS over producible assemblies whose every tile lies inside X (and inside
// the window for windowed shapes). Stops at the first outside-X attachment.
ShapeExploration explore_within(const TAS& t, const Shape& x,
                                const Bounds& b) {
  ShapeExploration out;
  AssemblyGraph& g = out.graph;
  g.nodes.push_back({t.seed});
  g.index.emplace(t.seed, 0);

  std::deque<std::int64_t> queue = {0};
  while (!queue.empty() && !out.violation && !g.budget_exceeded) {
    const std::int64_t id = queue.front();
    queue.pop_front();
    const Assembly assembly = g.nodes[static_cast<std::size_t>(id)].assembly;
    std::vector<Attachment> f = frontier(t, assembly);
    bool terminal = f.empty();
    bool truncated = false;
    for (const Attachment& step : f) {
      if (!x.in_window(step.position)) {
        out.window_truncated = true;
        truncated = true;
        continue;
      }
      if (!x.contains(step.position)) {
        out.violation = {id, step};
        break;  // fail fast
      }
      if ((b.max_tiles && assembly.size() + 1 > *b.max_tiles) ||
          (b.region && !b.region->count(step.position))) {
        out.bounds_truncated = true;
        truncated = true;
        continue;
      }
      Assembly target = assembly.with_cell(step.position, step.tile);
      auto it = g.index.find(target);
      std::int64_t target_id;
      if (it != g.index.end()) {
        target_id = it->second;
      } else if (b.max_states && g.nodes.size() >= *b.max_states) {
        g.budget_exceeded = true;
        truncated = true;
        break;
      } else {
        target_id = static_cast<std::int64_t>(g.nodes.size());
        AssemblyGraph::Node node;
        node.assembly = std::move(target);
        node.parent = id;
        node.parent_attachment = step;
        g.index.emplace(node.assembly, target_id);
        g.nodes.push_back(std::move(node));
        queue.push_back(target_id);
      }
      g.edges.push_back({id, target_id, step});
    }
    g.nodes[static_cast<std::size_t>(id)].terminal = terminal;
    g.nodes[static_cast<std::size_t>(id)].truncated = truncated;
  }
  return out;
}

std::optional<Pos> seed_position_outside(const Assembly& seed, const Shape& x) {
  for (const Cell& c : seed.cells()) {
    if (!x.in_window(c.pos)) continue;  // handled by the window precondition
    if (!x.contains(c.pos)) return c.pos;
  }
  return std::nullopt;
}

bool domain_equals(const Assembly& a, const std::vector<Pos>& sorted_points) {
  if (a.size() != sorted_points.size()) return false;
  std::size_t i = 0;
  for (const Cell& c : a.cells()) {
    if (c.pos != sorted_points[i++]) return false;
  }
  return true;
}

void require_seed_in_window(const TAS& t, const Shape& x) {
  if (x.is_finite()) return;
  for (const Cell& c : t.seed.cells()) {
    if (!x.in_window(c.pos)) {
      throw ShapeError("the window must contain the seed (cell at " +
                       to_string(c.pos) + " is outside)");
    }
  }
}

// Nodes from which a node with domain exactly `target_points` is reachable.
std::vector<char> mark_can_reach(const AssemblyGraph& g,
                                 const std::vector<Pos>& target_points) {
  std::vector<std::vector<std::int64_t>> preds(g.nodes.size());
  for (const AssemblyGraph::Edge& e : g.edges) {
    preds[static_cast<std::size_t>(e.to)].push_back(e.from);
  }
  std::vector<char> marked(g.nodes.size(), 0);
  std::deque<std::int64_t> queue;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (domain_equals(g.nodes[i].assembly, target_points)) {
      marked[i] = 1;
      queue.push_back(static_cast<std::int64_t>(i));
    }
  }
  while (!queue.empty()) {
    std::int64_t id = queue.front();
    queue.pop_front();
    for (std::int64_t p : preds[static_cast<std::size_t>(id)]) {
      if (!marked[static_cast<std::size_t>(p)]) {
        marked[static_cast<std::size_t>(p)] = 1;
        queue.push_back(p);
      }
    }
  }
  return marked;
}

Verdict outside_placement_verdict(const ShapeExploration& ex) {
  Verdict v;
  v.status = Status::Fails;
  const auto& [node, step] = *ex.violation;
  Witness w;
  w.kind = WitnessKind::OutsidePlacement;
  w.trace = ex.graph.trace_to(node);
  w.violating_position = step.position;
  v.witnesses.push_back(std::move(w));
  v.note = "a tile attaches at " + to_string(step.position) +
           ", outside the target shape";
  return v;
}

Verdict truncation_verdict(const ShapeExploration& ex, const char* query) {
  Verdict v;
  v.status = Status::Unknown;
  if (ex.graph.budget_exceeded) {
    v.note = std::string(query) + ": state budget exhausted";
  } else {
    v.note = std::string(query) + ": exploration truncated by bounds";
  }
  return v;
}

}  // namespace

Verdict self_assembles(const TAS& t, const Shape& x, const Bounds& b) {
  require_seed_in_window(t, x);
  if (auto p = seed_position_outside(t.seed, x)) {
    Verdict v;
    v.status = Status::Fails;
    v.witnesses.push_back(
        {WitnessKind::OutsidePlacement, AssemblySequence{t.seed, {}}, *p});
    v.note = "the seed places a tile at " + to_string(*p) +
             ", outside the target shape";
    return v;
  }

  ShapeExploration ex = explore_within(t, x, b);
  if (ex.violation) return outside_placement_verdict(ex);
  if (ex.graph.budget_exceeded || ex.bounds_truncated) {
    return truncation_verdict(ex, "strict self-assembly");
  }

  if (x.is_finite()) {
    // Exact: the whole within-X producible set was explored.
    for (std::size_t i = 0; i < ex.graph.nodes.size(); ++i) {
      const auto& node = ex.graph.nodes[i];
      if (node.terminal && !domain_equals(node.assembly, x.points())) {
        Verdict v;
        v.status = Status::Fails;
        v.witnesses.push_back(
            {WitnessKind::TerminalMismatch,
             ex.graph.trace_to(static_cast<std::int64_t>(i)),
             {}});
        v.note = "a terminal assembly covers only part of the target shape";
        return v;
      }
    }
    Verdict v;
    v.status = Status::Holds;
    v.note = "every terminal assembly places tiles exactly on the shape (" +
             std::to_string(ex.graph.nodes.size()) +
             " producible assemblies explored)";
    return v;
  }

  // Windowed mode: the shape is declared infinite, so any genuine terminal
  // assembly (necessarily finite) refutes strict self-assembly.
  for (std::size_t i = 0; i < ex.graph.nodes.size(); ++i) {
    const auto& node = ex.graph.nodes[i];
    if (node.terminal) {
      Verdict v;
      v.status = Status::Fails;
      v.witnesses.push_back({WitnessKind::TerminalMismatch,
                             ex.graph.trace_to(static_cast<std::int64_t>(i)),
                             {}});
      v.note = "a finite terminal assembly cannot equal an infinite shape";
      return v;
    }
  }
  Verdict v;
  v.status = Status::Unknown;
  v.note = ex.window_truncated
               ? "no violation inside the window; growth continues past the "
                 "window edge"
               : "no violation inside the window";
  return v;
}

Verdict finitely_self_assembles(const TAS& t, const Shape& x,
                                const Bounds& b) {
  require_seed_in_window(t, x);
  if (auto p = seed_position_outside(t.seed, x)) {
    Verdict v;
    v.status = Status::Fails;
    v.witnesses.push_back(
        {WitnessKind::OutsidePlacement, AssemblySequence{t.seed, {}}, *p});
    v.note = "the seed places a tile at " + to_string(*p) +
             ", outside the target shape";
    return v;
  }

  ShapeExploration ex = explore_within(t, x, b);
  // An attachment outside X dooms the extended assembly: it is a finite
  // producible that can never place tiles exactly on X.
  if (ex.violation) return outside_placement_verdict(ex);
  if (ex.graph.budget_exceeded || ex.bounds_truncated) {
    return truncation_verdict(ex, "finite self-assembly");
  }

  if (x.is_finite()) {
    std::vector<char> marked = mark_can_reach(ex.graph, x.points());
    for (std::size_t i = 0; i < ex.graph.nodes.size(); ++i) {
      if (!marked[i]) {
        Verdict v;
        v.status = Status::Fails;
        v.witnesses.push_back(
            {WitnessKind::UnreachableTarget,
             ex.graph.trace_to(static_cast<std::int64_t>(i)),
             {}});
        v.note = "a producible assembly cannot grow into the target shape";
        return v;
      }
    }
    Verdict v;
    v.status = Status::Holds;
    v.note = "every producible assembly grows into the shape (" +
             std::to_string(ex.graph.nodes.size()) +
             " producible assemblies explored)";
    return v;
  }

  // Windowed mode: a genuine terminal is finite and cannot grow at all, so
  // it refutes finite self-assembly of an infinite shape.
  for (std::size_t i = 0; i < ex.graph.nodes.size(); ++i) {
    if (ex.graph.nodes[i].terminal) {
      Verdict v;
      v.status = Status::Fails;
      v.witnesses.push_back({WitnessKind::TerminalMismatch,
                             ex.graph.trace_to(static_cast<std::int64_t>(i)),
                             {}});
      v.note = "a finite terminal assembly cannot grow into an infinite shape";
      return v;
    }
  }

  // Positive evidence is only window-local: report it in the note but stay
  // at Unknown, since a true completion may use space beyond the window.
  std::vector<Pos> windowed_target;
  for (const Pos& p : x.points()) {
    if (x.contains(p)) windowed_target.push_back(p);
  }
  std::vector<char> marked = mark_can_reach(ex.graph, windowed_target);
  bool all = std::all_of(marked.begin(), marked.end(),
                         [](char c) { return c != 0; });
  Verdict v;
  v.status = Status::Unknown;
  v.note = all ? "holds within the window: every explored assembly can grow "
                 "to cover the windowed part of the shape"
               : "no definitive counterexample within the window; some "
                 "explored assemblies cannot complete the windowed part "
                 "without leaving it";
  return v;
}

}  // namespace tilesim
