#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "crg/graph.hpp"

namespace crg {

// Labeled tree on {1..m}, rooted at `root` (vertex 1 unless stated
// otherwise); stored as a parent map, parent[root] = 0.
struct RootedOrderedTree {
  int m = 0;
  int root = 1;
  std::vector<int> parent;  // size m+1, parent[0] unused

  RootedOrderedTree() = default;
  explicit RootedOrderedTree(int m_)
      : m(m_), parent(static_cast<std::size_t>(m_) + 1, 0) {}

  // per-vertex child lists, ascending (labels are scanned in order)
  std::vector<std::vector<int>> children() const {
    std::vector<std::vector<int>> ch(static_cast<std::size_t>(m) + 1);
    for (int v = 1; v <= m; ++v)
      if (v != root) ch[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])].push_back(v);
    return ch;
  }

  LabeledGraph to_graph() const {
    LabeledGraph g(m);
    for (int v = 1; v <= m; ++v)
      if (v != root) g.add_edge(v, parent[static_cast<std::size_t>(v)]);
    g.finalize();
    return g;
  }

  bool operator==(const RootedOrderedTree& o) const {
    return m == o.m && root == o.root && parent == o.parent;
  }
  bool operator<(const RootedOrderedTree& o) const { return parent < o.parent; }
};

enum class WalkKind { depth_first_walk, height, contour };

// Integer lattice path (walk, height or contour process) with the usual
// linear interpolation, extended by zero beyond its last index.
struct LatticeExcursion {
  std::vector<long long> values;
  WalkKind kind = WalkKind::depth_first_walk;

  std::size_t size() const { return values.size(); }

  double at(double s) const {
    if (s <= 0.0) return values.empty() ? 0.0 : static_cast<double>(values.front());
    const auto last = static_cast<double>(values.size()) - 1.0;
    if (s >= last) return 0.0;  // extension beyond the path
    const auto i = static_cast<std::size_t>(s);
    const double frac = s - static_cast<double>(i);
    return static_cast<double>(values[i]) +
           frac * static_cast<double>(values[i + 1] - values[i]);
  }

  long long max() const {
    long long m = 0;
    for (long long v : values) m = std::max(m, v);
    return m;
  }
};

struct ExplorationTrace {
  std::vector<int> order;            // v_0 .. v_{n-1}
  std::vector<int> component_index;  // c_i per step
  LatticeExcursion walk;             // X(i) or Y(i)
  std::vector<int> parent;           // forest parent map, 0 for roots
};

namespace detail {

enum class StackDiscipline { front, back };  // where new neighbors go

inline ExplorationTrace explore(const LabeledGraph& g, StackDiscipline disc) {
  const int n = g.n;
  ExplorationTrace tr;
  tr.order.reserve(static_cast<std::size_t>(n));
  tr.component_index.reserve(static_cast<std::size_t>(n));
  tr.walk.values.reserve(static_cast<std::size_t>(n));
  tr.walk.kind = WalkKind::depth_first_walk;
  tr.parent.assign(static_cast<std::size_t>(n) + 1, 0);

  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  // deque semantics; for depth-first the top is the back, for
  // breadth-first the top is the front (index head)
  std::vector<int> open;
  std::size_t head = 0;
  int next_root = 1;
  int c = 1;
  open.push_back(1);
  seen[1] = 1;

  std::vector<int> fresh;
  for (int i = 0; i < n; ++i) {
    int v;
    if (disc == StackDiscipline::front) {
      v = open.back();
      open.pop_back();
    } else {
      v = open[head++];
    }
    tr.order.push_back(v);
    tr.component_index.push_back(c);
    fresh.clear();
    for (int w : g.adj[static_cast<std::size_t>(v)])
      if (!seen[static_cast<std::size_t>(w)]) fresh.push_back(w);  // ascending
    const auto open_size =
        static_cast<long long>(open.size() - head);  // |O_i \ {v_i}|
    tr.walk.values.push_back(open_size - (c - 1));
    for (int w : fresh) {
      seen[static_cast<std::size_t>(w)] = 1;
      tr.parent[static_cast<std::size_t>(w)] = v;
    }
    if (disc == StackDiscipline::front) {
      // affix in increasing order to the start: push descending so the
      // smallest label ends on top
      for (auto it = fresh.rbegin(); it != fresh.rend(); ++it)
        open.push_back(*it);
    } else {
      for (int w : fresh) open.push_back(w);
    }
    if (open.size() == head) {
      while (next_root <= n && seen[static_cast<std::size_t>(next_root)])
        ++next_root;
      if (next_root <= n) {
        open.push_back(next_root);
        seen[static_cast<std::size_t>(next_root)] = 1;
        ++c;
      }
    }
  }
  return tr;
}

}  // namespace detail

// Ordered depth-first search: new neighbors go to the start of the stack,
// smallest label explored first.
inline ExplorationTrace odfs(const LabeledGraph& g) {
  return detail::explore(g, detail::StackDiscipline::front);
}

// Breadth-first variant: identical except new neighbors are appended to
// the end of the open set.
inline ExplorationTrace bfs_walk(const LabeledGraph& g) {
  return detail::explore(g, detail::StackDiscipline::back);
}

// Depth-first tree of a connected graph.
inline RootedOrderedTree depth_first_tree(const LabeledGraph& g) {
  const ExplorationTrace tr = odfs(g);
  RootedOrderedTree t(g.n);
  t.root = 1;
  for (int v = 1; v <= g.n; ++v)
    t.parent[static_cast<std::size_t>(v)] = tr.parent[static_cast<std::size_t>(v)];
  return t;
}

namespace detail {

// Runs oDFS over a tree given as parent map; invokes step(v, stack) at
// each step with the open stack (top = back) *after* v was removed and
// *before* v's children are pushed.
template <typename Step>
inline void odfs_tree_scan(const RootedOrderedTree& t, Step&& step) {
  const auto ch = t.children();
  std::vector<int> open;
  open.push_back(t.root);
  while (!open.empty()) {
    const int v = open.back();
    open.pop_back();
    step(v, open);
    const auto& cs = ch[static_cast<std::size_t>(v)];
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) open.push_back(*it);
  }
}

}  // namespace detail

// Depth-first walk X of a tree: X(i) = |O_i| - 1.
inline LatticeExcursion tree_walk(const RootedOrderedTree& t) {
  LatticeExcursion x;
  x.kind = WalkKind::depth_first_walk;
  x.values.reserve(static_cast<std::size_t>(t.m));
  detail::odfs_tree_scan(t, [&](int, const std::vector<int>& open) {
    x.values.push_back(static_cast<long long>(open.size()));
  });
  return x;
}

// Exploration order v_0..v_{m-1} of oDFS on a tree.
inline std::vector<int> odfs_order(const RootedOrderedTree& t) {
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(t.m));
  detail::odfs_tree_scan(t,
                         [&](int v, const std::vector<int>&) { order.push_back(v); });
  return order;
}

inline std::vector<int> depths(const RootedOrderedTree& t) {
  std::vector<int> d(static_cast<std::size_t>(t.m) + 1, 0);
  const auto order = odfs_order(t);
  for (int v : order)
    if (v != t.root)
      d[static_cast<std::size_t>(v)] =
          d[static_cast<std::size_t>(t.parent[static_cast<std::size_t>(v)])] + 1;
  return d;
}

// H(i) = depth of the (i+1)-st vertex in oDFS order.
inline LatticeExcursion height_process(const RootedOrderedTree& t) {
  LatticeExcursion h;
  h.kind = WalkKind::height;
  const auto d = depths(t);
  for (int v : odfs_order(t))
    h.values.push_back(d[static_cast<std::size_t>(v)]);
  return h;
}

// Contour process (±1 steps, length 2(m-1)) together with the index map
// K(i) = 2i - H(i), which satisfies C(K(i)) = H(i).
inline std::pair<LatticeExcursion, std::vector<long long>> contour_process(
    const RootedOrderedTree& t) {
  LatticeExcursion c;
  c.kind = WalkKind::contour;
  const LatticeExcursion h = height_process(t);
  std::vector<long long> k(h.values.size());
  for (std::size_t i = 0; i < h.values.size(); ++i)
    k[i] = 2 * static_cast<long long>(i) - h.values[i];
  c.values.reserve(2 * static_cast<std::size_t>(t.m) - 1);
  c.values.push_back(0);
  for (std::size_t i = 0; i + 1 < h.values.size(); ++i) {
    // descend to the common ancestor level, then climb to the next vertex
    long long level = h.values[i];
    const long long next = h.values[i + 1];
    while (level > next - 1) c.values.push_back(--level);
    c.values.push_back(next);
  }
  for (long long level = h.values.empty() ? 0 : h.values.back(); level > 0;)
    c.values.push_back(--level);
  return {std::move(c), std::move(k)};
}

// a(T) = sum of the depth-first walk.
inline long long area(const RootedOrderedTree& t) {
  long long a = 0;
  detail::odfs_tree_scan(t, [&](int, const std::vector<int>& open) {
    a += static_cast<long long>(open.size());
  });
  return a;
}

// Non-tree pairs whose endpoints co-occur in some oDFS stack; there are
// exactly area(t) of them.
inline std::vector<std::pair<int, int>> permitted_edges(
    const RootedOrderedTree& t) {
  std::vector<std::pair<int, int>> out;
  detail::odfs_tree_scan(t, [&](int v, const std::vector<int>& open) {
    for (int w : open) out.emplace_back(std::min(v, w), std::max(v, w));
  });
  return out;
}

// CSV export: (index, value, kind)
inline void write_walk_csv(std::ostream& os, const LatticeExcursion& x) {
  const char* kind = x.kind == WalkKind::depth_first_walk ? "depth_first_walk"
                     : x.kind == WalkKind::height         ? "height"
                                                          : "contour";
  os << "index,value,kind\n";
  for (std::size_t i = 0; i < x.values.size(); ++i)
    os << i << ',' << x.values[i] << ',' << kind << '\n';
}

}  // namespace crg
