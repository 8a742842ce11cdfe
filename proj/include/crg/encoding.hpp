#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include <json.hpp>

#include "crg/exploration.hpp"
#include "crg/graph.hpp"

namespace crg {

// Integer lattice points (x, y); used as mark sets over a walk, where a
// point (i, j) selects the j-th open vertex from the bottom of the stack
// at step i.
struct PointSet {
  std::vector<std::pair<long long, long long>> pts;

  void add(long long x, long long y) { pts.emplace_back(x, y); }
  void normalize() {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  }
  std::size_t size() const { return pts.size(); }
};

// Points of q lying strictly under the walk: 0 < y <= x.values[x].
inline PointSet points_under_walk(const PointSet& q, const LatticeExcursion& x) {
  PointSet out;
  for (const auto& [a, b] : q.pts) {
    if (a < 0 || a >= static_cast<long long>(x.values.size())) continue;
    if (b > 0 && b <= x.values[static_cast<std::size_t>(a)]) out.add(a, b);
  }
  return out;
}

// Tree (parent map), its depth-first walk, and marks selecting the
// surplus edges. Together these determine a connected graph.
struct MarkedWalk {
  RootedOrderedTree tree;
  LatticeExcursion walk;
  PointSet marks;
};

// Encode a connected graph as a marked depth-first walk. The tree is the
// depth-first tree; each surplus edge produces one mark (i, j), meaning
// the i-th explored vertex is joined to the j-th open vertex from the
// bottom of the stack.
inline MarkedWalk encode(const LabeledGraph& g) {
  const int n = g.n;
  MarkedWalk mw;
  mw.tree = RootedOrderedTree(n);
  mw.walk.kind = WalkKind::depth_first_walk;
  mw.walk.values.reserve(static_cast<std::size_t>(n));

  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  std::vector<long long> stack_pos(static_cast<std::size_t>(n) + 1, 0);  // 1-based from bottom, 0 = not open
  std::vector<int> open;  // top = back
  open.push_back(1);
  seen[1] = 1;
  stack_pos[1] = 1;

  std::vector<int> fresh;
  for (long long i = 0; i < n; ++i) {
    if (open.empty()) throw std::invalid_argument("encode: graph is not connected");
    const int v = open.back();
    open.pop_back();
    stack_pos[static_cast<std::size_t>(v)] = 0;
    mw.walk.values.push_back(static_cast<long long>(open.size()));
    fresh.clear();
    for (int w : g.adj[static_cast<std::size_t>(v)]) {
      const auto pos = stack_pos[static_cast<std::size_t>(w)];
      if (pos > 0)
        mw.marks.add(i, pos);  // surplus edge to an open vertex
      else if (!seen[static_cast<std::size_t>(w)])
        fresh.push_back(w);
    }
    for (int w : fresh) {
      seen[static_cast<std::size_t>(w)] = 1;
      mw.tree.parent[static_cast<std::size_t>(w)] = v;
    }
    for (auto it = fresh.rbegin(); it != fresh.rend(); ++it) {
      open.push_back(*it);
      stack_pos[static_cast<std::size_t>(*it)] =
          static_cast<long long>(open.size());
    }
  }
  mw.marks.normalize();
  return mw;
}

// Inverse of encode: rebuild the graph from a tree and marks under its
// depth-first walk. Marks outside the walk region are rejected.
inline LabeledGraph decode_gx(const RootedOrderedTree& t, const PointSet& q) {
  LabeledGraph g = t.to_graph();
  std::vector<std::pair<long long, long long>> marks = q.pts;
  std::sort(marks.begin(), marks.end());
  std::size_t next = 0;
  long long i = 0;
  detail::odfs_tree_scan(t, [&](int v, const std::vector<int>& open) {
    while (next < marks.size() && marks[next].first == i) {
      const long long j = marks[next].second;
      if (j <= 0 || j > static_cast<long long>(open.size()))
        throw std::invalid_argument("decode_gx: mark above the walk");
      g.add_edge(v, open[static_cast<std::size_t>(j) - 1]);
      ++next;
    }
    ++i;
  });
  if (next < marks.size())
    throw std::invalid_argument("decode_gx: mark index out of range");
  g.finalize();
  return g;
}

inline LabeledGraph decode_gx(const MarkedWalk& mw) {
  return decode_gx(mw.tree, mw.marks);
}

// Height-based reading of the same marks: a mark (i, j) with
// 0 < 2j <= H(i) joins the i-th explored vertex to its ancestor at depth
// 2j - 1. Marks above H/2 are ignored.
inline LabeledGraph build_gh(const RootedOrderedTree& t, const PointSet& q) {
  LabeledGraph g = t.to_graph();
  const auto order = odfs_order(t);
  const auto d = depths(t);
  std::vector<std::pair<long long, long long>> marks = q.pts;
  std::sort(marks.begin(), marks.end());
  for (const auto& [i, j] : marks) {
    if (i < 0 || i >= static_cast<long long>(order.size())) continue;
    const int v = order[static_cast<std::size_t>(i)];
    const long long h = d[static_cast<std::size_t>(v)];
    if (j <= 0 || 2 * j > h) continue;
    // ancestor of v at depth 2j - 1
    int u = v;
    for (long long steps = h - (2 * j - 1); steps > 0; --steps)
      u = t.parent[static_cast<std::size_t>(u)];
    if (u == t.parent[static_cast<std::size_t>(v)]) continue;  // already a tree edge
    g.add_edge(v, u);
  }
  g.finalize();
  return g;
}

// JSON round trip for marked walks:
// {"walk": [...], "parent": [...], "marks": [[i, j], ...]}
inline nlohmann::ordered_json to_json(const MarkedWalk& mw) {
  nlohmann::ordered_json j;
  j["walk"] = mw.walk.values;
  j["parent"] = std::vector<int>(mw.tree.parent.begin() + 1, mw.tree.parent.end());
  auto marks = nlohmann::ordered_json::array();
  for (const auto& [x, y] : mw.marks.pts) marks.push_back({x, y});
  j["marks"] = std::move(marks);
  return j;
}

inline MarkedWalk marked_walk_from_json(const nlohmann::json& j) {
  MarkedWalk mw;
  const auto parent = j.at("parent").get<std::vector<int>>();
  mw.tree = RootedOrderedTree(static_cast<int>(parent.size()));
  std::copy(parent.begin(), parent.end(), mw.tree.parent.begin() + 1);
  for (int v = 1; v <= mw.tree.m; ++v)
    if (mw.tree.parent[static_cast<std::size_t>(v)] == 0) mw.tree.root = v;
  mw.walk.values = j.at("walk").get<std::vector<long long>>();
  for (const auto& p : j.at("marks"))
    mw.marks.add(p.at(0).get<long long>(), p.at(1).get<long long>());
  mw.marks.normalize();
  return mw;
}

}  // namespace crg
