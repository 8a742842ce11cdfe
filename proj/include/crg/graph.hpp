#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "crg/rng.hpp"

namespace crg {

// Simple undirected graph on vertices {1..n}, adjacency lists sorted
// ascending so that ordered exploration tie-breaking is deterministic.
struct LabeledGraph {
  int n = 0;
  std::vector<std::vector<int>> adj;  // adj[0] unused
  std::size_t edge_count = 0;

  LabeledGraph() = default;
  explicit LabeledGraph(int n_) : n(n_), adj(static_cast<std::size_t>(n_) + 1) {}

  void add_edge(int u, int v) {
    if (u == v) throw std::invalid_argument("add_edge: self-loop");
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
    ++edge_count;
  }

  // sorts adjacency lists; must be called after the last add_edge
  void finalize() {
    for (auto& lst : adj) std::sort(lst.begin(), lst.end());
  }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count);
    for (int u = 1; u <= n; ++u)
      for (int v : adj[static_cast<std::size_t>(u)])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  bool has_edge(int u, int v) const {
    const auto& lst = adj[static_cast<std::size_t>(u)];
    return std::binary_search(lst.begin(), lst.end(), v);
  }

  bool operator==(const LabeledGraph& o) const {
    return n == o.n && adj == o.adj;
  }
};

struct Component {
  std::vector<int> vertices;  // original labels, ascending
  LabeledGraph graph;         // induced subgraph relabeled to {1..m}
  int size = 0;
  int surplus = 0;
  int root = 1;  // relabeled vertex of smallest original label
};

struct FiniteMetricSpace {
  std::size_t n = 0;
  std::size_t root = 0;
  std::vector<double> d;  // row-major n*n

  FiniteMetricSpace() = default;
  explicit FiniteMetricSpace(std::size_t n_)
      : n(n_), d(n_ * n_, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return d[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return d[i * n + j]; }

  double diameter() const {
    double m = 0.0;
    for (double x : d) m = std::max(m, x);
    return m;
  }
};

// G(n,p) via geometric skips over the lexicographic pair order, so the
// expected cost is O(n + #edges) even at p ~ 1/n.
inline LabeledGraph generate_gnp(int n, double p, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("generate_gnp: n < 1");
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("generate_gnp: p outside [0,1]");
  LabeledGraph g(n);
  if (p == 0.0) return g;
  if (p == 1.0) {
    for (int u = 1; u <= n; ++u)
      for (int v = u + 1; v <= n; ++v) g.add_edge(u, v);
    g.finalize();
    return g;
  }
  const double log1mp = std::log1p(-p);
  int u = 1, v = 1;  // current position; next candidate is v+1 in row u
  while (u < n) {
    const double r = 1.0 - rng.uniform();  // in (0,1]
    auto skip = static_cast<long long>(std::floor(std::log(r) / log1mp));
    long long step = skip + 1;
    while (u < n && step > static_cast<long long>(n - v)) {
      step -= n - v;
      ++u;
      v = u;
    }
    if (u >= n) break;
    v += static_cast<int>(step);
    g.add_edge(u, v);
  }
  g.finalize();
  return g;
}

inline LabeledGraph generate_gnp(int n, double p, std::uint64_t seed) {
  RngStream rng(seed);
  return generate_gnp(n, p, rng);
}

namespace detail {

// order-preserving relabeling of a sorted vertex set to {1..m}
inline Component build_component(const LabeledGraph& g, std::vector<int> mem) {
  Component c;
  c.size = static_cast<int>(mem.size());
  c.graph = LabeledGraph(c.size);
  std::size_t ne = 0;
  for (int i = 0; i < c.size; ++i) {
    const int u = mem[static_cast<std::size_t>(i)];
    for (int v : g.adj[static_cast<std::size_t>(u)]) {
      if (v > u) {
        const auto it = std::lower_bound(mem.begin(), mem.end(), v);
        c.graph.add_edge(i + 1, static_cast<int>(it - mem.begin()) + 1);
        ++ne;
      }
    }
  }
  c.graph.finalize();
  c.surplus = static_cast<int>(ne) - (c.size - 1);
  c.vertices = std::move(mem);
  c.root = 1;
  return c;
}

}  // namespace detail

// Largest component only (ties by smallest label); avoids materializing
// every small component.
inline Component largest_component(const LabeledGraph& g) {
  std::vector<char> seen(static_cast<std::size_t>(g.n) + 1, 0);
  std::vector<int> queue, best;
  for (int s = 1; s <= g.n; ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    queue.clear();
    queue.push_back(s);
    seen[static_cast<std::size_t>(s)] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (int v : g.adj[static_cast<std::size_t>(queue[head])])
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          queue.push_back(v);
        }
    if (queue.size() > best.size()) best = queue;
  }
  std::sort(best.begin(), best.end());
  return detail::build_component(g, std::move(best));
}

// Components sorted by size descending, ties by smallest original label.
inline std::vector<Component> components(const LabeledGraph& g) {
  std::vector<int> comp_id(static_cast<std::size_t>(g.n) + 1, -1);
  std::vector<std::vector<int>> members;
  std::vector<int> queue;
  for (int s = 1; s <= g.n; ++s) {
    if (comp_id[static_cast<std::size_t>(s)] >= 0) continue;
    const int id = static_cast<int>(members.size());
    members.emplace_back();
    queue.clear();
    queue.push_back(s);
    comp_id[static_cast<std::size_t>(s)] = id;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int u = queue[head];
      members[static_cast<std::size_t>(id)].push_back(u);
      for (int v : g.adj[static_cast<std::size_t>(u)]) {
        if (comp_id[static_cast<std::size_t>(v)] < 0) {
          comp_id[static_cast<std::size_t>(v)] = id;
          queue.push_back(v);
        }
      }
    }
  }
  std::vector<Component> out;
  out.reserve(members.size());
  for (auto& mem : members) {
    std::sort(mem.begin(), mem.end());
    out.push_back(detail::build_component(g, std::move(mem)));
  }
  std::sort(out.begin(), out.end(), [](const Component& a, const Component& b) {
    if (a.size != b.size) return a.size > b.size;
    return a.vertices.front() < b.vertices.front();
  });
  return out;
}

namespace detail {

// single-source BFS over a connected graph; dist must be sized n+1
inline int bfs_fill(const LabeledGraph& g, int src, std::vector<int>& dist,
                    std::vector<int>& queue, std::vector<int>* parent = nullptr) {
  std::fill(dist.begin(), dist.end(), -1);
  queue.clear();
  queue.push_back(src);
  dist[static_cast<std::size_t>(src)] = 0;
  if (parent) (*parent)[static_cast<std::size_t>(src)] = 0;
  int ecc = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int u = queue[head];
    const int du = dist[static_cast<std::size_t>(u)];
    ecc = std::max(ecc, du);
    for (int v : g.adj[static_cast<std::size_t>(u)]) {
      if (dist[static_cast<std::size_t>(v)] < 0) {
        dist[static_cast<std::size_t>(v)] = du + 1;
        if (parent) (*parent)[static_cast<std::size_t>(v)] = u;
        queue.push_back(v);
      }
    }
  }
  return ecc;
}

}  // namespace detail

// Exact diameter of a connected graph: double sweep for a lower bound,
// then iFUB-style verification by sweeping levels from the top.
inline int exact_diameter(const LabeledGraph& g) {
  if (g.n <= 1) return 0;
  std::vector<int> dist(static_cast<std::size_t>(g.n) + 1);
  std::vector<int> parent(static_cast<std::size_t>(g.n) + 1);
  std::vector<int> queue;
  queue.reserve(static_cast<std::size_t>(g.n));

  detail::bfs_fill(g, 1, dist, queue);
  int u = 1;
  for (int v = 1; v <= g.n; ++v)
    if (dist[static_cast<std::size_t>(v)] > dist[static_cast<std::size_t>(u)])
      u = v;
  const int ecc_u = detail::bfs_fill(g, u, dist, queue, &parent);
  int w = u;
  for (int v = 1; v <= g.n; ++v)
    if (dist[static_cast<std::size_t>(v)] > dist[static_cast<std::size_t>(w)])
      w = v;
  int lb = ecc_u;
  // midpoint of the u--w double-sweep path
  int mid = w;
  for (int step = 0; step < ecc_u / 2; ++step)
    mid = parent[static_cast<std::size_t>(mid)];

  std::vector<int> mid_dist(static_cast<std::size_t>(g.n) + 1);
  const int ecc_mid = detail::bfs_fill(g, mid, mid_dist, queue);
  std::vector<std::vector<int>> levels(static_cast<std::size_t>(ecc_mid) + 1);
  for (int v = 1; v <= g.n; ++v)
    levels[static_cast<std::size_t>(mid_dist[static_cast<std::size_t>(v)])]
        .push_back(v);

  for (int i = ecc_mid; i > 0; --i) {
    if (2 * i <= lb) break;  // no vertex below can extend the diameter
    for (int v : levels[static_cast<std::size_t>(i)])
      lb = std::max(lb, detail::bfs_fill(g, v, dist, queue));
  }
  return lb;
}

struct DistanceStats {
  FiniteMetricSpace space;
  int diameter = 0;
  std::vector<int> sources;  // original (relabeled) vertices used as points
};

// Graph distances by BFS per vertex, or per sampled vertex when the
// component exceeds the cap (then the diameter is still exact).
inline DistanceStats distance_stats(const Component& c, int source_cap = 512,
                                    std::uint64_t sample_seed = 0) {
  const LabeledGraph& g = c.graph;
  DistanceStats out;
  const int m = g.n;
  std::vector<int> srcs;
  if (m <= source_cap) {
    srcs.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) srcs[static_cast<std::size_t>(i)] = i + 1;
  } else {
    RngStream rng(sample_seed, 0x9d15);
    std::vector<int> all(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) all[static_cast<std::size_t>(i)] = i + 1;
    std::shuffle(all.begin(), all.end(), rng.engine());
    srcs.assign(all.begin(), all.begin() + source_cap);
    std::sort(srcs.begin(), srcs.end());
    if (srcs.front() != 1) srcs.front() = 1;  // keep the root as a point
  }
  const std::size_t k = srcs.size();
  out.space = FiniteMetricSpace(k);
  out.space.root = 0;
  std::vector<int> dist(static_cast<std::size_t>(m) + 1);
  std::vector<int> queue;
  int max_seen = 0;
  for (std::size_t i = 0; i < k; ++i) {
    detail::bfs_fill(g, srcs[i], dist, queue);
    for (std::size_t j = 0; j < k; ++j) {
      const int dv = dist[static_cast<std::size_t>(srcs[j])];
      if (dv < 0) throw std::invalid_argument("distance_stats: disconnected");
      out.space.at(i, j) = dv;
      max_seen = std::max(max_seen, dv);
    }
  }
  out.diameter = (m <= source_cap) ? max_seen : exact_diameter(g);
  out.sources = std::move(srcs);
  return out;
}

// --- edge-list serialization: header "n m", then one "u v" per line ---

inline void write_edge_list(std::ostream& os, const LabeledGraph& g) {
  os << g.n << ' ' << g.edge_count << '\n';
  for (const auto& [u, v] : g.edges()) os << u << ' ' << v << '\n';
}

inline LabeledGraph read_edge_list(std::istream& is) {
  int n = 0;
  std::size_t m = 0;
  if (!(is >> n >> m)) throw std::runtime_error("edge list: bad header");
  LabeledGraph g(n);
  for (std::size_t i = 0; i < m; ++i) {
    int u = 0, v = 0;
    if (!(is >> u >> v)) throw std::runtime_error("edge list: truncated");
    if (u < 1 || v < 1 || u > n || v > n || u == v)
      throw std::runtime_error("edge list: bad edge");
    if (u > v) std::swap(u, v);
    g.add_edge(u, v);
  }
  g.finalize();
  return g;
}

}  // namespace crg
