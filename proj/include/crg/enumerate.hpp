#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "crg/exploration.hpp"
#include "crg/graph.hpp"

namespace crg {

// Standard Prufer decoding on labels 1..m (sequence length m - 2),
// re-rooted at vertex 1.
inline RootedOrderedTree prufer_decode(const std::vector<int>& seq, int m) {
  if (m < 1) throw std::invalid_argument("prufer_decode: m must be positive");
  if (static_cast<int>(seq.size()) != std::max(0, m - 2))
    throw std::invalid_argument("prufer_decode: wrong sequence length");
  LabeledGraph g(m);
  if (m >= 2) {
    std::vector<int> degree(static_cast<std::size_t>(m) + 1, 1);
    for (int s : seq) ++degree[static_cast<std::size_t>(s)];
    // ptr scans for leaves in increasing order; leaf tracks the current one
    int ptr = 1;
    while (degree[static_cast<std::size_t>(ptr)] != 1) ++ptr;
    int leaf = ptr;
    for (int s : seq) {
      g.add_edge(leaf, s);
      if (--degree[static_cast<std::size_t>(s)] == 1 && s < ptr) {
        leaf = s;
      } else {
        ++ptr;
        while (degree[static_cast<std::size_t>(ptr)] != 1) ++ptr;
        leaf = ptr;
      }
    }
    g.add_edge(leaf, m);
  }
  g.finalize();
  return depth_first_tree(g);
}

// All m^(m-2) labeled trees on [m], via Prufer sequences.
inline std::vector<RootedOrderedTree> all_trees(int m) {
  std::vector<RootedOrderedTree> out;
  if (m <= 2) {
    out.push_back(prufer_decode({}, m));
    return out;
  }
  std::vector<int> seq(static_cast<std::size_t>(m) - 2, 1);
  while (true) {
    out.push_back(prufer_decode(seq, m));
    std::size_t i = 0;
    while (i < seq.size() && seq[i] == m) seq[i++] = 1;
    if (i == seq.size()) break;
    ++seq[i];
  }
  return out;
}

// All connected labeled graphs on [m], by filtering edge subsets; meant
// for small m only (the count is 1, 1, 4, 38, 728, ...).
inline std::vector<LabeledGraph> all_connected_graphs(int m) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 1; u <= m; ++u)
    for (int v = u + 1; v <= m; ++v) pairs.emplace_back(u, v);
  if (pairs.size() > 24)
    throw std::invalid_argument("all_connected_graphs: m too large");
  std::vector<LabeledGraph> out;
  std::vector<int> comp(static_cast<std::size_t>(m) + 1);
  for (std::uint64_t mask = 0; mask < (1ull << pairs.size()); ++mask) {
    LabeledGraph g(m);
    for (std::size_t b = 0; b < pairs.size(); ++b)
      if (mask >> b & 1) g.add_edge(pairs[b].first, pairs[b].second);
    g.finalize();
    if (components(g).size() == 1) out.push_back(std::move(g));
  }
  return out;
}

// Number of connected labeled graphs on n vertices, by the usual
// recurrence C_n = 2^(n choose 2) - sum_k C(n-1, k-1) C_k 2^((n-k) choose 2).
inline std::vector<double> connected_graph_counts(int nmax) {
  std::vector<double> c(static_cast<std::size_t>(nmax) + 1, 0.0);
  auto choose2 = [](int k) { return static_cast<double>(k) * (k - 1) / 2.0; };
  std::vector<std::vector<double>> binom(static_cast<std::size_t>(nmax) + 1);
  for (int i = 0; i <= nmax; ++i) {
    binom[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i) + 1, 1.0);
    for (int j = 1; j < i; ++j)
      binom[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          binom[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(j) - 1] +
          binom[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(j)];
  }
  if (nmax >= 1) c[1] = 1.0;
  for (int n = 2; n <= nmax; ++n) {
    double total = std::pow(2.0, choose2(n));
    for (int k = 1; k < n; ++k)
      total -= binom[static_cast<std::size_t>(n) - 1][static_cast<std::size_t>(k) - 1] *
               c[static_cast<std::size_t>(k)] * std::pow(2.0, choose2(n - k));
    c[static_cast<std::size_t>(n)] = total;
  }
  return c;
}

}  // namespace crg
