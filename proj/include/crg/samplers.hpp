#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "crg/encoding.hpp"
#include "crg/enumerate.hpp"
#include "crg/exploration.hpp"
#include "crg/graph.hpp"
#include "crg/rng.hpp"
#include "crg/stats.hpp"

namespace crg {

// Uniform over the m^(m-2) labeled trees, rooted at 1.
inline RootedOrderedTree uniform_tree(int m, RngStream& rng) {
  if (m < 1) throw std::invalid_argument("uniform_tree: m must be positive");
  std::vector<int> seq(static_cast<std::size_t>(std::max(0, m - 2)));
  for (auto& s : seq) s = static_cast<int>(rng.uniform_int(1, m));
  return prufer_decode(seq, m);
}

// Exploration walk of a Poisson(1) Galton-Watson tree conditioned on total
// size m, built from m-1 uniforms on [0,m] by rotating the point set at the
// first minimum of |U cap [0,mu]| - mu. Values X_1..X_m; the walk stays
// nonnegative before step m and hits -1 exactly there. For m=1 the walk is
// empty.
inline LatticeExcursion rotation_walk(int m, RngStream& rng) {
  if (m < 1) throw std::invalid_argument("rotation_walk: m must be positive");
  LatticeExcursion x;
  x.kind = WalkKind::depth_first_walk;
  if (m == 1) return x;
  // only integer parts matter for the walk at integer times, and the
  // rotation amount is an integer, so bucket counts suffice
  std::vector<long long> count(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < m - 1; ++i) {
    const double u = rng.uniform(0.0, static_cast<double>(m));
    ++count[std::min<std::size_t>(static_cast<std::size_t>(u),
                                  static_cast<std::size_t>(m) - 1)];
  }
  long long s = 0, best = 0;
  int mu = 0;
  for (int j = 1; j <= m; ++j) {
    s += count[static_cast<std::size_t>(j) - 1] - 1;
    if (mu == 0 || s < best) {
      best = s;
      mu = j;
    }
  }
  x.values.reserve(static_cast<std::size_t>(m));
  long long run = 0;
  for (int i = 1; i <= m; ++i) {
    run += count[static_cast<std::size_t>((i - 1 + mu) % m)] - 1;
    x.values.push_back(run);
  }
  return x;
}

struct TiltedDiagnostics {
  double acceptance_rate = 0.0;
  double area_autocorr_time = 0.0;
  long long burn_in_steps = 0;
  long long thin = 1;
  bool converged = true;
};

// Samples labeled trees on [m] with probability proportional to
// (1-p)^(-area). Small m: enumerate all trees and use exact weights.
// Larger m: Metropolis chain whose proposal reparents a uniformly chosen
// non-root vertex onto a uniformly chosen other vertex (rejected outright
// when that would create a cycle; the proposal is symmetric).
class TiltedTreeSampler {
 public:
  enum class Strategy { exhaustive, metropolis };

  TiltedTreeSampler(int m, double p, int exhaustive_threshold = 8,
                    long long burn_in = -1, long long thin = 0,
                    double convergence_fraction = 0.05)
      : m_(m), p_(p), thin_(thin), convergence_fraction_(convergence_fraction) {
    if (m < 1) throw std::invalid_argument("TiltedTreeSampler: m must be positive");
    if (!(p > 0.0 && p < 1.0))
      throw std::invalid_argument("TiltedTreeSampler: p must lie in (0,1)");
    burn_in_ = burn_in >= 0 ? burn_in : 50ll * m;
    strategy_ = m <= exhaustive_threshold ? Strategy::exhaustive
                                          : Strategy::metropolis;
    if (strategy_ == Strategy::exhaustive) {
      trees_ = all_trees(m);
      weights_.reserve(trees_.size());
      for (const auto& t : trees_)
        weights_.push_back(
            std::pow(1.0 - p, -static_cast<double>(area(t))));
      pick_ = std::discrete_distribution<std::size_t>(weights_.begin(),
                                                      weights_.end());
    } else {
      current_ = RootedOrderedTree(m);
      children_.assign(static_cast<std::size_t>(m) + 1, {});
      for (int v = 2; v <= m; ++v) {
        current_.parent[static_cast<std::size_t>(v)] = v - 1;
        children_[static_cast<std::size_t>(v) - 1].push_back(v);
      }
      stack_.reserve(static_cast<std::size_t>(m));
      current_area_ = area_from_children();
    }
  }

  Strategy strategy() const { return strategy_; }
  const std::vector<RootedOrderedTree>& trees() const { return trees_; }
  const std::vector<double>& weights() const { return weights_; }
  const TiltedDiagnostics& diagnostics() const { return diag_; }

  RootedOrderedTree sample(RngStream& rng) {
    if (strategy_ == Strategy::exhaustive) return trees_[pick_(rng)];
    if (!warm_) {
      warm_up(rng);
      warm_ = true;
    }
    for (long long i = 0; i < diag_.thin; ++i) step(rng);
    return current_;
  }

 private:
  // area via the stack-size process of the ordered exploration; O(m)
  long long area_from_children() {
    long long a = 0;
    stack_.clear();
    stack_.push_back(1);
    while (!stack_.empty()) {
      const int v = stack_.back();
      stack_.pop_back();
      a += static_cast<long long>(stack_.size());
      const auto& cs = children_[static_cast<std::size_t>(v)];
      for (auto it = cs.rbegin(); it != cs.rend(); ++it) stack_.push_back(*it);
    }
    return a;
  }

  void reparent(int v, int from, int to) {
    auto& src = children_[static_cast<std::size_t>(from)];
    src.erase(std::find(src.begin(), src.end(), v));
    auto& dst = children_[static_cast<std::size_t>(to)];
    dst.insert(std::lower_bound(dst.begin(), dst.end(), v), v);
    current_.parent[static_cast<std::size_t>(v)] = to;
  }

  void step(RngStream& rng) {
    ++proposals_;
    const int v = static_cast<int>(rng.uniform_int(2, m_));  // root stays fixed
    int u = static_cast<int>(rng.uniform_int(1, m_ - 1));
    if (u >= v) ++u;
    // reject if u sits below v (reparenting would create a cycle)
    for (int w = u; w != 0; w = current_.parent[static_cast<std::size_t>(w)])
      if (w == v) return;
    const int old = current_.parent[static_cast<std::size_t>(v)];
    if (old == u) {
      ++accepts_;
      return;
    }
    reparent(v, old, u);
    const long long a_new = area_from_children();
    const double log_ratio =
        static_cast<double>(current_area_ - a_new) * std::log1p(-p_);
    if (log_ratio >= 0.0 || std::log(rng.uniform()) < log_ratio) {
      ++accepts_;
      current_area_ = a_new;
    } else {
      reparent(v, u, old);
    }
  }

  void warm_up(RngStream& rng) {
    std::vector<double> areas;
    areas.reserve(static_cast<std::size_t>(burn_in_));
    for (long long i = 0; i < burn_in_; ++i) {
      step(rng);
      areas.push_back(static_cast<double>(current_area_));
    }
    diag_.burn_in_steps = burn_in_;
    // estimate on the second half only, past the transient
    const std::vector<double> tail(areas.begin() + static_cast<long long>(areas.size()) / 2,
                                   areas.end());
    diag_.area_autocorr_time = stats::autocorrelation_time(tail);
    diag_.thin = thin_ > 0 ? thin_
                           : std::max<long long>(
                                 1, static_cast<long long>(
                                        std::ceil(diag_.area_autocorr_time)));
    diag_.converged = diag_.area_autocorr_time <=
                      convergence_fraction_ * static_cast<double>(burn_in_);
    diag_.acceptance_rate =
        proposals_ > 0 ? static_cast<double>(accepts_) /
                             static_cast<double>(proposals_)
                       : 0.0;
  }

  int m_;
  double p_;
  Strategy strategy_ = Strategy::exhaustive;
  long long burn_in_ = 0;
  long long thin_ = 0;
  double convergence_fraction_;

  std::vector<RootedOrderedTree> trees_;
  std::vector<double> weights_;
  std::discrete_distribution<std::size_t> pick_;

  RootedOrderedTree current_;
  std::vector<std::vector<int>> children_;
  std::vector<int> stack_;
  long long current_area_ = 0;
  long long proposals_ = 0;
  long long accepts_ = 0;
  bool warm_ = false;
  TiltedDiagnostics diag_;
};

inline RootedOrderedTree tilted_tree(int m, double p, TiltedTreeSampler& sampler,
                                     RngStream& rng) {
  (void)m;
  (void)p;
  return sampler.sample(rng);
}

// Q cap X for a Binomial pointset of intensity p: each lattice point (i, j)
// with 1 <= j <= X(i) kept independently with probability p. Sampled as one
// Binomial(area, p) count plus uniform distinct positions, so cost scales
// with the number of kept points, not the area.
inline PointSet binomial_pointset(const LatticeExcursion& walk, double p,
                                  RngStream& rng) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("binomial_pointset: p must lie in [0,1]");
  PointSet q;
  std::vector<long long> prefix(walk.values.size() + 1, 0);
  for (std::size_t i = 0; i < walk.values.size(); ++i)
    prefix[i + 1] = prefix[i] + std::max<long long>(0, walk.values[i]);
  const long long total = prefix.back();
  if (total == 0) return q;
  long long k;
  if (p >= 1.0) {
    k = total;
  } else {
    std::binomial_distribution<long long> bin(total, p);
    k = bin(rng);
  }
  std::unordered_set<long long> chosen;
  chosen.reserve(static_cast<std::size_t>(k) * 2);
  while (static_cast<long long>(chosen.size()) < k)
    chosen.insert(rng.uniform_int(0, total - 1));
  for (long long idx : chosen) {
    const auto it = std::upper_bound(prefix.begin(), prefix.end(), idx);
    const auto i = static_cast<long long>(it - prefix.begin()) - 1;
    q.add(i, idx - prefix[static_cast<std::size_t>(i)] + 1);
  }
  q.normalize();
  return q;
}

// Connected component of G(n,p) conditioned to have m vertices, built as
// tilted tree + Binomial marks + decode.
inline Component sample_component(int m, double p, TiltedTreeSampler& sampler,
                                  RngStream& rng) {
  const RootedOrderedTree t = sampler.sample(rng);
  const PointSet q = binomial_pointset(tree_walk(t), p, rng);
  Component c;
  c.size = m;
  c.surplus = static_cast<int>(q.size());
  c.vertices.resize(static_cast<std::size_t>(m));
  for (int v = 1; v <= m; ++v) c.vertices[static_cast<std::size_t>(v) - 1] = v;
  c.graph = decode_gx(t, q);
  return c;
}

inline Component sample_component(int m, double p, RngStream& rng) {
  TiltedTreeSampler sampler(m, p);
  return sample_component(m, p, sampler, rng);
}

// Surplus only (mark count of the sampled component); skips the decode.
inline int sample_surplus(double p, TiltedTreeSampler& sampler, RngStream& rng) {
  const RootedOrderedTree t = sampler.sample(rng);
  return static_cast<int>(binomial_pointset(tree_walk(t), p, rng).size());
}

// Brute-force ground truth: draw G(n,p), pick a uniform component, accept
// iff its size is m.
inline Component oracle_component(int n, double p, int m, RngStream& rng,
                                  long long attempt_budget = 10'000'000) {
  if (m > n) throw std::invalid_argument("oracle_component: m > n");
  for (long long attempt = 0; attempt < attempt_budget; ++attempt) {
    const LabeledGraph g = generate_gnp(n, p, rng);
    auto comps = components(g);
    const auto pick =
        static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(comps.size()) - 1));
    if (comps[pick].size == m) return std::move(comps[pick]);
  }
  throw std::runtime_error("oracle_component: attempt budget exhausted");
}

}  // namespace crg
