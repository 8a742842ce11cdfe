#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "crg/continuum.hpp"
#include "crg/graph.hpp"

namespace crg {

// Hausdorff distance between finite planar point sets under the Euclidean
// metric. Two empty sets are at distance 0; one-sided empty is an error.
inline double hausdorff(const PlanarPoints& a, const PlanarPoints& b) {
  if (a.pts.empty() && b.pts.empty()) return 0.0;
  if (a.pts.empty() || b.pts.empty())
    throw std::invalid_argument("hausdorff: one set is empty");
  auto directed = [](const PlanarPoints& from, const PlanarPoints& to) {
    double worst = 0.0;
    for (const auto& [x1, y1] : from.pts) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& [x2, y2] : to.pts)
        best = std::min(best, std::hypot(x1 - x2, y1 - y2));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

// Relation between the index sets of two finite metric spaces; every point
// of each space must appear in at least one pair.
struct Correspondence {
  std::vector<std::pair<std::size_t, std::size_t>> relation;

  static Correspondence identity(std::size_t n) {
    Correspondence c;
    c.relation.reserve(n);
    for (std::size_t i = 0; i < n; ++i) c.relation.emplace_back(i, i);
    return c;
  }
};

// sup over pairs of related pairs of |d_A(x,x') - d_B(y,y')|; twice the
// Gromov-Hausdorff distance is at most this.
inline double distortion(const Correspondence& c, const FiniteMetricSpace& a,
                         const FiniteMetricSpace& b) {
  std::vector<char> cov_a(a.n, 0), cov_b(b.n, 0);
  for (const auto& [i, j] : c.relation) {
    if (i >= a.n || j >= b.n)
      throw std::invalid_argument("distortion: index out of range");
    cov_a[i] = 1;
    cov_b[j] = 1;
  }
  if (std::find(cov_a.begin(), cov_a.end(), 0) != cov_a.end() ||
      std::find(cov_b.begin(), cov_b.end(), 0) != cov_b.end())
    throw std::invalid_argument("distortion: correspondence does not cover");
  double worst = 0.0;
  for (const auto& [i1, j1] : c.relation)
    for (const auto& [i2, j2] : c.relation)
      worst = std::max(worst, std::abs(a.at(i1, i2) - b.at(j1, j2)));
  return worst;
}

inline double gh_upper(const Correspondence& c, const FiniteMetricSpace& a,
                       const FiniteMetricSpace& b) {
  return distortion(c, a, b) / 2.0;
}

// |diam A - diam B| / 2; valid lower bound for any GH upper estimate.
inline double gh_lower(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
  return std::abs(a.diameter() - b.diameter()) / 2.0;
}

// Fourth-root of the sum of fourth powers of per-index estimates.
inline double sequence_distance(const std::vector<double>& per_index) {
  double s = 0.0;
  for (double d : per_index) s += d * d * d * d;
  return std::pow(s, 0.25);
}

}  // namespace crg
