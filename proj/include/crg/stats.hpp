#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

namespace crg::stats {

// Kahan-compensated mean; order-independent up to rounding of the
// compensation itself.
inline double mean(const std::vector<double>& xs) {
  double sum = 0.0, comp = 0.0;
  for (double x : xs) {
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
}

inline double variance(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double mu = mean(xs);
  double acc = 0.0;
  for (double x : xs) acc += (x - mu) * (x - mu);
  return acc / static_cast<double>(xs.size() - 1);
}

inline double stderr_of_mean(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  return std::sqrt(variance(xs) / static_cast<double>(xs.size()));
}

// Two-sample Kolmogorov-Smirnov statistic sup_x |F_a(x) - F_b(x)|.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

// One-sample KS statistic against the uniform distribution on [0,1].
inline double ks_uniform01(std::vector<double> xs) {
  if (xs.empty()) throw std::invalid_argument("ks_uniform01: empty sample");
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    d = std::max(d, std::abs(xs[i] - i / n));
    d = std::max(d, std::abs((i + 1) / n - xs[i]));
  }
  return d;
}

// Upper-tail p-value of a chi-square statistic with df degrees of freedom.
inline double chi_square_pvalue(double statistic, double df) {
  if (statistic <= 0.0) return 1.0;
  return boost::math::gamma_q(df / 2.0, statistic / 2.0);
}

struct ChiSquareResult {
  double statistic;
  double df;
  double pvalue;
};

// observed counts against expected counts (same length, expected > 0)
inline ChiSquareResult chi_square_gof(const std::vector<double>& observed,
                                      const std::vector<double>& expected) {
  if (observed.size() != expected.size() || observed.empty())
    throw std::invalid_argument("chi_square_gof: size mismatch");
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0.0)
      throw std::invalid_argument("chi_square_gof: nonpositive expected count");
    const double diff = observed[i] - expected[i];
    stat += diff * diff / expected[i];
  }
  const double df = static_cast<double>(observed.size() - 1);
  return {stat, df, chi_square_pvalue(stat, df)};
}

// Total variation distance between two empirical distributions over an
// arbitrary discrete key type.
template <typename Key>
inline double total_variation(const std::map<Key, std::size_t>& a,
                              std::size_t na,
                              const std::map<Key, std::size_t>& b,
                              std::size_t nb) {
  double tv = 0.0;
  auto weight = [](const std::map<Key, std::size_t>& m, const Key& k,
                   std::size_t n) {
    auto it = m.find(k);
    return it == m.end() ? 0.0
                         : static_cast<double>(it->second) /
                               static_cast<double>(n);
  };
  for (const auto& [k, _] : a) tv += std::abs(weight(a, k, na) - weight(b, k, nb));
  for (const auto& [k, _] : b)
    if (a.find(k) == a.end()) tv += weight(b, k, nb);
  return tv / 2.0;
}

// Integrated autocorrelation time via the initial-positive-sequence
// estimator on a scalar chain trace.
inline double autocorrelation_time(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  if (n < 8) return 1.0;
  const double mu = mean(xs);
  auto cov = [&](std::size_t lag) {
    double acc = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i)
      acc += (xs[i] - mu) * (xs[i + lag] - mu);
    return acc / static_cast<double>(n - lag);
  };
  const double c0 = cov(0);
  if (c0 <= 0.0) return 1.0;
  double tau = 1.0;
  for (std::size_t lag = 1; lag < n / 2; ++lag) {
    const double rho = cov(lag) / c0;
    if (rho <= 0.0) break;  // initial positive sequence
    tau += 2.0 * rho;
  }
  return tau;
}

struct LinearFit {
  double slope;
  double intercept;
};

inline LinearFit fit_line(const std::vector<double>& x,
                          const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_line: need >= 2 points");
  const double mx = mean(x), my = mean(y);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

}  // namespace crg::stats
