#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include <json.hpp>

#include "crg/graph.hpp"
#include "crg/rng.hpp"
#include "crg/stats.hpp"

namespace crg {

enum class ExcursionKind { standard, tilted, extracted };

// Nonnegative path on an equally spaced grid over [0, sigma], zero at both
// ends.
struct Excursion {
  double sigma = 1.0;
  std::vector<double> values;  // N+1 values
  ExcursionKind kind = ExcursionKind::standard;
  double ess = 0.0;  // effective sample size when kind == tilted

  std::size_t grid_points() const { return values.size(); }
  double dt() const {
    return sigma / static_cast<double>(values.size() - 1);
  }

  double at(double t) const {
    if (values.empty() || t <= 0.0 || t >= sigma) return 0.0;
    const double u = t / dt();
    const auto i = static_cast<std::size_t>(u);
    if (i + 1 >= values.size()) return values.back();
    const double frac = u - static_cast<double>(i);
    return values[i] + frac * (values[i + 1] - values[i]);
  }

  double max() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, v);
    return m;
  }

  // trapezoid rule
  double integral() const {
    if (values.size() < 2) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
      s += 0.5 * (values[i] + values[i + 1]);
    return s * dt();
  }

  // largest |h(r) - h(r')| over grid pairs with |r - r'| <= delta
  double modulus(double delta) const {
    if (values.size() < 2 || delta <= 0.0) return 0.0;
    const auto w = static_cast<std::size_t>(delta / dt());
    double best = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      double lo = values[i], hi = values[i];
      for (std::size_t j = i + 1; j < values.size() && j <= i + w; ++j) {
        lo = std::min(lo, values[j]);
        hi = std::max(hi, values[j]);
      }
      best = std::max(best, hi - lo);
    }
    return best;
  }
};

inline void write_excursion_csv(std::ostream& os, const Excursion& e) {
  os << "t,value\n";
  const double dt = e.dt();
  for (std::size_t i = 0; i < e.values.size(); ++i)
    os << static_cast<double>(i) * dt << ',' << e.values[i] << '\n';
}

// Brownian excursion of length sigma on an N-grid: Vervaat transform of a
// Brownian bridge (rotate at the argmin), then sqrt(sigma) e(s/sigma).
inline Excursion brownian_excursion(double sigma, std::size_t n_steps,
                                    RngStream& rng) {
  if (sigma <= 0.0) throw std::invalid_argument("brownian_excursion: sigma <= 0");
  if (n_steps < 2) throw std::invalid_argument("brownian_excursion: N < 2");
  const double sd = std::sqrt(1.0 / static_cast<double>(n_steps));
  std::vector<double> w(n_steps + 1, 0.0);
  for (std::size_t i = 1; i <= n_steps; ++i)
    w[i] = w[i - 1] + rng.gaussian(0.0, sd);
  // bridge
  const double drift = w[n_steps] / static_cast<double>(n_steps);
  std::size_t argmin = 0;
  for (std::size_t i = 0; i <= n_steps; ++i) {
    w[i] -= drift * static_cast<double>(i);
    if (w[i] < w[argmin]) argmin = i;
  }
  Excursion e;
  e.sigma = sigma;
  e.kind = ExcursionKind::standard;
  e.values.assign(n_steps + 1, 0.0);
  const double scale = std::sqrt(sigma);
  const double lo = w[argmin];
  for (std::size_t i = 1; i < n_steps; ++i)
    e.values[i] = scale * (w[(argmin + i) % n_steps] - lo);
  return e;
}

// Sampling-importance-resampling draw from the law reweighted by
// exp(int e): K proposals, weights w_i = exp(int e_i), one resample.
// The effective sample size (sum w)^2 / sum w^2 is recorded on the result.
inline Excursion tilted_excursion(double sigma, std::size_t n_steps,
                                  std::size_t k_proposals, RngStream& rng,
                                  double ess_floor = 0.0,
                                  bool* ess_warning = nullptr) {
  if (k_proposals < 2)
    throw std::invalid_argument("tilted_excursion: need K >= 2 proposals");
  Excursion chosen;
  double sum_w = 0.0, sum_w2 = 0.0;
  for (std::size_t i = 0; i < k_proposals; ++i) {
    Excursion e = brownian_excursion(sigma, n_steps, rng);
    const double w = std::exp(e.integral());
    sum_w += w;
    sum_w2 += w * w;
    // weighted reservoir of size one; only a single proposal is kept
    if (rng.uniform() * sum_w < w) chosen = std::move(e);
  }
  chosen.kind = ExcursionKind::tilted;
  chosen.ess = sum_w * sum_w / sum_w2;
  if (ess_warning != nullptr) *ess_warning = chosen.ess < ess_floor;
  return chosen;
}

// Reusable proposal pool for repeated tilted draws: stores only (stream id,
// weight) per proposal, and regenerates the chosen excursion from its
// stream, so memory stays O(K) regardless of grid size.
class TiltedExcursionPool {
 public:
  TiltedExcursionPool(double sigma, std::size_t n_steps, std::size_t k_proposals,
                      std::uint64_t seed, std::uint64_t stream_base = 1u << 20)
      : sigma_(sigma), n_steps_(n_steps), seed_(seed), stream_base_(stream_base) {
    if (k_proposals < 2)
      throw std::invalid_argument("TiltedExcursionPool: need K >= 2 proposals");
    weights_.reserve(k_proposals);
    integrals_.reserve(k_proposals);
    double sum_w = 0.0, sum_w2 = 0.0;
    for (std::size_t i = 0; i < k_proposals; ++i) {
      RngStream prop(seed_, stream_base_ + i);
      const double a = brownian_excursion(sigma_, n_steps_, prop).integral();
      const double w = std::exp(a);
      integrals_.push_back(a);
      weights_.push_back(w);
      sum_w += w;
      sum_w2 += w * w;
    }
    ess_ = sum_w * sum_w / sum_w2;
    pick_ = std::discrete_distribution<std::size_t>(weights_.begin(),
                                                    weights_.end());
  }

  double ess() const { return ess_; }
  const std::vector<double>& integrals() const { return integrals_; }
  const std::vector<double>& weights() const { return weights_; }

  // self-normalized estimate of E[int e-tilde]
  double mean_integral() const {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      num += weights_[i] * integrals_[i];
      den += weights_[i];
    }
    return num / den;
  }

  Excursion draw(RngStream& rng) {
    const std::size_t i = pick_(rng);
    RngStream prop(seed_, stream_base_ + i);
    Excursion e = brownian_excursion(sigma_, n_steps_, prop);
    e.kind = ExcursionKind::tilted;
    e.ess = ess_;
    return e;
  }

 private:
  double sigma_;
  std::size_t n_steps_;
  std::uint64_t seed_;
  std::uint64_t stream_base_;
  std::vector<double> weights_;
  std::vector<double> integrals_;
  std::discrete_distribution<std::size_t> pick_;
  double ess_ = 0.0;
};

// W^lambda(t) = W(t) + lambda t - t^2/2 on a dt-grid, plus its reflection
// above the running minimum.
struct ParabolicPath {
  double lambda = 0.0;
  double horizon = 0.0;
  double dt = 0.0;
  std::vector<double> w;  // W^lambda
  std::vector<double> b;  // reflected
};

inline ParabolicPath reflected_parabolic(double lambda, double horizon, double dt,
                                         RngStream& rng,
                                         double noise_scale = 1.0) {
  if (horizon <= 0.0 || dt <= 0.0)
    throw std::invalid_argument("reflected_parabolic: need T > 0, dt > 0");
  ParabolicPath p;
  p.lambda = lambda;
  p.horizon = horizon;
  p.dt = dt;
  const auto n = static_cast<std::size_t>(horizon / dt);
  p.w.resize(n + 1);
  p.b.resize(n + 1);
  const double sd = std::sqrt(dt) * noise_scale;
  double brownian = 0.0, run_min = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) * dt;
    if (i > 0) brownian += rng.gaussian(0.0, sd);
    p.w[i] = brownian + lambda * t - 0.5 * t * t;
    run_min = std::min(run_min, p.w[i]);
    p.b[i] = p.w[i] - run_min;
  }
  return p;
}

struct ExtractedExcursion {
  double start = 0.0;
  double length = 0.0;
  bool truncated = false;
  Excursion exc;
};

// Maximal grid runs where the reflected path is strictly positive, sorted
// by length descending (ties by start time). Lengths count positive grid
// points times dt. A run still open at the horizon is flagged truncated.
inline std::vector<ExtractedExcursion> extract_excursions(
    const ParabolicPath& p) {
  std::vector<ExtractedExcursion> out;
  const std::size_t n = p.b.size();
  std::size_t i = 0;
  while (i < n) {
    if (p.b[i] <= 0.0) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && p.b[j + 1] > 0.0) ++j;
    ExtractedExcursion ex;
    ex.start = static_cast<double>(i) * p.dt;
    ex.length = static_cast<double>(j - i + 1) * p.dt;
    ex.truncated = (j + 1 == n);
    ex.exc.sigma = ex.length;
    ex.exc.kind = ExcursionKind::extracted;
    ex.exc.values.assign(j - i + 2, 0.0);
    for (std::size_t t = i; t < j; ++t) ex.exc.values[t - i + 1] = p.b[t + 1];
    out.push_back(std::move(ex));
    i = j + 1;
  }
  std::sort(out.begin(), out.end(),
            [](const ExtractedExcursion& a, const ExtractedExcursion& b) {
              if (a.length != b.length) return a.length > b.length;
              return a.start < b.start;
            });
  return out;
}

// Finite planar point collection with positive heights.
struct PlanarPoints {
  std::vector<std::pair<double, double>> pts;
  std::size_t size() const { return pts.size(); }
};

// Unit-rate planar Poisson process restricted under the graph of h:
// Poisson(sigma * hmax) points in the bounding rectangle, thinned to y < h(x).
inline PlanarPoints poisson_under(const Excursion& h, RngStream& rng) {
  PlanarPoints q;
  const double hmax = h.max();
  if (hmax <= 0.0) return q;
  std::poisson_distribution<long long> pois(h.sigma * hmax);
  const long long n = pois(rng);
  for (long long i = 0; i < n; ++i) {
    const double x = rng.uniform(0.0, h.sigma);
    const double y = rng.uniform(0.0, hmax);
    if (y < h.at(x)) q.pts.emplace_back(x, y);
  }
  return q;
}

namespace detail {

// O(1) range-minimum over the excursion grid
class SparseTableMin {
 public:
  explicit SparseTableMin(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::size_t levels = 1;
    while ((1u << levels) <= n) ++levels;
    table_.resize(levels);
    table_[0] = v;
    for (std::size_t k = 1; k < levels; ++k) {
      const std::size_t len = 1u << k;
      if (len > n) break;
      table_[k].resize(n - len + 1);
      for (std::size_t i = 0; i + len <= n; ++i)
        table_[k][i] =
            std::min(table_[k - 1][i], table_[k - 1][i + len / 2]);
    }
  }

  // min over indices [a, b], inclusive
  double query(std::size_t a, std::size_t b) const {
    if (a > b) std::swap(a, b);
    const std::size_t span = b - a + 1;
    std::size_t k = 0;
    while ((2u << k) <= span) ++k;
    return std::min(table_[k][a], table_[k][b + 1 - (1u << k)]);
  }

 private:
  std::vector<std::vector<double>> table_;
};

}  // namespace detail

// Real tree coded by h, with leaf-to-ancestor identifications: the point
// (x, y) with 2y <= h(x) glues the vertex at time x to its ancestor at
// height 2y (located as the last grid time <= x where h is below 2y).
struct GluedSpace {
  double sigma = 0.0;
  Excursion h;
  std::vector<std::pair<double, double>> pairs;  // (leaf time, cut height 2y)
  std::vector<double> times;      // node times; root first, then samples,
                                  // then leaf/cut endpoint pairs
  FiniteMetricSpace tree;         // pseudo-metric from h alone
  FiniteMetricSpace quotient;     // after identifications
};

// Quotient distances are exact on the node set: the endpoint-to-endpoint
// shortest paths (with zero-weight identified pairs) are closed under
// Floyd-Warshall, and a general pair takes either the tree geodesic or one
// detour through a pair of endpoints.
inline GluedSpace glue(const Excursion& h, const PlanarPoints& pts,
                       std::size_t k_samples,
                       const std::vector<double>& extra_times = {}) {
  GluedSpace gs;
  gs.sigma = h.sigma;
  gs.h = h;
  const std::size_t n = h.values.size();
  const double dt = h.dt();
  const detail::SparseTableMin rmq(h.values);

  auto snap = [&](double t) {
    const auto i = static_cast<std::size_t>(
        std::clamp(t / dt + 0.5, 0.0, static_cast<double>(n - 1)));
    return i;
  };

  std::vector<std::size_t> node_idx;
  node_idx.push_back(0);  // root
  for (std::size_t s = 1; s < k_samples; ++s)
    node_idx.push_back(snap(static_cast<double>(s) / static_cast<double>(k_samples) * h.sigma));
  for (double t : extra_times) node_idx.push_back(snap(t));

  const std::size_t first_endpoint = node_idx.size();
  for (const auto& [x, y] : pts.pts) {
    if (2.0 * y > h.at(x))
      throw std::invalid_argument("glue: point above h/2");
    const std::size_t leaf = snap(x);
    // last grid time <= x at which h sits below the cut height
    std::size_t cut = leaf;
    while (cut > 0 && h.values[cut] > 2.0 * y) --cut;
    node_idx.push_back(leaf);
    node_idx.push_back(cut);
    gs.pairs.emplace_back(x, 2.0 * y);
  }

  const std::size_t nn = node_idx.size();
  gs.times.resize(nn);
  for (std::size_t i = 0; i < nn; ++i)
    gs.times[i] = static_cast<double>(node_idx[i]) * dt;

  auto tree_dist = [&](std::size_t a, std::size_t b) {
    if (a == b) return 0.0;
    return h.values[a] + h.values[b] - 2.0 * rmq.query(a, b);
  };

  gs.tree = FiniteMetricSpace(nn);
  for (std::size_t i = 0; i < nn; ++i)
    for (std::size_t j = i + 1; j < nn; ++j) {
      const double d = tree_dist(node_idx[i], node_idx[j]);
      gs.tree.at(i, j) = d;
      gs.tree.at(j, i) = d;
    }

  // shortest paths among the 2k endpoints, identified pairs at distance 0
  const std::size_t ne = 2 * gs.pairs.size();
  std::vector<double> ep(ne * ne, 0.0);
  for (std::size_t i = 0; i < ne; ++i)
    for (std::size_t j = 0; j < ne; ++j)
      ep[i * ne + j] = gs.tree.at(first_endpoint + i, first_endpoint + j);
  for (std::size_t p = 0; p < gs.pairs.size(); ++p) {
    ep[(2 * p) * ne + (2 * p + 1)] = 0.0;
    ep[(2 * p + 1) * ne + (2 * p)] = 0.0;
  }
  for (std::size_t k = 0; k < ne; ++k)
    for (std::size_t i = 0; i < ne; ++i)
      for (std::size_t j = 0; j < ne; ++j)
        ep[i * ne + j] =
            std::min(ep[i * ne + j], ep[i * ne + k] + ep[k * ne + j]);

  gs.quotient = FiniteMetricSpace(nn);
  for (std::size_t i = 0; i < nn; ++i)
    for (std::size_t j = i + 1; j < nn; ++j) {
      double best = gs.tree.at(i, j);
      for (std::size_t a = 0; a < ne; ++a) {
        const double da = gs.tree.at(i, first_endpoint + a);
        if (da >= best) continue;
        for (std::size_t b = 0; b < ne; ++b)
          best = std::min(best, da + ep[a * ne + b] +
                                    gs.tree.at(first_endpoint + b, j));
      }
      gs.quotient.at(i, j) = best;
      gs.quotient.at(j, i) = best;
    }
  return gs;
}

inline nlohmann::ordered_json to_json(const GluedSpace& gs) {
  nlohmann::ordered_json j;
  j["sigma"] = gs.sigma;
  auto pairs = nlohmann::ordered_json::array();
  for (const auto& [x, y] : gs.pairs) pairs.push_back({x, y});
  j["pairs"] = std::move(pairs);
  auto dist = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < gs.quotient.n; ++i) {
    auto row = nlohmann::ordered_json::array();
    for (std::size_t jx = 0; jx < gs.quotient.n; ++jx)
      row.push_back(gs.quotient.at(i, jx));
    dist.push_back(std::move(row));
  }
  j["dist"] = std::move(dist);
  return j;
}

// The limit component of mass sigma: tilted excursion, Poisson points under
// it, gluing against the doubled excursion.
inline GluedSpace sample_limit_component(const Excursion& tilted,
                                         std::size_t k_samples,
                                         RngStream& rng) {
  const PlanarPoints pts = poisson_under(tilted, rng);
  Excursion doubled = tilted;
  for (double& v : doubled.values) v *= 2.0;
  return glue(doubled, pts, k_samples);
}

inline GluedSpace sample_limit_component(double sigma, std::size_t n_steps,
                                         std::size_t k_proposals,
                                         std::size_t k_samples, RngStream& rng) {
  const Excursion tilted = tilted_excursion(sigma, n_steps, k_proposals, rng);
  return sample_limit_component(tilted, k_samples, rng);
}

struct SigmaDensity {
  double value = 0.0;      // prefactor * moment
  double prefactor = 0.0;  // closed form
  double moment = 0.0;     // E[exp(x^(3/2) int_0^1 e)], Monte Carlo
  double moment_se = 0.0;
  bool heavy_tail_warning = false;
};

// Unnormalized excursion-length density
// (2 pi)^(-1/2) x^(-3/2) exp(-((x - lambda)^3 + lambda^3) / 6)
//   * E[exp(x^(3/2) int_0^1 e)].
inline SigmaDensity excursion_sigma_density(double lambda, double x,
                                            std::size_t mc_samples,
                                            RngStream& rng,
                                            std::size_t n_steps = 1024,
                                            double rel_se_threshold = 0.05) {
  if (x <= 0.0) throw std::invalid_argument("excursion_sigma_density: x <= 0");
  SigmaDensity out;
  out.prefactor = std::pow(2.0 * M_PI, -0.5) * std::pow(x, -1.5) *
                  std::exp(-(std::pow(x - lambda, 3.0) + std::pow(lambda, 3.0)) / 6.0);
  const double scale = std::pow(x, 1.5);
  std::vector<double> vals;
  vals.reserve(mc_samples);
  for (std::size_t i = 0; i < mc_samples; ++i)
    vals.push_back(std::exp(
        scale * brownian_excursion(1.0, n_steps, rng).integral()));
  out.moment = stats::mean(vals);
  out.moment_se = stats::stderr_of_mean(vals);
  out.heavy_tail_warning = out.moment_se > rel_se_threshold * out.moment;
  out.value = out.prefactor * out.moment;
  return out;
}

}  // namespace crg
