#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "crg/continuum.hpp"
#include "crg/encoding.hpp"
#include "crg/enumerate.hpp"
#include "crg/exploration.hpp"
#include "crg/graph.hpp"
#include "crg/metric.hpp"
#include "crg/samplers.hpp"
#include "crg/stats.hpp"

namespace crg::harness {

struct ExperimentConfig {
  std::string kind;  // diameter_scaling, surplus_law, size_law, tail_bounds,
                     // bijection_audit, gh_bound_audit, limit_component
  long long n = 100000;
  long long n2 = 0;  // second size for self-convergence comparisons
  int m = 400;
  double lambda = 0.0;
  double sigma = 1.0;
  long long replicates = 1000;
  std::size_t grid = 4096;     // excursion grid / path steps
  std::size_t proposals = 10000;  // SIR proposal count
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 1;
  std::string out;

  void validate() const {
    static const char* kinds[] = {"diameter_scaling", "surplus_law",
                                  "size_law",         "tail_bounds",
                                  "bijection_audit",  "gh_bound_audit",
                                  "limit_component"};
    bool ok = false;
    for (const char* k : kinds) ok = ok || kind == k;
    if (!ok) throw std::invalid_argument("unknown experiment kind: " + kind);
    if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
    if (!seed_set) throw std::invalid_argument("seed is mandatory");
    if (lambda < -3.0 || lambda > 3.0)
      throw std::invalid_argument("lambda must lie in [-3, 3]");
  }
};

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  c.kind = j.at("kind").get<std::string>();
  if (j.contains("n")) c.n = j.at("n").get<long long>();
  if (j.contains("n2")) c.n2 = j.at("n2").get<long long>();
  if (j.contains("m")) c.m = j.at("m").get<int>();
  if (j.contains("lambda")) c.lambda = j.at("lambda").get<double>();
  if (j.contains("sigma")) c.sigma = j.at("sigma").get<double>();
  if (j.contains("replicates")) c.replicates = j.at("replicates").get<long long>();
  if (j.contains("grid")) c.grid = j.at("grid").get<std::size_t>();
  if (j.contains("proposals")) c.proposals = j.at("proposals").get<std::size_t>();
  if (j.contains("seed")) {
    c.seed = j.at("seed").get<std::uint64_t>();
    c.seed_set = true;
  }
  if (j.contains("out")) c.out = j.at("out").get<std::string>();
  c.validate();
  return c;
}

inline nlohmann::ordered_json config_to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["kind"] = c.kind;
  j["n"] = c.n;
  j["n2"] = c.n2;
  j["m"] = c.m;
  j["lambda"] = c.lambda;
  j["sigma"] = c.sigma;
  j["replicates"] = c.replicates;
  j["grid"] = c.grid;
  j["proposals"] = c.proposals;
  j["seed"] = c.seed;
  return j;
}

struct Statistic {
  std::string name;
  double estimate = 0.0;
  double se = 0.0;
  long long replicates = 0;
  bool has_check = false;
  std::string threshold;
  bool pass = true;
};

struct Report {
  ExperimentConfig config;
  std::vector<Statistic> stats;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  double runtime_seconds = 0.0;

  bool all_pass() const {
    for (const auto& s : stats)
      if (s.has_check && !s.pass) return false;
    return true;
  }
};

// ---- sample generators (shared by experiments and acceptance tests) ----

// diameter of the largest component of G(n, 1/n + lambda n^{-4/3})
inline std::vector<double> gnp_largest_diameters(long long n, double lambda,
                                                 long long reps,
                                                 std::uint64_t seed) {
  const double p = 1.0 / static_cast<double>(n) +
                   lambda * std::pow(static_cast<double>(n), -4.0 / 3.0);
  std::vector<double> out(static_cast<std::size_t>(reps));
  for (long long r = 0; r < reps; ++r) {
    RngStream rng(seed, static_cast<std::uint64_t>(r));
    const LabeledGraph g = generate_gnp(static_cast<int>(n), p, rng);
    out[static_cast<std::size_t>(r)] =
        static_cast<double>(exact_diameter(largest_component(g).graph));
  }
  return out;
}

// size of the largest component of G(n, 1/n + lambda n^{-4/3})
inline std::vector<double> gnp_largest_sizes(long long n, double lambda,
                                             long long reps,
                                             std::uint64_t seed) {
  const double p = 1.0 / static_cast<double>(n) +
                   lambda * std::pow(static_cast<double>(n), -4.0 / 3.0);
  std::vector<double> out(static_cast<std::size_t>(reps));
  for (long long r = 0; r < reps; ++r) {
    RngStream rng(seed, static_cast<std::uint64_t>(r));
    const LabeledGraph g = generate_gnp(static_cast<int>(n), p, rng);
    out[static_cast<std::size_t>(r)] =
        static_cast<double>(largest_component(g).size);
  }
  return out;
}

// longest excursion of the reflected parabolic-drift path
inline std::vector<double> longest_reflected_excursions(double lambda,
                                                        double horizon,
                                                        double dt, long long reps,
                                                        std::uint64_t seed) {
  std::vector<double> out(static_cast<std::size_t>(reps));
  for (long long r = 0; r < reps; ++r) {
    RngStream rng(seed, static_cast<std::uint64_t>(r));
    const auto exs = extract_excursions(reflected_parabolic(lambda, horizon, dt, rng));
    out[static_cast<std::size_t>(r)] = exs.empty() ? 0.0 : exs.front().length;
  }
  return out;
}

// one bound-audit instance: tree, marks valid under both readings, exact
// half-distortion and its deterministic bound
struct XhInstance {
  int m = 0;
  int k = 0;
  double half_distortion = 0.0;
  double bound = 0.0;
};

namespace detail {

inline FiniteMetricSpace all_pairs_bfs(const LabeledGraph& g) {
  FiniteMetricSpace sp(static_cast<std::size_t>(g.n));
  std::vector<int> dist(static_cast<std::size_t>(g.n) + 1);
  std::vector<int> queue;
  for (int s = 1; s <= g.n; ++s) {
    crg::detail::bfs_fill(g, s, dist, queue);
    for (int t = 1; t <= g.n; ++t)
      sp.at(static_cast<std::size_t>(s) - 1, static_cast<std::size_t>(t) - 1) =
          dist[static_cast<std::size_t>(t)];
  }
  return sp;
}

}  // namespace detail

// Builds marks under min(X, floor(H/2)) so that the same marks are read
// identically by both graph constructions, then checks the deterministic
// bound half-distortion <= k (||X - H/2|| + 2).
inline XhInstance xh_bound_instance(int m, double mark_p, RngStream& rng) {
  const RootedOrderedTree t = uniform_tree(m, rng);
  const LatticeExcursion x = tree_walk(t);
  const LatticeExcursion h = height_process(t);
  LatticeExcursion lower;
  lower.values.resize(x.values.size());
  for (std::size_t i = 0; i < x.values.size(); ++i)
    lower.values[i] = std::min(x.values[i], h.values[i] / 2);
  const PointSet q = binomial_pointset(lower, mark_p, rng);

  XhInstance inst;
  inst.m = m;
  inst.k = static_cast<int>(q.size());
  const FiniteMetricSpace dx = detail::all_pairs_bfs(decode_gx(t, q));
  const FiniteMetricSpace dh = detail::all_pairs_bfs(build_gh(t, q));
  inst.half_distortion =
      distortion(Correspondence::identity(dx.n), dx, dh) / 2.0;
  double sup = 0.0;
  for (std::size_t i = 0; i < x.values.size(); ++i)
    sup = std::max(sup, std::abs(static_cast<double>(x.values[i]) -
                                 static_cast<double>(h.values[i]) / 2.0));
  inst.bound = static_cast<double>(inst.k) * (sup + 2.0);
  return inst;
}

// ---- experiments ----

namespace detail {

inline Statistic stat(const std::string& name, double est, double se,
                      long long reps) {
  Statistic s;
  s.name = name;
  s.estimate = est;
  s.se = se;
  s.replicates = reps;
  return s;
}

inline Statistic check(const std::string& name, double est,
                       const std::string& threshold, bool pass,
                       long long reps) {
  Statistic s;
  s.name = name;
  s.estimate = est;
  s.replicates = reps;
  s.has_check = true;
  s.threshold = threshold;
  s.pass = pass;
  return s;
}

inline void run_diameter_scaling(const ExperimentConfig& cfg, Report& rep) {
  rep.columns = {"n", "replicate", "D", "D_over_n13"};
  std::vector<long long> sizes{cfg.n};
  if (cfg.n2 > 0) sizes.push_back(cfg.n2);
  std::vector<std::vector<double>> rescaled;
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    const long long n = sizes[si];
    const auto ds = gnp_largest_diameters(n, cfg.lambda, cfg.replicates,
                                          cfg.seed + si);
    std::vector<double> rs(ds.size());
    for (std::size_t r = 0; r < ds.size(); ++r) {
      rs[r] = ds[r] * std::pow(static_cast<double>(n), -1.0 / 3.0);
      rep.rows.push_back({static_cast<double>(n), static_cast<double>(r),
                          ds[r], rs[r]});
    }
    rep.stats.push_back(stat("mean_D_over_n13_n" + std::to_string(n),
                             stats::mean(rs), stats::stderr_of_mean(rs),
                             cfg.replicates));
    rescaled.push_back(std::move(rs));
  }
  if (rescaled.size() == 2) {
    const double ks = stats::ks_two_sample(rescaled[0], rescaled[1]);
    rep.stats.push_back(check("ks_between_sizes", ks, "<= 0.05", ks <= 0.05,
                              cfg.replicates));
    const double m1 = stats::mean(rescaled[0]), m2 = stats::mean(rescaled[1]);
    const double drift = std::abs(m1 - m2) / m1;
    rep.stats.push_back(check("mean_relative_drift", drift, "<= 0.05",
                              drift <= 0.05, cfg.replicates));
  }
}

inline void run_surplus_law(const ExperimentConfig& cfg, Report& rep) {
  rep.columns = {"replicate", "surplus"};
  const double p = std::pow(static_cast<double>(cfg.m), -1.5);
  TiltedTreeSampler sampler(cfg.m, p);
  RngStream rng(cfg.seed, 0);
  std::vector<double> surplus(static_cast<std::size_t>(cfg.replicates));
  for (long long r = 0; r < cfg.replicates; ++r) {
    surplus[static_cast<std::size_t>(r)] =
        static_cast<double>(sample_surplus(p, sampler, rng));
    rep.rows.push_back({static_cast<double>(r), surplus[static_cast<std::size_t>(r)]});
  }
  if (sampler.strategy() == TiltedTreeSampler::Strategy::metropolis &&
      !sampler.diagnostics().converged)
    throw std::runtime_error("surplus_law: tilted chain failed to converge");
  const double mean = stats::mean(surplus);
  const double ratio = stats::variance(surplus) / mean;
  rep.stats.push_back(stat("surplus_mean", mean, stats::stderr_of_mean(surplus),
                           cfg.replicates));
  rep.stats.push_back(check("surplus_var_over_mean", ratio, "in [0.9, 1.1]",
                            ratio >= 0.9 && ratio <= 1.1, cfg.replicates));
  // continuum reference: mean area of the tilted excursion at matching mass
  const double sigma =
      static_cast<double>(cfg.m) * std::pow(p, 2.0 / 3.0);
  TiltedExcursionPool pool(sigma, cfg.grid, cfg.proposals, cfg.seed + 1);
  const double ref = pool.mean_integral();
  const double rel = std::abs(mean - ref) / ref;
  rep.stats.push_back(stat("tilted_area_reference", ref, 0.0,
                           static_cast<long long>(cfg.proposals)));
  rep.stats.push_back(check("surplus_mean_vs_continuum", rel, "<= 0.10",
                            rel <= 0.10, cfg.replicates));
}

inline void run_size_law(const ExperimentConfig& cfg, Report& rep) {
  rep.columns = {"replicate", "rescaled_largest", "longest_excursion"};
  const auto sizes =
      gnp_largest_sizes(cfg.n, cfg.lambda, cfg.replicates, cfg.seed);
  std::vector<double> rescaled(sizes.size());
  for (std::size_t r = 0; r < sizes.size(); ++r)
    rescaled[r] = sizes[r] * std::pow(static_cast<double>(cfg.n), -2.0 / 3.0);
  const auto longest = longest_reflected_excursions(
      cfg.lambda, 3.0 + std::abs(cfg.lambda), 1e-3, cfg.replicates,
      cfg.seed + 1);
  for (std::size_t r = 0; r < rescaled.size(); ++r)
    rep.rows.push_back({static_cast<double>(r), rescaled[r], longest[r]});
  const double ks = stats::ks_two_sample(rescaled, longest);
  rep.stats.push_back(stat("mean_rescaled_largest", stats::mean(rescaled),
                           stats::stderr_of_mean(rescaled), cfg.replicates));
  rep.stats.push_back(stat("mean_longest_excursion", stats::mean(longest),
                           stats::stderr_of_mean(longest), cfg.replicates));
  rep.stats.push_back(
      check("ks_size_law", ks, "<= 0.05", ks <= 0.05, cfg.replicates));
}

inline void run_tail_bounds(const ExperimentConfig& cfg, Report& rep) {
  rep.columns = {"replicate", "max_over_sqrt_m"};
  const int m = cfg.m;
  std::vector<double> maxima(static_cast<std::size_t>(cfg.replicates));
  for (long long r = 0; r < cfg.replicates; ++r) {
    RngStream rng(cfg.seed, static_cast<std::uint64_t>(r));
    const LatticeExcursion w = rotation_walk(m, rng);
    long long mx = 0;
    for (long long v : w.values) mx = std::max(mx, v);
    maxima[static_cast<std::size_t>(r)] =
        static_cast<double>(mx) / std::sqrt(static_cast<double>(m));
    rep.rows.push_back({static_cast<double>(r), maxima[static_cast<std::size_t>(r)]});
  }
  // fit log P(max >= x sqrt m) ~ -alpha x^2
  const std::vector<double> xs{0.75, 1.0, 1.25, 1.5, 1.75};
  std::vector<double> x2, logp;
  double prev = 1.0;
  bool monotone = true;
  for (double x : xs) {
    long long cnt = 0;
    for (double v : maxima) cnt += v >= x;
    const double frac =
        static_cast<double>(cnt) / static_cast<double>(maxima.size());
    if (frac <= 0.0) break;
    if (frac > prev) monotone = false;
    prev = frac;
    x2.push_back(x * x);
    logp.push_back(std::log(frac));
  }
  double alpha = 0.0;
  if (x2.size() >= 2) alpha = -stats::fit_line(x2, logp).slope;
  rep.stats.push_back(stat("alpha_fit", alpha, 0.0, cfg.replicates));
  rep.stats.push_back(check("tail_monotone_decay", monotone ? 1.0 : 0.0,
                            "= 1", monotone, cfg.replicates));
  rep.stats.push_back(check("alpha_positive", alpha, "> 0", alpha > 0.0,
                            cfg.replicates));
}

inline void run_bijection_audit(const ExperimentConfig& cfg, Report& rep) {
  rep.columns = {"m", "connected_graphs", "roundtrip_failures"};
  const int m = cfg.m;
  if (m > 6)
    throw std::invalid_argument("bijection_audit: m must be <= 6");
  const auto graphs = all_connected_graphs(m);
  long long failures = 0;
  for (const auto& g : graphs)
    if (!(decode_gx(encode(g)) == g)) ++failures;
  rep.rows.push_back({static_cast<double>(m),
                      static_cast<double>(graphs.size()),
                      static_cast<double>(failures)});
  const auto expected = connected_graph_counts(m);
  const bool count_ok =
      std::llround(expected[static_cast<std::size_t>(m)]) ==
      static_cast<long long>(graphs.size());
  rep.stats.push_back(check("roundtrip_failures",
                            static_cast<double>(failures), "= 0",
                            failures == 0, static_cast<long long>(graphs.size())));
  rep.stats.push_back(check("connected_count_matches", count_ok ? 1.0 : 0.0,
                            "= 1", count_ok, 1));
}

inline void run_gh_bound_audit(const ExperimentConfig& cfg, Report& rep) {
  rep.columns = {"replicate", "m", "k", "half_distortion", "bound"};
  long long violations = 0;
  for (long long r = 0; r < cfg.replicates; ++r) {
    RngStream rng(cfg.seed, static_cast<std::uint64_t>(r));
    const int m = 2 + static_cast<int>(rng.uniform_int(0, cfg.m - 2));
    const XhInstance inst = xh_bound_instance(m, 0.1, rng);
    if (inst.half_distortion > inst.bound) ++violations;
    rep.rows.push_back({static_cast<double>(r), static_cast<double>(inst.m),
                        static_cast<double>(inst.k), inst.half_distortion,
                        inst.bound});
  }
  rep.stats.push_back(check("bound_violations",
                            static_cast<double>(violations), "= 0",
                            violations == 0, cfg.replicates));
}

inline void run_limit_component(const ExperimentConfig& cfg, Report& rep) {
  rep.columns = {"replicate", "identifications", "diameter"};
  TiltedExcursionPool pool(cfg.sigma, cfg.grid, cfg.proposals, cfg.seed);
  std::vector<double> idents(static_cast<std::size_t>(cfg.replicates));
  std::vector<double> diams(static_cast<std::size_t>(cfg.replicates));
  for (long long r = 0; r < cfg.replicates; ++r) {
    RngStream rng(cfg.seed, 1000u + static_cast<std::uint64_t>(r));
    const Excursion e = pool.draw(rng);
    const GluedSpace gs = sample_limit_component(e, 64, rng);
    idents[static_cast<std::size_t>(r)] = static_cast<double>(gs.pairs.size());
    diams[static_cast<std::size_t>(r)] = gs.quotient.diameter();
    rep.rows.push_back({static_cast<double>(r),
                        idents[static_cast<std::size_t>(r)],
                        diams[static_cast<std::size_t>(r)]});
  }
  rep.stats.push_back(stat("mean_identifications", stats::mean(idents),
                           stats::stderr_of_mean(idents), cfg.replicates));
  rep.stats.push_back(stat("mean_diameter", stats::mean(diams),
                           stats::stderr_of_mean(diams), cfg.replicates));
  rep.stats.push_back(stat("pool_ess", pool.ess(), 0.0,
                           static_cast<long long>(cfg.proposals)));
}

}  // namespace detail

inline Report run(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  Report rep;
  rep.config = cfg;
  if (cfg.kind == "diameter_scaling") detail::run_diameter_scaling(cfg, rep);
  else if (cfg.kind == "surplus_law") detail::run_surplus_law(cfg, rep);
  else if (cfg.kind == "size_law") detail::run_size_law(cfg, rep);
  else if (cfg.kind == "tail_bounds") detail::run_tail_bounds(cfg, rep);
  else if (cfg.kind == "bijection_audit") detail::run_bijection_audit(cfg, rep);
  else if (cfg.kind == "gh_bound_audit") detail::run_gh_bound_audit(cfg, rep);
  else detail::run_limit_component(cfg, rep);
  rep.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return rep;
}

inline nlohmann::ordered_json report_to_json(const Report& rep) {
  nlohmann::ordered_json j;
  j["config"] = config_to_json(rep.config);
  auto stats_arr = nlohmann::ordered_json::array();
  for (const auto& s : rep.stats) {
    nlohmann::ordered_json sj;
    sj["name"] = s.name;
    sj["estimate"] = s.estimate;
    sj["se"] = s.se;
    sj["replicates"] = s.replicates;
    sj["seed"] = rep.config.seed;
    if (s.has_check) {
      sj["threshold"] = s.threshold;
      sj["pass"] = s.pass;
    }
    stats_arr.push_back(std::move(sj));
  }
  j["stats"] = std::move(stats_arr);
  j["runtime_seconds"] = rep.runtime_seconds;
  j["all_pass"] = rep.all_pass();
  return j;
}

inline void write_report_csv(std::ostream& os, const Report& rep) {
  for (std::size_t i = 0; i < rep.columns.size(); ++i)
    os << (i ? "," : "") << rep.columns[i];
  os << '\n';
  os.precision(17);
  for (const auto& row : rep.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
}

// writes <base>.json and <base>.csv
inline void emit(const Report& rep, const std::string& base) {
  {
    std::ofstream f(base + ".json");
    if (!f) throw std::runtime_error("emit: cannot open " + base + ".json");
    f << report_to_json(rep).dump(2) << '\n';
  }
  {
    std::ofstream f(base + ".csv");
    if (!f) throw std::runtime_error("emit: cannot open " + base + ".csv");
    write_report_csv(f, rep);
  }
}

}  // namespace crg::harness
