// End-to-end statistical checks, one line of output per criterion. Exits
// nonzero if any check fails. Tolerances are pinned in the code below.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "crg/continuum.hpp"
#include "crg/encoding.hpp"
#include "crg/enumerate.hpp"
#include "crg/exploration.hpp"
#include "crg/harness.hpp"
#include "crg/metric.hpp"
#include "crg/samplers.hpp"
#include "crg/stats.hpp"

using namespace crg;

namespace {

int g_failures = 0;
std::chrono::steady_clock::time_point g_tick;

void tick() { g_tick = std::chrono::steady_clock::now(); }

void report(int idx, const char* title, bool pass, const std::string& detail) {
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - g_tick)
          .count();
  std::printf("criterion %2d %-28s %s  (%s) [%.1fs]\n", idx, title,
              pass ? "PASS" : "FAIL", detail.c_str(), secs);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string graph_key(const LabeledGraph& g) {
  std::string k;
  for (const auto& [u, v] : g.edges()) {
    k += static_cast<char>('a' + u);
    k += static_cast<char>('a' + v);
  }
  return k;
}

// 1. encode/decode are mutually inverse on all connected graphs with at
//    most six vertices, walks account for every permitted edge up to seven
//    vertices, and the weighted tree counts recover the connected-graph
//    counts exactly.
void criterion_1() {
  tick();
  const auto counts = connected_graph_counts(7);
  long long mismatch = 0;
  // graph -> marked walk -> graph
  for (int m = 2; m <= 6; ++m) {
    const auto graphs = all_connected_graphs(m);
    if (std::llround(counts[static_cast<std::size_t>(m)]) !=
        static_cast<long long>(graphs.size()))
      ++mismatch;
    for (const auto& g : graphs)
      if (!(decode_gx(encode(g)) == g)) ++mismatch;
  }
  // marked walk -> graph -> marked walk, over every admissible mark set
  long long decoded_total_6 = 0;
  for (int m = 2; m <= 6; ++m) {
    long long total = 0;
    for (const auto& t : all_trees(m)) {
      std::vector<std::pair<long long, long long>> slots;  // one per area unit
      {
        long long i = 0;
        detail::odfs_tree_scan(t, [&](int, const std::vector<int>& open) {
          for (std::size_t j = 1; j <= open.size(); ++j)
            slots.emplace_back(i, static_cast<long long>(j));
          ++i;
        });
      }
      const std::size_t a = slots.size();
      for (std::size_t mask = 0; mask < (1u << a); ++mask) {
        PointSet q;
        for (std::size_t b = 0; b < a; ++b)
          if (mask & (1u << b)) q.add(slots[b].first, slots[b].second);
        q.normalize();
        const MarkedWalk back = encode(decode_gx(t, q));
        if (!(back.tree == t) || back.marks.pts != q.pts) ++mismatch;
        ++total;
      }
    }
    if (total != std::llround(counts[static_cast<std::size_t>(m)])) ++mismatch;
    if (m == 6) decoded_total_6 = total;
  }
  // area identities on all trees with up to seven vertices
  for (int m = 1; m <= 7; ++m) {
    double weighted = 0.0;
    for (const auto& t : all_trees(m)) {
      if (static_cast<long long>(permitted_edges(t).size()) != area(t))
        ++mismatch;
      weighted += std::pow(2.0, static_cast<double>(area(t)));
    }
    if (std::llround(weighted) !=
        std::llround(counts[static_cast<std::size_t>(m)]))
      ++mismatch;
  }
  report(1, "bijection exactness", mismatch == 0,
         "mismatches=" + std::to_string(mismatch) +
             ", decoded m=6 total=" + std::to_string(decoded_total_6));
}

// 2. the direct three-vertex component sampler agrees with rejection
//    sampling from G(4, 0.4): total variation <= 0.02 at 1e5 draws each.
void criterion_2() {
  tick();
  const int reps = 100000;
  std::map<std::string, std::size_t> direct, oracle;
  TiltedTreeSampler sampler(3, 0.4);
  RngStream r1(201), r2(202);
  for (int r = 0; r < reps; ++r) {
    ++direct[graph_key(sample_component(3, 0.4, sampler, r1).graph)];
    ++oracle[graph_key(oracle_component(4, 0.4, 3, r2).graph)];
  }
  const double tv = stats::total_variation(
      direct, static_cast<std::size_t>(reps), oracle,
      static_cast<std::size_t>(reps));
  char buf[64];
  std::snprintf(buf, sizeof buf, "tv=%.4f (<= 0.02)", tv);
  report(2, "component sampler vs oracle", tv <= 0.02, buf);
}

// 3. exhaustive tilted sampling follows the exact weights: chi-square over
//    the 125 trees at m=5, p=0.3 (1e5 draws, p-value > 0.001), and the
//    m=3, p=1/2 law equals (1/2, 1/4, 1/4) within 0.01.
void criterion_3() {
  tick();
  TiltedTreeSampler s5(5, 0.3);
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < s5.trees().size(); ++i)
    index[s5.trees()[i].parent] = i;
  double total = 0.0;
  for (double w : s5.weights()) total += w;
  const std::size_t reps = 100000;
  std::vector<double> observed(s5.trees().size(), 0.0);
  RngStream rng(301);
  for (std::size_t r = 0; r < reps; ++r)
    observed[index.at(s5.sample(rng).parent)] += 1.0;
  std::vector<double> expected(s5.weights());
  for (double& e : expected) e *= static_cast<double>(reps) / total;
  const double pval = stats::chi_square_gof(observed, expected).pvalue;

  TiltedTreeSampler s3(3, 0.5);
  double t3 = 0.0;
  for (double w : s3.weights()) t3 += w;
  double law_err = 0.0;
  for (std::size_t i = 0; i < s3.trees().size(); ++i) {
    const double want = area(s3.trees()[i]) == 1 ? 0.5 : 0.25;
    law_err = std::max(law_err, std::abs(s3.weights()[i] / t3 - want));
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "chi2 p=%.4f (> 0.001), m=3 err=%.2e (<= 0.01)",
                pval, law_err);
  report(3, "tilted law exactness", pval > 0.001 && law_err <= 0.01, buf);
}

// 4. on 1e4 random instances with 2 <= m <= 200, half the distortion
//    between the two mark readings never exceeds k (||X - H/2|| + 2).
void criterion_4() {
  tick();
  long long violations = 0;
  double worst_ratio = 0.0;
  for (int r = 0; r < 10000; ++r) {
    RngStream rng(404, static_cast<std::uint64_t>(r));
    const int m = 2 + static_cast<int>(rng.uniform_int(0, 198));
    const auto inst = harness::xh_bound_instance(m, 0.1, rng);
    if (inst.half_distortion > inst.bound) ++violations;
    if (inst.bound > 0.0)
      worst_ratio = std::max(worst_ratio, inst.half_distortion / inst.bound);
  }
  char buf[80];
  std::snprintf(buf, sizeof buf, "violations=%lld, worst ratio=%.3f",
                violations, worst_ratio);
  report(4, "walk/height metric bound", violations == 0, buf);
}

// 5. perturbing the profile and the glued points moves the quotient metric
//    by at most (k+1)(delta + 12||h1-h2|| + 4 modulus(h2, delta)).
void criterion_5() {
  tick();
  long long violations = 0;
  double worst_ratio = 0.0;
  for (int r = 0; r < 1000; ++r) {
    RngStream rng(505, static_cast<std::uint64_t>(r));
    Excursion h1 = brownian_excursion(1.0, 256, rng);
    for (double& v : h1.values) v *= 2.0;
    Excursion h2 = h1;
    const double eta = rng.uniform(0.02, 0.05);
    for (std::size_t i = 0; i < h2.values.size(); ++i) {
      const double t =
          static_cast<double>(i) / static_cast<double>(h2.values.size() - 1);
      h2.values[i] += eta * std::sin(M_PI * t);
    }
    // sample points low enough that they stay under both halved profiles
    Excursion low;
    low.sigma = 1.0;
    low.values.resize(h1.values.size());
    for (std::size_t i = 0; i < low.values.size(); ++i)
      low.values[i] = 0.45 * std::min(h1.values[i], h2.values[i]);
    const PlanarPoints pts1 = poisson_under(low, rng);
    PlanarPoints pts2 = pts1;
    const double dt = h1.dt();
    for (auto& [x, y] : pts2.pts) {
      y *= 1.0 + 0.02 * rng.uniform(-1.0, 1.0);
      const double shift = dt * static_cast<double>(rng.uniform_int(-2, 2));
      const double xs = std::min(1.0, std::max(0.0, x + shift));
      if (2.0 * y < h1.at(xs) && 2.0 * y < h2.at(xs)) x = xs;
    }
    const auto g1 = glue(h1, pts1, 64);
    const auto g2 = glue(h2, pts2, 64);
    const double delta = hausdorff(pts1, pts2);
    double sup = 0.0;
    for (std::size_t i = 0; i < h1.values.size(); ++i)
      sup = std::max(sup, std::abs(h1.values[i] - h2.values[i]));
    const double k = static_cast<double>(pts1.size());
    const double bound =
        (k + 1.0) * (delta + 12.0 * sup + 4.0 * h2.modulus(delta));
    const double dist = distortion(Correspondence::identity(g1.quotient.n),
                                   g1.quotient, g2.quotient);
    if (dist > bound + 1e-9) ++violations;
    if (bound > 0.0) worst_ratio = std::max(worst_ratio, dist / bound);
  }
  char buf[80];
  std::snprintf(buf, sizeof buf, "violations=%lld, worst ratio=%.3f",
                violations, worst_ratio);
  report(5, "glued perturbation bound", violations == 0, buf);
}

// 6. surplus of the m=400 component sampler is Poisson-like: variance to
//    mean in [0.9, 1.1] over 1e4 draws, mean within 10% of the continuum
//    tilted-excursion area.
void criterion_6() {
  tick();
  harness::ExperimentConfig cfg;
  cfg.kind = "surplus_law";
  cfg.m = 400;
  cfg.replicates = 10000;
  cfg.grid = 4096;
  cfg.proposals = 10000;
  cfg.seed = 606;
  cfg.seed_set = true;
  const auto rep = harness::run(cfg);
  std::string detail;
  for (const auto& s : rep.stats)
    if (s.name == "surplus_var_over_mean" || s.name == "surplus_mean_vs_continuum")
      detail += s.name + "=" + std::to_string(s.estimate) + " ";
  report(6, "surplus law", rep.all_pass(), detail);
}

// 7. largest-component sizes at n=1e5 rescaled by n^{-2/3} match the
//    longest excursion above the running minimum of the parabolic-drift
//    path: KS <= 0.05 over 2000 replicates each.
void criterion_7() {
  tick();
  harness::ExperimentConfig cfg;
  cfg.kind = "size_law";
  cfg.n = 100000;
  cfg.lambda = 0.0;
  cfg.replicates = 2000;
  cfg.seed = 707;
  cfg.seed_set = true;
  const auto rep = harness::run(cfg);
  std::string detail;
  for (const auto& s : rep.stats)
    if (s.name == "ks_size_law")
      detail = "ks=" + std::to_string(s.estimate) + " (<= 0.05)";
  report(7, "size law", rep.all_pass(), detail);
}

// 8. rescaled largest-component diameters agree between n=5e4 and n=2e5:
//    KS <= 0.05 and mean drift <= 5% over 2000 replicates each.
void criterion_8() {
  tick();
  harness::ExperimentConfig cfg;
  cfg.kind = "diameter_scaling";
  cfg.n = 50000;
  cfg.n2 = 200000;
  cfg.lambda = 0.0;
  cfg.replicates = 2000;
  cfg.seed = 808;
  cfg.seed_set = true;
  const auto rep = harness::run(cfg);
  std::string detail;
  for (const auto& s : rep.stats)
    if (s.has_check) detail += s.name + "=" + std::to_string(s.estimate) + " ";
  report(8, "diameter scaling", rep.all_pass(), detail);
}

// 9. the diameter law of the sampled continuum component matches the
//    m^{-1/2}-rescaled diameter of the discrete sampler at m=2500,
//    KS <= 0.07 over 2000 replicates each.
void criterion_9() {
  tick();
  const int reps = 2000;
  std::vector<double> cont(reps), disc(reps);
  TiltedExcursionPool pool(1.0, 4096, 10000, 909);
  for (int r = 0; r < reps; ++r) {
    RngStream rng(909, 1000u + static_cast<std::uint64_t>(r));
    const Excursion e = pool.draw(rng);
    cont[static_cast<std::size_t>(r)] =
        sample_limit_component(e, 512, rng).quotient.diameter();
  }
  const int m = 2500;
  const double p = std::pow(static_cast<double>(m), -1.5);
  TiltedTreeSampler sampler(m, p);
  RngStream rng(910);
  for (int r = 0; r < reps; ++r) {
    const Component c = sample_component(m, p, sampler, rng);
    disc[static_cast<std::size_t>(r)] =
        static_cast<double>(exact_diameter(c.graph)) /
        std::sqrt(static_cast<double>(m));
  }
  const double ks = stats::ks_two_sample(cont, disc);
  char buf[96];
  std::snprintf(buf, sizeof buf, "ks=%.4f (<= 0.07), means %.3f vs %.3f", ks,
                stats::mean(cont), stats::mean(disc));
  report(9, "continuum consistency", ks <= 0.07, buf);
}

// 10. for a fixed tilted excursion the identification count is Poisson
//     (variance/mean in [0.95, 1.05] over 1e4 draws) and the cut height,
//     rescaled by the profile, is uniform (KS <= 0.03).
void criterion_10() {
  tick();
  RngStream erng(1001);
  const Excursion e = tilted_excursion(1.0, 4096, 10000, erng);
  std::vector<double> counts;
  std::vector<double> ratios;
  RngStream rng(1002);
  for (int r = 0; r < 10000; ++r) {
    const PlanarPoints pts = poisson_under(e, rng);
    counts.push_back(static_cast<double>(pts.size()));
    for (const auto& [x, y] : pts.pts) ratios.push_back(y / e.at(x));
  }
  const double ratio = stats::variance(counts) / stats::mean(counts);
  const double ks = stats::ks_uniform01(ratios);
  char buf[96];
  std::snprintf(buf, sizeof buf,
                "var/mean=%.4f (in [0.95,1.05]), ks=%.4f (<= 0.03)", ratio, ks);
  report(10, "limit point structure",
         ratio >= 0.95 && ratio <= 1.05 && ks <= 0.03, buf);
}

// 11. tails of the conditioned-walk maximum decay at a Gaussian rate: the
//     fitted alpha in log P(max >= x sqrt(m)) ~ -alpha x^2 is positive and
//     the tail fractions decrease, at m = 1e2, 1e3, 1e4.
void criterion_11() {
  tick();
  const std::vector<int> ms{100, 1000, 10000};
  const std::vector<int> reps{100000, 100000, 30000};
  const std::vector<double> xs{0.75, 1.0, 1.25, 1.5, 1.75};
  bool ok = true;
  std::string detail;
  for (std::size_t mi = 0; mi < ms.size(); ++mi) {
    const int m = ms[mi];
    std::vector<double> maxima(static_cast<std::size_t>(reps[mi]));
    for (int r = 0; r < reps[mi]; ++r) {
      RngStream rng(1100 + static_cast<std::uint64_t>(mi),
                    static_cast<std::uint64_t>(r));
      maxima[static_cast<std::size_t>(r)] =
          static_cast<double>(rotation_walk(m, rng).max()) /
          std::sqrt(static_cast<double>(m));
    }
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
    ok = ok && monotone && alpha > 0.0;
    char buf[48];
    std::snprintf(buf, sizeof buf, "alpha(m=%d)=%.2f ", m, alpha);
    detail += buf;
  }
  report(11, "tail decay shape", ok, detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  if (g_failures > 0) {
    std::printf("%d criteria FAILED\n", g_failures);
    return 1;
  }
  std::printf("all 11 criteria passed\n");
  return 0;
}
