#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "crg/continuum.hpp"
#include "crg/encoding.hpp"
#include "crg/exploration.hpp"
#include "crg/graph.hpp"
#include "crg/harness.hpp"
#include "crg/samplers.hpp"

namespace {

// stdout unless --out was given
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

crg::LabeledGraph read_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return crg::read_edge_list(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"critical random graph laboratory"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand name

  std::uint64_t seed = 0;
  int threads = 1;
  std::string out;
  app.add_option("--seed", seed, "base RNG seed")->capture_default_str();
  app.add_option("--threads", threads, "worker count")->capture_default_str();
  app.add_option("--out", out, "output path (default stdout)");

  // gnp
  auto* gnp = app.add_subcommand("gnp", "sample G(n, p) and write an edge list");
  long long gnp_n = 1000;
  double gnp_p = -1.0, gnp_lambda = 0.0;
  gnp->add_option("-n,--n", gnp_n, "vertex count")->capture_default_str();
  gnp->add_option("-p,--p", gnp_p, "edge probability (overrides --lambda)");
  gnp->add_option("--lambda", gnp_lambda,
                  "critical window location: p = 1/n + lambda n^(-4/3)")
      ->capture_default_str();

  // explore
  auto* explore = app.add_subcommand("explore", "walk CSV of an edge-list graph");
  std::string explore_in;
  bool explore_bfs = false;
  explore->add_option("--in", explore_in, "edge-list file")->required();
  explore->add_flag("--bfs", explore_bfs, "breadth-first variant");

  // encode
  auto* encode_cmd =
      app.add_subcommand("encode", "marked-walk JSON of a connected graph");
  std::string encode_in;
  encode_cmd->add_option("--in", encode_in, "edge-list file")->required();

  // sample-tilted
  auto* tilted = app.add_subcommand("sample-tilted",
                                    "area-tilted tree with diagnostics");
  int st_m = 8;
  double st_p = 0.1;
  int st_threshold = 8;
  long long st_burn = -1, st_thin = 0, st_count = 1;
  tilted->add_option("-m,--m", st_m, "tree size")->capture_default_str();
  tilted->add_option("-p,--p", st_p, "tilt parameter")->capture_default_str();
  tilted->add_option("--exhaustive-threshold", st_threshold,
                     "largest m enumerated exactly")
      ->capture_default_str();
  tilted->add_option("--burn-in", st_burn, "chain burn-in (-1 = 50 m)")
      ->capture_default_str();
  tilted->add_option("--thin", st_thin, "chain thinning (0 = auto)")
      ->capture_default_str();
  tilted->add_option("--count", st_count, "number of trees")->capture_default_str();

  // component
  auto* component = app.add_subcommand(
      "component", "connected component of G(n,p) conditioned on its size");
  int comp_m = 50;
  double comp_p = -1.0;
  component->add_option("-m,--m", comp_m, "component size")->capture_default_str();
  component->add_option("-p,--p", comp_p, "edge probability (default m^(-3/2))");

  // limit
  auto* limit = app.add_subcommand("limit", "continuum limit component JSON");
  double lim_sigma = 1.0;
  std::size_t lim_grid = 4096, lim_proposals = 10000, lim_samples = 64;
  limit->add_option("--sigma", lim_sigma, "mass")->capture_default_str();
  limit->add_option("--grid", lim_grid, "excursion grid steps")->capture_default_str();
  limit->add_option("--proposals", lim_proposals, "SIR proposal count")
      ->capture_default_str();
  limit->add_option("--samples", lim_samples, "metric sample points")
      ->capture_default_str();

  // experiment
  auto* experiment = app.add_subcommand("experiment", "run a named experiment");
  std::string exp_config, exp_kind;
  long long exp_n = 100000, exp_n2 = 0, exp_reps = 1000;
  int exp_m = 400;
  double exp_lambda = 0.0, exp_sigma = 1.0;
  std::size_t exp_grid = 4096, exp_proposals = 10000;
  experiment->add_option("--config", exp_config, "JSON config file");
  experiment->add_option("--kind", exp_kind,
                         "diameter_scaling|surplus_law|size_law|tail_bounds|"
                         "bijection_audit|gh_bound_audit|limit_component");
  experiment->add_option("-n,--n", exp_n, "graph size")->capture_default_str();
  experiment->add_option("--n2", exp_n2, "second size for comparisons")
      ->capture_default_str();
  experiment->add_option("-m,--m", exp_m, "component / tree size")
      ->capture_default_str();
  experiment->add_option("--lambda", exp_lambda, "critical window location")
      ->capture_default_str();
  experiment->add_option("--sigma", exp_sigma, "continuum mass")
      ->capture_default_str();
  experiment->add_option("--replicates", exp_reps, "replicate count")
      ->capture_default_str();
  experiment->add_option("--grid", exp_grid, "grid steps")->capture_default_str();
  experiment->add_option("--proposals", exp_proposals, "SIR proposals")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    crg::RngStream rng(seed);

    if (gnp->parsed()) {
      const double p =
          gnp_p >= 0.0
              ? gnp_p
              : 1.0 / static_cast<double>(gnp_n) +
                    gnp_lambda * std::pow(static_cast<double>(gnp_n), -4.0 / 3.0);
      const auto g = crg::generate_gnp(static_cast<int>(gnp_n), p, rng);
      Sink sink(out);
      crg::write_edge_list(sink.stream(), g);
    } else if (explore->parsed()) {
      const auto g = read_graph(explore_in);
      const auto tr = explore_bfs ? crg::bfs_walk(g) : crg::odfs(g);
      Sink sink(out);
      crg::write_walk_csv(sink.stream(), tr.walk);
    } else if (encode_cmd->parsed()) {
      const auto g = read_graph(encode_in);
      Sink sink(out);
      sink.stream() << crg::to_json(crg::encode(g)).dump(2) << '\n';
    } else if (tilted->parsed()) {
      crg::TiltedTreeSampler sampler(st_m, st_p, st_threshold, st_burn, st_thin);
      nlohmann::ordered_json j;
      auto trees = nlohmann::ordered_json::array();
      for (long long i = 0; i < st_count; ++i) {
        const auto t = sampler.sample(rng);
        trees.push_back(std::vector<int>(t.parent.begin() + 1, t.parent.end()));
      }
      j["trees"] = std::move(trees);
      j["strategy"] =
          sampler.strategy() == crg::TiltedTreeSampler::Strategy::exhaustive
              ? "exhaustive"
              : "metropolis";
      if (sampler.strategy() == crg::TiltedTreeSampler::Strategy::metropolis) {
        const auto& d = sampler.diagnostics();
        j["diagnostics"] = {{"acceptance_rate", d.acceptance_rate},
                            {"area_autocorr_time", d.area_autocorr_time},
                            {"burn_in_steps", d.burn_in_steps},
                            {"thin", d.thin},
                            {"converged", d.converged}};
        if (!d.converged) {
          std::cerr << "warning: tilted chain autocorrelation time "
                    << d.area_autocorr_time << " exceeds the configured bound\n";
        }
      }
      Sink sink(out);
      sink.stream() << j.dump(2) << '\n';
    } else if (component->parsed()) {
      const double p =
          comp_p > 0.0 ? comp_p : std::pow(static_cast<double>(comp_m), -1.5);
      const auto c = crg::sample_component(comp_m, p, rng);
      Sink sink(out);
      sink.stream() << "# surplus " << c.surplus << '\n';
      crg::write_edge_list(sink.stream(), c.graph);
    } else if (limit->parsed()) {
      const auto gs = crg::sample_limit_component(lim_sigma, lim_grid,
                                                  lim_proposals, lim_samples, rng);
      Sink sink(out);
      sink.stream() << crg::to_json(gs).dump(2) << '\n';
    } else if (experiment->parsed()) {
      crg::harness::ExperimentConfig cfg;
      if (!exp_config.empty()) {
        std::ifstream in(exp_config);
        if (!in) throw std::runtime_error("cannot open " + exp_config);
        nlohmann::json j;
        in >> j;
        cfg = crg::harness::config_from_json(j);
      } else {
        cfg.kind = exp_kind;
        cfg.n = exp_n;
        cfg.n2 = exp_n2;
        cfg.m = exp_m;
        cfg.lambda = exp_lambda;
        cfg.sigma = exp_sigma;
        cfg.replicates = exp_reps;
        cfg.grid = exp_grid;
        cfg.proposals = exp_proposals;
        cfg.seed = seed;
        cfg.seed_set = true;
        cfg.threads = threads;
        cfg.validate();
      }
      const auto rep = crg::harness::run(cfg);
      if (!out.empty()) {
        crg::harness::emit(rep, out);
      } else if (!cfg.out.empty()) {
        crg::harness::emit(rep, cfg.out);
      } else {
        std::cout << crg::harness::report_to_json(rep).dump(2) << '\n';
      }
      if (!rep.all_pass()) {
        std::cerr << "experiment checks failed\n";
        return 1;
      }
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  }
  return 0;
}
