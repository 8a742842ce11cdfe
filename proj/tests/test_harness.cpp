#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "crg/harness.hpp"

using namespace crg;
using harness::ExperimentConfig;

namespace {

ExperimentConfig base_config(const std::string& kind) {
  ExperimentConfig cfg;
  cfg.kind = kind;
  cfg.seed = 99;
  cfg.seed_set = true;
  return cfg;
}

}  // namespace

TEST_CASE("config validation") {
  auto cfg = base_config("diameter_scaling");
  CHECK_NOTHROW(cfg.validate());
  cfg.kind = "nonsense";
  CHECK_THROWS(cfg.validate());
  cfg.kind = "size_law";
  cfg.lambda = 5.0;
  CHECK_THROWS(cfg.validate());
  cfg.lambda = 0.0;
  cfg.replicates = 0;
  CHECK_THROWS(cfg.validate());
  cfg.replicates = 10;
  cfg.seed_set = false;
  CHECK_THROWS(cfg.validate());
}

TEST_CASE("config JSON round trip") {
  const auto j = nlohmann::json::parse(
      R"({"kind":"surplus_law","m":120,"replicates":7,"seed":5,"lambda":-1.5})");
  const auto cfg = harness::config_from_json(j);
  CHECK(cfg.kind == "surplus_law");
  CHECK(cfg.m == 120);
  CHECK(cfg.replicates == 7);
  CHECK(cfg.seed == 5);
  CHECK(cfg.lambda == -1.5);
  const auto back = harness::config_to_json(cfg);
  CHECK(back.at("m").get<int>() == 120);
  CHECK_THROWS(harness::config_from_json(
      nlohmann::json::parse(R"({"kind":"surplus_law"})")));  // missing seed
}

TEST_CASE("bijection audit passes at five vertices") {
  auto cfg = base_config("bijection_audit");
  cfg.m = 5;
  const auto rep = harness::run(cfg);
  CHECK(rep.all_pass());
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0][1] == 728.0);  // connected graphs on five vertices
  CHECK(rep.runtime_seconds >= 0.0);
}

TEST_CASE("gh bound audit reports zero violations") {
  auto cfg = base_config("gh_bound_audit");
  cfg.m = 30;
  cfg.replicates = 50;
  const auto rep = harness::run(cfg);
  CHECK(rep.all_pass());
}

TEST_CASE("diameter scaling emits one row per replicate") {
  auto cfg = base_config("diameter_scaling");
  cfg.n = 500;
  cfg.replicates = 20;
  const auto rep = harness::run(cfg);
  CHECK(rep.columns ==
        std::vector<std::string>{"n", "replicate", "D", "D_over_n13"});
  REQUIRE(rep.rows.size() == 20);
  for (const auto& row : rep.rows) {
    CHECK(row[0] == 500.0);
    CHECK(row[2] >= 0.0);
    CHECK(row[3] == Catch::Approx(row[2] / std::pow(500.0, 1.0 / 3.0)));
  }
}

TEST_CASE("reports are deterministic for a fixed seed") {
  auto cfg = base_config("tail_bounds");
  cfg.m = 100;
  cfg.replicates = 500;
  const auto a = harness::report_to_json(harness::run(cfg));
  const auto b = harness::report_to_json(harness::run(cfg));
  // runtime differs between runs; everything else must not
  auto strip = [](nlohmann::ordered_json j) {
    j.erase("runtime_seconds");
    return j.dump();
  };
  CHECK(strip(a) == strip(b));
}

TEST_CASE("emit writes matching JSON and CSV files") {
  auto cfg = base_config("bijection_audit");
  cfg.m = 4;
  const auto rep = harness::run(cfg);
  const std::string base = "harness_emit_test";
  harness::emit(rep, base);
  std::ifstream jf(base + ".json");
  REQUIRE(jf.good());
  nlohmann::json j;
  jf >> j;
  CHECK(j.at("all_pass").get<bool>());
  CHECK(j.at("config").at("kind").get<std::string>() == "bijection_audit");
  std::ifstream cf(base + ".csv");
  REQUIRE(cf.good());
  std::string header;
  std::getline(cf, header);
  CHECK(header == "m,connected_graphs,roundtrip_failures");
  std::remove((base + ".json").c_str());
  std::remove((base + ".csv").c_str());
}

TEST_CASE("csv writer emits only the header when there are no rows") {
  harness::Report rep;
  rep.columns = {"a", "b"};
  std::stringstream ss;
  harness::write_report_csv(ss, rep);
  CHECK(ss.str() == "a,b\n");
}

TEST_CASE("generator reproducibility") {
  const auto a = harness::gnp_largest_sizes(300, 0.5, 10, 42);
  const auto b = harness::gnp_largest_sizes(300, 0.5, 10, 42);
  CHECK(a == b);
  const auto d = harness::gnp_largest_diameters(300, 0.5, 10, 42);
  CHECK(d.size() == 10);
  for (std::size_t i = 0; i < d.size(); ++i) CHECK(d[i] <= a[i]);
}
