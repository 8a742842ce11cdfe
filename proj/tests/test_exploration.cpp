#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "crg/enumerate.hpp"
#include "crg/exploration.hpp"
#include "crg/rng.hpp"

using namespace crg;

namespace {

// 9-vertex tree used repeatedly below: 1 has children 3,5,8; 3 has 9;
// 9 has 2,4; 5 has 6; 8 has 7.
RootedOrderedTree fixture_tree() {
  RootedOrderedTree t(9);
  t.parent = {0, 0, 9, 1, 9, 1, 5, 8, 1, 3};
  return t;
}

}  // namespace

TEST_CASE("ordered depth-first search on a fixed tree") {
  const auto t = fixture_tree();
  CHECK(odfs_order(t) == std::vector<int>{1, 3, 9, 2, 4, 5, 6, 8, 7});
  CHECK(height_process(t).values ==
        std::vector<long long>{0, 1, 2, 3, 3, 1, 2, 1, 2});
  CHECK(tree_walk(t).values ==
        std::vector<long long>{0, 2, 2, 3, 2, 1, 1, 0, 0});
  CHECK(area(t) == 11);
}

TEST_CASE("odfs trace of the tree graph matches tree scan") {
  const auto t = fixture_tree();
  const auto tr = odfs(t.to_graph());
  CHECK(tr.order == odfs_order(t));
  CHECK(tr.walk.values == tree_walk(t).values);
  for (int v = 1; v <= 9; ++v)
    CHECK(tr.parent[static_cast<std::size_t>(v)] ==
          t.parent[static_cast<std::size_t>(v)]);
  CHECK(tr.component_index == std::vector<int>(9, 1));
}

TEST_CASE("walk drops by one across component boundaries") {
  LabeledGraph g(5);
  g.add_edge(1, 2);
  g.add_edge(4, 5);
  g.finalize();
  const auto tr = odfs(g);
  CHECK(tr.order == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(tr.component_index == std::vector<int>{1, 1, 2, 3, 3});
  CHECK(tr.walk.values == std::vector<long long>{0, 0, -1, -2, -2});
}

TEST_CASE("breadth-first variant orders by distance") {
  // star with center 1 attached to a pendant path 2-6
  LabeledGraph g(6);
  g.add_edge(1, 2);
  g.add_edge(1, 3);
  g.add_edge(1, 4);
  g.add_edge(2, 5);
  g.add_edge(5, 6);
  g.finalize();
  const auto tr = bfs_walk(g);
  CHECK(tr.order == std::vector<int>{1, 2, 3, 4, 5, 6});
  CHECK(tr.walk.values == std::vector<long long>{0, 2, 2, 1, 0, 0});
}

TEST_CASE("area equals walk sum and permitted edge count") {
  RngStream rng(31);
  for (int r = 0; r < 100; ++r) {
    std::vector<int> seq(8);
    for (auto& s : seq) s = static_cast<int>(rng.uniform_int(1, 10));
    const auto t = prufer_decode(seq, 10);
    const auto x = tree_walk(t);
    long long sum = 0;
    for (long long v : x.values) sum += v;
    CHECK(area(t) == sum);
    CHECK(static_cast<long long>(permitted_edges(t).size()) == area(t));
  }
}

TEST_CASE("contour process geometry") {
  const auto t = fixture_tree();
  const auto [c, k] = contour_process(t);
  const auto h = height_process(t);
  REQUIRE(c.values.size() == 2 * static_cast<std::size_t>(t.m) - 1);
  CHECK(c.values.front() == 0);
  CHECK(c.values.back() == 0);
  for (std::size_t i = 0; i + 1 < c.values.size(); ++i)
    CHECK(std::abs(c.values[i + 1] - c.values[i]) == 1);
  for (std::size_t i = 0; i < h.values.size(); ++i) {
    CHECK(k[i] == 2 * static_cast<long long>(i) - h.values[i]);
    CHECK(c.values[static_cast<std::size_t>(k[i])] == h.values[i]);
  }
}

TEST_CASE("lattice excursion interpolation and zero extension") {
  LatticeExcursion x;
  x.values = {0, 2, 1};
  CHECK(x.at(-1.0) == 0.0);
  CHECK(x.at(0.5) == 1.0);
  CHECK(x.at(1.5) == 1.5);
  CHECK(x.at(2.0) == 0.0);  // beyond the last index
  CHECK(x.at(7.0) == 0.0);
  CHECK(x.max() == 2);
}

TEST_CASE("walk CSV export") {
  LatticeExcursion x;
  x.values = {1, 0};
  x.kind = WalkKind::height;
  std::stringstream ss;
  write_walk_csv(ss, x);
  CHECK(ss.str() == "index,value,kind\n0,1,height\n1,0,height\n");
}
