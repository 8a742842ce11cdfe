#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include "crg/encoding.hpp"
#include "crg/enumerate.hpp"
#include "crg/rng.hpp"

using namespace crg;

TEST_CASE("triangle encodes as a star with one mark") {
  LabeledGraph g(3);
  g.add_edge(1, 2);
  g.add_edge(1, 3);
  g.add_edge(2, 3);
  g.finalize();
  const MarkedWalk mw = encode(g);
  CHECK(mw.tree.parent == std::vector<int>{0, 0, 1, 1});
  CHECK(mw.walk.values == std::vector<long long>{0, 1, 0});
  REQUIRE(mw.marks.pts.size() == 1);
  CHECK(mw.marks.pts[0] == std::pair<long long, long long>{1, 1});
  CHECK(decode_gx(mw) == g);
}

TEST_CASE("encode rejects disconnected graphs") {
  LabeledGraph g(3);
  g.add_edge(1, 2);
  g.finalize();
  CHECK_THROWS(encode(g));
}

TEST_CASE("round trip over every connected graph on four vertices") {
  const auto graphs = all_connected_graphs(4);
  REQUIRE(graphs.size() == 38);
  for (const auto& g : graphs) {
    const MarkedWalk mw = encode(g);
    // every mark sits strictly under the walk
    for (const auto& [i, j] : mw.marks.pts) {
      CHECK(j >= 1);
      CHECK(j <= mw.walk.values[static_cast<std::size_t>(i)]);
    }
    CHECK(decode_gx(mw) == g);
  }
}

TEST_CASE("decode rejects marks above the walk") {
  RootedOrderedTree t(3);
  t.parent = {0, 0, 1, 2};  // path 1-2-3, walk is all zeros
  PointSet q;
  q.add(1, 1);
  CHECK_THROWS(decode_gx(t, q));
}

TEST_CASE("marks under the height profile join vertices to ancestors") {
  // path 1-2-3-4-5: heights 0,1,2,3,4
  RootedOrderedTree t(5);
  t.parent = {0, 0, 1, 2, 3, 4};
  PointSet q;
  q.add(4, 1);  // v_4 = 5, ancestor at depth 2*1-1 = 1: vertex 2
  q.add(3, 1);  // v_3 = 4, ancestor at depth 1: vertex 2
  const LabeledGraph g = build_gh(t, q);
  CHECK(g.has_edge(5, 2));
  CHECK(g.has_edge(4, 2));
  CHECK(g.edge_count == 6);
}

TEST_CASE("height marks that duplicate the tree edge are dropped") {
  // v_2 = 3 has depth 2; mark j=1 points at depth 1, which is its parent
  RootedOrderedTree t(3);
  t.parent = {0, 0, 1, 2};
  PointSet q;
  q.add(2, 1);
  const LabeledGraph g = build_gh(t, q);
  CHECK(g.edge_count == 2);
}

TEST_CASE("height marks beyond the profile are ignored") {
  RootedOrderedTree t(3);
  t.parent = {0, 0, 1, 2};
  PointSet q;
  q.add(1, 3);  // 2j = 6 > H(1) = 1
  CHECK(build_gh(t, q).edge_count == 2);
}

TEST_CASE("marked walk JSON round trip") {
  LabeledGraph g(4);
  g.add_edge(1, 2);
  g.add_edge(1, 3);
  g.add_edge(2, 3);
  g.add_edge(3, 4);
  g.finalize();
  const MarkedWalk mw = encode(g);
  const auto j = to_json(mw);
  CHECK(j.contains("walk"));
  CHECK(j.contains("parent"));
  CHECK(j.contains("marks"));
  const MarkedWalk back = marked_walk_from_json(j);
  CHECK(back.tree == mw.tree);
  CHECK(back.walk.values == mw.walk.values);
  CHECK(back.marks.pts == mw.marks.pts);
  CHECK(decode_gx(back) == g);
}

TEST_CASE("points_under_walk keeps exactly the lattice points below") {
  LatticeExcursion x;
  x.values = {0, 2, 1};
  PointSet q;
  q.add(0, 1);  // above
  q.add(1, 1);
  q.add(1, 2);
  q.add(1, 3);  // above
  q.add(2, 1);
  const PointSet kept = points_under_walk(q, x);
  REQUIRE(kept.pts.size() == 3);
  CHECK(kept.pts[0] == std::pair<long long, long long>{1, 1});
  CHECK(kept.pts[2] == std::pair<long long, long long>{2, 1});
}
