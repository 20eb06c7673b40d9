#include <catch2/catch_amalgamated.hpp>
#include <set>

#include "sdpp/oracle.hpp"

using namespace sdpp;

namespace {

// bare instance for routing tests; no embedding data needed without an axis
Instance plain(int n, std::vector<EdgeData> edges,
               std::vector<std::pair<int, int>> pairs) {
  Instance inst;
  inst.g.n = n;
  inst.g.edges = std::move(edges);
  inst.t.pairs = std::move(pairs);
  return inst;
}

}  // namespace

TEST_CASE("single pair path enumeration") {
  Instance inst = plain(3, {{0, 1, 1}, {1, 2, 2}, {0, 2, 4}}, {{0, 2}});
  auto all = enumerate_instances_undirected(inst);
  REQUIRE(all.size() == 2);
  std::set<i64> weights;
  for (auto& s : all) {
    weights.insert(s.w);
    REQUIRE(s.paths.size() == 1);
    CHECK(s.paths[0].front() == 0);
    CHECK(s.paths[0].back() == 2);
  }
  CHECK(weights == std::set<i64>{3, 4});
  CHECK(oracle_optimum(inst) == 3);
}

TEST_CASE("paths of one system avoid each other") {
  // both pairs would have to route through the hub
  Instance star = plain(5, {{0, 4, 1}, {1, 4, 1}, {2, 4, 1}, {3, 4, 1}},
                        {{0, 1}, {2, 3}});
  CHECK(enumerate_instances_undirected(star).empty());
  CHECK_FALSE(oracle_optimum(star).has_value());

  // a direct edge for the first pair frees the hub for the second
  Instance star2 = plain(5, {{0, 4, 1}, {1, 4, 1}, {2, 4, 1}, {3, 4, 1}, {0, 1, 5}},
                         {{0, 1}, {2, 3}});
  auto all = enumerate_instances_undirected(star2);
  REQUIRE(all.size() == 1);
  CHECK(all[0].w == 7);
  CHECK(all[0].paths[0] == std::vector<int>{0, 1});
  CHECK(all[0].paths[1] == std::vector<int>{2, 4, 3});
}

TEST_CASE("foreign terminals are never interior") {
  // the only 0-1 route passes through terminal 2
  Instance blocked = plain(4, {{0, 2, 1}, {2, 1, 1}, {2, 3, 1}}, {{0, 1}, {2, 3}});
  CHECK(enumerate_instances_undirected(blocked).empty());

  Instance open = plain(4, {{0, 2, 1}, {2, 1, 1}, {2, 3, 1}, {0, 1, 9}},
                        {{0, 1}, {2, 3}});
  auto all = enumerate_instances_undirected(open);
  REQUIRE(all.size() == 1);
  CHECK(all[0].w == 10);
}

TEST_CASE("enumeration stops at the requested count") {
  Instance inst = template_annulus(1, 1, 3, 4);
  CHECK(enumerate_instances_undirected(inst).size() == 151);
  CHECK(enumerate_instances_undirected(inst, 5).size() == 5);
  CHECK(oracle_optimum(inst) == 2);
}

TEST_CASE("pair orientation needs exactly one source") {
  Instance inst = plain(3, {{0, 1, 1}, {1, 2, 1}}, {{0, 2}});
  OracleQuery both;
  both.inst = &inst;
  both.sources = {0, 2};
  CHECK_THROWS_AS(enumerate_instances(both), Error);
  OracleQuery none;
  none.inst = &inst;
  none.sources = {1};
  CHECK_THROWS_AS(enumerate_instances(none), Error);
}

TEST_CASE("vertex cap on exhaustive search") {
  Instance big;
  big.g.n = 19;
  big.t.pairs = {{0, 1}};
  OracleQuery q;
  q.inst = &big;
  q.sources = {0};
  CHECK_THROWS_AS(enumerate_instances(q), Error);
}

TEST_CASE("tie-break values accumulate per edge use") {
  Instance inst = template_annulus(1, 1, 2, 4);
  std::vector<u32> redge(inst.g.edges.size());
  for (std::size_t e = 0; e < redge.size(); ++e)
    redge[e] = static_cast<u32>(1u << e);  // distinct bits identify edges
  OracleQuery q;
  q.inst = &inst;
  q.redge = &redge;
  q.sources = {inst.t.pairs[0].first};
  auto all = enumerate_instances(q);
  REQUIRE_FALSE(all.empty());
  for (auto& s : all) {
    i64 want = 0;
    for (std::size_t i = 0; i + 1 < s.paths[0].size(); ++i) {
      int e = inst.g.edge_between(s.paths[0][i], s.paths[0][i + 1]);
      REQUIRE(e >= 0);
      want += redge[e];
    }
    CHECK(s.r == want);
  }
}

TEST_CASE("axis passes of one pairing share a residue") {
  Instance inst = template_annulus(3, 3, 2, 4);
  AxisDescriptor ax = dual_axis(inst);
  OracleQuery q;
  q.inst = &inst;
  q.axis = &ax;
  for (auto [a, b] : inst.t.pairs) q.sources.push_back(a);
  auto all = enumerate_instances(q);
  REQUIRE(all.size() == 3);
  for (auto& s : all) CHECK(mod_pos(s.y, 3) == 0);

  // flipping every pair reverses each crossing
  OracleQuery rq = q;
  rq.sources.clear();
  for (auto [a, b] : inst.t.pairs) rq.sources.push_back(b);
  auto rev = enumerate_instances(rq);
  REQUIRE(rev.size() == all.size());
  std::multiset<std::pair<i64, int>> fwd, bwd;
  for (auto& s : all) fwd.insert({s.w, s.y});
  for (auto& s : rev) bwd.insert({s.w, -s.y});
  CHECK(fwd == bwd);
}

TEST_CASE("cycle cover enumeration on a hand matrix") {
  // two covers: identity (w=2, y=0) and the swap (w=3, y=1)
  MonoMatrix a(2, std::vector<std::optional<Mono>>(2));
  a[0][0] = Mono{1, 0, 0};
  a[0][1] = Mono{1, 2, 1};
  a[1][0] = Mono{2, 1, 0};
  a[1][1] = Mono{1, 3, 0};
  auto covers = enumerate_cycle_covers(a);
  REQUIRE(covers.size() == 2);
  CHECK(covers.at({2, 3, 0}) == 1);
  CHECK(covers.at({3, 3, 1}) == 1);

  a[0][1].reset();  // kill the swap
  covers = enumerate_cycle_covers(a);
  REQUIRE(covers.size() == 1);
  CHECK(covers.at({2, 3, 0}) == 1);
}
