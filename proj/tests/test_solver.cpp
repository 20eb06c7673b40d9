#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "sdpp/oracle.hpp"
#include "sdpp/solver.hpp"

using namespace sdpp;

namespace {

Instance random_weights(Instance inst, u64 seed, i64 lo, i64 hi) {
  std::mt19937_64 rng(seed);
  for (auto& e : inst.g.edges)
    e.w = lo + static_cast<i64>(rng() % static_cast<u64>(hi - lo + 1));
  return inst;
}

}  // namespace

TEST_CASE("demand pattern read off the terminal layout") {
  Instance inst = template_annulus(3, 1, 3, 4);
  PathConfig t = target_config(inst);
  CHECK(t.k1 == 3);
  CHECK(t.k2 == 1);
  CHECK(t.within1 == std::vector<std::pair<int, int>>{{0, 1}});
  CHECK(t.within2.empty());
  CHECK(t.cross == std::vector<std::pair<int, int>>{{2, 0}});

  // the read pattern is always one of the enumerated ones when it nests
  auto all = enumerate_configs(3, 1);
  CHECK(std::find(all.begin(), all.end(), t) != all.end());

  Instance swapped = inst;
  swapped.t.pairs = {{1, 2}, {0, 8}};
  PathConfig t2 = target_config(swapped);
  CHECK(t2.within1 == std::vector<std::pair<int, int>>{{1, 2}});
  CHECK(t2.cross == std::vector<std::pair<int, int>>{{0, 0}});
}

TEST_CASE("tie breaker draws stay inside the key budget") {
  IsolationWeights iw;
  iw.randomize(20, 7);
  CHECK(iw.r.size() == 20);
  for (u32 x : iw.r) {
    CHECK(x >= 1);
    CHECK(x <= 80);
  }
  IsolationWeights same;
  same.randomize(20, 7);
  CHECK(same.r == iw.r);
  CHECK_THROWS_AS(iw.randomize(3000, 1), Error);
}

TEST_CASE("total weight must fit the exponent key") {
  EmbeddedGraph g;
  g.n = 2;
  for (int i = 0; i < 4300; ++i) g.edges.push_back({0, 1, 1000000});
  CHECK_THROWS_AS(weight_span(g, nullptr), Error);
  g.edges.resize(10);
  CHECK(weight_span(g, nullptr) == 10000000u);
  std::vector<char> alive(10, 1);
  alive[0] = 0;
  CHECK(weight_span(g, &alive) == 9000000u);
}

TEST_CASE("rows sharing a role split reuse one evaluation") {
  AxisDescriptor ax;
  ConfigSystem sys = build_system(3, 3, ax);
  auto groups = row_groups(sys);
  CHECK(groups.size() == 10);  // nine one-cross splits plus one three-cross
  for (auto& g : groups) {
    CHECK(sys.rows[g.first].t == 0);
    CHECK(sys.rows[g.first].q == g.q);
    for (int t = 1; t < g.q; ++t) CHECK(sys.rows[g.first + t].t == t);
  }
}

TEST_CASE("y residue slices") {
  WRPoly p;
  p.add_term(3, 1, 0, 10);
  p.add_term(3, 1, 1, 20);
  p.add_term(5, 0, 1, 30);
  WRPoly s0 = slice_y(p, 0), s1 = slice_y(p, 1);
  CHECK(s0.coeff(3, 1, 0) == 10);
  CHECK(s0.t.size() == 1);
  CHECK(s1.coeff(3, 1, 0) == 20);
  CHECK(s1.coeff(5, 0, 0) == 30);
  CHECK(s1.t.size() == 2);
}

TEST_CASE("path reassembly accepts exactly the decided witness") {
  Instance inst = template_annulus(1, 1, 2, 3);
  std::vector<u32> redge(inst.g.edges.size());
  for (std::size_t e = 0; e < redge.size(); ++e) redge[e] = static_cast<u32>(e + 1);
  int spoke = inst.g.edge_between(0, 3);
  REQUIRE(spoke >= 0);

  std::vector<char> alive(inst.g.edges.size(), 0);
  alive[spoke] = 1;
  Decision dec{1, redge[spoke], 1};
  auto paths = assemble_paths(inst, alive, redge, dec);
  REQUIRE(paths.has_value());
  CHECK(*paths == std::vector<std::vector<int>>{{0, 3}});

  // wrong total weight
  CHECK_FALSE(assemble_paths(inst, alive, redge, {2, redge[spoke], 1}).has_value());
  // wrong tie-break sum
  CHECK_FALSE(assemble_paths(inst, alive, redge, {1, 0, 1}).has_value());
  // stray edge leaves a degree-one interior vertex
  int rim = inst.g.edge_between(1, 2);
  REQUIRE(rim >= 0);
  std::vector<char> extra = alive;
  extra[rim] = 1;
  Decision dec2{dec.w + 1, dec.r + redge[rim], 1};
  CHECK_FALSE(assemble_paths(inst, extra, redge, dec2).has_value());
}

TEST_CASE("independent routing verification") {
  Instance inst = template_annulus(3, 1, 3, 4);
  const EmbeddedGraph& g = inst.g;
  // pairs are (0,1) within and (2,8) across
  std::vector<std::vector<int>> good{{0, 1}, {2, 6, 10, 9, 8}};
  CHECK(verify_solution(g, inst.t.pairs, good) == 5);

  std::vector<std::vector<int>> wrong_end{{0, 1}, {2, 6, 10, 9}};
  CHECK_THROWS_AS(verify_solution(g, inst.t.pairs, wrong_end), Error);
  std::vector<std::vector<int>> shared{{0, 1}, {2, 1, 5, 9, 8}};
  CHECK_THROWS_AS(verify_solution(g, inst.t.pairs, shared), Error);
  std::vector<std::vector<int>> jump{{0, 1}, {2, 10, 9, 8}};
  CHECK_THROWS_AS(verify_solution(g, inst.t.pairs, jump), Error);
  std::vector<std::vector<int>> miscount{{0, 1}};
  CHECK_THROWS_AS(verify_solution(g, inst.t.pairs, miscount), Error);
}

TEST_CASE("solves match exhaustive search on template instances") {
  struct Case {
    int k1, k2, rings, spokes;
    u64 seed;
  };
  for (auto [k1, k2, rings, spokes, seed] :
       {Case{1, 1, 2, 3, 5}, Case{3, 1, 3, 4, 6}, Case{1, 3, 2, 4, 7},
        Case{3, 3, 2, 4, 8}}) {
    Instance inst = random_weights(template_annulus(k1, k2, rings, spokes),
                                   seed, 1, 20);
    auto want = oracle_optimum(inst);
    REQUIRE(want.has_value());
    SolveReport rep = solve_two_face(inst, {});
    INFO("annulus " << k1 << "," << k2 << "," << rings << "," << spokes);
    REQUIRE(rep.outcome == Outcome::Optimal);
    CHECK(rep.weight == static_cast<u64>(*want));
    CHECK(verify_solution(inst.g, inst.t.pairs, rep.paths) == rep.weight);
    // the winning coefficient is the determinant's residue
    CHECK(rep.coeff == to_residue(bigint(rep.det), rep.c));
  }
}

TEST_CASE("ties between optimal routings still verify") {
  Instance inst = template_annulus(3, 3, 2, 4);  // every weight 1
  auto want = oracle_optimum(inst);
  REQUIRE(want.has_value());
  SolveReport rep = solve_two_face(inst, {});
  REQUIRE(rep.outcome == Outcome::Optimal);
  CHECK(rep.weight == static_cast<u64>(*want));
  CHECK(verify_solution(inst.g, inst.t.pairs, rep.paths) == rep.weight);
}

TEST_CASE("demands that cross are rejected structurally") {
  Instance inst = template_annulus(3, 3, 2, 4);
  inst.t.pairs = {{0, 4}, {1, 6}, {2, 5}};
  SolveReport rep = solve_two_face(inst, {});
  CHECK(rep.outcome == Outcome::Infeasible);
  CHECK(rep.certain);
  CHECK(rep.target == -1);
  CHECK(rep.work.permanents == 0);  // no evaluation even starts
}

TEST_CASE("blocked routings come back infeasible without certainty") {
  // all neighbors of position 0 are foreign terminals
  Instance inst = template_annulus(5, 1, 2, 5);
  REQUIRE_FALSE(oracle_optimum(inst).has_value());
  SolveOptions opts;
  opts.trials = 3;
  SolveReport rep = solve_two_face(inst, opts);
  CHECK(rep.outcome == Outcome::Infeasible);
  CHECK_FALSE(rep.certain);
  CHECK(rep.trials_used == 3);
}

TEST_CASE("one seed, one transcript") {
  Instance inst = random_weights(template_annulus(3, 1, 3, 4), 99, 1, 9);
  SolveOptions opts;
  opts.seed = 4242;
  SolveReport a = solve_two_face(inst, opts);
  SolveReport b = solve_two_face(inst, opts);
  opts.jobs = 4;
  SolveReport c = solve_two_face(inst, opts);
  REQUIRE(a.outcome == Outcome::Optimal);
  for (const SolveReport* r : {&b, &c}) {
    CHECK(r->weight == a.weight);
    CHECK(r->rvalue == a.rvalue);
    CHECK(r->paths == a.paths);
    CHECK(r->trials_used == a.trials_used);
    CHECK(r->work.permanents == a.work.permanents);
    CHECK(r->work.transitions == a.work.transitions);
  }

  SolveOptions other = opts;
  other.seed = 4243;
  SolveReport d = solve_two_face(inst, other);
  REQUIRE(d.outcome == Outcome::Optimal);
  CHECK(d.weight == a.weight);  // optimum is seed-independent
}

TEST_CASE("modulus override bounds") {
  Instance inst = template_annulus(3, 1, 2, 4);
  SolveOptions narrow;
  narrow.modulus_bits = 2;  // needs bit_length(det) + 1 = 3
  CHECK_THROWS_AS(solve_two_face(inst, narrow), Error);
  SolveOptions wide;
  wide.modulus_bits = 65;
  CHECK_THROWS_AS(solve_two_face(inst, wide), Error);
  SolveOptions fine;
  fine.modulus_bits = 24;
  SolveReport rep = solve_two_face(inst, fine);
  CHECK(rep.outcome == Outcome::Optimal);
  CHECK(rep.c == 24);
}
