#include <catch2/catch_amalgamated.hpp>

#include "sdpp/oracle.hpp"
#include "sdpp/permanent.hpp"

using namespace sdpp;

namespace {

BiPoly random_poly(Rng& rng, const PolyContext& ctx) {
  BiPoly p(ctx);
  int terms = static_cast<int>(rng.below(3));
  for (int t = 0; t < terms; ++t) {
    int x = static_cast<int>(rng.below(4));
    int y = static_cast<int>(rng.below(ctx.q));
    u64 c = 1 + rng.below(6);
    BiPoly m = BiPoly::monomial(ctx, x, y, c);
    p += m;
  }
  return p;
}

PolyMatrix random_matrix(Rng& rng, const PolyContext& ctx, std::size_t n) {
  PolyMatrix a(n, std::vector<BiPoly>(n, BiPoly(ctx)));
  for (auto& row : a)
    for (auto& cell : row) cell = random_poly(rng, ctx);
  return a;
}

}  // namespace

TEST_CASE("permanent of a small matrix by hand") {
  PolyContext ctx{8, 3, 10};
  PolyMatrix a(2, std::vector<BiPoly>(2, BiPoly(ctx)));
  a[0][0] = BiPoly::monomial(ctx, 1, 0, 2);  // 2x
  a[0][1] = BiPoly::constant(ctx, 3);
  a[1][0] = BiPoly::monomial(ctx, 0, 1, 1);  // y
  a[1][1] = BiPoly::monomial(ctx, 1, 0, 1);  // x

  BiPoly p = naive_perm(a);
  CHECK(p.coeff(2, 0) == 2);  // 2x * x
  CHECK(p.coeff(0, 1) == 3);  // 3 * y
  CHECK(p.coeff(1, 0) == 0);

  BiPoly r = ryser_perm(a);
  r -= p;
  CHECK(r.is_zero());
}

TEST_CASE("one-cell matrices pass through") {
  PolyContext ctx{6, 2, 5};
  PolyMatrix a{{BiPoly::monomial(ctx, 2, 1, 7)}};
  BiPoly n = naive_perm(a), r = ryser_perm(a);
  CHECK(n.coeff(2, 1) == 7);
  r -= n;
  CHECK(r.is_zero());
}

TEST_CASE("expansion and inclusion-exclusion agree on random matrices") {
  PolyContext ctx{16, 3, 30};
  Rng rng{20240817};
  for (std::size_t n = 1; n <= 5; ++n) {
    for (int rep = 0; rep < 8; ++rep) {
      PolyMatrix a = random_matrix(rng, ctx, n);
      BiPoly d = naive_perm(a);
      d -= ryser_perm(a);
      REQUIRE(d.is_zero());
    }
  }
}

TEST_CASE("matrix size guards") {
  PolyContext ctx{8, 2, 4};
  PolyMatrix big(9, std::vector<BiPoly>(9, BiPoly::constant(ctx, 1)));
  CHECK_THROWS_AS(naive_perm(big), Error);
  PolyMatrix rect(2, std::vector<BiPoly>(3, BiPoly(ctx)));
  CHECK_THROWS_AS(ryser_perm(rect), Error);
  MonoMatrix huge(41, std::vector<std::optional<Mono>>(41));
  CHECK_THROWS_AS(perm_dp(huge, 2, 10), Error);
  MonoMatrix one(1, std::vector<std::optional<Mono>>(1, Mono{0, 0, 0}));
  CHECK_THROWS_AS(perm_dp(one, 0, 10), Error);
  CHECK_THROWS_AS(perm_dp(one, 256, 10), Error);
}

TEST_CASE("single y-degree slice of the permanent") {
  PolyContext ctx{8, 3, 10};
  Rng rng{77};
  PolyMatrix a = random_matrix(rng, ctx, 4);
  BiPoly full = ryser_perm(a);
  for (int t = 0; t < 3; ++t) {
    BiPoly part = perm_y_coeff(a, t);
    BiPoly want = full.y_component(t);
    part -= want;
    CHECK(part.is_zero());
  }
}

TEST_CASE("sparse monomial terms consolidate") {
  WRPoly p;
  p.add_term(3, 1, 0, 5);
  p.add_term(3, 1, 0, 7);
  CHECK(p.t.size() == 1);
  CHECK(p.coeff(3, 1, 0) == 12);
  CHECK(p.coeff(3, 1, 1) == 0);

  // a sum hitting zero mod 2^64 drops the term
  WRPoly z;
  z.add_term(1, 0, 0, 1ull << 63);
  z.add_term(1, 0, 0, 1ull << 63);
  CHECK(z.empty());

  // keys sort by weight, then tie-break, then crossing class
  WRPoly s;
  s.add_term(2, 5, 1, 1);
  s.add_term(1, 9, 2, 1);
  s.add_term(2, 4, 0, 1);
  CHECK(key_w(s.t[0].first) == 1);
  CHECK(key_r(s.t[1].first) == 4);
  CHECK(key_y(s.t[2].first) == 1);
}

TEST_CASE("monomial multiply-accumulate respects the weight window") {
  WRPoly p;
  p.add_term(2, 1, 1, 3);
  p.add_term(5, 0, 2, 4);

  std::vector<std::pair<u64, u64>> acc;
  wr_axpy(acc, p, Mono{3, 2, 2}, 10, 3, 6);
  WRPoly out = wr_consolidated(std::move(acc));
  // (2,1,1) shifts to (5,3,0) with coefficient 30; (5,...) exceeds the cap
  CHECK(out.t.size() == 1);
  CHECK(out.coeff(5, 3, 0) == 30);

  std::vector<std::pair<u64, u64>> acc2;
  wr_add_scaled(acc2, p, 2);
  wr_add_scaled(acc2, p, 0);  // no-op
  WRPoly out2 = wr_consolidated(std::move(acc2));
  CHECK(out2.coeff(2, 1, 1) == 6);
  CHECK(out2.coeff(5, 0, 2) == 8);
}

TEST_CASE("coefficient masking") {
  WRPoly p;
  p.add_term(1, 0, 0, 16);
  p.add_term(2, 0, 0, 18);
  p.add_term(3, 0, 0, 7);
  WRPoly m = wr_mask(p, 4);
  CHECK(m.coeff(1, 0, 0) == 0);  // 16 vanishes mod 2^4
  CHECK(m.coeff(2, 0, 0) == 2);
  CHECK(m.coeff(3, 0, 0) == 7);
  CHECK(m.t.size() == 2);
}

TEST_CASE("layered permanent matches direct cover enumeration") {
  Rng rng{424242};
  for (int n : {2, 3, 4, 5, 6, 7}) {
    MonoMatrix a(n, std::vector<std::optional<Mono>>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (rng.below(5) == 0) continue;  // leave some cells empty
        a[i][j] = Mono{static_cast<u32>(rng.below(6)),
                       static_cast<u32>(rng.below(4)),
                       static_cast<u8>(rng.below(3))};
      }
    int q = 3;
    u64 trans = 0;
    WRPoly dp = perm_dp(a, q, 1u << 20, &trans);
    CHECK(trans > 0);

    auto covers = enumerate_cycle_covers(a);
    std::map<std::tuple<i64, i64, int>, u64> folded;
    for (auto& [key, cnt] : covers) {
      auto [w, r, y] = key;
      folded[{w, r, y % q}] += cnt;
    }
    std::map<std::tuple<i64, i64, int>, u64> got;
    for (auto& [k, c] : dp.t)
      got[{key_w(k), key_r(k), key_y(k)}] = c;
    REQUIRE(got == folded);
  }
}

TEST_CASE("weight window truncation is exact below the cap") {
  Rng rng{99};
  int n = 6;
  MonoMatrix a(n, std::vector<std::optional<Mono>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rng.below(4))
        a[i][j] = Mono{static_cast<u32>(rng.below(8)),
                       static_cast<u32>(rng.below(3)),
                       static_cast<u8>(rng.below(2))};
  WRPoly full = perm_dp(a, 2, 1u << 20);
  WRPoly cut = perm_dp(a, 2, 11);
  WRPoly expect;
  for (auto& [k, c] : full.t)
    if (key_w(k) <= 11) expect.t.push_back({k, c});
  CHECK(cut.t == expect.t);
}
