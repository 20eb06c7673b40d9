#pragma once
// Permanents of matrices with polynomial entries. Two independent routes for
// cross-checking: expansion over all permutations (tiny sizes) and
// inclusion-exclusion over column subsets with Gray-code updates.

#include "sdpp/bipoly.hpp"

namespace sdpp {

using PolyMatrix = std::vector<std::vector<BiPoly>>;

inline BiPoly naive_perm(const PolyMatrix& a) {
  std::size_t n = a.size();
  require(n >= 1 && n <= 8, Err::SizeGuard, "direct expansion capped at 8x8");
  for (auto& row : a)
    require(row.size() == n, Err::SchemaViolation, "matrix not square");
  PolyContext ctx = a[0][0].ctx;
  BiPoly acc(ctx);
  std::vector<int> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
  do {
    BiPoly prod = BiPoly::constant(ctx, 1);
    bool dead = false;
    for (std::size_t i = 0; i < n && !dead; ++i) {
      prod = prod * a[i][perm[i]];
      dead = prod.is_zero();
    }
    if (!dead) acc += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

inline BiPoly ryser_perm(const PolyMatrix& a) {
  std::size_t n = a.size();
  require(n >= 1 && n <= 20, Err::SizeGuard,
          "inclusion-exclusion route capped at 20x20");
  for (auto& row : a)
    require(row.size() == n, Err::SchemaViolation, "matrix not square");
  PolyContext ctx = a[0][0].ctx;
  std::vector<BiPoly> rowsum(n, BiPoly(ctx));
  BiPoly acc(ctx);
  u64 gray = 0;
  for (u64 s = 1; s < (1ull << n); ++s) {
    u64 g = s ^ (s >> 1);
    u64 bit = g ^ gray;  // exactly one column toggled
    std::size_t j = static_cast<std::size_t>(__builtin_ctzll(bit));
    if (g & bit)
      for (std::size_t i = 0; i < n; ++i) rowsum[i] += a[i][j];
    else
      for (std::size_t i = 0; i < n; ++i) rowsum[i] -= a[i][j];
    gray = g;
    BiPoly prod = BiPoly::constant(ctx, 1);
    bool dead = false;
    for (std::size_t i = 0; i < n && !dead; ++i) {
      prod = prod * rowsum[i];
      dead = prod.is_zero();
    }
    if (dead) continue;
    // sign (-1)^(n - |S|)
    if ((n - static_cast<std::size_t>(__builtin_popcountll(g))) & 1)
      acc -= prod;
    else
      acc += prod;
  }
  return acc;
}

inline BiPoly perm_y_coeff(const PolyMatrix& a, int t) {
  return ryser_perm(a).y_component(t);
}

}  // namespace sdpp
