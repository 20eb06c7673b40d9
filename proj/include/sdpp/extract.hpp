#pragma once
// Recovering the coefficient table of a bivariate polynomial from evaluations
// on lifted unit points. Works for any coefficient modulus 2^c with c <= 64;
// at c = 1 it degenerates to plain finite-field interpolation.

#include <vector>

#include "sdpp/galois_ring.hpp"

namespace sdpp {

using CoeffTable = std::vector<std::vector<u64>>;  // coeff[t1][t2], masked mod 2^c

// Horner evaluation of a coefficient table at ring points (x, y).
inline GaloisRing::Elem eval_table(const GaloisRing& R, const CoeffTable& tab,
                                   const GaloisRing::Elem& x,
                                   const GaloisRing::Elem& y) {
  GaloisRing::Elem acc = R.zero();
  for (auto it = tab.rbegin(); it != tab.rend(); ++it) {
    GaloisRing::Elem row = R.zero();
    for (auto jt = it->rbegin(); jt != it->rend(); ++jt)
      row = R.add(R.mul(row, y), R.scalar(*jt));
    acc = R.add(R.mul(acc, x), row);
  }
  return acc;
}

// Recover all coefficients c[t1][t2] (t1 <= dx, t2 <= dy) of a polynomial f
// with x- and y-degrees at most 2^m - 2, given only evaluations of f.
// The evaluator must be a genuine polynomial of those degrees; a final
// re-evaluation pass catches violations.
template <class EvalFn>
CoeffTable extract_coeffs(const GaloisRing& R, EvalFn&& eval, unsigned dx,
                          unsigned dy) {
  require(R.m <= 10, Err::SizeGuard, "field degree too large for extraction");
  const u64 N = (1ull << R.m) - 1;  // unit group order, odd
  require(dx <= N - 1 && dy <= N - 1, Err::DegreeCapExceeded,
          "degree bound exceeds what the point set can resolve");
  const unsigned maxd = std::max(dx, dy);

  // lifted points u_a and the descending power ladder u_a^(N-t), t <= maxd
  std::vector<GaloisRing::Elem> u(N);
  std::vector<std::vector<GaloisRing::Elem>> updesc(N);
  for (u64 a = 1; a <= N; ++a) {
    u[a - 1] = R.pow(R.teichmuller(a), 1ull << (R.c - 1));
    auto& lad = updesc[a - 1];
    lad.resize(maxd + 1);
    lad[maxd] = R.pow(u[a - 1], N - maxd);
    for (unsigned t = maxd; t > 0; --t) lad[t - 1] = R.mul(lad[t], u[a - 1]);
  }

  std::vector<std::vector<GaloisRing::Elem>> F(N, std::vector<GaloisRing::Elem>(N));
  for (u64 a = 0; a < N; ++a)
    for (u64 b = 0; b < N; ++b) F[a][b] = eval(u[a], u[b]);

  // G[a][t2] = sum_b u_b^(N-t2) F[a][b], then contract over a
  const u64 invn2 = inv_odd((N * N) & mod_mask(R.c), R.c);
  CoeffTable out(dx + 1, std::vector<u64>(dy + 1, 0));
  std::vector<std::vector<GaloisRing::Elem>> G(N,
      std::vector<GaloisRing::Elem>(dy + 1, R.zero()));
  for (u64 a = 0; a < N; ++a)
    for (unsigned t2 = 0; t2 <= dy; ++t2)
      for (u64 b = 0; b < N; ++b)
        G[a][t2] = R.add(G[a][t2], R.mul(updesc[b][t2], F[a][b]));
  for (unsigned t1 = 0; t1 <= dx; ++t1)
    for (unsigned t2 = 0; t2 <= dy; ++t2) {
      GaloisRing::Elem s = R.zero();
      for (u64 a = 0; a < N; ++a) s = R.add(s, R.mul(updesc[a][t1], G[a][t2]));
      // the sums leave a constant, invertible multiple in the base residues
      for (unsigned i = 1; i < R.m; ++i)
        require((s[i] & R.mask) == 0, Err::DegreeCapExceeded,
                "coefficient left the base ring; degree bounds are wrong");
      out[t1][t2] = (s[0] * invn2) & R.mask;
    }

  // consistency pass over the sample points
  u64 checks = (N * N <= 2048) ? N * N : 64;
  for (u64 s = 0; s < checks; ++s) {
    u64 a = (s * 7919 + 13) % N, b = (s * 104729 + 7) % N;
    require(eval_table(R, out, u[a], u[b]) == F[a][b], Err::DegreeCapExceeded,
            "recovered table disagrees with the evaluator");
  }
  return out;
}

}  // namespace sdpp
