#pragma once
// GF(2)[x] arithmetic on bit-packed polynomials and GF(2^m) field contexts.
// Polynomials are u64 bit masks, bit i holding the coefficient of x^i.

#include "sdpp/base.hpp"

namespace sdpp {

inline int pdeg(u64 a) { return a == 0 ? -1 : 63 - __builtin_clzll(a); }

inline u64 pmod(u64 a, u64 p) {
  int dp = pdeg(p);
  for (int d = pdeg(a); d >= dp; d = pdeg(a)) a ^= p << (d - dp);
  return a;
}

// (a * b) mod p, valid while deg(p) <= 63
inline u64 pmulmod(u64 a, u64 b, u64 p) {
  a = pmod(a, p);
  b = pmod(b, p);
  int dp = pdeg(p);
  u64 r = 0;
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a >> dp & 1) a ^= p;
  }
  return r;
}

inline u64 pgcd(u64 a, u64 b) {
  while (b) {
    u64 t = pmod(a, b);
    a = b;
    b = t;
  }
  return a;
}

// x^(2^k) mod p by repeated squaring
inline u64 pfrob(unsigned k, u64 p) {
  u64 t = pmod(2, p);  // the polynomial x
  for (unsigned i = 0; i < k; ++i) t = pmulmod(t, t, p);
  return t;
}

inline bool is_irreducible(u64 p) {
  int m = pdeg(p);
  if (m <= 0) return false;
  if (m == 1) return true;
  if ((p & 1) == 0) return false;  // divisible by x
  if (pfrob(static_cast<unsigned>(m), p) != pmod(2, p)) return false;
  // reject any factor of degree properly dividing m
  for (int d = 2; d * d <= m; ++d) {
    if (m % d) continue;
    for (int e : {d, m / d}) {
      u64 g = pgcd(pfrob(static_cast<unsigned>(e), p) ^ pmod(2, p), p);
      if (pdeg(g) > 0) return false;
    }
  }
  return true;
}

// smallest irreducible degree-m polynomial by numeric value
inline u64 find_irreducible(unsigned m) {
  require(m >= 1 && m <= 30, Err::SizeGuard, "field degree out of range");
  for (u64 low = 1; low < (1ull << m); low += 2) {
    u64 p = (1ull << m) | low;
    if (is_irreducible(p)) return p;
  }
  fail(Err::InternalInvariant, "no irreducible polynomial found");
}

// GF(2^m) with elements as bit masks of degree < m
struct GF2m {
  unsigned m;
  u64 p;

  explicit GF2m(unsigned m_) : m(m_), p(find_irreducible(m_)) {}
  GF2m(unsigned m_, u64 p_) : m(m_), p(p_) {
    require(pdeg(p_) == static_cast<int>(m_) && is_irreducible(p_),
            Err::SchemaViolation, "not an irreducible of the stated degree");
  }

  u64 order() const { return (1ull << m) - 1; }  // size of the unit group
  u64 add(u64 a, u64 b) const { return a ^ b; }
  u64 mul(u64 a, u64 b) const { return pmulmod(a, b, p); }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    a = pmod(a, p);
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const {
    require(pmod(a, p) != 0, Err::InternalInvariant, "inverting zero");
    return pow(a, order() - 1);
  }
};

}  // namespace sdpp
