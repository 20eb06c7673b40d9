#pragma once
// The degree-m extension of Z/2^c built from a 0/1 lift of an irreducible
// over GF(2). Elements are coefficient vectors of length m, entries mod 2^c.

#include <vector>

#include "sdpp/gf2m.hpp"

namespace sdpp {

struct GaloisRing {
  unsigned m;
  unsigned c;
  u64 p;  // bit-packed monic irreducible of degree m, reused as the 0/1 lift
  u64 mask;

  GaloisRing(unsigned m_, unsigned c_)
      : m(m_), c(c_), p(find_irreducible(m_)), mask(mod_mask(c_)) {
    require(c_ >= 1 && c_ <= 64, Err::ModulusTooWide, "need 1 <= c <= 64");
  }

  using Elem = std::vector<u64>;

  Elem zero() const { return Elem(m, 0); }
  Elem one() const {
    Elem e(m, 0);
    e[0] = 1;
    return e;
  }
  Elem scalar(u64 v) const {
    Elem e(m, 0);
    e[0] = v & mask;
    return e;
  }
  // lift a field element's bit mask to a 0/1 coefficient vector
  Elem from_bits(u64 bits) const {
    Elem e(m, 0);
    for (unsigned i = 0; i < m; ++i) e[i] = (bits >> i) & 1;
    return e;
  }
  u64 to_bits(const Elem& a) const {
    u64 b = 0;
    for (unsigned i = 0; i < m; ++i) b |= (a[i] & 1) << i;
    return b;
  }

  Elem add(Elem a, const Elem& b) const {
    for (unsigned i = 0; i < m; ++i) a[i] = (a[i] + b[i]) & mask;
    return a;
  }
  Elem sub(Elem a, const Elem& b) const {
    for (unsigned i = 0; i < m; ++i) a[i] = (a[i] - b[i]) & mask;
    return a;
  }
  Elem neg(Elem a) const {
    for (unsigned i = 0; i < m; ++i) a[i] = (~a[i] + 1) & mask;
    return a;
  }
  Elem smul(Elem a, u64 s) const {
    for (unsigned i = 0; i < m; ++i) a[i] = (a[i] * s) & mask;
    return a;
  }

  Elem mul(const Elem& a, const Elem& b) const {
    std::vector<u64> t(2 * m - 1, 0);
    for (unsigned i = 0; i < m; ++i) {
      if (!a[i]) continue;
      for (unsigned j = 0; j < m; ++j) t[i + j] += a[i] * b[j];
    }
    // x^m = -(sum of p's lower bits), applied top down
    for (unsigned d = 2 * m - 2; d >= m; --d) {
      u64 v = t[d];
      if (!v) continue;
      t[d] = 0;
      for (unsigned i = 0; i < m; ++i)
        if (p >> i & 1) t[d - m + i] -= v;
    }
    Elem r(m);
    for (unsigned i = 0; i < m; ++i) r[i] = t[i] & mask;
    return r;
  }

  Elem pow(Elem a, u64 e) const {
    Elem r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  bool is_unit(const Elem& a) const { return to_bits(a) != 0; }

  // multiplicative lift of a nonzero field element: the unique unit that
  // reduces to it mod 2 and is fixed by raising to the 2^m power
  Elem teichmuller(u64 bits) const {
    Elem z = from_bits(bits);
    if (bits == 0) return z;
    for (unsigned it = 0; it <= c; ++it) {
      Elem nz = pow(z, 1ull << m);
      if (nz == z) return z;
      z = nz;
    }
    fail(Err::InternalInvariant, "multiplicative lift did not stabilize");
  }
};

// inverse of an odd residue mod 2^c by Newton iteration
inline u64 inv_odd(u64 a, unsigned c) {
  require(a & 1, Err::InternalInvariant, "inverse of even residue");
  u64 x = 1;
  for (int i = 0; i < 6; ++i) x *= 2 - a * x;
  return x & mod_mask(c);
}

}  // namespace sdpp
