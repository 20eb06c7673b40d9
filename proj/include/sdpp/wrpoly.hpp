#pragma once
// Sparse polynomials over packed monomials (w, r, y): w is the weight part,
// r the tie-breaking part, y the face-crossing part. Terms are kept sorted by
// (w, r, y), so the least term under the (w, r) order is the first one.
// A weight window drops every term with w above the cap; since exponents only
// ever add, the window is exact for all retained weights.

#include <optional>

#include "sdpp/base.hpp"

namespace sdpp {

struct Mono {
  u32 w = 0;
  u32 r = 0;  // < 2^24
  u8 y = 0;   // reduced mod q
};

inline u64 mono_key(u32 w, u32 r, u8 y) {
  return (static_cast<u64>(w) << 32) | (static_cast<u64>(r) << 8) | y;
}
inline u32 key_w(u64 k) { return static_cast<u32>(k >> 32); }
inline u32 key_r(u64 k) { return static_cast<u32>((k >> 8) & 0xffffff); }
inline u8 key_y(u64 k) { return static_cast<u8>(k & 0xff); }

struct WRPoly {
  // (key, coefficient) sorted by key, coefficients nonzero mod 2^64
  std::vector<std::pair<u64, u64>> t;

  bool empty() const { return t.empty(); }

  u64 coeff(u32 w, u32 r, u8 y) const {
    u64 k = mono_key(w, r, y);
    auto it = std::lower_bound(t.begin(), t.end(), k,
                               [](auto& a, u64 b) { return a.first < b; });
    return (it != t.end() && it->first == k) ? it->second : 0;
  }

  void add_term(u32 w, u32 r, u8 y, u64 c) {
    t.push_back({mono_key(w, r, y), c});
    consolidate();
  }

  void consolidate() {
    std::sort(t.begin(), t.end());
    std::size_t out = 0;
    for (std::size_t i = 0; i < t.size();) {
      u64 k = t[i].first, c = 0;
      while (i < t.size() && t[i].first == k) c += t[i++].second;
      if (c) t[out++] = {k, c};
    }
    t.resize(out);
  }
};

// acc += p * mono * scale, dropping weights above wcap; y wraps mod q
inline void wr_axpy(std::vector<std::pair<u64, u64>>& acc, const WRPoly& p,
                    const Mono& m, u64 scale, int q, u32 wcap) {
  for (auto& [k, c] : p.t) {
    u64 w = static_cast<u64>(key_w(k)) + m.w;
    if (w > wcap) break;  // keys sorted by w first
    u32 r = key_r(k) + m.r;
    u8 y = static_cast<u8>((key_y(k) + m.y) % q);
    acc.push_back({mono_key(static_cast<u32>(w), r, y), c * scale});
  }
}

inline WRPoly wr_consolidated(std::vector<std::pair<u64, u64>>&& raw) {
  WRPoly p;
  p.t = std::move(raw);
  p.consolidate();
  return p;
}

// acc += p * scale
inline void wr_add_scaled(std::vector<std::pair<u64, u64>>& acc, const WRPoly& p,
                          u64 scale) {
  if (!scale) return;
  for (auto& [k, c] : p.t) acc.push_back({k, c * scale});
}

// coefficients reduced to the given bit width, zero terms dropped
inline WRPoly wr_mask(WRPoly p, unsigned bits) {
  u64 mask = mod_mask(bits);
  std::size_t out = 0;
  for (auto& [k, v] : p.t) {
    u64 w = v & mask;
    if (w) p.t[out++] = {k, w};
  }
  p.t.resize(out);
  return p;
}

// Matrix with at most one monomial per cell (coefficient 1).
using MonoMatrix = std::vector<std::vector<std::optional<Mono>>>;

namespace detail {
struct Binom {
  u64 c[65][65];
  Binom() {
    for (int i = 0; i <= 64; ++i) {
      c[i][0] = 1;
      for (int j = 1; j <= i; ++j)
        c[i][j] = c[i - 1][j - 1] + (j <= i - 1 ? c[i - 1][j] : 0);
      for (int j = i + 1; j <= 64; ++j) c[i][j] = 0;
    }
  }
};
inline const Binom& binom() {
  static Binom b;
  return b;
}
}  // namespace detail

// Permanent of a monomial matrix as a weight-windowed polynomial, by dynamic
// programming over used-column sets, layer by layer of equal set size.
// All y arithmetic is mod q; coefficients wrap mod 2^64 for a later mask.
inline WRPoly perm_dp(const MonoMatrix& a, int q, u32 wcap,
                      u64* transitions = nullptr) {
  int n = static_cast<int>(a.size());
  require(n >= 1 && n <= 40, Err::SizeGuard, "window route capped at 40x40");
  require(q >= 1 && q <= 255, Err::SizeGuard, "y modulus out of range");
  for (auto& row : a)
    require(static_cast<int>(row.size()) == n, Err::SchemaViolation,
            "matrix not square");
  auto& C = detail::binom().c;
  std::vector<WRPoly> cur(1);
  cur[0].t.push_back({mono_key(0, 0, 0), 1});
  std::vector<u64> members{0};  // bit sets of the current layer, ascending
  u64 work = 0;
  for (int i = 0; i < n; ++i) {
    std::size_t nxt_sz = static_cast<std::size_t>(C[n][i + 1]);
    std::vector<std::vector<std::pair<u64, u64>>> nxt_raw(nxt_sz);
    std::vector<u64> nxt_members;
    nxt_members.reserve(nxt_sz);
    {
      u64 s = (1ull << (i + 1)) - 1;
      for (std::size_t r = 0; r < nxt_sz; ++r) {
        nxt_members.push_back(s);
        s = next_combination(s);
      }
    }
    auto rank_of = [&](u64 s) {
      u64 rank = 0;
      int t = 1;
      while (s) {
        int b = __builtin_ctzll(s);
        s &= s - 1;
        rank += C[b][t++];
      }
      return rank;
    };
    for (std::size_t si = 0; si < members.size(); ++si) {
      const WRPoly& src = cur[si];
      if (src.empty()) continue;
      u64 s = members[si];
      for (int j = 0; j < n; ++j) {
        if (s >> j & 1) continue;
        const auto& cell = a[i][j];
        if (!cell) continue;
        u64 dst = s | (1ull << j);
        wr_axpy(nxt_raw[rank_of(dst)], src, *cell, 1, q, wcap);
        ++work;
      }
    }
    std::vector<WRPoly> nxt(nxt_sz);
    for (std::size_t r = 0; r < nxt_sz; ++r)
      nxt[r] = wr_consolidated(std::move(nxt_raw[r]));
    cur = std::move(nxt);
    members = std::move(nxt_members);
  }
  if (transitions) *transitions += work;
  return cur[0];
}

}  // namespace sdpp
