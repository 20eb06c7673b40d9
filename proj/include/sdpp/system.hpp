#pragma once
// Assembling the linear system that isolates one pairing pattern: rows are
// (q, sink set, source set, shift) tuples, columns are pairing patterns, and
// the membership matrix M says which graded permanent collects which pattern.
// Exact integer det/adjugate of M then lets a single adjugate row combine the
// graded permanents into the generating function of one pattern.

#include <boost/multiprecision/cpp_int.hpp>
#include <map>

#include "sdpp/bipoly.hpp"
#include "sdpp/configs.hpp"
#include "sdpp/graph.hpp"
#include "sdpp/permanent.hpp"
#include "sdpp/wrpoly.hpp"

namespace sdpp {

using bigint = boost::multiprecision::cpp_int;

struct RowKey {
  int q;
  std::vector<int> J1, J2;  // sink positions on face 1, source positions on face 2
  int t;                    // crossing residue, 0 <= t < q
};

inline u64 bits_of(const std::vector<int>& v) {
  u64 m = 0;
  for (int x : v) m |= 1ull << x;
  return m;
}

inline std::vector<RowKey> rows_for(int k1, int k2) {
  std::vector<RowKey> rows;
  for (int q : qs_for(k1, k2)) {
    if (q == 0) continue;
    int l1 = (k1 - q) / 2, l2 = (k2 - q) / 2;
    for (auto& J1 : subsets_of(k1, l1))
      for (auto& J2 : subsets_of(k2, l2))
        for (int t = 0; t < q; ++t) rows.push_back({q, J1, J2, t});
  }
  return rows;
}

using IntMat = std::vector<std::vector<int>>;

struct ConfigSystem {
  int k1 = 0, k2 = 0;
  FaceFrame fix1, fix2;
  std::vector<PathConfig> configs;
  std::vector<RowKey> rows;
  IntMat M;  // rows x configs
  IntMat L;  // configs x rows
  bigint det = 0;
  unsigned c = 0;  // working modulus is 2^c

  std::map<std::tuple<int, u64, u64, int>, int> row_index;
  void index_rows() {
    for (std::size_t i = 0; i < rows.size(); ++i)
      row_index[{rows[i].q, bits_of(rows[i].J1), bits_of(rows[i].J2),
                 rows[i].t}] = static_cast<int>(i);
  }
};

inline IntMat build_M(const std::vector<RowKey>& rows,
                      const std::vector<PathConfig>& configs,
                      const FaceFrame& fix1, const FaceFrame& fix2) {
  IntMat M(rows.size(), std::vector<int>(configs.size(), 0));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const RowKey& r = rows[i];
    RoleSets roles{r.J1, r.J2};
    for (std::size_t j = 0; j < configs.size(); ++j) {
      const PathConfig& p = configs[j];
      if (!compatible(p, roles)) continue;
      if (mod_pos(axis_crossing(p, roles, fix1, fix2), r.q) == r.t) M[i][j] = 1;
    }
  }
  return M;
}

// Signed row expansion: for each pattern, spread signs over the rows its
// summands land in. The shift arithmetic runs in per-pattern frames whose
// gaps sit at cross endpoints, then translates back to the fixed frames by
// the relocation constant of the row's own nested pattern.
inline IntMat build_L(const ConfigSystem& sys) {
  const auto& configs = sys.configs;
  IntMat L(configs.size(), std::vector<int>(sys.rows.size(), 0));
  for (std::size_t j = 0; j < configs.size(); ++j) {
    const PathConfig& p = configs[j];
    int q = p.q(), k1 = p.k1, k2 = p.k2;
    int l1 = (k1 - q) / 2, l2 = (k2 - q) / 2;
    auto [s1, s2] = sigma_frames(p, sys.fix1, sys.fix2);
    int ocan = axis_crossing(p, canonical_roles(p), s1, s2);
    auto exp1 = expanded_pivots(pivot_data(p.within1, k1), s1);
    auto exp2 = expanded_pivots(pivot_data(p.within2, k2), s2);
    for (auto& J1 : subsets_of(k1, l1))
      for (auto& J2 : subsets_of(k2, l2)) {
        RoleSets roles{J1, J2};
        PathConfig c0 = config_from(J1, J2, 0, k1, k2);
        int drift = axis_crossing(c0, roles, s1, s2) -
                    axis_crossing(c0, roles, sys.fix1, sys.fix2);
        std::vector<int> lab1, lab2;
        for (int v : J1) lab1.push_back(s1.label(v));
        for (int v : J2) lab2.push_back(s2.label(v));
        int jsum = 0;
        for (int v : lab1) jsum += v;
        for (int v : lab2) jsum += v;
        // one summand per pairing of members with pivot slots on each face
        auto d1s = ordering_delta_sums(lab1, exp1);
        auto d2s = ordering_delta_sums(lab2, exp2);
        // sum over all shift labels on both faces
        std::vector<int> I1(l1, 0), I2(l2, 0);
        auto advance = [&](std::vector<int>& I) {
          for (auto& x : I) {
            if (++x < q) return true;
            x = 0;
          }
          return false;
        };
        do {
          do {
            int i1 = 0, i2 = 0;
            for (int x : I1) i1 += x;
            for (int x : I2) i2 += x;
            for (int d1 : d1s)
              for (int d2 : d2s) {
                int sigma = mod_pos(i1 + i2 + jsum + d1 + d2, 2);
                int tau = mod_pos(2 * i1 + 2 * d1 - 2 * i2 - 2 * d2, q);
                int t = mod_pos(ocan + tau - drift, q);
                auto it = sys.row_index.find({q, bits_of(J1), bits_of(J2), t});
                require(it != sys.row_index.end(), Err::InternalInvariant,
                        "missing row");
                L[j][it->second] += sigma ? -1 : 1;
              }
          } while (advance(I2));
        } while (advance(I1));
      }
  }
  return L;
}

inline IntMat mat_mul(const IntMat& a, const IntMat& b) {
  std::size_t n = a.size(), m = b[0].size(), k = b.size();
  IntMat out(n, std::vector<int>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (!a[i][t]) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][t] * b[t][j];
    }
  return out;
}

// ----- exact integer linear algebra -----

inline bigint det_bareiss(std::vector<std::vector<bigint>> a) {
  std::size_t n = a.size();
  if (n == 0) return 1;
  bigint prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && a[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(a[k], a[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

inline std::vector<std::vector<bigint>> to_big(const IntMat& m) {
  std::vector<std::vector<bigint>> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    out[i].assign(m[i].begin(), m[i].end());
  return out;
}

inline bigint minor_det(const IntMat& m, std::size_t drop_row,
                        std::size_t drop_col) {
  std::vector<std::vector<bigint>> sub;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i == drop_row) continue;
    std::vector<bigint> row;
    for (std::size_t j = 0; j < m[i].size(); ++j)
      if (j != drop_col) row.push_back(m[i][j]);
    sub.push_back(std::move(row));
  }
  return det_bareiss(std::move(sub));
}

// row p of the adjugate: adj[p][r] = (-1)^(p+r) * minor(r, p)
inline std::vector<bigint> adjugate_row(const IntMat& m, std::size_t p) {
  std::vector<bigint> out(m.size());
  for (std::size_t r = 0; r < m.size(); ++r) {
    bigint d = minor_det(m, r, p);
    out[r] = ((p + r) % 2) ? -d : d;
  }
  return out;
}

inline std::vector<std::vector<bigint>> adjugate_full(const IntMat& m) {
  std::vector<std::vector<bigint>> adj(m.size(),
                                       std::vector<bigint>(m.size()));
  for (std::size_t p = 0; p < m.size(); ++p) {
    auto row = adjugate_row(m, p);
    for (std::size_t r = 0; r < m.size(); ++r) adj[p][r] = row[r];
  }
  return adj;
}

inline unsigned bit_length(const bigint& x) {
  if (x == 0) return 0;
  bigint a = x < 0 ? -x : x;
  return static_cast<unsigned>(boost::multiprecision::msb(a)) + 1;
}

inline u64 to_residue(const bigint& x, unsigned c) {
  bigint m = x % (bigint(1) << 64);
  if (m < 0) m += bigint(1) << 64;
  return m.convert_to<u64>() & mod_mask(c);
}

// order the patterns so every nonzero off-diagonal entry of f points forward;
// returns the order, or the patterns stuck in a cycle
struct TriangularWitness {
  bool ok = false;
  std::vector<int> order;
  std::vector<int> stuck;
};

inline TriangularWitness verify_triangular(const IntMat& f) {
  std::size_t n = f.size();
  std::vector<int> indeg(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && f[i][j] != 0) ++indeg[j];
  TriangularWitness w;
  std::vector<char> done(n, 0);
  for (;;) {
    bool moved = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || indeg[i] != 0) continue;
      done[i] = 1;
      w.order.push_back(static_cast<int>(i));
      for (std::size_t j = 0; j < n; ++j)
        if (!done[j] && j != i && f[i][j] != 0) --indeg[j];
      moved = true;
    }
    if (!moved) break;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!done[i]) w.stuck.push_back(static_cast<int>(i));
  w.ok = w.stuck.empty();
  return w;
}

// ----- the preprocessed digraph whose cycle covers carry path systems -----

struct DigraphH {
  std::vector<int> sinks, sources;  // vertex ids, demand arcs pair them in order
  std::vector<char> is_sink, is_source, is_terminal;
};

inline DigraphH build_H(const Instance& inst, const RoleSets& roles) {
  const TerminalLayout& t = inst.t;
  DigraphH h;
  h.is_sink.assign(inst.g.n, 0);
  h.is_source.assign(inst.g.n, 0);
  h.is_terminal.assign(inst.g.n, 0);
  int k1 = static_cast<int>(t.K1.size()), k2 = static_cast<int>(t.K2.size());
  for (int i = 0; i < k1; ++i) {
    bool sink = contains_pos(roles.J1, i);
    (sink ? h.is_sink : h.is_source)[t.K1[i]] = 1;
    h.is_terminal[t.K1[i]] = 1;
  }
  for (int i = 0; i < k2; ++i) {
    bool source = contains_pos(roles.J2, i);
    (source ? h.is_source : h.is_sink)[t.K2[i]] = 1;
    h.is_terminal[t.K2[i]] = 1;
  }
  for (int v = 0; v < inst.g.n; ++v) {
    if (h.is_sink[v]) h.sinks.push_back(v);
    if (h.is_source[v]) h.sources.push_back(v);
  }
  require(h.sinks.size() == h.sources.size(), Err::InternalInvariant,
          "sink and source counts differ");
  return h;
}

// Matrix whose permanent sums cycle covers: edge arcs away from sinks and
// into non-sources, demand arcs sink->source, unit self-loops elsewhere.
inline MonoMatrix mono_matrix(const Instance& inst, const AxisDescriptor& ax,
                              const DigraphH& h, const std::vector<u32>& redge,
                              int q, const std::vector<char>* alive = nullptr) {
  int n = inst.g.n;
  MonoMatrix a(n, std::vector<std::optional<Mono>>(n));
  for (int v = 0; v < n; ++v)
    if (!h.is_terminal[v]) a[v][v] = Mono{0, 0, 0};
  for (std::size_t i = 0; i < h.sinks.size(); ++i)
    a[h.sinks[i]][h.sources[i]] = Mono{0, 0, 0};
  for (std::size_t e = 0; e < inst.g.edges.size(); ++e) {
    if (alive && !(*alive)[e]) continue;
    for (int dir = 0; dir < 2; ++dir) {
      int s = static_cast<int>(2 * e) + dir;
      int u = inst.g.tail(s), v = inst.g.head(s);
      if (h.is_sink[u] || h.is_source[v]) continue;
      require(!a[u][v], Err::InternalInvariant, "arc slot already taken");
      a[u][v] = Mono{static_cast<u32>(inst.g.edges[e].w),
                     redge.empty() ? 0 : redge[e],
                     static_cast<u8>(mod_pos(ax.side_y[s], q))};
    }
  }
  return a;
}

// same digraph with polynomial entries x^w y^(crossing sign)
inline PolyMatrix bipoly_matrix(const Instance& inst, const AxisDescriptor& ax,
                                const DigraphH& h, PolyContext ctx) {
  int n = inst.g.n;
  PolyMatrix a(n, std::vector<BiPoly>(n, BiPoly(ctx)));
  for (int v = 0; v < n; ++v)
    if (!h.is_terminal[v]) a[v][v] = BiPoly::constant(ctx, 1);
  for (std::size_t i = 0; i < h.sinks.size(); ++i)
    a[h.sinks[i]][h.sources[i]] = BiPoly::constant(ctx, 1);
  for (std::size_t e = 0; e < inst.g.edges.size(); ++e)
    for (int dir = 0; dir < 2; ++dir) {
      int s = static_cast<int>(2 * e) + dir;
      int u = inst.g.tail(s), v = inst.g.head(s);
      if (h.is_sink[u] || h.is_source[v]) continue;
      a[u][v] = BiPoly::monomial(ctx, static_cast<u64>(inst.g.edges[e].w),
                                 ax.side_y[s], 1);
    }
  return a;
}

inline ConfigSystem build_system(int k1, int k2, const AxisDescriptor& ax) {
  ConfigSystem sys;
  sys.k1 = k1;
  sys.k2 = k2;
  sys.fix1 = FaceFrame{k1, ax.gap1};
  sys.fix2 = FaceFrame{k2, ax.gap2};
  sys.configs = enumerate_configs(k1, k2);
  sys.rows = rows_for(k1, k2);
  require(sys.rows.size() == sys.configs.size(), Err::InternalInvariant,
          "row and column counts differ");
  sys.M = build_M(sys.rows, sys.configs, sys.fix1, sys.fix2);
  sys.index_rows();
  sys.det = det_bareiss(to_big(sys.M));
  require(sys.det != 0, Err::InternalInvariant,
          "membership matrix is singular");
  sys.c = bit_length(sys.det) + 9;
  require(sys.c <= 64, Err::ModulusTooWide,
          "working modulus exceeds one machine word");
  return sys;
}

// consolidated sum over rows: H_P = sum_r adjrow[r] * p[r], masked mod 2^c
inline WRPoly combine_rows(const std::vector<WRPoly>& p,
                           const std::vector<u64>& adjrow, unsigned c) {
  std::vector<std::pair<u64, u64>> raw;
  for (std::size_t r = 0; r < p.size(); ++r) wr_add_scaled(raw, p[r], adjrow[r]);
  WRPoly acc = wr_consolidated(std::move(raw));
  u64 mask = mod_mask(c);
  std::size_t out = 0;
  for (auto& [k, v] : acc.t) {
    u64 w = v & mask;
    if (w) acc.t[out++] = {k, w};
  }
  acc.t.resize(out);
  return acc;
}

}  // namespace sdpp
