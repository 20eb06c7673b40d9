#pragma once
// Two-terminal-set variant: A and B in a general graph, k = (|A|+|B|)/2
// disjoint paths of which exactly q run between A and B. Works over
// univariate exponent keys; role sums per level are disentangled by an exact
// peeling recursion mod a power of two.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "sdpp/base.hpp"
#include "sdpp/configs.hpp"
#include "sdpp/io.hpp"
#include "sdpp/oracle.hpp"
#include "sdpp/solver.hpp"
#include "sdpp/system.hpp"
#include "sdpp/wrpoly.hpp"

namespace sdpp {

// cross-link counts a pairing of the two sets can have, largest first
inline std::vector<int> ab_levels(int k1, int k2, int q) {
  std::vector<int> out;
  for (int t = std::min(k1, k2); t >= q; t -= 2) out.push_back(t);
  require(!out.empty() && out.back() == q, Err::InternalInvariant,
          "cross count q out of reach");
  return out;
}

// J1 marks the members of A acting as sinks, J2 the members of B acting as
// sources; everyone else takes the opposite part.
inline DigraphH ab_digraph(const ABInstance& ab, const std::vector<int>& J1,
                           const std::vector<int>& J2) {
  DigraphH h;
  h.is_sink.assign(ab.g.n, 0);
  h.is_source.assign(ab.g.n, 0);
  h.is_terminal.assign(ab.g.n, 0);
  for (int i = 0; i < static_cast<int>(ab.A.size()); ++i) {
    int v = ab.A[i];
    h.is_terminal[v] = 1;
    (contains_pos(J1, i) ? h.is_sink : h.is_source)[v] = 1;
  }
  for (int i = 0; i < static_cast<int>(ab.B.size()); ++i) {
    int v = ab.B[i];
    h.is_terminal[v] = 1;
    (contains_pos(J2, i) ? h.is_source : h.is_sink)[v] = 1;
  }
  for (int v = 0; v < ab.g.n; ++v) {
    if (h.is_sink[v]) h.sinks.push_back(v);
    if (h.is_source[v]) h.sources.push_back(v);
  }
  require(h.sinks.size() == h.sources.size(), Err::InternalInvariant,
          "sink and source counts differ");
  return h;
}

inline MonoMatrix ab_matrix(const ABInstance& ab, const DigraphH& h,
                            const std::vector<u32>& redge,
                            const std::vector<char>* alive = nullptr) {
  int n = ab.g.n;
  MonoMatrix a(n, std::vector<std::optional<Mono>>(n));
  for (int v = 0; v < n; ++v)
    if (!h.is_terminal[v]) a[v][v] = Mono{0, 0, 0};
  for (std::size_t i = 0; i < h.sinks.size(); ++i)
    a[h.sinks[i]][h.sources[i]] = Mono{0, 0, 0};
  for (std::size_t e = 0; e < ab.g.edges.size(); ++e) {
    if (alive && !(*alive)[e]) continue;
    const EdgeData& ed = ab.g.edges[e];
    for (int dir = 0; dir < 2; ++dir) {
      int u = dir ? ed.v : ed.u, v = dir ? ed.u : ed.v;
      if (h.is_sink[u] || h.is_source[v]) continue;
      require(!a[u][v], Err::InternalInvariant, "arc slot already taken");
      a[u][v] = Mono{static_cast<u32>(ed.w),
                     redge.empty() ? 0 : redge[e], 0};
    }
  }
  return a;
}

// Sum of the permanents over every role split with t cross links. A pairing
// with i >= t cross links shows up in it 2^(k-i) * C(i, (i-t)/2) times, once
// per orientation of its within-set paths and per choice of which (i-t)/2
// cross paths run with their sink on the A side.
inline WRPoly ab_level_sum(const ABInstance& ab, int t,
                           const std::vector<u32>& redge,
                           const std::vector<char>* alive, u32 wcap,
                           unsigned jobs, WorkCounters& work) {
  int k1 = static_cast<int>(ab.A.size());
  int k2 = static_cast<int>(ab.B.size());
  auto J1s = subsets_of(k1, (k1 - t) / 2);
  auto J2s = subsets_of(k2, (k2 - t) / 2);
  std::size_t total = J1s.size() * J2s.size();
  std::vector<WRPoly> parts(total);
  std::vector<u64> trans(total, 0);
  parallel_for(jobs, total, [&](std::size_t idx) {
    const auto& J1 = J1s[idx / J2s.size()];
    const auto& J2 = J2s[idx % J2s.size()];
    DigraphH h = ab_digraph(ab, J1, J2);
    MonoMatrix a = ab_matrix(ab, h, redge, alive);
    parts[idx] = perm_dp(a, 1, wcap, &trans[idx]);
  });
  work.permanents += total;
  for (u64 x : trans) work.transitions += x;
  std::vector<std::pair<u64, u64>> raw;
  for (auto& p : parts) wr_add_scaled(raw, p, 1);
  return wr_consolidated(std::move(raw));
}

// Level sums peeled top down: subtracting the higher-level aggregates with
// their multiplicities leaves 2^(k-t) times the pure level-t sum, still with
// every cycle-cover term attached. Returns the level-q remainder.
inline WRPoly ab_peeled(const ABInstance& ab, const std::vector<u32>& redge,
                        const std::vector<char>* alive, u32 wcap,
                        unsigned cbits, unsigned jobs, WorkCounters& work) {
  int k1 = static_cast<int>(ab.A.size());
  int k2 = static_cast<int>(ab.B.size());
  auto levels = ab_levels(k1, k2, ab.q);
  auto& C = detail::binom().c;
  std::vector<WRPoly> peeled;
  for (std::size_t li = 0; li < levels.size(); ++li) {
    int t = levels[li];
    WRPoly s = ab_level_sum(ab, t, redge, alive, wcap, jobs, work);
    std::vector<std::pair<u64, u64>> raw;
    wr_add_scaled(raw, s, 1);
    for (std::size_t hi = 0; hi < li; ++hi) {
      int i = levels[hi];
      wr_add_scaled(raw, peeled[hi], u64{0} - C[i][(i - t) / 2]);
    }
    peeled.push_back(wr_mask(wr_consolidated(std::move(raw)), cbits));
  }
  return peeled.back();
}

inline u32 plain_span(const PlainGraph& g, const std::vector<char>* alive) {
  u64 span = 0;
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (!alive || (*alive)[e]) span += static_cast<u64>(g.edges[e].w);
  require(span <= 0xffffffffull, Err::SizeGuard,
          "total weight overflows the key layout");
  return static_cast<u32>(span);
}

inline std::optional<Decision> decide_ab_min(
    const ABInstance& ab, const std::vector<u32>& redge,
    const std::vector<char>* alive, unsigned cbits, unsigned jobs,
    WorkCounters& work) {
  u32 span = plain_span(ab.g, alive);
  u32 wcap = std::min<u32>(64, span);
  for (;;) {
    WRPoly v = ab_peeled(ab, redge, alive, wcap, cbits, jobs, work);
    if (!v.empty()) {
      auto [k, c] = v.t.front();
      return Decision{key_w(k), key_r(k), c};
    }
    if (wcap == span) return std::nullopt;
    wcap = (span - wcap < wcap) ? span : 2 * wcap;
  }
}

inline std::vector<char> prune_ab(const ABInstance& ab,
                                  const std::vector<u32>& redge,
                                  const Decision& dec, unsigned cbits,
                                  unsigned jobs, WorkCounters& work) {
  std::vector<char> alive(ab.g.edges.size(), 1);
  for (std::size_t e = 0; e < alive.size(); ++e) {
    alive[e] = 0;
    WRPoly v = ab_peeled(ab, redge, &alive, dec.w, cbits, jobs, work);
    if (v.coeff(dec.w, dec.r, 0) == 0) alive[e] = 1;
  }
  return alive;
}

// Kept edges read back as paths: walk from each unconsumed terminal in id
// order. The pairing falls out of the walks; only the class counts are fixed.
inline std::optional<std::vector<std::vector<int>>> assemble_ab(
    const ABInstance& ab, const std::vector<char>& alive,
    const std::vector<u32>& redge, const Decision& dec) {
  const PlainGraph& g = ab.g;
  std::vector<char> in_a(g.n, 0), terminal(g.n, 0);
  for (int v : ab.A) in_a[v] = terminal[v] = 1;
  for (int v : ab.B) terminal[v] = 1;

  std::vector<std::vector<std::pair<int, int>>> inc(g.n);
  u64 wsum = 0, rsum = 0;
  for (std::size_t e = 0; e < alive.size(); ++e) {
    if (!alive[e]) continue;
    inc[g.edges[e].u].push_back({g.edges[e].v, static_cast<int>(e)});
    inc[g.edges[e].v].push_back({g.edges[e].u, static_cast<int>(e)});
    wsum += g.edges[e].w;
    rsum += redge[e];
  }
  if (wsum != dec.w || rsum != dec.r) return std::nullopt;
  for (int v = 0; v < g.n; ++v) {
    std::size_t d = inc[v].size();
    if (terminal[v] ? d != 1 : (d != 0 && d != 2)) return std::nullopt;
  }

  std::vector<int> terms = ab.A;
  terms.insert(terms.end(), ab.B.begin(), ab.B.end());
  std::sort(terms.begin(), terms.end());

  std::vector<char> used(alive.size(), 0), consumed(g.n, 0);
  std::vector<std::vector<int>> paths;
  int cross = 0, within_a = 0, within_b = 0;
  for (int s : terms) {
    if (consumed[s]) continue;
    consumed[s] = 1;
    std::vector<int> walk{s};
    int cur = s, in_edge = -1;
    while (true) {
      int step = -1;
      for (auto [nb, e] : inc[cur])
        if (e != in_edge && !used[e]) step = e;
      if (step < 0) return std::nullopt;
      used[step] = 1;
      cur = g.edges[step].u == cur ? g.edges[step].v : g.edges[step].u;
      walk.push_back(cur);
      in_edge = step;
      if (terminal[cur]) break;
    }
    if (consumed[cur]) return std::nullopt;
    consumed[cur] = 1;
    if (in_a[s] != in_a[cur])
      ++cross;
    else
      ++(in_a[s] ? within_a : within_b);
    paths.push_back(std::move(walk));
  }
  int k1 = static_cast<int>(ab.A.size()), k2 = static_cast<int>(ab.B.size());
  if (cross != ab.q || within_a != (k1 - ab.q) / 2 ||
      within_b != (k2 - ab.q) / 2)
    return std::nullopt;
  for (std::size_t e = 0; e < alive.size(); ++e)
    if (alive[e] && !used[e]) return std::nullopt;
  return paths;
}

// Independent validity check; returns the total weight.
inline u64 verify_ab_solution(const ABInstance& ab,
                              const std::vector<std::vector<int>>& paths) {
  const PlainGraph& g = ab.g;
  std::map<std::pair<int, int>, i64> ew;
  for (auto& e : g.edges) {
    ew[{e.u, e.v}] = e.w;
    ew[{e.v, e.u}] = e.w;
  }
  std::vector<char> in_a(g.n, 0), terminal(g.n, 0), seen(g.n, 0);
  for (int v : ab.A) in_a[v] = terminal[v] = 1;
  for (int v : ab.B) terminal[v] = 1;
  int k1 = static_cast<int>(ab.A.size()), k2 = static_cast<int>(ab.B.size());
  require(2 * paths.size() == static_cast<std::size_t>(k1 + k2),
          Err::InternalInvariant, "path count disagrees with the terminals");
  u64 total = 0;
  int cross = 0, within_a = 0, within_b = 0;
  for (auto& p : paths) {
    require(p.size() >= 2, Err::InternalInvariant, "degenerate path");
    require(terminal[p.front()] && terminal[p.back()], Err::InternalInvariant,
            "path must join two terminals");
    for (int v : p) {
      require(v >= 0 && v < g.n && !seen[v], Err::InternalInvariant,
              "paths share a vertex");
      seen[v] = 1;
    }
    for (std::size_t j = 1; j + 1 < p.size(); ++j)
      require(!terminal[p[j]], Err::InternalInvariant,
              "terminal used as an interior vertex");
    for (std::size_t j = 0; j + 1 < p.size(); ++j) {
      auto it = ew.find({p[j], p[j + 1]});
      require(it != ew.end(), Err::InternalInvariant, "path uses a missing edge");
      total += static_cast<u64>(it->second);
    }
    if (in_a[p.front()] != in_a[p.back()])
      ++cross;
    else
      ++(in_a[p.front()] ? within_a : within_b);
  }
  require(cross == ab.q && within_a == (k1 - ab.q) / 2 &&
              within_b == (k2 - ab.q) / 2,
          Err::InternalInvariant, "path classes off the requested split");
  return total;
}

struct ABReport {
  Outcome outcome = Outcome::Failed;
  bool certain = false;
  u64 weight = 0;
  u64 rvalue = 0;
  u64 coeff = 0;
  unsigned c = 0;
  std::vector<std::vector<int>> paths;
  int trials_used = 0;
  WorkCounters work;
};

inline ABReport solve_ab(const ABInstance& ab, const SolveOptions& opts = {}) {
  unsigned jobs = opts.jobs ? opts.jobs : default_jobs();
  int k1 = static_cast<int>(ab.A.size()), k2 = static_cast<int>(ab.B.size());
  int kk = k1 + k2, npaths = kk / 2;
  unsigned cbits = static_cast<unsigned>(kk + 1);
  require(cbits <= 64, Err::ModulusTooWide, "too many terminals for the modulus");
  if (opts.modulus_bits) {
    require(opts.modulus_bits <= 64 && opts.modulus_bits >= cbits,
            Err::ModulusTooWide, "modulus override too narrow or too wide");
    cbits = opts.modulus_bits;
  }
  u64 expected = 1ull << (npaths - ab.q);

  ABReport rep;
  rep.c = cbits;
  IsolationWeights iw;
  bool saw_candidate = false;
  for (int i = 0; i < opts.trials; ++i) {
    ++rep.work.trials;
    rep.trials_used = i + 1;
    iw.randomize(ab.g.edges.size(), splitmix64(opts.seed + static_cast<u64>(i)));
    auto dec = decide_ab_min(ab, iw.r, nullptr, cbits, jobs, rep.work);
    if (!dec) continue;
    saw_candidate = true;
    if (dec->coeff != expected) continue;  // clashing witnesses, redraw
    auto alive = prune_ab(ab, iw.r, *dec, cbits, jobs, rep.work);
    auto paths = assemble_ab(ab, alive, iw.r, *dec);
    if (!paths) continue;
    if (verify_ab_solution(ab, *paths) != dec->w) continue;
    rep.outcome = Outcome::Optimal;
    rep.weight = dec->w;
    rep.rvalue = dec->r;
    rep.coeff = dec->coeff;
    rep.paths = std::move(*paths);
    return rep;
  }
  rep.outcome = saw_candidate ? Outcome::Failed : Outcome::Infeasible;
  return rep;
}

// every perfect matching of the listed vertices
inline void matchings_of(std::vector<int> rest,
                         std::vector<std::pair<int, int>>& cur,
                         std::vector<std::vector<std::pair<int, int>>>& out) {
  if (rest.empty()) {
    out.push_back(cur);
    return;
  }
  int a = rest[0];
  for (std::size_t j = 1; j < rest.size(); ++j) {
    std::vector<int> next;
    for (std::size_t i = 1; i < rest.size(); ++i)
      if (i != j) next.push_back(rest[i]);
    cur.push_back({a, rest[j]});
    matchings_of(std::move(next), cur, out);
    cur.pop_back();
  }
}

// every pairing of A and B terminals with exactly `cross` links between them
inline std::vector<std::vector<std::pair<int, int>>> ab_pairings(
    const std::vector<int>& A, const std::vector<int>& B, int cross) {
  int k1 = static_cast<int>(A.size()), k2 = static_cast<int>(B.size());
  std::vector<std::vector<std::pair<int, int>>> out;
  auto rest_of = [](const std::vector<int>& idx, const std::vector<int>& all) {
    std::vector<char> used(all.size(), 0);
    for (int i : idx) used[i] = 1;
    std::vector<int> out;
    for (std::size_t i = 0; i < all.size(); ++i)
      if (!used[i]) out.push_back(all[i]);
    return out;
  };
  for (auto& ia : subsets_of(k1, cross)) {
    std::vector<int> resta = rest_of(ia, A);
    std::vector<std::vector<std::pair<int, int>>> ma;
    std::vector<std::pair<int, int>> scratch;
    matchings_of(resta, scratch, ma);
    for (auto& ib : subsets_of(k2, cross)) {
      std::vector<int> restb = rest_of(ib, B);
      std::vector<std::vector<std::pair<int, int>>> mb;
      matchings_of(restb, scratch, mb);
      std::vector<int> perm = ib;
      std::sort(perm.begin(), perm.end());
      do {
        std::vector<std::pair<int, int>> base;
        for (int j = 0; j < cross; ++j) base.push_back({A[ia[j]], B[perm[j]]});
        for (auto& xa : ma)
          for (auto& xb : mb) {
            auto pairing = base;
            pairing.insert(pairing.end(), xa.begin(), xa.end());
            pairing.insert(pairing.end(), xb.begin(), xb.end());
            out.push_back(std::move(pairing));
          }
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  return out;
}

struct ABSystem {
  int cross = 0;
  PathSystem sys;
};

// exhaustive reference: all disjoint path systems, tagged by cross-link
// count; cross_only = -1 means every level
inline std::vector<ABSystem> ab_systems(const ABInstance& ab,
                                        const std::vector<u32>* redge = nullptr,
                                        int cross_only = -1) {
  int k1 = static_cast<int>(ab.A.size()), k2 = static_cast<int>(ab.B.size());
  Instance stub;
  stub.g.n = ab.g.n;
  stub.g.edges = ab.g.edges;
  std::vector<ABSystem> out;
  for (int t : ab_levels(k1, k2, std::max(ab.q % 2, 0))) {
    if (cross_only >= 0 && t != cross_only) continue;
    for (auto& pairing : ab_pairings(ab.A, ab.B, t)) {
      stub.t.pairs = pairing;
      OracleQuery qry;
      qry.inst = &stub;
      qry.redge = redge;
      for (auto [a, b] : pairing) qry.sources.push_back(a);
      for (auto& s : enumerate_instances(qry)) out.push_back({t, s});
      qry.sources.clear();
    }
  }
  return out;
}

// minimum weight over systems with exactly the requested cross count
inline std::optional<i64> ab_oracle_optimum(const ABInstance& ab) {
  std::optional<i64> best;
  for (auto& s : ab_systems(ab, nullptr, ab.q))
    if (!best || s.sys.w < *best) best = s.sys.w;
  return best;
}

}  // namespace sdpp
