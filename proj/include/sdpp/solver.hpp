#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sdpp/base.hpp"
#include "sdpp/configs.hpp"
#include "sdpp/graph.hpp"
#include "sdpp/permanent.hpp"
#include "sdpp/system.hpp"
#include "sdpp/wrpoly.hpp"

namespace sdpp {

// Per-edge random tie breakers. They ride in the middle bits of the packed
// exponent key, so the draw range has to fit next to the weight.
struct IsolationWeights {
  u64 seed = 0;
  std::vector<u32> r;

  void randomize(std::size_t m, u64 s) {
    seed = s;
    require(4 * m * m < (1ull << 24), Err::SizeGuard,
            "too many edges for the tie-break key layout");
    Rng rng(s);
    r.assign(m, 0);
    for (auto& x : r) x = static_cast<u32>(1 + rng.below(4 * m));
  }
};

// Deterministic effort counters; these go into reports instead of wall time.
struct WorkCounters {
  u64 permanents = 0;
  u64 transitions = 0;
  u64 trials = 0;
};

// Rows sharing (q, J1, J2) differ only in the crossing residue, so one
// permanent evaluation feeds all q of them.
struct RowGroup {
  int q = 0;
  RoleSets roles;
  std::size_t first = 0;
};

inline std::vector<RowGroup> row_groups(const ConfigSystem& sys) {
  std::vector<RowGroup> out;
  for (std::size_t i = 0; i < sys.rows.size(); ++i)
    if (sys.rows[i].t == 0)
      out.push_back({sys.rows[i].q, {sys.rows[i].J1, sys.rows[i].J2}, i});
  return out;
}

// terms with the given y residue, re-keyed to y = 0 so rows from blocks with
// different moduli stay mergeable
inline WRPoly slice_y(const WRPoly& p, int t) {
  WRPoly out;
  for (auto [k, v] : p.t)
    if (static_cast<int>(key_y(k)) == t)
      out.t.push_back({k - static_cast<u64>(t), v});
  return out;
}

inline std::vector<WRPoly> build_rows(const Instance& inst,
                                      const AxisDescriptor& ax,
                                      const ConfigSystem& sys,
                                      const std::vector<u32>& redge,
                                      const std::vector<char>* alive, u32 wcap,
                                      unsigned jobs, WorkCounters& work) {
  auto groups = row_groups(sys);
  std::vector<WRPoly> rows(sys.rows.size());
  std::vector<u64> trans(groups.size(), 0);
  parallel_for(jobs, groups.size(), [&](std::size_t gi) {
    const RowGroup& g = groups[gi];
    DigraphH h = build_H(inst, g.roles);
    MonoMatrix a = mono_matrix(inst, ax, h, redge, g.q, alive);
    WRPoly full = perm_dp(a, g.q, wcap, &trans[gi]);
    for (int t = 0; t < g.q; ++t) rows[g.first + t] = slice_y(full, t);
  });
  work.permanents += groups.size();
  for (u64 x : trans) work.transitions += x;
  return rows;
}

struct Decision {
  u32 w = 0;
  u32 r = 0;
  u64 coeff = 0;
};

inline u32 weight_span(const EmbeddedGraph& g, const std::vector<char>* alive) {
  u64 span = 0;
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (!alive || (*alive)[e]) span += static_cast<u64>(g.edges[e].w);
  require(span <= 0xffffffffull, Err::SizeGuard,
          "total weight overflows the key layout");
  return static_cast<u32>(span);
}

// Least surviving exponent of the combined row polynomial, found by growing
// the weight window until something shows up. Terms are truncated by weight
// only, so the first hit is the global minimum.
inline std::optional<Decision> decide_min(
    const Instance& inst, const AxisDescriptor& ax, const ConfigSystem& sys,
    const std::vector<u64>& adjrow, const std::vector<u32>& redge,
    const std::vector<char>* alive, unsigned jobs, WorkCounters& work) {
  u32 span = weight_span(inst.g, alive);
  u32 wcap = std::min<u32>(64, span);
  for (;;) {
    auto rows = build_rows(inst, ax, sys, redge, alive, wcap, jobs, work);
    WRPoly h = combine_rows(rows, adjrow, sys.c);
    if (!h.empty()) {
      auto [k, v] = h.t.front();
      return Decision{key_w(k), key_r(k), v};
    }
    if (wcap == span) return std::nullopt;
    wcap = (span - wcap < wcap) ? span : 2 * wcap;
  }
}

// Walk the edges in id order, deleting each one whose removal keeps the
// decided exponent alive. The survivors are exactly the edges of the witness
// sitting at that exponent.
inline std::vector<char> prune_to_optimum(
    const Instance& inst, const AxisDescriptor& ax, const ConfigSystem& sys,
    const std::vector<u64>& adjrow, const std::vector<u32>& redge,
    const Decision& dec, unsigned jobs, WorkCounters& work) {
  std::vector<char> alive(inst.g.edges.size(), 1);
  for (std::size_t e = 0; e < alive.size(); ++e) {
    alive[e] = 0;
    auto rows = build_rows(inst, ax, sys, redge, &alive, dec.w, jobs, work);
    WRPoly h = combine_rows(rows, adjrow, sys.c);
    if (h.coeff(dec.w, dec.r, 0) == 0) alive[e] = 1;
  }
  return alive;
}

// Read the kept edges back as one path per demand pair. Any mismatch with the
// decided exponent means the trial was not isolating and gets rejected.
inline std::optional<std::vector<std::vector<int>>> assemble_paths(
    const Instance& inst, const std::vector<char>& alive,
    const std::vector<u32>& redge, const Decision& dec) {
  const EmbeddedGraph& g = inst.g;
  std::vector<char> terminal(g.n, 0);
  for (int v : inst.t.K1) terminal[v] = 1;
  for (int v : inst.t.K2) terminal[v] = 1;

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

  std::vector<char> used(alive.size(), 0);
  std::vector<std::vector<int>> paths;
  for (auto [s, t] : inst.t.pairs) {
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
    if (cur != t) return std::nullopt;
    paths.push_back(std::move(walk));
  }
  for (std::size_t e = 0; e < alive.size(); ++e)
    if (alive[e] && !used[e]) return std::nullopt;
  return paths;
}

// Independent validity check of a claimed routing; returns the total weight.
inline u64 verify_solution(const EmbeddedGraph& g,
                           const std::vector<std::pair<int, int>>& pairs,
                           const std::vector<std::vector<int>>& paths) {
  require(paths.size() == pairs.size(), Err::InternalInvariant,
          "one path per demand pair");
  std::vector<char> seen(g.n, 0);
  u64 total = 0;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& p = paths[i];
    require(p.size() >= 2, Err::InternalInvariant, "degenerate path");
    require(p.front() == pairs[i].first && p.back() == pairs[i].second,
            Err::InternalInvariant, "path endpoints disagree with the pair");
    for (int v : p) {
      require(v >= 0 && v < g.n && !seen[v], Err::InternalInvariant,
              "paths share a vertex");
      seen[v] = 1;
    }
    for (std::size_t j = 0; j + 1 < p.size(); ++j) {
      int e = g.edge_between(p[j], p[j + 1]);
      require(e >= 0, Err::InternalInvariant, "path uses a missing edge");
      total += g.edges[e].w;
    }
  }
  return total;
}

// The pairing pattern the demands trace on the two faces. Looking it up in
// the enumerated pattern list decides structural feasibility.
inline PathConfig target_config(const Instance& inst) {
  int k1 = static_cast<int>(inst.t.K1.size());
  int k2 = static_cast<int>(inst.t.K2.size());
  std::map<int, int> pos1, pos2;
  for (int i = 0; i < k1; ++i) pos1[inst.t.K1[i]] = i;
  for (int i = 0; i < k2; ++i) pos2[inst.t.K2[i]] = i;
  PathConfig p;
  p.k1 = k1;
  p.k2 = k2;
  for (auto [a, b] : inst.t.pairs) {
    bool a1 = pos1.count(a) > 0, b1 = pos1.count(b) > 0;
    if (a1 && b1)
      p.within1.push_back(orient_within(pos1[a], pos1[b], k1));
    else if (!a1 && !b1)
      p.within2.push_back(orient_within(pos2[a], pos2[b], k2));
    else if (a1)
      p.cross.push_back({pos1[a], pos2[b]});
    else
      p.cross.push_back({pos1[b], pos2[a]});
  }
  std::sort(p.within1.begin(), p.within1.end());
  std::sort(p.within2.begin(), p.within2.end());
  std::sort(p.cross.begin(), p.cross.end());
  return p;
}

struct SolveOptions {
  u64 seed = 1;
  int trials = 16;           // retry cap; each trial redraws the tie breakers
  unsigned jobs = 0;         // 0: environment default
  unsigned modulus_bits = 0; // 0: derived from the linear system
};

enum class Outcome { Optimal, Infeasible, Failed };

struct SolveReport {
  Outcome outcome = Outcome::Failed;
  bool certain = false;  // infeasibility established structurally
  int target = -1;
  u64 weight = 0;
  u64 rvalue = 0;
  u64 coeff = 0;
  unsigned c = 0;
  std::string det;
  std::size_t dim = 0;
  std::vector<std::vector<int>> paths;
  int trials_used = 0;
  WorkCounters work;
};

inline SolveReport solve_two_face(Instance inst, const SolveOptions& opts = {}) {
  validate_instance(inst);
  unsigned jobs = opts.jobs ? opts.jobs : default_jobs();
  int k1 = static_cast<int>(inst.t.K1.size());
  int k2 = static_cast<int>(inst.t.K2.size());
  AxisDescriptor ax = dual_axis(inst);
  ConfigSystem sys = build_system(k1, k2, ax);
  if (opts.modulus_bits) {
    require(opts.modulus_bits <= 64 &&
                opts.modulus_bits >= bit_length(sys.det) + 1,
            Err::ModulusTooWide, "modulus override too narrow or too wide");
    sys.c = opts.modulus_bits;
  }

  SolveReport rep;
  rep.c = sys.c;
  rep.det = sys.det.str();
  rep.dim = sys.configs.size();

  PathConfig tgt = target_config(inst);
  auto it = std::find(sys.configs.begin(), sys.configs.end(), tgt);
  if (it == sys.configs.end()) {
    rep.outcome = Outcome::Infeasible;
    rep.certain = true;
    return rep;
  }
  std::size_t pidx = static_cast<std::size_t>(it - sys.configs.begin());
  rep.target = static_cast<int>(pidx);

  auto adjb = adjugate_row(sys.M, pidx);
  std::vector<u64> adjrow(adjb.size());
  for (std::size_t i = 0; i < adjb.size(); ++i)
    adjrow[i] = to_residue(adjb[i], sys.c);
  u64 det_res = to_residue(sys.det, sys.c);

  IsolationWeights iw;
  bool saw_candidate = false;
  for (int i = 0; i < opts.trials; ++i) {
    ++rep.work.trials;
    rep.trials_used = i + 1;
    iw.randomize(inst.g.edges.size(), splitmix64(opts.seed + static_cast<u64>(i)));
    auto dec = decide_min(inst, ax, sys, adjrow, iw.r, nullptr, jobs, rep.work);
    if (!dec) continue;
    saw_candidate = true;
    if (dec->coeff != det_res) continue;  // clashing witnesses, redraw
    auto alive = prune_to_optimum(inst, ax, sys, adjrow, iw.r, *dec, jobs, rep.work);
    auto paths = assemble_paths(inst, alive, iw.r, *dec);
    if (!paths) continue;
    if (verify_solution(inst.g, inst.t.pairs, *paths) != dec->w) continue;
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

}  // namespace sdpp
