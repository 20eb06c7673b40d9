#pragma once
// Pairing patterns of terminals on two faces: which terminals are joined
// within a face, which are joined across, and the bookkeeping that positions
// such a pattern relative to the face-to-face axis.
//
// Terminal positions are 0..k-1 clockwise on each face. A within-face pair is
// stored as (alpha, beta) where walking clockwise from alpha to beta passes an
// even number of other terminals, all of them matched to each other inside
// that stretch. Cross pairs preserve the cyclic order of the two faces.

#include <algorithm>
#include <vector>

#include "sdpp/base.hpp"

namespace sdpp {

inline int cw_dist(int a, int b, int k) { return mod_pos(b - a, k); }

// strict precedence: t1 before t2 when the clockwise stretch strictly between
// them has even size
inline bool prec(int i1, int i2, int k) {
  return i1 != i2 && cw_dist(i1, i2, k) % 2 == 1;
}

// relabeling of positions so that the axis enters between labels k-1 and 0
struct FaceFrame {
  int k = 0;
  int gap = 0;
  int label(int idx) const { return mod_pos(idx - gap, k); }
  int unlabel(int lab) const { return mod_pos(lab + gap, k); }
};

struct PathConfig {
  int k1 = 0, k2 = 0;
  std::vector<std::pair<int, int>> within1, within2;  // (alpha, beta)
  std::vector<std::pair<int, int>> cross;             // (face1 pos, face2 pos)
  int q() const { return static_cast<int>(cross.size()); }
  bool operator==(const PathConfig&) const = default;
};

struct RoleSets {
  std::vector<int> J1, J2;  // sink positions on face 1, source positions on face 2
};

inline bool contains_pos(const std::vector<int>& v, int x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

// Pair up the marked positions: repeatedly join a marked position to the next
// unmatched position clockwise whenever that neighbor is unmarked. Any set of
// at most (k-1)/2 marks resolves this way, and the result is the unique
// nesting with the marks as clockwise-first endpoints.
inline std::vector<std::pair<int, int>> within_from_alphas(
    const std::vector<int>& alphas, int k) {
  std::vector<char> marked(k, 0), gone(k, 0);
  for (int a : alphas) {
    require(a >= 0 && a < k && !marked[a], Err::InternalInvariant,
            "bad mark set");
    marked[a] = 1;
  }
  require(2 * alphas.size() < static_cast<std::size_t>(k), Err::InternalInvariant,
          "too many marks to pair");
  std::vector<std::pair<int, int>> out;
  std::size_t left = alphas.size();
  while (left > 0) {
    bool progressed = false;
    for (int a = 0; a < k && left > 0; ++a) {
      if (!marked[a] || gone[a]) continue;
      int b = -1;
      for (int s = 1; s < k; ++s) {
        int c = mod_pos(a + s, k);
        if (!gone[c]) {
          b = c;
          break;
        }
      }
      if (b < 0 || marked[b]) continue;
      out.push_back({a, b});
      gone[a] = gone[b] = 1;
      --left;
      progressed = true;
    }
    require(progressed, Err::InternalInvariant, "mark pairing stalled");
  }
  std::sort(out.begin(), out.end());
  return out;
}

// clockwise-first endpoints of a within-face pair list
inline std::vector<int> alphas_of(const std::vector<std::pair<int, int>>& within,
                                  int k) {
  std::vector<int> out;
  for (auto [a, b] : within) {
    int d = cw_dist(a, b, k);
    require(d % 2 == 1, Err::InternalInvariant, "pair not stored alpha first");
    out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// put an arbitrary endpoint pair into (alpha, beta) order
inline std::pair<int, int> orient_within(int a, int b, int k) {
  return cw_dist(a, b, k) % 2 == 1 ? std::pair{a, b} : std::pair{b, a};
}

inline bool interval_contains(int alpha, int beta, int x, int k) {
  return cw_dist(alpha, x, k) <= cw_dist(alpha, beta, k);
}

// admissible cross-pair counts for the terminal counts
inline std::vector<int> qs_for(int k1, int k2) {
  std::vector<int> qs;
  if ((k1 - k2) % 2 != 0) return qs;
  for (int q = k1 % 2 == 0 ? 0 : 1; q <= std::min(k1, k2); q += 2)
    qs.push_back(q);
  return qs;
}

inline std::vector<int> sorted_complement(const std::vector<char>& used, int k) {
  std::vector<int> out;
  for (int i = 0; i < k; ++i)
    if (!used[i]) out.push_back(i);
  return out;
}

inline std::vector<int> free_positions(
    const std::vector<std::pair<int, int>>& within, int k) {
  std::vector<char> used(k, 0);
  for (auto [a, b] : within) used[a] = used[b] = 1;
  return sorted_complement(used, k);
}

inline PathConfig config_from(const std::vector<int>& J1,
                              const std::vector<int>& J2, int shift, int k1,
                              int k2) {
  PathConfig p;
  p.k1 = k1;
  p.k2 = k2;
  p.within1 = within_from_alphas(J1, k1);
  p.within2 = within_from_alphas(J2, k2);
  auto f1 = free_positions(p.within1, k1);
  auto f2 = free_positions(p.within2, k2);
  require(f1.size() == f2.size(), Err::InternalInvariant, "free counts differ");
  int q = static_cast<int>(f1.size());
  for (int t = 0; t < q; ++t)
    p.cross.push_back({f1[t], f2[mod_pos(t + shift, q)]});
  return p;
}

// all subsets of {0..k-1} of the given size, as sorted vectors, in the order
// of ascending bit masks
inline std::vector<std::vector<int>> subsets_of(int k, int sz) {
  std::vector<std::vector<int>> out;
  if (sz == 0) {
    out.push_back({});
    return out;
  }
  if (sz > k) return out;
  u64 m = (1ull << sz) - 1;
  while (m < (1ull << k)) {
    std::vector<int> s;
    for (int i = 0; i < k; ++i)
      if (m >> i & 1) s.push_back(i);
    out.push_back(std::move(s));
    m = next_combination(m);
    if (m == 0) break;
  }
  return out;
}

// every pairing pattern, ordered by (q, face-1 marks, face-2 marks, shift)
inline std::vector<PathConfig> enumerate_configs(int k1, int k2) {
  std::vector<PathConfig> out;
  for (int q : qs_for(k1, k2)) {
    int l1 = (k1 - q) / 2, l2 = (k2 - q) / 2;
    for (auto& J1 : subsets_of(k1, l1))
      for (auto& J2 : subsets_of(k2, l2))
        for (int r = 0; r < std::max(q, 1); ++r)
          out.push_back(config_from(J1, J2, r, k1, k2));
  }
  return out;
}

// does the pattern route every pair with one source and one sink, given the
// sink set on face 1 and the source set on face 2
inline bool compatible(const PathConfig& p, const RoleSets& roles) {
  for (auto [a, b] : p.within1)
    if (contains_pos(roles.J1, a) == contains_pos(roles.J1, b)) return false;
  for (auto [a, b] : p.within2)
    if (contains_pos(roles.J2, a) == contains_pos(roles.J2, b)) return false;
  for (auto [a, b] : p.cross)
    if (contains_pos(roles.J1, a) != contains_pos(roles.J2, b)) return false;
  return true;
}

// pivot values (tight pairs' clockwise-second endpoints) with the length of
// the marked run sitting right before each of them
struct PivotData {
  std::vector<int> pivots;  // positions
  std::vector<int> mult;
};

inline PivotData pivot_data(const std::vector<std::pair<int, int>>& within,
                            int k) {
  PivotData pd;
  std::vector<char> mark(k, 0);
  for (auto [a, b] : within) mark[a] = 1;
  int total = 0;
  for (auto [a, b] : within) {
    if (mod_pos(a + 1, k) != b) continue;
    int n = 0;
    while (n < k && mark[mod_pos(b - 1 - n, k)]) ++n;
    pd.pivots.push_back(b);
    pd.mult.push_back(n);
    total += n;
  }
  require(total == static_cast<int>(within.size()), Err::InternalInvariant,
          "pivot runs do not cover the marks");
  return pd;
}

// pivot labels repeated by multiplicity, ascending in the given frame
inline std::vector<int> expanded_pivots(const PivotData& pd,
                                        const FaceFrame& fr) {
  std::vector<std::pair<int, int>> lab;
  for (std::size_t i = 0; i < pd.pivots.size(); ++i)
    lab.push_back({fr.label(pd.pivots[i]), pd.mult[i]});
  std::sort(lab.begin(), lab.end());
  std::vector<int> out;
  for (auto [v, m] : lab)
    for (int j = 0; j < m; ++j) out.push_back(v);
  return out;
}

// per-slot indicator: the r-th smallest member label lies strictly below the
// r-th expanded pivot label
inline std::vector<int> delta_bits(const std::vector<int>& member_labels,
                                   const std::vector<int>& expanded) {
  require(member_labels.size() == expanded.size(), Err::InternalInvariant,
          "slot count mismatch");
  std::vector<int> d;
  for (std::size_t r = 0; r < expanded.size(); ++r)
    d.push_back(member_labels[r] < expanded[r] ? 1 : 0);
  return d;
}

// pivots that are clockwise-last among the pivots inside every pair stretch
// that contains them
inline std::vector<int> rightmost_pivots(
    const std::vector<std::pair<int, int>>& within, int k) {
  PivotData pd = pivot_data(within, k);
  std::vector<int> out;
  for (int a : pd.pivots) {
    bool ok = true;
    for (auto [al, be] : within) {
      if (!interval_contains(al, be, a, k)) continue;
      for (int b : pd.pivots)
        if (b != a && interval_contains(al, be, b, k) &&
            cw_dist(al, b, k) > cw_dist(al, a, k))
          ok = false;
    }
    if (ok) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Net number of clockwise passes over the axis, counted for the canonical
// uncrossed drawing of the pattern: a within pair contributes when its
// stretch covers the gap, a cross pair contributes its winding. Returned
// unreduced; different drawings differ by multiples of the signed cross
// flow, so callers reduce by the modulus of their own row block.
inline int axis_crossing(const PathConfig& p, const RoleSets& roles,
                         const FaceFrame& f1, const FaceFrame& f2) {
  require(compatible(p, roles), Err::InternalInvariant,
          "crossing number needs a compatible role assignment");
  int q = p.q();
  require(q >= 1, Err::InternalInvariant, "pattern has no cross pair");
  int O = 0;
  auto within_part = [&](const std::vector<std::pair<int, int>>& within,
                         const FaceFrame& fr, bool sink_listed,
                         const std::vector<int>& J) {
    for (auto [a, b] : within) {
      // spans the gap iff the boundary between labels k-1 and 0 sits inside
      int d = cw_dist(a, b, fr.k);
      int x = mod_pos(-1 - fr.label(a) + fr.k, fr.k) + 1;  // steps from a to the gap
      if (x > d) continue;
      bool a_listed = contains_pos(J, a);
      bool a_is_source = sink_listed ? !a_listed : a_listed;
      O += a_is_source ? 1 : -1;
    }
  };
  within_part(p.within1, f1, true, roles.J1);
  within_part(p.within2, f2, false, roles.J2);

  // cross pairs, listed clockwise from each gap
  std::vector<std::pair<int, int>> c1, c2;  // (label, cross pair index)
  for (std::size_t i = 0; i < p.cross.size(); ++i) {
    c1.push_back({f1.label(p.cross[i].first), static_cast<int>(i)});
    c2.push_back({f2.label(p.cross[i].second), static_cast<int>(i)});
  }
  std::sort(c1.begin(), c1.end());
  std::sort(c2.begin(), c2.end());
  std::vector<int> rank2(q);
  for (int t = 0; t < q; ++t) rank2[c2[t].second] = t;
  int r = rank2[c1[0].second];
  for (int t = 0; t < q; ++t)
    require(rank2[c1[t].second] == (t + r) % q, Err::InternalInvariant,
            "cross pairs do not preserve the cyclic order");
  for (int t = 0; t < q; ++t) {
    int pos1 = p.cross[c1[t].second].first;
    int winding = (t + r) / q;  // 0 or 1: whether this pair wraps past the gap
    int eps = contains_pos(roles.J1, pos1) ? -1 : +1;
    O += eps * winding;
  }
  return O;
}

// Frames whose gaps sit at the first cross endpoint clockwise from each
// fixed gap; label 0 is then unmatched-within on both faces.
inline std::pair<FaceFrame, FaceFrame> sigma_frames(const PathConfig& p,
                                                    const FaceFrame& fix1,
                                                    const FaceFrame& fix2) {
  auto pick = [](const std::vector<int>& freev, const FaceFrame& fix) {
    int best = -1, bestlab = fix.k + 1;
    for (int v : freev) {
      int lab = fix.label(v);
      if (lab < bestlab) {
        bestlab = lab;
        best = v;
      }
    }
    require(best >= 0, Err::InternalInvariant, "no cross endpoint on a face");
    return FaceFrame{fix.k, best};
  };
  std::vector<int> fr1, fr2;
  for (auto [a, b] : p.cross) {
    fr1.push_back(a);
    fr2.push_back(b);
  }
  return {pick(fr1, fix1), pick(fr2, fix2)};
}

// sign and shift of one summand in the row expansion: label sums plus the
// slot indicators, taken mod 2 and mod q
struct SigmaTau {
  int sigma;  // 0 or 1
  int tau;    // mod q
};

inline SigmaTau sigma_tau(const PathConfig& p, const RoleSets& roles,
                          const std::vector<int>& I1, const std::vector<int>& I2,
                          const FaceFrame& s1, const FaceFrame& s2) {
  int q = p.q();
  auto face_part = [&](const std::vector<std::pair<int, int>>& within,
                       const std::vector<int>& J, const FaceFrame& fr,
                       const std::vector<int>& I) {
    std::vector<int> jl;
    for (int j : J) jl.push_back(fr.label(j));
    std::sort(jl.begin(), jl.end());
    auto exp = expanded_pivots(pivot_data(within, fr.k), fr);
    auto db = delta_bits(jl, exp);
    int dsum = 0, jsum = 0, isum = 0;
    for (int d : db) dsum += d;
    for (int j : jl) jsum += j;
    for (int i : I) isum += i;
    return std::tuple{dsum, jsum, isum};
  };
  auto [d1, j1, i1] = face_part(p.within1, roles.J1, s1, I1);
  auto [d2, j2, i2] = face_part(p.within2, roles.J2, s2, I2);
  SigmaTau st;
  st.sigma = mod_pos(i1 + i2 + j1 + j2 + d1 + d2, 2);
  st.tau = mod_pos(2 * i1 + 2 * d1 - 2 * i2 - 2 * d2, q);
  return st;
}

// sink/source choice that makes the pattern itself compatible: sinks on face
// 1 at the clockwise-first endpoints, sources on face 2 likewise
inline RoleSets canonical_roles(const PathConfig& p) {
  return {alphas_of(p.within1, p.k1), alphas_of(p.within2, p.k2)};
}

// A pattern equals another on both faces' within-pair lists.
inline bool f1f2_equivalent(const PathConfig& a, const PathConfig& b) {
  return a.within1 == b.within1 && a.within2 == b.within2;
}

// Slot-indicator sums over every distinct pairing of the member labels with
// the expanded pivot slots, one entry per arrangement. Slots carrying equal
// pivots are interchangeable, so arrangements of the expanded sequence are
// enumerated rather than orderings of the members: that counts each pairing
// once. The row expansion spreads a summand per pairing.
inline std::vector<int> ordering_delta_sums(std::vector<int> labels,
                                            std::vector<int> expanded) {
  require(labels.size() == expanded.size(), Err::InternalInvariant,
          "slot count mismatch");
  std::sort(labels.begin(), labels.end());
  std::sort(expanded.begin(), expanded.end());
  std::vector<int> out;
  do {
    int s = 0;
    for (std::size_t r = 0; r < labels.size(); ++r)
      if (labels[r] < expanded[r]) ++s;
    out.push_back(s);
  } while (std::next_permutation(expanded.begin(), expanded.end()));
  return out;
}

// A stretch can host a pivot slot only if it covers that pivot pair.
inline bool stretch_hosts(std::pair<int, int> pr, int pivot_label,
                          const FaceFrame& fr) {
  int piv = fr.unlabel(pivot_label);
  int prev = mod_pos(piv - 1, fr.k);
  return interval_contains(pr.first, pr.second, piv, fr.k) &&
         interval_contains(pr.first, pr.second, prev, fr.k);
}

inline bool hosting_matching_exists(
    const std::vector<std::pair<int, int>>& within_c,
    const std::vector<std::pair<int, int>>& within_p, const FaceFrame& fr) {
  if (within_c.size() != within_p.size()) return false;
  std::vector<int> exp = expanded_pivots(pivot_data(within_p, fr.k), fr);
  do {
    bool all = true;
    for (std::size_t i = 0; i < exp.size() && all; ++i)
      all = stretch_hosts(within_c[i], exp[i], fr);
    if (all) return true;
  } while (std::next_permutation(exp.begin(), exp.end()));
  return false;
}

// A pattern survives in a reference pattern's row combination only if, on
// each face, its stretches can be matched one-to-one onto the reference's
// expanded pivots with every stretch hosting its slot. When no such matching
// exists the summands reaching the pattern cancel in signed pairs: switching
// the endpoints of the first unhosted stretch flips the sign and lands in
// the same column.
inline bool config_bad(const PathConfig& c, const PathConfig& p,
                       const FaceFrame& s1, const FaceFrame& s2) {
  return !hosting_matching_exists(c.within1, p.within1, s1) ||
         !hosting_matching_exists(c.within2, p.within2, s2);
}

}  // namespace sdpp
