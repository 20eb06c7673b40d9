#pragma once
// Structural validation of the pattern system: multiply the two matrices and
// confirm every property the pattern recovery rests on. Violations carry a
// readable sample so reports can show what broke, not just that something did.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "sdpp/configs.hpp"
#include "sdpp/system.hpp"

namespace sdpp {

struct SystemChecks {
  std::size_t dim = 0;
  IntMat F;
  TriangularWitness order;
  int diag_bad = 0;        // diagonal entry not the expected power of two
  int cancel_bad = 0;      // nonzero entry at a column that is bad everywhere
  int equiv_bad = 0;       // nonzero entry at a distinct equivalent pattern
  int chain_bad = 0;       // nonzero entry without a descent witness
  int cancel_checked = 0;  // pairs where the bad-pairing test fired
  int equiv_checked = 0;   // distinct equivalent pairs seen
  std::vector<std::string> samples;

  bool ok() const {
    return order.ok && !diag_bad && !cancel_bad && !equiv_bad && !chain_bad;
  }
  void note(std::string s) {
    if (samples.size() < 8) samples.push_back(std::move(s));
  }
};

namespace detail {

struct PatternShape {
  int q = 0;
  std::vector<int> piv1, piv2;  // pivot positions, sorted
  std::vector<int> rp1, rp2;    // rightmost pivots, sorted
  std::map<int, int> mult1, mult2;
};

inline PatternShape shape_of(const PathConfig& p) {
  PatternShape s;
  s.q = p.q();
  PivotData d1 = pivot_data(p.within1, p.k1), d2 = pivot_data(p.within2, p.k2);
  s.piv1 = d1.pivots;
  s.piv2 = d2.pivots;
  std::sort(s.piv1.begin(), s.piv1.end());
  std::sort(s.piv2.begin(), s.piv2.end());
  s.rp1 = rightmost_pivots(p.within1, p.k1);
  s.rp2 = rightmost_pivots(p.within2, p.k2);
  for (std::size_t i = 0; i < d1.pivots.size(); ++i) s.mult1[d1.pivots[i]] = d1.mult[i];
  for (std::size_t i = 0; i < d2.pivots.size(); ++i) s.mult2[d2.pivots[i]] = d2.mult[i];
  return s;
}

inline bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// decreasing in the pivot / rightmost-pivot / multiplicity chain
inline bool descends(const PatternShape& from, const PatternShape& to) {
  if (!subset_of(to.piv1, from.piv1) || !subset_of(to.piv2, from.piv2))
    return false;
  if (to.piv1 != from.piv1 || to.piv2 != from.piv2) return true;
  if (!subset_of(to.rp1, from.rp1) || !subset_of(to.rp2, from.rp2))
    return false;
  if (to.rp1 != from.rp1 || to.rp2 != from.rp2) return true;
  for (int v : from.rp1)
    if (to.mult1.at(v) > from.mult1.at(v)) return false;
  for (int v : from.rp2)
    if (to.mult2.at(v) > from.mult2.at(v)) return false;
  return true;
}

}  // namespace detail

inline SystemChecks check_system(ConfigSystem& sys) {
  if (sys.L.empty()) sys.L = build_L(sys);
  SystemChecks out;
  out.dim = sys.configs.size();
  out.F = mat_mul(sys.L, sys.M);
  out.order = verify_triangular(out.F);
  if (!out.order.ok)
    out.note("pattern digraph has a cycle through " +
             std::to_string(out.order.stuck.front()));

  std::vector<detail::PatternShape> shapes;
  for (auto& p : sys.configs) shapes.push_back(detail::shape_of(p));

  for (std::size_t j = 0; j < sys.configs.size(); ++j) {
    const PathConfig& p = sys.configs[j];
    int l1 = static_cast<int>(p.within1.size());
    int l2 = static_cast<int>(p.within2.size());
    long long want = 1ll << (l1 + l2);
    long long diag = out.F[j][j];
    if (diag != want && diag != -want) {
      ++out.diag_bad;
      out.note("diagonal " + std::to_string(j) + " is " + std::to_string(diag) +
               ", expected +/-" + std::to_string(want));
    }

    auto [s1, s2] = sigma_frames(p, sys.fix1, sys.fix2);
    for (std::size_t c = 0; c < sys.configs.size(); ++c) {
      if (c == j) continue;
      const PathConfig& cc = sys.configs[c];
      long long f = out.F[j][c];

      if (f1f2_equivalent(p, cc)) {
        ++out.equiv_checked;
        if (f != 0) {
          ++out.equiv_bad;
          out.note("equivalent pair (" + std::to_string(j) + "," +
                   std::to_string(c) + ") has entry " + std::to_string(f));
        }
      }

      if (cc.q() == p.q() && config_bad(cc, p, s1, s2)) {
        ++out.cancel_checked;
        if (f != 0) {
          ++out.cancel_bad;
          out.note("bad column (" + std::to_string(j) + "," +
                   std::to_string(c) + ") has entry " + std::to_string(f));
        }
      }

      if (f != 0) {
        bool fine = cc.q() > p.q() ||
                    (cc.q() == p.q() && detail::descends(shapes[j], shapes[c]));
        if (!fine) {
          ++out.chain_bad;
          out.note("entry (" + std::to_string(j) + "," + std::to_string(c) +
                   ") = " + std::to_string(f) + " breaks the descent chain");
        }
      }
    }
  }
  return out;
}

}  // namespace sdpp
