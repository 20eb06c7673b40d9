#pragma once
// Exhaustive reference routines: enumerate disjoint path systems directly on
// the graph, and cycle covers directly from a monomial matrix. These are the
// answers the algebraic route is checked against.

#include <map>
#include <tuple>

#include "sdpp/configs.hpp"
#include "sdpp/graph.hpp"
#include "sdpp/wrpoly.hpp"

namespace sdpp {

struct PathSystem {
  std::vector<std::vector<int>> paths;  // vertex walks, one per pair, source first
  i64 w = 0;
  i64 r = 0;
  int y = 0;  // net clockwise axis passes, not reduced
};

struct OracleQuery {
  const Instance* inst = nullptr;
  const AxisDescriptor* axis = nullptr;      // optional: fills y
  const std::vector<u32>* redge = nullptr;   // optional: fills r
  std::vector<int> sources;                  // vertex ids; orients each pair
  std::size_t max_count = ~0ull;             // stop after this many systems
};

// All ways to join the instance's pairs by vertex-disjoint paths. Paths may
// use any non-terminal vertex; foreign terminals are never interior.
inline std::vector<PathSystem> enumerate_instances(const OracleQuery& qry) {
  const Instance& inst = *qry.inst;
  const EmbeddedGraph& g = inst.g;
  require(g.n <= 18, Err::SizeGuard, "exhaustive search capped at 18 vertices");
  std::vector<std::pair<int, int>> pairs;
  for (auto [a, b] : inst.t.pairs) {
    bool sa = contains_pos(qry.sources, a), sb = contains_pos(qry.sources, b);
    require(sa != sb, Err::BadPairing, "each pair needs one source endpoint");
    pairs.push_back(sa ? std::pair{a, b} : std::pair{b, a});
  }
  std::vector<char> blocked(g.n, 0);
  for (auto [a, b] : pairs) blocked[a] = blocked[b] = 1;

  std::vector<PathSystem> out;
  PathSystem curr;
  curr.paths.resize(pairs.size());
  std::vector<char> used(g.n, 0);

  // adjacency sorted by neighbor id for a stable enumeration order
  std::vector<std::vector<std::pair<int, int>>> adj(g.n);  // (neighbor, edge)
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    adj[g.edges[e].u].push_back({g.edges[e].v, static_cast<int>(e)});
    adj[g.edges[e].v].push_back({g.edges[e].u, static_cast<int>(e)});
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  auto arc_y = [&](int e, int from) {
    return qry.axis ? qry.axis->side_y[g.side_from(e, from)] : 0;
  };

  std::function<void(std::size_t)> next_pair = [&](std::size_t i) {
    if (out.size() >= qry.max_count) return;
    if (i == pairs.size()) {
      out.push_back(curr);
      return;
    }
    auto [s, t] = pairs[i];
    used[s] = 1;
    curr.paths[i] = {s};
    std::function<void(int)> dfs = [&](int v) {
      if (out.size() >= qry.max_count) return;
      for (auto [nb, e] : adj[v]) {
        if (nb == t) {
          curr.paths[i].push_back(nb);
          curr.w += g.edges[e].w;
          curr.y += arc_y(e, v);
          if (qry.redge) curr.r += (*qry.redge)[e];
          used[nb] = 1;
          next_pair(i + 1);
          used[nb] = 0;
          if (qry.redge) curr.r -= (*qry.redge)[e];
          curr.y -= arc_y(e, v);
          curr.w -= g.edges[e].w;
          curr.paths[i].pop_back();
        } else if (!used[nb] && !blocked[nb]) {
          curr.paths[i].push_back(nb);
          curr.w += g.edges[e].w;
          curr.y += arc_y(e, v);
          if (qry.redge) curr.r += (*qry.redge)[e];
          used[nb] = 1;
          dfs(nb);
          used[nb] = 0;
          if (qry.redge) curr.r -= (*qry.redge)[e];
          curr.y -= arc_y(e, v);
          curr.w -= g.edges[e].w;
          curr.paths[i].pop_back();
        }
      }
    };
    dfs(s);
    used[s] = 0;
  };
  next_pair(0);
  return out;
}

// undirected variant: any orientation of each pair counts once
inline std::vector<PathSystem> enumerate_instances_undirected(
    const Instance& inst, std::size_t max_count = ~0ull) {
  OracleQuery q;
  q.inst = &inst;
  q.max_count = max_count;
  for (auto [a, b] : inst.t.pairs) q.sources.push_back(a);
  return enumerate_instances(q);
}

// minimum total weight over all systems, if any
inline std::optional<i64> oracle_optimum(const Instance& inst) {
  auto all = enumerate_instances_undirected(inst);
  if (all.empty()) return std::nullopt;
  i64 best = all[0].w;
  for (auto& s : all) best = std::min(best, s.w);
  return best;
}

// multiset of cycle-cover monomials (w, r, y-net) of a monomial matrix
inline std::map<std::tuple<i64, i64, int>, u64> enumerate_cycle_covers(
    const MonoMatrix& a) {
  int n = static_cast<int>(a.size());
  require(n >= 1 && n <= 10, Err::SizeGuard, "cover enumeration capped at 10x10");
  std::map<std::tuple<i64, i64, int>, u64> out;
  std::vector<char> used(n, 0);
  i64 w = 0, r = 0;
  int y = 0;
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      ++out[{w, r, y}];
      return;
    }
    for (int j = 0; j < n; ++j) {
      if (used[j] || !a[i][j]) continue;
      used[j] = 1;
      w += a[i][j]->w;
      r += a[i][j]->r;
      y += a[i][j]->y;
      rec(i + 1);
      y -= a[i][j]->y;
      r -= a[i][j]->r;
      w -= a[i][j]->w;
      used[j] = 0;
    }
  };
  rec(0);
  return out;
}

}  // namespace sdpp
