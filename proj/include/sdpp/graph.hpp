#pragma once
// Plane graphs given by rotation systems. Faces are traced with the
// next-side rule; the face to the right of a directed side is the one whose
// walk contains it. The designated outer face's walk runs in terminal
// clockwise order, a bounded face's walk runs against it.

#include <algorithm>
#include <map>
#include <queue>
#include <vector>

#include "sdpp/base.hpp"

namespace sdpp {

constexpr i64 kMaxEdgeWeight = 1000000;

struct EdgeData {
  int u, v;
  i64 w;
};

struct EmbeddedGraph {
  int n = 0;
  std::vector<EdgeData> edges;
  std::vector<std::vector<int>> rot;  // edge ids around each vertex, drawn order
  // derived by derive_faces()
  std::vector<std::vector<int>> faces;  // side ids in walk order; side = 2e+dir
  std::vector<int> side_face;
  int outer_face = -1, inner_face = -1;

  int tail(int side) const {
    const EdgeData& e = edges[side >> 1];
    return (side & 1) ? e.v : e.u;
  }
  int head(int side) const {
    const EdgeData& e = edges[side >> 1];
    return (side & 1) ? e.u : e.v;
  }
  int side_from(int e, int from) const {
    return 2 * e + (edges[e].u == from ? 0 : 1);
  }
  int edge_between(int u, int v) const {
    for (std::size_t e = 0; e < edges.size(); ++e)
      if ((edges[e].u == u && edges[e].v == v) || (edges[e].u == v && edges[e].v == u))
        return static_cast<int>(e);
    return -1;
  }

  void check_basic() const {
    require(n >= 1, Err::SchemaViolation, "graph has no vertices");
    std::map<std::pair<int, int>, int> seen;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      auto [u, v, w] = edges[e];
      require(u >= 0 && u < n && v >= 0 && v < n, Err::SchemaViolation,
              "edge endpoint out of range");
      require(u != v, Err::SchemaViolation, "self-loop in input");
      require(w >= 0 && w <= kMaxEdgeWeight, Err::WeightOutOfRange,
              "edge weight outside [0, 1e6]");
      auto key = std::minmax(u, v);
      require(!seen.count({key.first, key.second}), Err::SchemaViolation,
              "parallel edge in input");
      seen[{key.first, key.second}] = static_cast<int>(e);
    }
    require(rot.size() == static_cast<std::size_t>(n), Err::RotationInconsistent,
            "rotation table size differs from vertex count");
    std::vector<std::vector<int>> inc(n);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      inc[edges[e].u].push_back(static_cast<int>(e));
      inc[edges[e].v].push_back(static_cast<int>(e));
    }
    for (int v = 0; v < n; ++v) {
      auto a = rot[v], b = inc[v];
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      require(a == b, Err::RotationInconsistent,
              "rotation at vertex " + std::to_string(v) +
                  " is not a permutation of its incident edges");
    }
  }

  void check_connected() const {
    std::vector<char> vis(n, 0);
    std::vector<int> stack{0};
    vis[0] = 1;
    int cnt = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int e : rot[v]) {
        int o = edges[e].u == v ? edges[e].v : edges[e].u;
        if (!vis[o]) {
          vis[o] = 1;
          ++cnt;
          stack.push_back(o);
        }
      }
    }
    require(cnt == n, Err::Disconnected, "graph is not connected");
  }

  // walk successor: after side (u -> v), continue along the first edge
  // counterclockwise from {u,v} at v, keeping the same face on the right
  int next_side(int side) const {
    int v = head(side);
    int e = side >> 1;
    auto& rv = rot[v];
    auto it = std::find(rv.begin(), rv.end(), e);
    require(it != rv.end(), Err::RotationInconsistent, "edge missing from rotation");
    int e2 = rv[(it - rv.begin() + rv.size() - 1) % rv.size()];
    return side_from(e2, v);
  }

  void derive_faces() {
    check_basic();
    check_connected();
    faces.clear();
    side_face.assign(2 * edges.size(), -1);
    for (int s0 = 0; s0 < static_cast<int>(2 * edges.size()); ++s0) {
      if (side_face[s0] != -1) continue;
      int f = static_cast<int>(faces.size());
      faces.emplace_back();
      int s = s0;
      do {
        require(side_face[s] == -1, Err::RotationInconsistent, "face trace collision");
        side_face[s] = f;
        faces[f].push_back(s);
        s = next_side(s);
      } while (s != s0);
    }
    long euler = static_cast<long>(n) - static_cast<long>(edges.size()) +
                 static_cast<long>(faces.size());
    require(euler == 2, Err::NonPlanar, "rotation system is not a plane embedding");
  }

  int face_of(int u, int v) const {
    int e = edge_between(u, v);
    require(e >= 0, Err::SchemaViolation, "face hint names a missing edge");
    return side_face[side_from(e, u)];
  }

  // vertices around a face in terminal clockwise order
  std::vector<int> face_cycle_cw(int f) const {
    std::vector<int> c;
    c.reserve(faces[f].size());
    for (int s : faces[f]) c.push_back(tail(s));
    if (f != outer_face) std::reverse(c.begin(), c.end());
    return c;
  }
};

struct TerminalLayout {
  std::vector<int> K1, K2;                 // clockwise on outer resp. inner face
  std::vector<std::pair<int, int>> pairs;  // vertex pairs to connect
};

struct Instance {
  EmbeddedGraph g;
  TerminalLayout t;
};

// positions of the terminals in a face cycle; demands each appears exactly once
// and that the listed order is a rotation of the cycle order
inline std::vector<int> terminal_positions(const std::vector<int>& cycle,
                                           const std::vector<int>& terms) {
  std::vector<int> pos;
  for (int t : terms) {
    int hits = 0, at = -1;
    for (std::size_t i = 0; i < cycle.size(); ++i)
      if (cycle[i] == t) {
        ++hits;
        at = static_cast<int>(i);
      }
    require(hits == 1, Err::TerminalNotOnFace,
            "terminal " + std::to_string(t) + " not on its face exactly once");
    pos.push_back(at);
  }
  if (pos.size() > 1) {
    int descents = 0;
    for (std::size_t r = 0; r < pos.size(); ++r)
      if (pos[r] > pos[(r + 1) % pos.size()]) ++descents;
    require(descents == 1, Err::TerminalNotOnFace,
            "terminals listed against the face order");
  }
  return pos;
}

inline void validate_instance(Instance& inst) {
  EmbeddedGraph& g = inst.g;
  if (g.faces.empty()) g.derive_faces();
  require(g.outer_face >= 0 && g.inner_face >= 0 && g.outer_face != g.inner_face,
          Err::SchemaViolation, "outer and inner faces must differ");
  TerminalLayout& t = inst.t;
  require(!t.K1.empty() && !t.K2.empty(), Err::SchemaViolation, "empty terminal set");
  require(t.K1.size() % 2 == 1 && t.K2.size() % 2 == 1, Err::EvenTerminalCount,
          "both faces need an odd number of terminals");
  std::vector<int> all = t.K1;
  all.insert(all.end(), t.K2.begin(), t.K2.end());
  for (int v : all)
    require(v >= 0 && v < g.n, Err::SchemaViolation, "terminal out of range");
  std::vector<int> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
          Err::SchemaViolation, "terminal repeated");
  terminal_positions(g.face_cycle_cw(g.outer_face), t.K1);
  terminal_positions(g.face_cycle_cw(g.inner_face), t.K2);
  // pairs must match every terminal exactly once
  require(2 * t.pairs.size() == all.size(), Err::BadPairing,
          "pair list does not cover the terminals");
  std::vector<int> used;
  for (auto [a, b] : t.pairs) {
    used.push_back(a);
    used.push_back(b);
  }
  std::sort(used.begin(), used.end());
  require(used == sorted, Err::BadPairing, "pairs are not a perfect matching");
}

// The face-to-face axis: a shortest dual path from the outer to the inner
// face. Crossed primal edges get the y-marking, and each face records where
// the axis enters it between consecutive terminals.
struct AxisDescriptor {
  std::vector<int> faces;      // outer ... inner
  std::vector<int> edges;      // crossed edges in that order
  std::vector<int> from_face;  // face the axis leaves at each crossing
  int gap1 = 0, gap2 = 0;      // axis sits between K[gap-1] and K[gap]
  std::vector<int> side_y;     // per directed side: +1, -1 or 0

  int ycross(int side) const { return side_y[side]; }
};

// locate the cycle slot holding edge e, then the first terminal clockwise
// after it
inline int gap_after_edge(const std::vector<int>& cycle,
                          const std::vector<int>& tpos, int eu, int ev) {
  int L = static_cast<int>(cycle.size());
  int slot = -1;
  for (int i = 0; i < L; ++i) {
    int a = cycle[i], b = cycle[(i + 1) % L];
    if ((a == eu && b == ev) || (a == ev && b == eu)) {
      slot = i;
      break;
    }
  }
  require(slot >= 0, Err::InternalInvariant, "crossed edge not on face cycle");
  int best = -1, bestd = L + 1;
  for (std::size_t r = 0; r < tpos.size(); ++r) {
    int d = mod_pos(tpos[r] - (slot + 1), L);
    if (d < bestd) {
      bestd = d;
      best = static_cast<int>(r);
    }
  }
  return best;
}

inline AxisDescriptor dual_axis(const Instance& inst) {
  const EmbeddedGraph& g = inst.g;
  int nf = static_cast<int>(g.faces.size());
  std::vector<int> par_face(nf, -1), par_edge(nf, -1), dist(nf, -1);
  std::queue<int> bfs;
  dist[g.outer_face] = 0;
  bfs.push(g.outer_face);
  while (!bfs.empty()) {
    int f = bfs.front();
    bfs.pop();
    if (f == g.inner_face) break;
    // scan sides in walk order for a deterministic parent choice
    for (int s : g.faces[f]) {
      int e = s >> 1;
      int f2 = g.side_face[s ^ 1];
      if (f2 == f || dist[f2] != -1) continue;
      dist[f2] = dist[f] + 1;
      par_face[f2] = f;
      par_edge[f2] = e;
      bfs.push(f2);
    }
  }
  require(dist[g.inner_face] != -1, Err::NoAxis, "faces share no dual path");

  AxisDescriptor ax;
  for (int f = g.inner_face; f != -1; f = par_face[f]) {
    ax.faces.push_back(f);
    if (par_face[f] != -1) ax.edges.push_back(par_edge[f]);
  }
  std::reverse(ax.faces.begin(), ax.faces.end());
  std::reverse(ax.edges.begin(), ax.edges.end());
  ax.from_face.assign(ax.edges.size(), -1);
  ax.side_y.assign(2 * g.edges.size(), 0);
  for (std::size_t i = 0; i < ax.edges.size(); ++i) {
    int e = ax.edges[i], from = ax.faces[i];
    ax.from_face[i] = from;
    int s0 = 2 * e;
    // the side lying in the walk of the face the axis leaves carries +1
    ax.side_y[s0] = (g.side_face[s0] == from) ? +1 : -1;
    ax.side_y[s0 ^ 1] = -ax.side_y[s0];
  }

  auto c1 = g.face_cycle_cw(g.outer_face);
  auto c2 = g.face_cycle_cw(g.inner_face);
  auto p1 = terminal_positions(c1, inst.t.K1);
  auto p2 = terminal_positions(c2, inst.t.K2);
  const EdgeData& e1 = g.edges[ax.edges.front()];
  const EdgeData& e2 = g.edges[ax.edges.back()];
  ax.gap1 = gap_after_edge(c1, p1, e1.u, e1.v);
  ax.gap2 = gap_after_edge(c2, p2, e2.u, e2.v);
  return ax;
}

// Concentric-cycle test graph: `rings` cycles of length `spokes`, adjacent
// rings joined at every spoke. Ring 0 bounds the outer face, the last ring
// bounds the inner face. Terminals sit on the first spokes of both rings.
inline Instance template_annulus(int k1, int k2, int rings, int spokes,
                                 i64 w = 1) {
  require(rings >= 2 && spokes >= 3, Err::SchemaViolation, "annulus too small");
  require(k1 >= 1 && k2 >= 1 && k1 <= spokes && k2 <= spokes, Err::SchemaViolation,
          "terminal counts exceed the ring length");
  Instance inst;
  EmbeddedGraph& g = inst.g;
  g.n = rings * spokes;
  auto vid = [&](int r, int i) { return r * spokes + mod_pos(i, spokes); };
  // ring edges first (id r*spokes+i), then spoke edges
  for (int r = 0; r < rings; ++r)
    for (int i = 0; i < spokes; ++i)
      g.edges.push_back({vid(r, i), vid(r, i + 1), w});
  int spoke_base = rings * spokes;
  for (int r = 0; r + 1 < rings; ++r)
    for (int i = 0; i < spokes; ++i)
      g.edges.push_back({vid(r, i), vid(r + 1, i), w});
  auto ring_edge = [&](int r, int i) { return r * spokes + mod_pos(i, spokes); };
  auto spoke_edge = [&](int r, int i) {
    return spoke_base + r * spokes + mod_pos(i, spokes);
  };
  // drawn order around (r, i): outward spoke, previous ring edge, inward
  // spoke, next ring edge
  g.rot.assign(g.n, {});
  for (int r = 0; r < rings; ++r)
    for (int i = 0; i < spokes; ++i) {
      auto& rv = g.rot[vid(r, i)];
      if (r > 0) rv.push_back(spoke_edge(r - 1, i));
      rv.push_back(ring_edge(r, i - 1));
      if (r + 1 < rings) rv.push_back(spoke_edge(r, i));
      rv.push_back(ring_edge(r, i));
    }
  g.derive_faces();
  g.outer_face = g.face_of(vid(0, 0), vid(0, 1));
  g.inner_face = g.face_of(vid(rings - 1, 1), vid(rings - 1, 0));

  for (int i = 0; i < k1; ++i) inst.t.K1.push_back(vid(0, i));
  for (int i = 0; i < k2; ++i) inst.t.K2.push_back(vid(rings - 1, i));
  // default pairing: nested arcs on each face, leftovers joined across
  int q = std::min(k1, k2);
  require((k1 - q) % 2 == 0 && (k2 - q) % 2 == 0, Err::BadPairing,
          "terminal counts of different parity");
  int l1 = (k1 - q) / 2, l2 = (k2 - q) / 2;
  for (int j = 0; j < l1; ++j)
    inst.t.pairs.push_back({inst.t.K1[l1 - 1 - j], inst.t.K1[l1 + j]});
  for (int j = 0; j < l2; ++j)
    inst.t.pairs.push_back({inst.t.K2[l2 - 1 - j], inst.t.K2[l2 + j]});
  for (int t = 0; t < q; ++t)
    inst.t.pairs.push_back({inst.t.K1[2 * l1 + t], inst.t.K2[2 * l2 + t]});
  validate_instance(inst);
  return inst;
}

}  // namespace sdpp
