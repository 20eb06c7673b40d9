#pragma once
// JSON reading and writing for problem instances.

#include <nlohmann/json.hpp>

#include "sdpp/graph.hpp"

namespace sdpp {

using json = nlohmann::ordered_json;

inline void expect(bool ok, const std::string& what) {
  require(ok, Err::SchemaViolation, what);
}

inline int as_vertex(const json& j, int n, const std::string& where) {
  expect(j.is_number_integer(), where + " must be an integer");
  long v = j.get<long>();
  expect(v >= 0 && v < n, where + " out of vertex range");
  return static_cast<int>(v);
}

inline Instance load_instance(const json& j) {
  expect(j.is_object(), "instance must be a JSON object");
  for (auto& key : {"vertices", "edges", "rotation", "outer_face_edge",
                    "inner_face_edge", "terminals"})
    expect(j.contains(key), std::string("missing field '") + key + "'");

  Instance inst;
  EmbeddedGraph& g = inst.g;
  const json& jv = j.at("vertices");
  expect(jv.is_array() && !jv.empty(), "'vertices' must be a nonempty array");
  g.n = static_cast<int>(jv.size());
  std::vector<char> seen(g.n, 0);
  for (auto& x : jv) {
    int v = as_vertex(x, g.n, "vertex id");
    expect(!seen[v], "vertex id repeated");
    seen[v] = 1;
  }

  const json& je = j.at("edges");
  expect(je.is_array(), "'edges' must be an array");
  for (auto& row : je) {
    expect(row.is_array() && row.size() == 3, "edge rows are [u, v, w]");
    int u = as_vertex(row[0], g.n, "edge endpoint");
    int v = as_vertex(row[1], g.n, "edge endpoint");
    expect(row[2].is_number_integer(), "edge weight must be an integer");
    g.edges.push_back({u, v, row[2].get<i64>()});
  }

  const json& jr = j.at("rotation");
  expect(jr.is_object(), "'rotation' must map vertex to edge list");
  g.rot.assign(g.n, {});
  expect(jr.size() == static_cast<std::size_t>(g.n),
         "'rotation' must list every vertex");
  for (auto& [key, val] : jr.items()) {
    int v = -1;
    try {
      v = std::stoi(key);
    } catch (...) {
      expect(false, "rotation key is not a vertex id");
    }
    expect(v >= 0 && v < g.n, "rotation key out of range");
    expect(val.is_array(), "rotation entries are edge id arrays");
    for (auto& x : val) {
      expect(x.is_number_integer(), "edge id must be an integer");
      long e = x.get<long>();
      expect(e >= 0 && e < static_cast<long>(g.edges.size()),
             "rotation references a missing edge");
      g.rot[v].push_back(static_cast<int>(e));
    }
  }

  g.derive_faces();
  auto hint = [&](const char* key) {
    const json& h = j.at(key);
    expect(h.is_array() && h.size() == 2, std::string(key) + " is [u, v]");
    int u = as_vertex(h[0], g.n, key);
    int v = as_vertex(h[1], g.n, key);
    return g.face_of(u, v);
  };
  g.outer_face = hint("outer_face_edge");
  g.inner_face = hint("inner_face_edge");

  const json& jt = j.at("terminals");
  expect(jt.is_object() && jt.contains("K1") && jt.contains("K2") &&
             jt.contains("pairs"),
         "'terminals' needs K1, K2 and pairs");
  for (auto& x : jt.at("K1")) inst.t.K1.push_back(as_vertex(x, g.n, "K1 entry"));
  for (auto& x : jt.at("K2")) inst.t.K2.push_back(as_vertex(x, g.n, "K2 entry"));
  for (auto& row : jt.at("pairs")) {
    expect(row.is_array() && row.size() == 2, "pair rows are [s, t]");
    inst.t.pairs.push_back(
        {as_vertex(row[0], g.n, "pair entry"), as_vertex(row[1], g.n, "pair entry")});
  }
  validate_instance(inst);
  return inst;
}

inline json instance_to_json(const Instance& inst) {
  const EmbeddedGraph& g = inst.g;
  json j;
  j["vertices"] = json::array();
  for (int v = 0; v < g.n; ++v) j["vertices"].push_back(v);
  j["edges"] = json::array();
  for (auto& e : g.edges) j["edges"].push_back({e.u, e.v, e.w});
  j["rotation"] = json::object();
  for (int v = 0; v < g.n; ++v) j["rotation"][std::to_string(v)] = g.rot[v];
  int so = g.faces[g.outer_face][0], si = g.faces[g.inner_face][0];
  j["outer_face_edge"] = {g.tail(so), g.head(so)};
  j["inner_face_edge"] = {g.tail(si), g.head(si)};
  j["terminals"]["K1"] = inst.t.K1;
  j["terminals"]["K2"] = inst.t.K2;
  j["terminals"]["pairs"] = json::array();
  for (auto& [a, b] : inst.t.pairs) j["terminals"]["pairs"].push_back({a, b});
  return j;
}

// Plain graphs for the two-set disjoint-path solver.
struct PlainGraph {
  int n = 0;
  std::vector<EdgeData> edges;
};

struct ABInstance {
  PlainGraph g;
  std::vector<int> A, B;
  int q = 0;
};

inline ABInstance load_ab_instance(const json& j) {
  expect(j.is_object(), "instance must be a JSON object");
  for (auto& key : {"vertices", "edges", "terminals", "q"})
    expect(j.contains(key), std::string("missing field '") + key + "'");
  ABInstance inst;
  const json& jv = j.at("vertices");
  expect(jv.is_array() && !jv.empty(), "'vertices' must be a nonempty array");
  inst.g.n = static_cast<int>(jv.size());
  const json& je = j.at("edges");
  expect(je.is_array(), "'edges' must be an array");
  std::map<std::pair<int, int>, int> seen;
  for (auto& row : je) {
    expect(row.is_array() && row.size() == 3, "edge rows are [u, v, w]");
    int u = as_vertex(row[0], inst.g.n, "edge endpoint");
    int v = as_vertex(row[1], inst.g.n, "edge endpoint");
    expect(u != v, "self-loop in input");
    auto key = std::minmax(u, v);
    expect(!seen.count({key.first, key.second}), "parallel edge in input");
    seen[{key.first, key.second}] = 1;
    expect(row[2].is_number_integer(), "edge weight must be an integer");
    i64 w = row[2].get<i64>();
    require(w >= 0 && w <= kMaxEdgeWeight, Err::WeightOutOfRange,
            "edge weight outside [0, 1e6]");
    inst.g.edges.push_back({u, v, w});
  }
  const json& jt = j.at("terminals");
  expect(jt.is_object() && jt.contains("A") && jt.contains("B"),
         "'terminals' needs A and B");
  for (auto& x : jt.at("A")) inst.A.push_back(as_vertex(x, inst.g.n, "A entry"));
  for (auto& x : jt.at("B")) inst.B.push_back(as_vertex(x, inst.g.n, "B entry"));
  expect(j.at("q").is_number_integer(), "'q' must be an integer");
  inst.q = j.at("q").get<int>();
  std::vector<int> all = inst.A;
  all.insert(all.end(), inst.B.begin(), inst.B.end());
  std::sort(all.begin(), all.end());
  expect(std::adjacent_find(all.begin(), all.end()) == all.end(),
         "terminal repeated");
  expect(!inst.A.empty() && !inst.B.empty(), "terminal sets must be nonempty");
  int k1 = static_cast<int>(inst.A.size()), k2 = static_cast<int>(inst.B.size());
  expect((k1 + k2) % 2 == 0, "terminal sets of different parity");
  expect(inst.q >= ((k1 % 2) ? 1 : 0) && inst.q <= std::min(k1, k2) &&
             (inst.q - k1) % 2 == 0,
         "q incompatible with the terminal counts");
  return inst;
}

inline json ab_instance_to_json(const ABInstance& inst) {
  json j;
  j["vertices"] = json::array();
  for (int v = 0; v < inst.g.n; ++v) j["vertices"].push_back(v);
  j["edges"] = json::array();
  for (auto& e : inst.g.edges) j["edges"].push_back({e.u, e.v, e.w});
  j["terminals"]["A"] = inst.A;
  j["terminals"]["B"] = inst.B;
  j["q"] = inst.q;
  return j;
}

}  // namespace sdpp
