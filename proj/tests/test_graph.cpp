#include <catch2/catch_amalgamated.hpp>

#include "sdpp/graph.hpp"
#include "sdpp/io.hpp"

using namespace sdpp;

static auto err_code(Err c) {
  return Catch::Matchers::Predicate<Error>(
      [c](const Error& e) { return e.code == c; }, err_name(c));
}

TEST_CASE("annulus template has the expected shape") {
  Instance inst = template_annulus(3, 1, 3, 4);
  const EmbeddedGraph& g = inst.g;
  CHECK(g.n == 12);
  CHECK(g.edges.size() == 20);  // 3 rings of 4 plus 2*4 connectors
  // Euler: 12 - 20 + f == 2
  CHECK(g.faces.size() == 10);
  CHECK(g.outer_face != g.inner_face);

  auto outer = g.face_cycle_cw(g.outer_face);
  auto inner = g.face_cycle_cw(g.inner_face);
  REQUIRE(outer.size() == 4);
  REQUIRE(inner.size() == 4);
  std::vector<int> os = outer, is = inner;
  std::sort(os.begin(), os.end());
  std::sort(is.begin(), is.end());
  CHECK(os == std::vector<int>{0, 1, 2, 3});
  CHECK(is == std::vector<int>{8, 9, 10, 11});

  CHECK(inst.t.K1 == std::vector<int>{0, 1, 2});
  CHECK(inst.t.K2 == std::vector<int>{8});
  // nested arc (0,1) on the outer face, one crossing pair
  REQUIRE(inst.t.pairs.size() == 2);
  CHECK(inst.t.pairs[0] == std::pair<int, int>{0, 1});
  CHECK(inst.t.pairs[1] == std::pair<int, int>{2, 8});
}

TEST_CASE("annulus template rejects bad parameters") {
  CHECK_THROWS_AS(template_annulus(1, 1, 1, 3), Error);
  CHECK_THROWS_AS(template_annulus(1, 1, 2, 2), Error);
  CHECK_THROWS_AS(template_annulus(5, 1, 2, 4), Error);
  CHECK_THROWS_AS(template_annulus(3, 2, 3, 4), Error);  // parity
}

TEST_CASE("terminal positions demand cyclic order") {
  std::vector<int> cycle{5, 7, 9, 11};
  CHECK(terminal_positions(cycle, {9, 11, 5}) == std::vector<int>{2, 3, 0});
  CHECK(terminal_positions(cycle, {7}) == std::vector<int>{1});
  CHECK_THROWS_AS(terminal_positions(cycle, {9, 5, 11}), Error);
  CHECK_THROWS_AS(terminal_positions(cycle, {9, 4}), Error);
  std::vector<int> twice{5, 7, 5};
  CHECK_THROWS_AS(terminal_positions(twice, {5}), Error);
}

TEST_CASE("instance validation catches layout mistakes") {
  auto base = [] { return template_annulus(3, 1, 3, 4); };

  Instance even = base();
  even.t.K1 = {0, 1};
  even.t.pairs = {{0, 1}, {8, 8}};
  CHECK_THROWS_MATCHES(validate_instance(even), Error, err_code(Err::EvenTerminalCount));

  Instance rep = base();
  rep.t.K2 = {8};
  rep.t.K1 = {0, 1, 8};
  CHECK_THROWS_MATCHES(validate_instance(rep), Error, err_code(Err::SchemaViolation));

  Instance off = base();
  off.t.K2 = {4};  // middle ring, not on the inner face
  CHECK_THROWS_MATCHES(validate_instance(off), Error, err_code(Err::TerminalNotOnFace));

  Instance order = base();
  order.t.K1 = {0, 2, 1};  // against the face walk
  CHECK_THROWS_MATCHES(validate_instance(order), Error, err_code(Err::TerminalNotOnFace));

  Instance unpaired = base();
  unpaired.t.pairs = {{0, 1}};
  CHECK_THROWS_MATCHES(validate_instance(unpaired), Error, err_code(Err::BadPairing));

  Instance doubled = base();
  doubled.t.pairs = {{0, 1}, {0, 8}};
  CHECK_THROWS_MATCHES(validate_instance(doubled), Error, err_code(Err::BadPairing));

  Instance same = base();
  same.g.inner_face = same.g.outer_face;
  CHECK_THROWS_MATCHES(validate_instance(same), Error, err_code(Err::SchemaViolation));
}

TEST_CASE("basic graph checks reject malformed input") {
  EmbeddedGraph g;
  g.n = 3;
  g.edges = {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}};
  g.rot = {{0, 2}, {0, 1}, {1, 2}};
  CHECK_NOTHROW(g.check_basic());

  SECTION("self-loop") {
    g.edges[1] = {1, 1, 1};
    CHECK_THROWS_MATCHES(g.check_basic(), Error, err_code(Err::SchemaViolation));
  }
  SECTION("parallel edge") {
    g.edges[1] = {0, 1, 1};
    CHECK_THROWS_MATCHES(g.check_basic(), Error, err_code(Err::SchemaViolation));
  }
  SECTION("negative weight") {
    g.edges[2].w = -1;
    CHECK_THROWS_MATCHES(g.check_basic(), Error, err_code(Err::WeightOutOfRange));
  }
  SECTION("weight above cap") {
    g.edges[0].w = kMaxEdgeWeight + 1;
    CHECK_THROWS_MATCHES(g.check_basic(), Error, err_code(Err::WeightOutOfRange));
  }
  SECTION("rotation size mismatch") {
    g.rot.pop_back();
    CHECK_THROWS_MATCHES(g.check_basic(), Error, err_code(Err::RotationInconsistent));
  }
  SECTION("rotation omits an incident edge") {
    g.rot[1] = {0, 0};
    CHECK_THROWS_MATCHES(g.check_basic(), Error, err_code(Err::RotationInconsistent));
  }
}

TEST_CASE("disconnected union is refused") {
  EmbeddedGraph g;
  g.n = 6;
  g.edges = {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {3, 4, 1}, {4, 5, 1}, {5, 3, 1}};
  g.rot = {{0, 2}, {0, 1}, {1, 2}, {3, 5}, {3, 4}, {4, 5}};
  CHECK_THROWS_MATCHES(g.derive_faces(), Error, err_code(Err::Disconnected));
}

TEST_CASE("rotation systems of higher genus are refused") {
  // swapping two entries at one vertex of a valid annulus breaks the
  // face count
  Instance inst = template_annulus(1, 1, 2, 3);
  EmbeddedGraph g = inst.g;
  std::swap(g.rot[0][0], g.rot[0][1]);
  CHECK_THROWS_MATCHES(g.derive_faces(), Error, err_code(Err::NonPlanar));

  // K4 with every vertex listing edges by increasing id embeds on the torus
  EmbeddedGraph k4;
  k4.n = 4;
  k4.edges = {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}};
  k4.rot = {{0, 1, 2}, {0, 3, 4}, {1, 3, 5}, {2, 4, 5}};
  CHECK_THROWS_MATCHES(k4.derive_faces(), Error, err_code(Err::NonPlanar));
}

TEST_CASE("face walks cover every side exactly once") {
  Instance inst = template_annulus(3, 3, 3, 5);
  const EmbeddedGraph& g = inst.g;
  std::vector<int> hit(2 * g.edges.size(), 0);
  std::size_t total = 0;
  for (std::size_t f = 0; f < g.faces.size(); ++f) {
    total += g.faces[f].size();
    for (int s : g.faces[f]) {
      ++hit[s];
      CHECK(g.side_face[s] == static_cast<int>(f));
    }
  }
  CHECK(total == 2 * g.edges.size());
  CHECK(std::all_of(hit.begin(), hit.end(), [](int h) { return h == 1; }));

  // consecutive walk sides share the step vertex
  for (auto& walk : g.faces)
    for (std::size_t i = 0; i < walk.size(); ++i)
      CHECK(g.head(walk[i]) == g.tail(walk[(i + 1) % walk.size()]));
}

TEST_CASE("axis runs straight through the annulus") {
  Instance inst = template_annulus(3, 1, 3, 4);
  AxisDescriptor ax = dual_axis(inst);
  REQUIRE(ax.faces.size() == 4);
  CHECK(ax.faces.front() == inst.g.outer_face);
  CHECK(ax.faces.back() == inst.g.inner_face);
  CHECK(ax.edges == std::vector<int>{0, 4, 8});  // one ring edge per ring

  int nonzero = 0;
  for (std::size_t s = 0; s < ax.side_y.size(); ++s)
    if (ax.side_y[s]) ++nonzero;
  CHECK(nonzero == 2 * static_cast<int>(ax.edges.size()));
  for (int e : ax.edges) {
    CHECK(ax.side_y[2 * e] + ax.side_y[2 * e + 1] == 0);
    CHECK(std::abs(ax.side_y[2 * e]) == 1);
  }
  // crossing edge (0,1) puts the axis just before terminal 1
  CHECK(ax.gap1 == 1);
  CHECK(ax.gap2 == 0);
}

TEST_CASE("axis crossings in face walks match the dual path boundary") {
  Instance inst = template_annulus(3, 3, 4, 5);
  AxisDescriptor ax = dual_axis(inst);
  const EmbeddedGraph& g = inst.g;
  // the axis leaves the outer face once, arrives at the inner face once,
  // and passes straight through everything in between
  for (std::size_t f = 0; f < g.faces.size(); ++f) {
    int net = 0;
    for (int s : g.faces[f]) net += ax.ycross(s);
    int want = 0;
    if (static_cast<int>(f) == g.outer_face) want = 1;
    if (static_cast<int>(f) == g.inner_face) want = -1;
    CHECK(net == want);
  }
}

TEST_CASE("instance json roundtrip") {
  Instance inst = template_annulus(3, 3, 3, 5, 7);
  json j = instance_to_json(inst);
  Instance back = load_instance(j);
  CHECK(back.g.n == inst.g.n);
  REQUIRE(back.g.edges.size() == inst.g.edges.size());
  for (std::size_t e = 0; e < inst.g.edges.size(); ++e) {
    CHECK(back.g.edges[e].u == inst.g.edges[e].u);
    CHECK(back.g.edges[e].v == inst.g.edges[e].v);
    CHECK(back.g.edges[e].w == inst.g.edges[e].w);
  }
  CHECK(back.t.K1 == inst.t.K1);
  CHECK(back.t.K2 == inst.t.K2);
  CHECK(back.t.pairs == inst.t.pairs);
  CHECK(back.g.face_cycle_cw(back.g.outer_face) ==
        inst.g.face_cycle_cw(inst.g.outer_face));
  CHECK(back.g.face_cycle_cw(back.g.inner_face) ==
        inst.g.face_cycle_cw(inst.g.inner_face));
  CHECK(instance_to_json(back) == j);
}

TEST_CASE("instance loader rejects malformed documents") {
  json good = instance_to_json(template_annulus(1, 1, 2, 3));
  CHECK_NOTHROW(load_instance(good));

  SECTION("missing fields") {
    for (auto key : {"vertices", "edges", "rotation", "outer_face_edge",
                     "inner_face_edge", "terminals"}) {
      json j = good;
      j.erase(key);
      CHECK_THROWS_AS(load_instance(j), Error);
    }
  }
  SECTION("short edge row") {
    json j = good;
    j["edges"][0] = {0, 1};
    CHECK_THROWS_AS(load_instance(j), Error);
  }
  SECTION("edge endpoint out of range") {
    json j = good;
    j["edges"][0][1] = 99;
    CHECK_THROWS_AS(load_instance(j), Error);
  }
  SECTION("fractional weight") {
    json j = good;
    j["edges"][0][2] = 1.5;
    CHECK_THROWS_AS(load_instance(j), Error);
  }
  SECTION("weight above cap") {
    json j = good;
    j["edges"][0][2] = kMaxEdgeWeight + 1;
    CHECK_THROWS_MATCHES(load_instance(j), Error, err_code(Err::WeightOutOfRange));
  }
  SECTION("rotation missing a vertex") {
    json j = good;
    j["rotation"].erase("0");
    CHECK_THROWS_AS(load_instance(j), Error);
  }
  SECTION("rotation names a missing edge") {
    json j = good;
    j["rotation"]["0"][0] = 99;
    CHECK_THROWS_AS(load_instance(j), Error);
  }
  SECTION("face hints on the same face") {
    json j = good;
    j["inner_face_edge"] = j["outer_face_edge"];
    CHECK_THROWS_AS(load_instance(j), Error);
  }
  SECTION("face hint names a missing edge") {
    json j = good;
    j["outer_face_edge"] = {0, 4};
    CHECK_THROWS_AS(load_instance(j), Error);
  }
  SECTION("terminal out of range") {
    json j = good;
    j["terminals"]["K1"][0] = -1;
    CHECK_THROWS_AS(load_instance(j), Error);
  }
}

TEST_CASE("two-set instance loader") {
  json good;
  good["vertices"] = {0, 1, 2, 3};
  good["edges"] = {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}};
  good["terminals"]["A"] = {0};
  good["terminals"]["B"] = {2};
  good["q"] = 1;

  ABInstance inst = load_ab_instance(good);
  CHECK(inst.g.n == 4);
  CHECK(inst.g.edges.size() == 4);
  CHECK(inst.A == std::vector<int>{0});
  CHECK(inst.B == std::vector<int>{2});
  CHECK(inst.q == 1);
  CHECK(ab_instance_to_json(inst) == good);

  SECTION("missing q") {
    json j = good;
    j.erase("q");
    CHECK_THROWS_AS(load_ab_instance(j), Error);
  }
  SECTION("q parity off") {
    json j = good;
    j["q"] = 0;  // |A| odd forces an odd number of crossing paths
    CHECK_THROWS_AS(load_ab_instance(j), Error);
  }
  SECTION("q above both set sizes") {
    json j = good;
    j["q"] = 3;
    CHECK_THROWS_AS(load_ab_instance(j), Error);
  }
  SECTION("set sizes of different parity") {
    json j = good;
    j["terminals"]["B"] = {2, 3};
    CHECK_THROWS_AS(load_ab_instance(j), Error);
  }
  SECTION("terminal repeated across sets") {
    json j = good;
    j["terminals"]["B"] = {0};
    CHECK_THROWS_AS(load_ab_instance(j), Error);
  }
  SECTION("self-loop") {
    json j = good;
    j["edges"][0] = {1, 1, 1};
    CHECK_THROWS_AS(load_ab_instance(j), Error);
  }
  SECTION("parallel edge") {
    json j = good;
    j["edges"][1] = {1, 0, 2};
    CHECK_THROWS_AS(load_ab_instance(j), Error);
  }
  SECTION("weight out of range") {
    json j = good;
    j["edges"][0][2] = -3;
    CHECK_THROWS_MATCHES(load_ab_instance(j), Error, err_code(Err::WeightOutOfRange));
  }
}
