#include "doctest.h"
#include "mplumb/error.hpp"
#include "mplumb/json_io.hpp"
#include "mplumb/mumford.hpp"
#include "mplumb/plumbing.hpp"
#include "oracle.hpp"

#include <fstream>
#include <sstream>

using namespace mplumb;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<PlumbingGraph> catalog() {
  std::vector<PlumbingGraph> gs;
  for (int n = 1; n <= 12; ++n) gs.push_back(dynkin('A', n));
  for (int n = 4; n <= 10; ++n) gs.push_back(dynkin('D', n));
  for (int n = 6; n <= 8; ++n) gs.push_back(dynkin('E', n));
  for (int n = 1; n <= 8; ++n) gs.push_back(danielewski(n));
  gs.push_back(ramanujam());
  return gs;
}

}  // namespace

TEST_CASE("minimal input") {
  auto g = parse_graph("vertex a -2; vertex b -2; edge a b;");
  CHECK(g.size() == 2);
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].points.size() == 1);
  CHECK(g.edges[0].points[0] == Point{});
  CHECK(oriented_matrix(g) == oriented_matrix(dynkin('A', 2)));
}

TEST_CASE("fixture equals the catalog builder") {
  auto g = parse_graph(slurp(MPLUMB_FIXTURES "/danielewski3.graph"));
  CHECK(g == danielewski(3));
}

TEST_CASE("validation and parse errors") {
  try {
    parse_graph("vertex a -2;\nedge a b;");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ValidationError);
  }
  CHECK_THROWS_AS(parse_graph("vertex a -2; vertex a 0;"), Error);
  CHECK_THROWS_AS(parse_graph("vertex a -2; vertex b 0; edge a b point deg=0;"), Error);
  CHECK_THROWS_AS(parse_graph("vertex a -2; edge a a;"), Error);
  try {
    parse_graph("vertex a -2;\nvertex b x;");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 10);
  }
  CHECK_THROWS_AS(parse_graph("vertex a -2"), ParseError);
  CHECK_THROWS_AS(parse_graph("vertex a -2; edge a b point colour=red;"), ParseError);
  CHECK_THROWS_AS(parse_graph("field finite;"), ParseError);
}

TEST_CASE("points, fields and extensions in the DSL") {
  auto g = parse_graph(
      "field rational; # base\n"
      "vertex a -2; vertex b -4;\n"
      "edge a b point deg=2 unit=-1 f=1,0,1 point mult=1;\n");
  CHECK(g.base_field == FieldTag::rational());
  REQUIRE(g.edges[0].points.size() == 2);
  const auto& p = g.edges[0].points[0];
  CHECK(p.degree == 2);
  CHECK(p.unit_class == -1);
  REQUIRE(p.extension);
  CHECK(p.extension->base == FieldTag::rational());
  CHECK_THROWS_AS(parse_graph("vertex a 0; vertex b 0; edge a b point deg=3 f=1,0,1;"), Error);
}

TEST_CASE("dynkin shapes") {
  auto a2 = dynkin('A', 2);
  CHECK(a2.size() == 2);
  auto d4 = dynkin('D', 4);
  std::map<std::string, int> degree;
  for (const auto& e : d4.edges) ++degree[e.a], ++degree[e.b];
  CHECK(degree["v2"] == 3);
  CHECK(degree["v1"] == 1);
  auto e8 = dynkin('E', 8);
  CHECK(e8.edges.size() == 7);
  degree.clear();
  for (const auto& e : e8.edges) ++degree[e.a], ++degree[e.b];
  CHECK(degree["v3"] == 3);
  CHECK(degree["v8"] == 1);
  CHECK_THROWS_AS(dynkin('E', 9), Error);
  CHECK_THROWS_AS(dynkin('D', 3), Error);
  CHECK_THROWS_AS(dynkin('A', 0), Error);
}

TEST_CASE("catalog graph invariants") {
  for (char k : {'A', 'D', 'E'}) {
    const int lo = k == 'A' ? 1 : (k == 'D' ? 4 : 6), hi = k == 'E' ? 8 : 12;
    for (int n = lo; n <= hi; ++n) {
      auto g = dynkin(k, n);
      CHECK(g.size() == static_cast<std::size_t>(n));
      CHECK(g.edges.size() == static_cast<std::size_t>(n - 1));
      std::map<std::string, int> deg;
      for (const auto& e : g.edges) ++deg[e.a], ++deg[e.b];
      for (const auto& [id, d] : deg) CHECK(d <= 3);
      auto c = checks(g);
      CHECK(c.is_tree);
      CHECK(c.is_orientable);
      CHECK(c.is_transverse);
      CHECK(c.all_points_rational);
      // negative definite: leading principal minors alternate in sign, starting negative
      auto m = oriented_matrix(g);
      for (int r = 1; r <= n; ++r) {
        oracle::Grid lead(r, std::vector<Integer>(r));
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j) lead[i][j] = m(i, j);
        const Integer det = determinant(IntMatrix::from_rows(lead));
        CHECK(sgn(det) == (r % 2 ? -1 : 1));
      }
    }
  }
  for (int n = 1; n <= 10; ++n) CHECK(danielewski(n).size() == static_cast<std::size_t>(2 * n + 1));
  auto d1 = danielewski(1);
  CHECK(d1.vertices[0].self_intersection == 0);
  CHECK(d1.vertices[1].self_intersection == 0);
  CHECK(d1.vertices[2].self_intersection == -2);
  CHECK(d1.edges.size() == 2);
  auto c = checks(danielewski(2));
  CHECK((c.is_tree && c.is_orientable && c.is_transverse && c.all_points_rational));
}

TEST_CASE("ramanujam configuration") {
  auto g = ramanujam();
  CHECK(oriented_matrix(g) == IntMatrix::from_rows({{4, 5, 2}, {5, 3, 0}, {2, 0, -1}}));
  REQUIRE(g.edges.size() == 2);
  CHECK(g.edges[0].a == "Q");
  CHECK(g.edges[0].b == "C");
  CHECK(g.edges[0].points.size() == 1);
  CHECK(g.edges[1].b == "E");
  CHECK(g.edges[1].points.size() == 1);
  auto c = checks(g);
  CHECK_FALSE(c.is_transverse);
  CHECK_FALSE(c.is_orientable);
  CHECK(c.is_tree);
}

TEST_CASE("cycles are not trees") {
  auto tri = parse_graph("vertex a -2; vertex b -2; vertex c -2; edge a b; edge b c; edge c a;");
  CHECK_FALSE(checks(tri).is_tree);
  auto twice = parse_graph("vertex a -2; vertex b -2; edge a b point point;");
  CHECK_FALSE(checks(twice).is_tree);
  auto split = parse_graph("vertex a -2; vertex b -2;");
  CHECK_FALSE(checks(split).is_tree);
}

TEST_CASE("serialize and JSON round-trips on the catalog") {
  for (const auto& g : catalog()) {
    CHECK(parse_graph(serialize_graph(g)) == g);
    CHECK(graph_from_json(json::parse(to_json(g).dump())) == g);
  }
  auto g = parse_graph("field finite 7; vertex a -2; vertex b -2; edge a b point deg=2 f=1,0,1 u=1/2,1;");
  CHECK(parse_graph(serialize_graph(g)) == g);
  CHECK(graph_from_json(to_json(g)) == g);
}
