#include "doctest.h"
#include "mplumb/cli.hpp"
#include "mplumb/json_io.hpp"

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

using namespace mplumb;
using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
  json j() const { return json::parse(out); }
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = std::string(MPLUMB_TEST_TMP) + "/" + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("link E8 quadratic") {
  auto r = cli({"link", "--catalog", "dynkin:E8", "--mode", "quadratic"});
  REQUIRE(r.code == 0);
  auto j = r.j();
  CHECK(j["exact"] == true);
  CHECK(j["motive"]["text"] == "1(0)[0] + 1(2)[3]");
  CHECK(j["mu_part"]["atoms"].empty());
  REQUIRE(j["motive"]["atoms"].size() == 2);
  CHECK(j["motive"]["atoms"][1] == json{{"kind", "tate"}, {"mult", 1}, {"p", 3}, {"q", 2}});
  CHECK(j["du_val"]["matches_table"] == true);
}

TEST_CASE("link D4 reports against the table") {
  auto r = cli({"link", "--catalog", "dynkin:D4", "--mode", "quadratic"});
  REQUIRE(r.code == 0);
  auto j = r.j();
  CHECK(j["du_val"]["rank_matches_oriented"] == true);
  CHECK(j["du_val"]["oriented_invariants"] == json{1, 1, 2, 2});
  CHECK(j["du_val"].contains("matches_table"));
  CHECK(j["du_val"]["report"].get<std::string>().find("D4") == 0);
}

TEST_CASE("mumford danielewski 3") {
  auto r = cli({"mumford", "--catalog", "danielewski:3", "--mode", "oriented"});
  REQUIRE(r.code == 0);
  auto m = r.j()["matrix"];
  REQUIRE(m.size() == 7);
  for (const auto& row : m) CHECK(row.size() == 7);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) CHECK(m[i][j] == m[j][i]);
  CHECK(r.j()["checks"]["is_tree"] == true);
}

TEST_CASE("snf of the Ramanujam matrix") {
  auto r = cli({"snf", "--matrix", "4 5 2; 5 3 0; 2 0 -1"});
  REQUIRE(r.code == 0);
  CHECK(r.j()["diagonal"] == json{1, 1, 1});

  auto q = cli({"snf", "--mode", "quadratic", "--matrix", "-h 1; 1 -h"});
  REQUIRE(q.code == 0);
  CHECK(q.j()["diagonal"].size() == 2);

  CHECK(cli({"snf", "--matrix", "h 0; 0 1"}).code == 1);
  CHECK(cli({"snf", "--matrix", "1 2; 3"}).code == 1);
  CHECK(cli({"snf", "--mode", "quadratic", "--matrix", "2+q"}).code == 1);
}

TEST_CASE("catalog") {
  auto r = cli({"catalog"});
  REQUIRE(r.code == 0);
  auto names = r.j()["names"];
  CHECK(std::find(names.begin(), names.end(), "ramanujam") != names.end());
  CHECK(std::find(names.begin(), names.end(), "dynkin:D4") != names.end());
  CHECK(cli({"catalog", "--catalog", "dynkin:D4"}).code == 0);
  CHECK(catalog_graph("dynkin:D4").size() == 4);

  auto bad = cli({"link", "--catalog", "dynkin:Q3"});
  CHECK(bad.code == 2);
  CHECK(bad.j()["error"]["kind"] == "UnknownCatalog");
  CHECK(cli({"catalog", "--catalog", "danielewski:0"}).code == 2);
}

TEST_CASE("homology and rz") {
  auto h = cli({"homology", "--catalog", "ramanujam"});
  REQUIRE(h.code == 0);
  auto hm = h.j()["hm"];
  REQUIRE(hm.size() == 4);
  CHECK(hm[0]["pieces"] == json::array({{{"free_rank", 1}, {"torsion", json::array()}, {"twist", 0}}}));
  CHECK(hm[1]["pieces"].empty());
  CHECK(hm[2]["pieces"].empty());
  CHECK(hm[3]["pieces"][0]["twist"] == 2);

  auto a1 = cli({"homology", "--catalog", "dynkin:A1"}).j()["hm"][1]["pieces"];
  CHECK(a1[0]["torsion"] == json{2});
  auto a1r = cli({"homology", "--catalog", "dynkin:A1", "--rational"}).j()["hm"][1]["pieces"];
  CHECK(a1r.empty());

  auto rz = cli({"rz", "--catalog", "dynkin:A3"});
  REQUIRE(rz.code == 0);
  auto terms = rz.j()["terms"];
  REQUIRE(terms.size() == 3);
  CHECK(terms[0]["rank"] == 2);
  CHECK(terms[0]["twist"] == 2);
  CHECK(terms[1]["rank"] == 3);
  CHECK(terms[2]["rank"] == 1);
}

TEST_CASE("arrangement") {
  auto path = write_temp("coord.arr", "# x = 0, y = 0 in A^3\n1 0 0 | 0\n0 1 0 | 0\n");
  auto r = cli({"arrangement", "--arrangement", path});
  REQUIRE(r.code == 0);
  auto j = r.j();
  CHECK(j["multiplicities"] == json{{"0", 1}, {"1", 2}, {"2", 1}});
  CHECK(j["normal_crossing"] == true);
  CHECK(j["infinity"]["text"].get<std::string>().find("1(3)[5]") != std::string::npos);

  auto concurrent = write_temp("conc.arr", "1 0 | 0\n0 1 | 0\n1 1 | 0\n");
  auto c = cli({"arrangement", "--arrangement", concurrent});
  CHECK(c.code == 2);
  CHECK(c.j()["error"]["kind"] == "NotNowhereDense");

  auto broken = write_temp("broken.arr", "1 0 | 0\n1 zz | 0\n");
  auto b = cli({"arrangement", "--arrangement", broken});
  CHECK(b.code == 1);
  CHECK(b.j()["error"]["kind"] == "ParseError");
  CHECK(b.j()["error"]["line"] == 2);
}

TEST_CASE("graph files and errors") {
  CHECK(cli({"link", "--graph", MPLUMB_FIXTURES "/danielewski3.graph", "--mode", "quadratic"}).code == 0);
  CHECK(cli({"link", "--graph", "/nonexistent/x.graph"}).code == 1);
  CHECK(cli({"link"}).code == 1);
  CHECK(cli({"link", "--catalog", "ramanujam", "--graph", MPLUMB_FIXTURES "/danielewski3.graph"}).code == 1);
  CHECK(cli({"bogus"}).code == 1);
  CHECK(cli({"link", "--catalog", "ramanujam", "--mode", "sideways"}).code == 1);

  auto bad = write_temp("bad.graph", "vertex a -2;\nvertex b -2;\nedge a c;\n");
  auto r = cli({"link", "--graph", bad});
  CHECK(r.code == 1);
  CHECK(r.j()["error"]["kind"] == "ValidationError");
  auto syntax = write_temp("syntax.graph", "vertex a -2;\nvertex b two;\n");
  auto s = cli({"link", "--graph", syntax});
  CHECK(s.code == 1);
  CHECK(s.j()["error"]["kind"] == "ParseError");
  CHECK(s.j()["error"]["line"] == 2);

  // a cycle is not a tree: quadratic mode refuses with a domain error
  CHECK(cli({"mumford", "--catalog", "ramanujam", "--mode", "quadratic"}).j()["error"]["kind"] == "NotOrientable");

  auto cyc = write_temp("cycle.graph", "vertex a -2; vertex b -2; vertex c -2; edge a b; edge b c; edge c a;");
  auto q = cli({"link", "--graph", cyc, "--mode", "quadratic"});
  CHECK(q.code == 2);
  CHECK(q.j()["error"]["kind"] == "NotTree");
  auto o = cli({"link", "--graph", cyc});
  CHECK(o.code == 0);
  CHECK(o.j()["exact"] == false);
}

TEST_CASE("determinism") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"link", "--catalog", "dynkin:D7", "--mode", "quadratic"},
           {"link", "--catalog", "danielewski:5"},
           {"homology", "--catalog", "dynkin:E6"},
           {"mumford", "--catalog", "ramanujam"},
           {"catalog"}}) {
    auto a = cli(args), b = cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("table format") {
  auto r = cli({"link", "--catalog", "dynkin:A3", "--mode", "quadratic", "--format", "table"});
  CHECK(r.code == 0);
  CHECK(r.out.find("hofib(2h)") != std::string::npos);
}

TEST_CASE("square class bound from the environment") {
  auto g = write_temp("ext.graph", "field rational; vertex a -2; vertex b -2; edge a b point deg=2 f=1,0,1;");
  ::setenv("MOTIVIC_PLUMB_SQUAREFREE_BOUND", "oops", 1);
  auto bad = cli({"mumford", "--graph", g, "--mode", "quadratic"});
  CHECK(bad.code == 1);
  CHECK(bad.j()["error"]["kind"] == "ValidationError");
  ::setenv("MOTIVIC_PLUMB_SQUAREFREE_BOUND", "1", 1);
  CHECK(cli({"mumford", "--graph", g, "--mode", "quadratic"}).code == 1);
  ::setenv("MOTIVIC_PLUMB_SQUAREFREE_BOUND", "100", 1);
  auto ok = cli({"mumford", "--graph", g, "--mode", "quadratic"});
  ::unsetenv("MOTIVIC_PLUMB_SQUAREFREE_BOUND");
  CHECK(ok.code == 0);
  CHECK(ok.out == cli({"mumford", "--graph", g, "--mode", "quadratic"}).out);
  // the Gaussian point has trace form h
  CHECK(ok.j()["matrix"][0][1] == json{{"x", 1}, {"y", 1}});
  // links need rational points
  CHECK(cli({"link", "--graph", g, "--mode", "quadratic"}).j()["error"]["kind"] == "NonRationalPoint");
}
