#include "doctest.h"
#include "generators.hpp"
#include "mplumb/atinfinity.hpp"
#include "mplumb/error.hpp"
#include "mplumb/mumford.hpp"
#include "oracle.hpp"

using namespace mplumb;

namespace {

Cover simple_cover(std::size_t m, const std::vector<std::vector<std::size_t>>& sets) {
  Cover c;
  c.size = m;
  for (const auto& J : sets) c.components[J] = 1;
  return c;
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

const GradedPiece* piece(const HomologyAtInfinity& h, int i, long twist) {
  for (const auto& p : h.hm[i])
    if (p.twist == twist) return &p;
  return nullptr;
}

long tate_mult(const MotiveExpression& m, long q, long p) {
  for (const auto& a : m.atoms())
    if (a.kind == Atom::Kind::Tate && a.q == q && a.p == p) return a.mult;
  return 0;
}

HomologyGroup free(std::size_t r) { return {r, {}}; }

}  // namespace

TEST_CASE("two sets meeting once") {
  auto cx = ordered_cech(simple_cover(2, {{0}, {1}, {0, 1}}));
  CHECK(cx.ranks == std::vector<std::size_t>{2, 1});
  REQUIRE(cx.differentials.size() == 1);
  const auto& d = cx.differentials[0];
  REQUIRE(d.rows() == 2);
  REQUIRE(d.cols() == 1);
  // faces of {0,1}: dropping index 0 gives {1} with +, dropping index 1 gives {0} with -
  CHECK(d(0, 0) == -1);
  CHECK(d(1, 0) == 1);
  auto h = cx.homology();
  REQUIRE(h.size() == 2);
  CHECK(h[0] == free(1));
  CHECK(h[1].is_zero());
}

TEST_CASE("single set") {
  auto cx = ordered_cech(simple_cover(1, {{0}}));
  CHECK(cx.ranks == std::vector<std::size_t>{1});
  CHECK(cx.differentials.empty());
  CHECK(cx.homology() == std::vector<HomologyGroup>{free(1)});
}

TEST_CASE("triangle") {
  auto cx = ordered_cech(simple_cover(3, {{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}}));
  CHECK(cx.ranks == std::vector<std::size_t>{3, 3});
  auto h = cx.homology();
  CHECK(h[0] == free(1));
  CHECK(h[1] == free(1));
  CHECK(cx.euler_characteristic() == 0);
}

TEST_CASE("full simplex is contractible") {
  std::vector<std::vector<std::size_t>> sets;
  for (std::size_t mask = 1; mask < 16; ++mask) {
    std::vector<std::size_t> J;
    for (std::size_t i = 0; i < 4; ++i)
      if (mask & (1u << i)) J.push_back(i);
    sets.push_back(J);
  }
  auto cx = ordered_cech(simple_cover(4, sets));
  CHECK(cx.squares_to_zero());
  auto h = cx.homology();
  CHECK(h[0] == free(1));
  for (std::size_t n = 1; n < h.size(); ++n) CHECK(h[n].is_zero());
}

TEST_CASE("inconsistent incidence") {
  // triple nonempty but a pair empty
  auto c = simple_cover(3, {{0}, {1}, {2}, {0, 1}, {1, 2}, {0, 1, 2}});
  CHECK_THROWS_AS(ordered_cech(c), Error);
  try {
    ordered_cech(c);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InconsistentIncidence);
  }
  Cover bad_faces = simple_cover(2, {{0}, {1}, {0, 1}});
  bad_faces.faces[{0, 1}] = {{0}, {3}};
  CHECK_THROWS_AS(ordered_cech(bad_faces), Error);
}

TEST_CASE("random atom covers") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 1000; ++t) {
    auto ac = gen::random_atom_cover(rng);
    if (ac.cover.components.empty()) continue;
    auto cx = ordered_cech(ac.cover);
    REQUIRE(cx.squares_to_zero());

    long euler = 0;
    for (const auto& [J, n] : ac.cover.components) euler += (J.size() % 2 == 1 ? 1 : -1) * n;
    CHECK(cx.euler_characteristic() == euler);

    // disjoint union of points
    auto h = cx.homology();
    CHECK(h[0] == free(ac.atoms_used));
    for (std::size_t n = 1; n < h.size(); ++n) CHECK(h[n].is_zero());

    // no torsion anywhere: nonzero invariant factors are one (small cases only)
    for (const auto& d : cx.differentials) {
      if (d.rows() > 7 || d.cols() > 7) continue;  // oracle is exponential
      oracle::Grid gr(d.rows(), std::vector<oracle::Int>(d.cols()));
      for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j) gr[i][j] = d(i, j);
      for (const auto& f : oracle::invariant_factors(gr)) CHECK((f == 0 || f == 1));
    }
  }
}

TEST_CASE("rz complex") {
  // terms come highest degree first, ending with the unit in degree 0
  auto at = [](const std::vector<RzTerm>& t, long degree) -> const RzTerm& {
    for (const auto& x : t)
      if (x.degree == degree) return x;
    throw std::runtime_error("no term");
  };
  SUBCASE("one component") {
    auto t = rz_complex(cover_of(dynkin('A', 1)));
    REQUIRE(t.size() == 2);
    CHECK(t.back().degree == 0);
    CHECK(t.back().twist == 0);
    CHECK(t.back().rank == 1);
    CHECK(at(t, 1).twist == 1);
    CHECK(at(t, 1).shift == 2);
    CHECK(at(t, 1).rank == 1);
    CHECK(at(t, 1).differential == IntMatrix::from_rows({{1}}));
  }
  SUBCASE("two components, one point") {
    auto t = rz_complex(cover_of(dynkin('A', 2)));
    REQUIRE(t.size() == 3);
    CHECK(at(t, 1).rank == 2);
    CHECK(at(t, 2).twist == 2);
    CHECK(at(t, 2).shift == 4);
    CHECK(at(t, 2).rank == 1);
    CHECK(at(t, 1).differential * at(t, 2).differential == IntMatrix(1, 1));
  }
  SUBCASE("A3") {
    auto t = rz_complex(cover_of(dynkin('A', 3)));
    REQUIRE(t.size() == 3);
    CHECK(at(t, 1).rank == 3);
    const auto& top = at(t, 2);
    CHECK(top.rank == 2);
    CHECK(top.differential.rows() == 3);
    CHECK(top.differential.cols() == 2);
    for (std::size_t j = 0; j < 2; ++j) {
      Integer s = 0;
      for (std::size_t i = 0; i < 3; ++i) {
        CHECK(abs(top.differential(i, j)) <= 1);
        s += top.differential(i, j);
      }
      CHECK(s == 0);
    }
    CHECK(at(t, 1).differential * top.differential == IntMatrix(1, 2));
  }
}

TEST_CASE("homology at infinity examples") {
  SUBCASE("ramanujam") {
    auto h = homology_at_infinity(ramanujam(), Mode::Oriented);
    REQUIRE(h.hm[0].size() == 1);
    CHECK(h.hm[0][0].twist == 0);
    CHECK(h.hm[0][0].group == free(1));
    CHECK(h.hm[1].empty());
    CHECK(h.hm[2].empty());
    REQUIRE(h.hm[3].size() == 1);
    CHECK(h.hm[3][0].twist == 2);
    CHECK(h.hm[3][0].group == free(1));
  }
  SUBCASE("A1") {
    auto h = homology_at_infinity(dynkin('A', 1), Mode::Oriented);
    CHECK(piece(h, 0, 0)->group == free(1));
    REQUIRE(piece(h, 1, 1));
    CHECK(piece(h, 1, 1)->group == HomologyGroup{0, {2}});
    CHECK(h.hm[2].empty());
    CHECK(piece(h, 3, 2)->group == free(1));
    auto hq = homology_at_infinity(dynkin('A', 1), Mode::Quadratic);
    CHECK(piece(hq, 1, 1)->group == HomologyGroup{0, {2}});
  }
  SUBCASE("single 0-vertex") {
    PlumbingGraph g;
    g.vertices.push_back({"z", 0});
    auto h = homology_at_infinity(g, Mode::Oriented);
    REQUIRE(piece(h, 1, 1));
    CHECK(piece(h, 1, 1)->group == free(1));
    REQUIRE(piece(h, 2, 1));
    CHECK(piece(h, 2, 1)->group == free(1));
  }
  SUBCASE("non-rational point") {
    auto g = parse_graph("vertex a -2; vertex b -2; edge a b point deg=2 f=1,0,1;");
    CHECK_THROWS_AS(homology_at_infinity(g, Mode::Oriented), Error);
  }
}

TEST_CASE("trees with rational points") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    auto g = gen::random_tree(rng);
    auto h = homology_at_infinity(g, Mode::Oriented);
    REQUIRE(piece(h, 0, 0));
    CHECK(piece(h, 0, 0)->group == free(1));
    REQUIRE(piece(h, 3, 2));
    CHECK(piece(h, 3, 2)->group == free(1));
    CHECK(piece(h, 1, 0) == nullptr);
    CHECK(piece(h, 2, 2) == nullptr);
  }
}

TEST_CASE("agrees with the link decomposition") {
  for (const auto& g : catalog()) {
    CAPTURE(serialize_graph(g));
    auto h = homology_at_infinity(g, Mode::Oriented);
    auto link = link_decomposition(g, Mode::Oriented);

    Integer cone_order = 1;
    long zeros = 0;
    for (const auto& a : link.mu_part.atoms()) {
      if (a.kind == Atom::Kind::Cone)
        for (long k = 0; k < a.mult; ++k) cone_order *= a.n;
      if (a.kind == Atom::Kind::Tate && a.q == 1 && a.p == 2) zeros += a.mult;
    }
    Integer torsion_order = 1;
    std::size_t free_twist1 = 0;
    if (auto p = piece(h, 1, 1)) {
      for (const auto& t : p->group.torsion) torsion_order *= t;
      free_twist1 = p->group.free_rank;
    }
    CHECK(torsion_order == cone_order);
    CHECK(static_cast<long>(free_twist1) == zeros);
    auto k = piece(h, 2, 1);
    CHECK(static_cast<long>(k ? k->group.free_rank : 0) == zeros);
    CHECK(tate_mult(link.motive, 0, 0) == 1);
    CHECK(tate_mult(link.motive, 2, 3) == 1);
  }
}
