#include "doctest.h"
#include "mplumb/smithlift.hpp"
#include "oracle.hpp"

#include <random>

using namespace mplumb;

namespace {

IntMatrix from_grid(const oracle::Grid& g) { return IntMatrix::from_rows(g); }

}  // namespace

TEST_CASE("snf of a small example") {
  auto a = IntMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  auto r = snf_int(a);
  CHECK(verify(a, r));
  CHECK(r.D.diagonal() == std::vector<Integer>{2, 6, 12});
}

TEST_CASE("snf matches determinantal divisors on random matrices") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(1, 4);
  for (int n = 0; n < 1000; ++n) {
    auto g = oracle::random_grid(rng, dim(rng), dim(rng), -6, 6);
    auto a = from_grid(g);
    auto r = snf_int(a);
    REQUIRE(verify(a, r));
    CHECK(has_divisibility_chain(r.D));
    CHECK(r.D.diagonal() == oracle::invariant_factors(g));
  }
}

TEST_CASE("kernel and cokernel") {
  auto a = IntMatrix::from_rows({{1, -1}, {-1, 0}, {0, 1}});
  auto kc = kernel_cokernel(a);
  CHECK(kc.kernel_rank == 0);
  CHECK(kc.cokernel_free_rank == 1);
  CHECK(kc.torsion.empty());
  auto b = IntMatrix::from_rows({{2, 0}, {0, 0}});
  kc = kernel_cokernel(b);
  CHECK(kc.kernel_rank == 1);
  CHECK(kc.torsion == std::vector<Integer>{2});
}

TEST_CASE("exact quotient and bezout") {
  auto q = exact_quotient(GwElement(2, 2), GwElement::h());
  REQUIRE(q);
  CHECK(*q * GwElement::h() == GwElement(2, 2));
  CHECK_FALSE(exact_quotient(GwElement::one(), GwElement::h()));
  GwElement a(Integer(2), Integer(1)), b(Integer(1), Integer(1));
  auto bz = bezout_unit(a, b);
  if (bz) CHECK(bz->first * a + bz->second * b == GwElement::one());
}

TEST_CASE("z_eps diagonalization of -2h on A1") {
  GwMatrix a(1, 1);
  a(0, 0) = -GwElement(2, 0) * GwElement::h();
  auto res = diagonalize_zeps(a);
  REQUIRE(std::holds_alternative<GwSnf>(res));
  auto& r = std::get<GwSnf>(res);
  CHECK(verify(a, r));
  CHECK(r.D(0, 0) == GwElement(2, 0) * GwElement::h());
}

TEST_CASE("z_eps diagonalization verifies or reports an obstruction") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> dim(1, 4);
  std::uniform_int_distribution<long> v(-4, 4);
  int diagonalized = 0;
  for (int n = 0; n < 1000; ++n) {
    std::size_t r = dim(rng), c = dim(rng);
    GwMatrix a(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) a(i, j) = GwElement(Integer(v(rng)), Integer(v(rng)));
    auto res = diagonalize_zeps(a);
    if (auto* s = std::get_if<GwSnf>(&res)) {
      ++diagonalized;
      REQUIRE(verify(a, *s));
      // Projections of D have the invariant factors of the projections of A
      // up to the lost divisibility ordering: compare products of nonzero parts.
      auto dp = oracle::invariant_factors([&] {
        oracle::Grid g(r, std::vector<Integer>(c));
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < c; ++j) g[i][j] = s->D(i, j).plus();
        return g;
      }());
      auto ap = oracle::invariant_factors([&] {
        oracle::Grid g(r, std::vector<Integer>(c));
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < c; ++j) g[i][j] = a(i, j).plus();
        return g;
      }());
      CHECK(dp == ap);
    } else {
      auto& ob = std::get<Obstruction>(res);
      CHECK(ob.S * ob.partial * ob.T == a);
    }
  }
  MESSAGE("diagonalized " << diagonalized << " of 1000");
  CHECK(diagonalized > 0);
}

TEST_CASE("spec snf examples") {
  auto ram = IntMatrix::from_rows({{4, 5, 2}, {5, 3, 0}, {2, 0, -1}});
  auto r = snf_int(ram);
  CHECK(verify(ram, r));
  CHECK(r.D == IntMatrix::identity(3));
  CHECK(snf_int(IntMatrix::identity(4)).D == IntMatrix::identity(4));
  auto a2 = IntMatrix::from_rows({{-2, 1}, {1, -2}});
  CHECK(snf_int(a2).D.diagonal() == std::vector<Integer>{1, 3});
  auto kc = kernel_cokernel(IntMatrix(1, 1));
  CHECK(kc.kernel_rank == 1);
  CHECK(kc.cokernel_free_rank == 1);
  kc = kernel_cokernel(IntMatrix::from_rows({{2}}));
  CHECK(kc.kernel_rank == 0);
  CHECK(kc.torsion == std::vector<Integer>{2});
}

TEST_CASE("snf verifies on random 4x4 matrices and ignores unimodular scrambling") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> step(0, 3);
  std::uniform_int_distribution<long> mult(-3, 3);
  for (int n = 0; n < 1000; ++n) {
    auto a = from_grid(oracle::random_grid(rng, 4, 4, -9, 9));
    auto r = snf_int(a);
    REQUIRE(verify(a, r));
    REQUIRE(has_divisibility_chain(r.D));
    // U A V with U, V products of elementary moves
    IntMatrix u = IntMatrix::identity(4), v = IntMatrix::identity(4);
    for (int k = 0; k < 6; ++k) {
      std::size_t i = step(rng), j = step(rng);
      if (i == j) continue;
      IntMatrix e = IntMatrix::identity(4);
      e(i, j) = mult(rng);
      if (k % 2) u = e * u; else v = v * e;
    }
    CHECK(snf_int(u * a * v).D == r.D);
  }
}

TEST_CASE("z_eps: zero, units, and realization compatibility") {
  GwMatrix z(2, 3);
  auto rz = std::get<GwSnf>(diagonalize_zeps(z));
  CHECK(rz.D.is_zero());
  CHECK(rz.S == GwMatrix::identity(2));
  CHECK(rz.T == GwMatrix::identity(3));

  GwMatrix u(3, 3);
  u(0, 0) = GwElement::one();
  u(1, 1) = -GwElement::eps();
  u(2, 2) = GwElement(-1);
  auto ru = std::get<GwSnf>(diagonalize_zeps(u));
  CHECK(verify(u, ru));
  for (std::size_t i = 0; i < 3; ++i) CHECK(ru.D(i, i) == GwElement::one());

  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> dim(1, 4);
  std::uniform_int_distribution<long> v(-3, 3);
  for (int n = 0; n < 1000; ++n) {
    std::size_t r = dim(rng), c = dim(rng);
    GwMatrix a(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) a(i, j) = GwElement(Integer(v(rng)), Integer(v(rng)));
    auto res = diagonalize_zeps(a);
    if (!std::holds_alternative<GwSnf>(res)) continue;
    const auto& s = std::get<GwSnf>(res);
    for (auto realize_minus : {false, true}) {
      IntMatrix dd(r, c);
      for (std::size_t i = 0; i < std::min(r, c); ++i) dd(i, i) = realize_minus ? s.D(i, i).minus() : s.D(i, i).plus();
      auto proj = realize_minus ? project_minus(a) : project_plus(a);
      CHECK(snf_int(dd).D == snf_int(proj).D);
    }
  }
}
