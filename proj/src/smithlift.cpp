#include "mplumb/smithlift.hpp"

#include <algorithm>
#include <array>
#include <tuple>

namespace mplumb {

namespace {

template <class R>
using Block = std::array<std::array<R, 2>, 2>;

// Working matrix W with transforms kept so that A = S W T at all times.
// Row moves W <- E W update S <- S E^{-1}; column moves W <- W F update
// T <- F^{-1} T.
template <class R>
class Reducer {
 public:
  explicit Reducer(const Matrix<R>& a)
      : w_(a), s_(Matrix<R>::identity(a.rows())), t_(Matrix<R>::identity(a.cols())) {}

  Matrix<R>& w() { return w_; }
  const Matrix<R>& w() const { return w_; }

  SnfResult<R> result() const { return {s_, w_, t_}; }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < w_.cols(); ++c) std::swap(w_(i, c), w_(j, c));
    for (std::size_t r = 0; r < s_.rows(); ++r) std::swap(s_(r, i), s_(r, j));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < w_.rows(); ++r) std::swap(w_(r, i), w_(r, j));
    for (std::size_t c = 0; c < t_.cols(); ++c) std::swap(t_(i, c), t_(j, c));
  }

  // row_i += q * row_k
  void add_row(std::size_t i, std::size_t k, const R& q) {
    for (std::size_t c = 0; c < w_.cols(); ++c) w_(i, c) += q * w_(k, c);
    for (std::size_t r = 0; r < s_.rows(); ++r) s_(r, k) -= q * s_(r, i);
  }

  // col_j += q * col_k
  void add_col(std::size_t j, std::size_t k, const R& q) {
    for (std::size_t r = 0; r < w_.rows(); ++r) w_(r, j) += q * w_(r, k);
    for (std::size_t c = 0; c < t_.cols(); ++c) t_(k, c) -= q * t_(j, c);
  }

  // u must be its own inverse (true for every unit of Z and Z_eps).
  void scale_row(std::size_t i, const R& u) {
    for (std::size_t c = 0; c < w_.cols(); ++c) w_(i, c) = u * w_(i, c);
    for (std::size_t r = 0; r < s_.rows(); ++r) s_(r, i) = s_(r, i) * u;
  }

  // [row_i; row_k] <- u [row_i; row_k]
  void transform_rows(std::size_t i, std::size_t k, const Block<R>& u, const Block<R>& uinv) {
    for (std::size_t c = 0; c < w_.cols(); ++c) {
      R a = w_(i, c), b = w_(k, c);
      w_(i, c) = u[0][0] * a + u[0][1] * b;
      w_(k, c) = u[1][0] * a + u[1][1] * b;
    }
    for (std::size_t r = 0; r < s_.rows(); ++r) {
      R a = s_(r, i), b = s_(r, k);
      s_(r, i) = a * uinv[0][0] + b * uinv[1][0];
      s_(r, k) = a * uinv[0][1] + b * uinv[1][1];
    }
  }

  // [col_j col_k] <- [col_j col_k] v
  void transform_cols(std::size_t j, std::size_t k, const Block<R>& v, const Block<R>& vinv) {
    for (std::size_t r = 0; r < w_.rows(); ++r) {
      R a = w_(r, j), b = w_(r, k);
      w_(r, j) = a * v[0][0] + b * v[1][0];
      w_(r, k) = a * v[0][1] + b * v[1][1];
    }
    for (std::size_t c = 0; c < t_.cols(); ++c) {
      R a = t_(j, c), b = t_(k, c);
      t_(j, c) = vinv[0][0] * a + vinv[0][1] * b;
      t_(k, c) = vinv[1][0] * a + vinv[1][1] * b;
    }
  }

 private:
  Matrix<R> w_;
  Matrix<R> s_;
  Matrix<R> t_;
};

template <class R>
Block<R> transposed(const Block<R>& b) {
  return {{{b[0][0], b[1][0]}, {b[0][1], b[1][1]}}};
}

// ---------------------------------------------------------------------------
// Integer Smith form

// Position of the minimal nonzero |entry| in the block [k.., k..], row-major ties.
std::optional<std::pair<std::size_t, std::size_t>> min_abs_entry(const IntMatrix& w, std::size_t k) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Integer best_abs;
  for (std::size_t i = k; i < w.rows(); ++i)
    for (std::size_t j = k; j < w.cols(); ++j) {
      if (w(i, j) == 0) continue;
      Integer a = abs(w(i, j));
      if (!best || a < best_abs) {
        best = {i, j};
        best_abs = a;
      }
    }
  return best;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

IntSnf snf_int(const IntMatrix& a) {
  Reducer<Integer> red(a);
  auto& w = red.w();
  const std::size_t m = std::min(a.rows(), a.cols());

  for (std::size_t k = 0; k < m; ++k) {
    auto pos = min_abs_entry(w, k);
    if (!pos) break;
    red.swap_rows(k, pos->first);
    red.swap_cols(k, pos->second);

    while (true) {
      bool clean = true;
      for (std::size_t i = k + 1; i < w.rows(); ++i) {
        if (w(i, k) == 0) continue;
        red.add_row(i, k, -floor_div(w(i, k), w(k, k)));
        if (w(i, k) != 0) clean = false;
      }
      for (std::size_t j = k + 1; j < w.cols(); ++j) {
        if (w(k, j) == 0) continue;
        red.add_col(j, k, -floor_div(w(k, j), w(k, k)));
        if (w(k, j) != 0) clean = false;
      }
      if (!clean) {
        pos = min_abs_entry(w, k);
        if (!pos) break;
        red.swap_rows(k, pos->first);
        red.swap_cols(k, pos->second);
        continue;
      }
      // Divisibility chain: pull a non-multiple of the pivot into row k.
      bool divides_all = true;
      for (std::size_t i = k + 1; i < w.rows() && divides_all; ++i)
        for (std::size_t j = k + 1; j < w.cols(); ++j)
          if (mpz_divisible_p(w(i, j).get_mpz_t(), w(k, k).get_mpz_t()) == 0) {
            red.add_row(k, i, Integer(1));
            divides_all = false;
            break;
          }
      if (divides_all) break;
    }
    if (w(k, k) < 0) red.scale_row(k, Integer(-1));
  }
  return red.result();
}

// ---------------------------------------------------------------------------
// Z_eps helpers

namespace {

struct SidePair {
  Integer plus;
  Integer minus;
};

bool same_parity(const Integer& a, const Integer& b) {
  Integer d = a - b;
  return mpz_even_p(d.get_mpz_t()) != 0;
}

GwElement lift_checked(const Integer& n, const Integer& m) {
  auto l = lift(n, m);
  if (!l) throw std::logic_error("internal: coefficient pair does not lift to Z_eps");
  return *l;
}

using IntBlock = Block<Integer>;

IntBlock int_inverse(const IntBlock& u) {
  const Integer det = u[0][0] * u[1][1] - u[0][1] * u[1][0];  // +-1
  return {{{det * u[1][1], -det * u[0][1]}, {-det * u[1][0], det * u[0][0]}}};
}

bool parity_match(const IntBlock& a, const IntBlock& b) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (!same_parity(a[i][j], b[i][j])) return false;
  return true;
}

Block<GwElement> lift_block(const IntBlock& p, const IntBlock& m) {
  Block<GwElement> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = lift_checked(p[i][j], m[i][j]);
  return out;
}

// All U in GL2(Z) with U (p, a)^T = (gcd, 0)^T, up to the parity classes that
// matter for lifting.
std::vector<IntBlock> gcd_blocks(const Integer& p, const Integer& a) {
  Integer g, x, y;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), p.get_mpz_t(), a.get_mpz_t());
  const Integer pa = p / g;
  const Integer aa = a / g;
  std::vector<IntBlock> out;
  for (int t = 0; t < 2; ++t)
    for (int sgn : {1, -1})
      out.push_back({{{x - t * aa, y + t * pa}, {-aa * sgn, pa * sgn}}});
  return out;
}

struct LiftedBlock {
  Block<GwElement> u;
  Block<GwElement> uinv;
};

// Invertible U over Z_eps with U (p, a)^T = (g, 0)^T, assembled from the two
// projected integer gcd steps when their coefficients lift.
std::optional<LiftedBlock> bezout_block(const GwElement& p, const GwElement& a) {
  const Integer pp = p.plus(), pm = p.minus(), ap = a.plus(), am = a.minus();
  const bool plus_free = pp == 0 && ap == 0;
  const bool minus_free = pm == 0 && am == 0;
  if (plus_free && minus_free) return std::nullopt;
  if (plus_free || minus_free) {
    // The degenerate side accepts any GL2(Z) block, in particular the other one.
    const auto blocks = plus_free ? gcd_blocks(pm, am) : gcd_blocks(pp, ap);
    const IntBlock& u = blocks.front();
    const IntBlock ui = int_inverse(u);
    return LiftedBlock{lift_block(u, u), lift_block(ui, ui)};
  }
  for (const auto& up : gcd_blocks(pp, ap))
    for (const auto& um : gcd_blocks(pm, am))
      if (parity_match(up, um))
        return LiftedBlock{lift_block(up, um), lift_block(int_inverse(up), int_inverse(um))};
  return std::nullopt;
}

// q with N(a - q p) < N(p), if any liftable quotient achieves it.
std::optional<GwElement> euclid_quotient(const GwElement& a, const GwElement& p) {
  auto candidates = [](const Integer& num, const Integer& den) {
    if (den == 0) return std::vector<Integer>{0, 1};
    Integer q = floor_div(num, den);
    return std::vector<Integer>{q, q + 1};
  };
  const auto qp = candidates(a.plus(), p.plus());
  const auto qm = candidates(a.minus(), p.minus());
  std::optional<GwElement> best;
  Integer best_norm = gw_norm(p);
  for (const auto& x : qp)
    for (const auto& y : qm) {
      if (!same_parity(x, y)) continue;
      GwElement q = lift_checked(x, y);
      Integer n = gw_norm(a - q * p);
      if (n < best_norm) {
        best_norm = n;
        best = q;
      }
    }
  return best;
}

}  // namespace

std::optional<GwElement> exact_quotient(const GwElement& a, const GwElement& d) {
  auto side = [](const Integer& num, const Integer& den) -> std::optional<std::optional<Integer>> {
    // outer nullopt: not divisible; inner nullopt: any quotient works
    if (den == 0) {
      if (num != 0) return std::nullopt;
      return std::optional<Integer>{};
    }
    if (mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()) == 0) return std::nullopt;
    return std::optional<Integer>{num / den};
  };
  auto qp = side(a.plus(), d.plus());
  auto qm = side(a.minus(), d.minus());
  if (!qp || !qm) return std::nullopt;
  if (!*qp && !*qm) return GwElement();
  if (!*qp) return lift_checked(mpz_odd_p(qm->value().get_mpz_t()) ? 1 : 0, qm->value());
  if (!*qm) return lift_checked(qp->value(), mpz_odd_p(qp->value().get_mpz_t()) ? 1 : 0);
  return lift(qp->value(), qm->value());
}

std::optional<std::pair<GwElement, GwElement>> bezout_unit(const GwElement& a, const GwElement& b) {
  auto side = [](const Integer& u, const Integer& v) -> std::optional<std::pair<Integer, Integer>> {
    Integer g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
    if (g != 1) return std::nullopt;
    return std::pair{x, y};
  };
  auto sp = side(a.plus(), b.plus());
  auto sm = side(a.minus(), b.minus());
  if (!sp || !sm) return std::nullopt;
  // Solutions move by (b, -a) on each side; one step flips parities as needed.
  for (int tp = 0; tp < 2; ++tp)
    for (int tm = 0; tm < 2; ++tm) {
      Integer xp = sp->first + tp * b.plus(), yp = sp->second - tp * a.plus();
      Integer xm = sm->first + tm * b.minus(), ym = sm->second - tm * a.minus();
      if (same_parity(xp, xm) && same_parity(yp, ym))
        return std::pair{lift_checked(xp, xm), lift_checked(yp, ym)};
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Z_eps diagonalization

namespace {

constexpr std::size_t kIterationCap = 100000;

// Units first; then entries with odd projections, which are units 2-adically
// and always admit a liftable Bezout block against anything; then the rest.
int pivot_class(const GwElement& a) {
  if (is_unit(a)) return 0;
  return mpz_odd_p(a.plus().get_mpz_t()) ? 1 : 2;
}

std::optional<std::pair<std::size_t, std::size_t>> choose_pivot(const GwMatrix& w, std::size_t k) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  std::pair<int, Integer> best_key;
  for (std::size_t i = k; i < w.rows(); ++i)
    for (std::size_t j = k; j < w.cols(); ++j) {
      if (w(i, j).is_zero()) continue;
      std::pair<int, Integer> key{pivot_class(w(i, j)), gw_norm(w(i, j))};
      if (key.first == 0) return std::pair{i, j};
      if (!best || key < best_key) {
        best = {i, j};
        best_key = key;
      }
    }
  return best;
}

std::optional<GwElement> common_divisor(const GwElement& x, const GwElement& y) {
  Integer gp, gm;
  mpz_gcd(gp.get_mpz_t(), x.plus().get_mpz_t(), y.plus().get_mpz_t());
  mpz_gcd(gm.get_mpz_t(), x.minus().get_mpz_t(), y.minus().get_mpz_t());
  return lift(gp, gm);
}

// 0 units, 1 other nonzero, 2 zero; then by norm and coordinates.
auto diagonal_key(const GwElement& d) {
  const int cls = d.is_zero() ? 2 : (is_unit(d) ? 0 : 1);
  return std::tuple{cls, gw_norm(d), d.x(), d.y()};
}

Obstruction make_obstruction(const GwMatrix& a, const Reducer<GwElement>& red, std::size_t k,
                             const GwElement& pivot, const GwElement& blocker, std::string reason) {
  Obstruction ob;
  auto res = red.result();
  ob.partial = res.D;
  ob.S = res.S;
  ob.T = res.T;
  ob.step = k;
  ob.pivot = pivot;
  ob.blocker = blocker;
  ob.d_plus = snf_int(project_plus(a)).D.diagonal();
  ob.d_minus = snf_int(project_minus(a)).D.diagonal();
  ob.reason = std::move(reason);
  return ob;
}

}  // namespace

ZepsDiagonalization diagonalize_zeps(const GwMatrix& a) {
  Reducer<GwElement> red(a);
  auto& w = red.w();
  const std::size_t m = std::min(a.rows(), a.cols());
  std::size_t iterations = 0;

  for (std::size_t k = 0; k < m; ++k) {
    auto pos = choose_pivot(w, k);
    if (!pos) break;
    red.swap_rows(k, pos->first);
    red.swap_cols(k, pos->second);

    while (true) {
      if (++iterations > kIterationCap)
        return make_obstruction(a, red, k, w(k, k), GwElement(), "iteration cap reached");
      if (pivot_class(w(k, k)) > 0) {
        auto better = choose_pivot(w, k);
        if (pivot_class(w(better->first, better->second)) < pivot_class(w(k, k))) {
          red.swap_rows(k, better->first);
          red.swap_cols(k, better->second);
        }
      }
      const GwElement p = w(k, k);

      std::size_t i = k + 1;
      while (i < w.rows() && w(i, k).is_zero()) ++i;
      if (i < w.rows()) {
        const GwElement e = w(i, k);
        if (auto q = exact_quotient(e, p)) {
          red.add_row(i, k, -*q);
        } else if (auto b = bezout_block(p, e)) {
          red.transform_rows(k, i, b->u, b->uinv);
        } else if (auto q2 = euclid_quotient(e, p)) {
          red.add_row(i, k, -*q2);
          red.swap_rows(i, k);
        } else {
          return make_obstruction(a, red, k, p, e, "no liftable move reduces the column entry");
        }
        continue;
      }

      std::size_t j = k + 1;
      while (j < w.cols() && w(k, j).is_zero()) ++j;
      if (j < w.cols()) {
        const GwElement e = w(k, j);
        if (auto q = exact_quotient(e, p)) {
          red.add_col(j, k, -*q);
        } else if (auto b = bezout_block(p, e)) {
          red.transform_cols(k, j, transposed(b->u), transposed(b->uinv));
        } else if (auto q2 = euclid_quotient(e, p)) {
          red.add_col(j, k, -*q2);
          red.swap_cols(j, k);
        } else {
          return make_obstruction(a, red, k, p, e, "no liftable move reduces the row entry");
        }
        continue;
      }
      break;
    }
  }

  // diag(g x, g y) ~ diag(g, g x y) when (x, y) is the unit ideal. g comes
  // from the side gcds; this is the only freedom left after elimination and
  // pushing it to a fixed point makes the result independent of vertex order.
  bool merged = true;
  std::size_t merges = 0;
  while (merged && merges++ < kIterationCap) {
    merged = false;
    for (std::size_t i = 0; i < m && !merged; ++i)
      for (std::size_t j = 0; j < m && !merged; ++j) {
        if (i == j) continue;
        const GwElement x = w(i, i), y = w(j, j);
        if (x.is_zero() || y.is_zero() || is_unit(x) || is_unit(y)) continue;
        auto g = common_divisor(x, y);
        if (!g) continue;
        auto xq = exact_quotient(x, *g);
        auto yq = exact_quotient(y, *g);
        if (!xq || !yq || is_unit(*xq) || is_unit(*yq)) continue;
        auto bz = bezout_unit(*xq, *yq);
        if (!bz) continue;
        const auto& [s, t] = *bz;
        const GwElement one = GwElement::one();
        const Block<GwElement> left{{{s, t}, {-*yq, *xq}}};
        const Block<GwElement> left_inv{{{*xq, -t}, {*yq, s}}};
        const Block<GwElement> right{{{one, -t * *yq}, {one, s * *xq}}};
        const Block<GwElement> right_inv{{{s * *xq, t * *yq}, {-one, one}}};
        red.transform_rows(i, j, left, left_inv);
        red.transform_cols(i, j, right, right_inv);
        merged = true;
      }
  }

  for (std::size_t i = 0; i < m; ++i)
    if (!w(i, i).is_zero()) red.scale_row(i, normalizing_unit(w(i, i)));

  for (std::size_t i = 0; i < m; ++i) {
    std::size_t best = i;
    for (std::size_t j = i + 1; j < m; ++j)
      if (diagonal_key(w(j, j)) < diagonal_key(w(best, best))) best = j;
    red.swap_rows(i, best);
    red.swap_cols(i, best);
  }
  return red.result();
}

bool verify(const IntMatrix& a, const IntSnf& r) {
  if (r.D.rows() != a.rows() || r.D.cols() != a.cols()) return false;
  if (!r.D.is_diagonal()) return false;
  if (abs(determinant(r.S)) != 1 || abs(determinant(r.T)) != 1) return false;
  return r.S * r.D * r.T == a;
}

bool verify(const GwMatrix& a, const GwSnf& r) {
  if (r.D.rows() != a.rows() || r.D.cols() != a.cols()) return false;
  if (!r.D.is_diagonal()) return false;
  if (!is_unit(determinant(r.S)) || !is_unit(determinant(r.T))) return false;
  return r.S * r.D * r.T == a;
}

bool has_divisibility_chain(const IntMatrix& d) {
  const auto diag = d.diagonal();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i] < 0) return false;
    if (i + 1 < diag.size()) {
      if (diag[i] == 0) {
        if (diag[i + 1] != 0) return false;
      } else if (mpz_divisible_p(diag[i + 1].get_mpz_t(), diag[i].get_mpz_t()) == 0) {
        return false;
      }
    }
  }
  return true;
}

KernelCokernel kernel_cokernel(const IntMatrix& a) {
  const auto snf = snf_int(a);
  std::size_t r = 0;
  KernelCokernel out;
  for (const auto& d : snf.D.diagonal()) {
    if (d == 0) continue;
    ++r;
    if (d > 1) out.torsion.push_back(d);
  }
  out.kernel_rank = a.cols() - r;
  out.cokernel_free_rank = a.rows() - r;
  return out;
}

}  // namespace mplumb
