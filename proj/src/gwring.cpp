#include "mplumb/gwring.hpp"

#include <sstream>

#include "mplumb/error.hpp"

namespace mplumb {

GwElement& GwElement::operator+=(const GwElement& o) {
  x_ += o.x_;
  y_ += o.y_;
  return *this;
}

GwElement& GwElement::operator-=(const GwElement& o) {
  x_ -= o.x_;
  y_ -= o.y_;
  return *this;
}

GwElement& GwElement::operator*=(const GwElement& o) {
  // eps^2 = 1
  Integer nx = x_ * o.x_ + y_ * o.y_;
  Integer ny = x_ * o.y_ + y_ * o.x_;
  x_ = std::move(nx);
  y_ = std::move(ny);
  return *this;
}

std::string GwElement::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const GwElement& a) {
  if (a.y() == 0) return os << a.x().get_str();
  if (a.x() == a.y()) {
    if (a.x() == 1) return os << "h";
    if (a.x() == -1) return os << "-h";
    return os << a.x().get_str() << "h";
  }
  if (a.x() != 0) os << a.x().get_str() << (a.y() > 0 ? "+" : "-");
  else if (a.y() < 0) os << "-";
  Integer ay = abs(a.y());
  if (ay != 1) os << ay.get_str();
  return os << "e";
}

GwElement add(const GwElement& a, const GwElement& b) { return a + b; }
GwElement mul(const GwElement& a, const GwElement& b) { return a * b; }
GwElement neg(const GwElement& a) { return -a; }

bool is_unit(const GwElement& a) {
  auto [n, m] = project(a);
  return abs(n) == 1 && abs(m) == 1;
}

std::pair<Integer, Integer> project(const GwElement& a) { return {a.plus(), a.minus()}; }

std::optional<GwElement> lift(const Integer& n, const Integer& m) {
  Integer s = n + m;
  if (mpz_even_p(s.get_mpz_t()) == 0) return std::nullopt;
  Integer x = s / 2;
  Integer y = (n - m) / 2;
  return GwElement(std::move(x), std::move(y));
}

Integer gw_norm(const GwElement& a) { return abs(a.plus()) + abs(a.minus()); }

GwElement normalizing_unit(const GwElement& a) {
  const int sp = a.plus() < 0 ? -1 : 1;
  const int sm = a.minus() < 0 ? -1 : 1;
  return *lift(sp, sm);
}

GwElement normalize_unit(const GwElement& a) { return normalizing_unit(a) * a; }

bool associated(const GwElement& a, const GwElement& b) {
  return normalize_unit(a) == normalize_unit(b);
}

std::string FieldTag::str() const {
  switch (kind) {
    case Kind::Rational: return "rational";
    case Kind::FiniteField:
      return "finite " + std::to_string(p) + (e == 1 ? "" : " " + std::to_string(e));
    case Kind::RealClosed: return "real";
    case Kind::ComplexClosed: return "complex";
    case Kind::Generic: return "generic";
  }
  return "generic";
}

// ---------------------------------------------------------------------------

namespace {

bool is_prime_long(long p) {
  if (p < 2) return false;
  Integer z(p);
  return mpz_probab_prime_p(z.get_mpz_t(), 30) != 0;
}

// Exact arithmetic in Q or F_p (p prime).  F_p elements are stored as
// integral rationals in [0, p).
class FieldArith {
 public:
  explicit FieldArith(const FieldTag& tag) {
    if (tag.kind == FieldTag::Kind::FiniteField) {
      if (tag.e != 1)
        throw Error(ErrorKind::UnsupportedModel,
                    "finite fields of degree > 1 over the prime field are not supported");
      if (!is_prime_long(tag.p))
        throw Error(ErrorKind::InvalidParameter,
                    "finite field characteristic " + std::to_string(tag.p) + " is not prime");
      p_ = tag.p;
    } else if (tag.kind != FieldTag::Kind::Rational) {
      throw Error(ErrorKind::UnsupportedModel,
                  "trace forms are computed over rational or prime finite fields only, not " +
                      tag.str());
    }
  }

  long characteristic() const { return p_; }

  Rational reduce(const Rational& a) const {
    if (p_ == 0) return a;
    Integer pz(p_);
    Integer den = a.get_den();
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()) == 0)
      throw Error(ErrorKind::ValidationError,
                  "coefficient " + a.get_str() + " has denominator divisible by p");
    Integer r = Integer(a.get_num()) * inv;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), pz.get_mpz_t());
    return Rational(r);
  }

  Rational add(const Rational& a, const Rational& b) const { return reduce(a + b); }
  Rational sub(const Rational& a, const Rational& b) const { return reduce(a - b); }
  Rational mul(const Rational& a, const Rational& b) const { return reduce(a * b); }
  Rational inv(const Rational& a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return reduce(Rational(1) / a);
  }
  Rational div(const Rational& a, const Rational& b) const { return mul(a, inv(b)); }

 private:
  long p_ = 0;
};

using Poly = std::vector<Rational>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly reduce_poly(const FieldArith& k, Poly a) {
  for (auto& c : a) c = k.reduce(c);
  trim(a);
  return a;
}

Poly poly_rem(const FieldArith& k, Poly a, const Poly& b) {
  trim(a);
  const Rational lead_inv = k.inv(b.back());
  while (a.size() >= b.size()) {
    const Rational factor = k.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] = k.sub(a[shift + i], k.mul(factor, b[i]));
    trim(a);
  }
  return a;
}

Poly poly_gcd(const FieldArith& k, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(k, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly derivative(const FieldArith& k, const Poly& a) {
  Poly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(k.mul(Rational(static_cast<long>(i)), a[i]));
  trim(d);
  return d;
}

using SquareMatrix = std::vector<std::vector<Rational>>;

SquareMatrix mat_mul(const FieldArith& k, const SquareMatrix& a, const SquareMatrix& b) {
  const std::size_t n = a.size();
  SquareMatrix c(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] = k.add(c[i][j], k.mul(a[i][l], b[l][j]));
    }
  return c;
}

// Companion matrix of a monic f: column i holds the coordinates of t * t^i.
SquareMatrix companion(const FieldArith& k, const Poly& f) {
  const std::size_t n = f.size() - 1;
  SquareMatrix c(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i + 1 < n; ++i) c[i + 1][i] = Rational(1);
  for (std::size_t r = 0; r < n; ++r) c[r][n - 1] = k.reduce(-f[r]);
  return c;
}

// g(C) by Horner's rule.
SquareMatrix evaluate_at(const FieldArith& k, const Poly& g, const SquareMatrix& c) {
  const std::size_t n = c.size();
  SquareMatrix m(n, std::vector<Rational>(n, Rational(0)));
  for (auto it = g.rbegin(); it != g.rend(); ++it) {
    m = mat_mul(k, m, c);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = k.add(m[i][i], *it);
  }
  return m;
}

Rational trace(const FieldArith& k, const SquareMatrix& m) {
  Rational t(0);
  for (std::size_t i = 0; i < m.size(); ++i) t = k.add(t, m[i][i]);
  return t;
}

// Congruence diagonalization G -> P G P^T.  Pivot: first nonzero diagonal
// entry; with a zero diagonal, row/column j is added to i for the first
// nonzero g_ij.
std::vector<Rational> diagonalize_symmetric(const FieldArith& k, SquareMatrix g) {
  const std::size_t n = g.size();
  std::vector<Rational> diag;
  for (std::size_t s = 0; s < n; ++s) {
    std::size_t piv = n;
    for (std::size_t i = s; i < n; ++i)
      if (g[i][i] != 0) {
        piv = i;
        break;
      }
    if (piv == n) {
      std::size_t bi = n, bj = n;
      for (std::size_t i = s; i < n && bi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (g[i][j] != 0) {
            bi = i;
            bj = j;
            break;
          }
      if (bi == n) throw Error(ErrorKind::NotSeparable, "trace form is degenerate");
      for (std::size_t c = 0; c < n; ++c) g[bi][c] = k.add(g[bi][c], g[bj][c]);
      for (std::size_t r = 0; r < n; ++r) g[r][bi] = k.add(g[r][bi], g[r][bj]);
      if (g[bi][bi] == 0)
        throw Error(ErrorKind::UnsupportedModel,
                    "alternating trace form in characteristic 2 is not diagonalizable");
      piv = bi;
    }
    if (piv != s) {
      std::swap(g[piv], g[s]);
      for (auto& row : g) std::swap(row[piv], row[s]);
    }
    const Rational pivot = g[s][s];
    for (std::size_t j = s + 1; j < n; ++j) {
      if (g[j][s] == 0) continue;
      const Rational f = k.div(g[j][s], pivot);
      for (std::size_t c = s; c < n; ++c) g[j][c] = k.sub(g[j][c], k.mul(f, g[s][c]));
      for (std::size_t r = s; r < n; ++r) g[r][j] = k.sub(g[r][j], k.mul(f, g[r][s]));
    }
    diag.push_back(pivot);
  }
  return diag;
}

bool is_perfect_square(const Integer& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// class(a) == class(b) for nonzero rationals.
bool same_square_class(const Rational& a, const Rational& b) {
  Integer prod = Integer(a.get_num()) * a.get_den() * b.get_num() * b.get_den();
  return is_perfect_square(prod);
}

}  // namespace

int legendre(const Integer& a, long p) {
  Integer pz(p);
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), pz.get_mpz_t());
  return mpz_legendre(r.get_mpz_t(), pz.get_mpz_t());
}

std::optional<Integer> square_class(const Rational& a, std::uint64_t bound) {
  if (a == 0) throw Error(ErrorKind::ValidationError, "square class of zero");
  Integer n = Integer(a.get_num()) * a.get_den();
  const int sign = n < 0 ? -1 : 1;
  n = abs(n);
  Integer kernel = 1;
  Integer d = 2;
  const Integer limit(static_cast<unsigned long>(bound));
  while (d <= limit && d * d <= n) {
    if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0) {
      int e = 0;
      while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0) {
        n /= d;
        ++e;
      }
      if (e % 2 == 1) kernel *= d;
    }
    d += (d == 2) ? 1 : 2;
  }
  if (n != 1 && !is_perfect_square(n)) {
    // Without a factor <= bound, a cofactor below bound^2 is prime.
    if (d * d > n) kernel *= n;
    else return std::nullopt;
  }
  return kernel * sign;
}

DiagonalForm trace_form(const ExtensionSpec& ext) {
  const FieldArith k(ext.base);
  Poly f = reduce_poly(k, ext.minimal_polynomial);
  if (f.size() < 2)
    throw Error(ErrorKind::ValidationError, "minimal polynomial must have degree >= 1");
  const Rational lead_inv = k.inv(f.back());
  for (auto& c : f) c = k.mul(c, lead_inv);

  const Poly fd = derivative(k, f);
  if (fd.empty() || poly_gcd(k, f, fd).size() > 1)
    throw Error(ErrorKind::NotSeparable, "minimal polynomial has repeated roots");

  Poly u = reduce_poly(k, ext.unit);
  if (!u.empty()) u = poly_rem(k, u, f);
  if (u.empty() || poly_gcd(k, f, u).size() > 1)
    throw Error(ErrorKind::NotUnit, "unit is not invertible modulo the minimal polynomial");

  const std::size_t n = f.size() - 1;
  const SquareMatrix c = companion(k, f);
  // Multiplication by u * t^m on kappa is u(C) C^m; its trace is Tr(u t^m).
  std::vector<Rational> traces;
  SquareMatrix m = evaluate_at(k, u, c);
  for (std::size_t e = 0; e + 1 < 2 * n; ++e) {
    traces.push_back(trace(k, m));
    m = mat_mul(k, m, c);
  }
  SquareMatrix gram(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gram[i][j] = traces[i + j];

  DiagonalForm out;
  out.base = ext.base;
  out.entries = diagonalize_symmetric(k, std::move(gram));
  out.provenance = "trace form of degree " + std::to_string(n) + " extension";
  return out;
}

GwClassResult classify(const DiagonalForm& form, GwModelTag model, const ClassifyOptions& options) {
  for (const auto& a : form.entries)
    if (a == 0) throw Error(ErrorKind::ValidationError, "diagonal form has a zero entry");

  using Kind = FieldTag::Kind;
  GwClassResult out{model, {}, {}, {}, {}};
  const long rank = static_cast<long>(form.entries.size());

  switch (model) {
    case GwModelTag::Rank:
      out.rank = rank;
      return out;

    case GwModelTag::Signature: {
      if (form.base.kind != Kind::Rational && form.base.kind != Kind::RealClosed)
        throw Error(ErrorKind::UnsupportedModel, "signature needs a rational or real closed base");
      long sig = 0;
      for (const auto& a : form.entries) sig += (a > 0) ? 1 : -1;
      out.signature = sig;
      return out;
    }

    case GwModelTag::FiniteField: {
      if (form.base.kind != Kind::FiniteField)
        throw Error(ErrorKind::UnsupportedModel, "finite-field invariants need a finite base");
      const FieldArith k(form.base);
      Rational disc(1);
      for (const auto& a : form.entries) disc = k.mul(disc, a);
      out.rank = rank;
      out.discriminant_nonsquare =
          form.base.p != 2 && legendre(Integer(disc.get_num()), form.base.p) == -1;
      return out;
    }

    case GwModelTag::ZEps:
      break;
  }

  switch (form.base.kind) {
    case Kind::ComplexClosed:
      out.element = GwElement(rank);
      return out;

    case Kind::RealClosed: {
      GwElement sum;
      for (const auto& a : form.entries) sum += (a > 0) ? GwElement::one() : GwElement::eps();
      out.element = sum;
      return out;
    }

    case Kind::FiniteField: {
      // Forms over F_p are determined by rank and discriminant.
      const FieldArith k(form.base);
      Rational disc(1);
      for (const auto& a : form.entries) disc = k.mul(disc, a);
      const long p = form.base.p;
      if (p == 2 || legendre(Integer(disc.get_num()), p) == 1) {
        out.element = GwElement(rank);
      } else if (p % 4 == 3) {
        out.element = GwElement(rank - 1) + GwElement::eps();
      } else {
        throw Error(ErrorKind::NotInZEpsImage,
                    "discriminant is a non-square while -1 is a square in F_" + std::to_string(p));
      }
      return out;
    }

    case Kind::Rational:
    case Kind::Generic:
      break;
  }

  GwElement sum;
  std::vector<Rational> rest;
  for (const auto& a : form.entries) {
    if (same_square_class(a, Rational(1))) sum += GwElement::one();
    else if (same_square_class(a, Rational(-1))) sum += GwElement::eps();
    else rest.push_back(a);
  }
  // <a> + <-a> = h
  std::vector<bool> used(rest.size(), false);
  for (std::size_t i = 0; i < rest.size(); ++i) {
    if (used[i]) continue;
    bool paired = false;
    for (std::size_t j = i + 1; j < rest.size() && !paired; ++j) {
      if (!used[j] && same_square_class(rest[i], -rest[j])) {
        used[i] = used[j] = true;
        sum += GwElement::h();
        paired = true;
      }
    }
    if (!paired) {
      auto cls = square_class(rest[i], options.squarefree_bound);
      std::string what = cls ? "square class " + cls->get_str()
                             : "square class with an unfactored cofactor above the trial-division bound";
      throw Error(ErrorKind::NotInZEpsImage,
                  "entry " + rest[i].get_str() + " has " + what + ", outside {1, -1}");
    }
  }
  out.element = sum;
  return out;
}

}  // namespace mplumb
