#pragma once

// Arithmetic in Z_eps = Z[eps]/(eps^2 - 1), the subring of GW(k) generated by
// <1> = 1 and <-1> = eps, together with trace forms of finite extensions and
// their reduction to rank / signature / finite-field invariants.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace mplumb {

using Integer = mpz_class;
using Rational = mpq_class;

/// x + y*eps.  Plus projection eps -> 1, minus projection eps -> -1.
class GwElement {
 public:
  GwElement() = default;
  GwElement(long x) : x_(x) {}  // NOLINT: integers embed as multiples of <1>
  GwElement(Integer x, Integer y) : x_(std::move(x)), y_(std::move(y)) {}

  static GwElement one() { return {1, 0}; }
  static GwElement eps() { return {0, 1}; }
  /// Class of the hyperbolic plane, <1> + <-1>.
  static GwElement h() { return {1, 1}; }

  const Integer& x() const { return x_; }
  const Integer& y() const { return y_; }

  Integer plus() const { return x_ + y_; }
  Integer minus() const { return x_ - y_; }

  bool is_zero() const { return x_ == 0 && y_ == 0; }

  GwElement& operator+=(const GwElement& o);
  GwElement& operator-=(const GwElement& o);
  GwElement& operator*=(const GwElement& o);

  friend GwElement operator+(GwElement a, const GwElement& b) { return a += b; }
  friend GwElement operator-(GwElement a, const GwElement& b) { return a -= b; }
  friend GwElement operator*(GwElement a, const GwElement& b) { return a *= b; }
  friend GwElement operator-(const GwElement& a) { return {-a.x_, -a.y_}; }
  friend bool operator==(const GwElement& a, const GwElement& b) {
    return a.x_ == b.x_ && a.y_ == b.y_;
  }
  friend bool operator!=(const GwElement& a, const GwElement& b) { return !(a == b); }

  std::string str() const;

 private:
  Integer x_{0};
  Integer y_{0};
};

std::ostream& operator<<(std::ostream& os, const GwElement& a);

GwElement add(const GwElement& a, const GwElement& b);
GwElement mul(const GwElement& a, const GwElement& b);
GwElement neg(const GwElement& a);

/// a is one of 1, -1, eps, -eps.
bool is_unit(const GwElement& a);

/// The injection Z_eps -> Z_+ x Z_-.
std::pair<Integer, Integer> project(const GwElement& a);

/// Inverse of project on pairs with n = m (mod 2); nullopt otherwise.
std::optional<GwElement> lift(const Integer& n, const Integer& m);

/// |p+(a)| + |p-(a)|.  Zero only for 0; units have norm 2.
Integer gw_norm(const GwElement& a);

/// Representative of a*{+-1, +-eps} with both projections nonnegative.
GwElement normalize_unit(const GwElement& a);

/// The unit u with normalize_unit(a) == u * a.
GwElement normalizing_unit(const GwElement& a);

/// True when a and b differ by a unit of Z_eps.
bool associated(const GwElement& a, const GwElement& b);

// ---------------------------------------------------------------------------
// Fields, forms, extensions

struct FieldTag {
  enum class Kind { Rational, FiniteField, RealClosed, ComplexClosed, Generic };

  Kind kind = Kind::Generic;
  long p = 0;  // characteristic, FiniteField only
  int e = 1;   // degree over the prime field, FiniteField only

  static FieldTag rational() { return {Kind::Rational, 0, 1}; }
  static FieldTag finite(long p, int e = 1) { return {Kind::FiniteField, p, e}; }
  static FieldTag real() { return {Kind::RealClosed, 0, 1}; }
  static FieldTag complex() { return {Kind::ComplexClosed, 0, 1}; }
  static FieldTag generic() { return {Kind::Generic, 0, 1}; }

  friend bool operator==(const FieldTag&, const FieldTag&) = default;

  std::string str() const;
};

/// Diagonal Gram matrix of a nondegenerate symmetric bilinear form.  Over a
/// finite field the entries are integer representatives in [0, p).
struct DiagonalForm {
  FieldTag base;
  std::vector<Rational> entries;
  std::string provenance;

  std::size_t rank() const { return entries.size(); }
};

/// kappa = k[t]/(f) with a distinguished element u.  Coefficients ascend:
/// minimal_polynomial[i] is the coefficient of t^i.
struct ExtensionSpec {
  FieldTag base;
  std::vector<Rational> minimal_polynomial;
  std::vector<Rational> unit{Rational(1)};

  std::size_t degree() const {
    return minimal_polynomial.empty() ? 0 : minimal_polynomial.size() - 1;
  }

  friend bool operator==(const ExtensionSpec&, const ExtensionSpec&) = default;
};

/// Diagonalization of (a, b) -> Tr_{kappa/k}(u a b).  Base must be Rational or
/// a prime field.
DiagonalForm trace_form(const ExtensionSpec& ext);

enum class GwModelTag { ZEps, Rank, Signature, FiniteField };

struct GwClassResult {
  GwModelTag model;
  std::optional<GwElement> element;  // ZEps
  std::optional<long> rank;          // Rank, FiniteField
  std::optional<long> signature;     // Signature
  std::optional<bool> discriminant_nonsquare;  // FiniteField
};

struct ClassifyOptions {
  /// Trial-division bound used to compute square classes over Q.
  std::uint64_t squarefree_bound = 1'000'000;
};

GwClassResult classify(const DiagonalForm& form, GwModelTag model,
                       const ClassifyOptions& options = {});

/// Square class of a nonzero rational: sign times the squarefree part of
/// numerator*denominator.  nullopt when a cofactor above the bound cannot be
/// resolved.
std::optional<Integer> square_class(const Rational& a, std::uint64_t bound);

/// Legendre symbol (a/p) for an odd prime p: 1, -1, or 0.
int legendre(const Integer& a, long p);

}  // namespace mplumb
