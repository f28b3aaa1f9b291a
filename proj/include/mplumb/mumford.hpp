#pragma once

// Oriented and quadratic Mumford matrices of a plumbing graph and the
// resulting decomposition of the punctured tubular neighborhood (stable
// motivic link) as a formal sum of Tate-type atoms.

#include <optional>
#include <string>
#include <vector>

#include "mplumb/gwring.hpp"
#include "mplumb/matrix.hpp"
#include "mplumb/plumbing.hpp"
#include "mplumb/smithlift.hpp"

namespace mplumb {

struct Atom {
  enum class Kind { Tate, HoFib, Cone, Artin };

  Kind kind = Kind::Tate;
  long q = 0;  // twist
  long p = 0;  // shift
  GwElement d;       // HoFib: neither zero nor a unit
  Integer n = 0;     // Cone: cofiber of n on 1(q)[p], so Z/n sits in degree p
  long degree = 0;   // Artin: [L : k]
  long mult = 1;

  static Atom tate(long q, long p, long mult = 1);
  static Atom hofib(const GwElement& d, long q, long p, long mult = 1);
  static Atom cone(const Integer& n, long q, long p, long mult = 1);
  static Atom artin(long degree, long q, long p, long mult = 1);

  std::string str() const;
};

std::string to_string(Atom::Kind k);

class MotiveExpression {
 public:
  MotiveExpression() = default;
  explicit MotiveExpression(std::vector<Atom> atoms) : atoms_(std::move(atoms)) { canonicalize(); }

  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }

  MotiveExpression& add(const Atom& a);
  MotiveExpression& add(const MotiveExpression& e);

  /// Total multiplicity of atoms of the given kind.
  long count(Atom::Kind k) const;
  /// Apply (q, p) -> (q + dq, p + dp) to every atom.
  MotiveExpression shifted(long dq, long dp) const;
  /// (q, p) -> (-q, -p); cones move one degree further down.
  MotiveExpression dual() const;

  std::string str() const;

  friend bool operator==(const MotiveExpression& a, const MotiveExpression& b);
  friend bool operator!=(const MotiveExpression& a, const MotiveExpression& b) { return !(a == b); }

 private:
  void canonicalize();
  std::vector<Atom> atoms_;
};

enum class Mode { Oriented, Quadratic };

/// Diagonal self-intersections, off-diagonal sum of degree * multiplicity.
IntMatrix oriented_matrix(const PlumbingGraph& g);

/// Diagonal -n_i h for self-intersection -2 n_i; off-diagonal sum over points
/// of the Z_eps class of the (signed) trace form.
GwMatrix quadratic_matrix(const PlumbingGraph& g, const ClassifyOptions& options = {});

/// Class in Z_eps of one intersection point.
GwElement point_class(const Point& pt, const FieldTag& base, const ClassifyOptions& options = {});

/// Incidence map Z^{points} -> Z^{vertices}: column of a point joining i and j
/// has +1 in row i and -1 in row j (edge order, then point order).
IntMatrix incidence_matrix(const PlumbingGraph& g);

/// The cofiber D of the incidence map: 1^{free coker} + Cone(t) per torsion
/// factor + 1[1]^{ker}.
MotiveExpression artin_part(const PlumbingGraph& g);

/// Atoms of hofib of a diagonal map on sum 1(1)[2].
MotiveExpression diagonal_atoms(const std::vector<GwElement>& diag);
MotiveExpression diagonal_atoms(const std::vector<Integer>& diag);

struct LinkResult {
  Mode mode = Mode::Oriented;
  /// false for non-tree graphs (the blocks between D and the Tate column are
  /// not determined) and when the quadratic diagonalization is obstructed.
  bool exact = true;
  MotiveExpression motive;  // valid when exact
  MotiveExpression artin;   // D
  MotiveExpression artin_dual_target;  // D^v(2)[4]
  MotiveExpression mu_part;  // hofib of the diagonalized Mumford matrix
  IntMatrix oriented;
  std::optional<GwMatrix> quadratic;
  std::optional<IntSnf> oriented_snf;
  std::optional<GwSnf> quadratic_snf;
  std::optional<Obstruction> obstruction;
  /// Oriented decomposition attached when the quadratic one is obstructed.
  std::optional<MotiveExpression> oriented_fallback;
  std::vector<std::string> notes;
};

LinkResult link_decomposition(const PlumbingGraph& g, Mode mode, const ClassifyOptions& options = {});

enum class Realization { Rank, Signature };

/// eps -> 1 (Rank) or eps -> -1 (Signature), entrywise.
IntMatrix realize(const GwMatrix& m, Realization target);
Integer realize(const GwElement& a, Realization target);
/// HoFib(d) becomes the integer atoms of the realized scalar.
MotiveExpression realize(const MotiveExpression& e, Realization target);

// Du Val comparison

struct DuValRow {
  std::string name;  // e.g. "A5", "D4", "E6"
  /// Element inside hofib in the table, normalized; nullopt for an empty
  /// hofib part.
  std::optional<GwElement> table_value;
  bool firm = true;  // false for the D_n and E6 rows
};

DuValRow du_val_table_row(char kind, int n);

struct DuValComparison {
  DuValRow row;
  std::vector<GwElement> computed;          // non-unit diagonal entries, normalized
  std::vector<Integer> oriented_invariants;  // snf of the integer matrix
  std::vector<Integer> rank_realization;     // |p+| of the quadratic diagonal, sorted
  bool rank_matches_oriented = false;
  bool matches_table = false;
  std::string report;
};

DuValComparison compare_du_val(char kind, int n);

}  // namespace mplumb
