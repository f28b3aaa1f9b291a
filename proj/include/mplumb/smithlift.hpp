#pragma once

// Smith normal form over Z and diagonalization over Z_eps with invertible
// transforms, computed by elimination on the pair of projections
// (A+, A-) using only row/column moves whose coefficient pairs lift to Z_eps.

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mplumb/matrix.hpp"

namespace mplumb {

/// A = S * D * T with S, T invertible over the base ring and D diagonal.
template <class Ring>
struct SnfResult {
  Matrix<Ring> S;
  Matrix<Ring> D;
  Matrix<Ring> T;
};

using IntSnf = SnfResult<Integer>;
using GwSnf = SnfResult<GwElement>;

/// Smith normal form with unimodular transforms, nonnegative diagonal and
/// d1 | d2 | ... .  Pivot: minimal nonzero absolute value, ties row-major.
IntSnf snf_int(const IntMatrix& a);

/// The elimination got stuck: no implemented move clears the pivot's row and
/// column without leaving Z_eps.  The classical realizations are attached so
/// callers can still fall back to them.
struct Obstruction {
  GwMatrix partial;           // working matrix when elimination stopped
  GwMatrix S;                 // partial transforms: A = S * partial * T
  GwMatrix T;
  std::size_t step = 0;       // diagonal position being processed
  GwElement pivot;            // pivot that could not be made to divide its row/column
  GwElement blocker;          // entry it failed against
  std::vector<Integer> d_plus;   // snf_int(A+) diagonal
  std::vector<Integer> d_minus;  // snf_int(A-) diagonal
  std::string reason;
};

using ZepsDiagonalization = std::variant<GwSnf, Obstruction>;

/// Diagonalization A = S D T over Z_eps.  Diagonal entries are normalized to
/// nonnegative projections, pairwise coprime non-units are merged into
/// (1, d d'), and the diagonal is ordered units, non-units by norm, zeros.
ZepsDiagonalization diagonalize_zeps(const GwMatrix& a);

/// Exact check of S D T == A, D diagonal, and unit determinants of S and T.
bool verify(const IntMatrix& a, const IntSnf& result);
bool verify(const GwMatrix& a, const GwSnf& result);

/// True when the diagonal of an integer SNF is nonnegative with the
/// divisibility chain.
bool has_divisibility_chain(const IntMatrix& d);

struct KernelCokernel {
  std::size_t kernel_rank = 0;
  std::size_t cokernel_free_rank = 0;
  std::vector<Integer> torsion;  // invariant factors > 1

  friend bool operator==(const KernelCokernel&, const KernelCokernel&) = default;
};

/// Kernel and cokernel of A : Z^cols -> Z^rows read off the Smith form.
KernelCokernel kernel_cokernel(const IntMatrix& a);

/// Exact quotient q with q * d == a over Z_eps, if one exists.
std::optional<GwElement> exact_quotient(const GwElement& a, const GwElement& d);

/// x, y with x a + y b = 1 over Z_eps, if the ideal (a, b) is the unit ideal.
std::optional<std::pair<GwElement, GwElement>> bezout_unit(const GwElement& a, const GwElement& b);

}  // namespace mplumb
