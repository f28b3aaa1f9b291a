#pragma once

// Integer shadows of the ordered Cech complex of a closed cover and the
// Artin-Tate homology at infinity HM_0..HM_3 of a plumbing pair.

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "mplumb/matrix.hpp"
#include "mplumb/mumford.hpp"
#include "mplumb/plumbing.hpp"

namespace mplumb {

struct HomologyGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

/// Degrees 0..N; differentials[n] : C_{n+1} -> C_n, a ranks[n] x ranks[n+1] matrix.
struct ChainComplexZ {
  std::vector<std::size_t> ranks;
  std::vector<IntMatrix> differentials;

  void validate() const;  // shapes only
  bool squares_to_zero() const;
  std::vector<HomologyGroup> homology() const;
  long euler_characteristic() const;
};

/// Closed cover X_1..X_m of X.  For each nonempty intersection X_J (J sorted)
/// the number of its connected components.  When a face X_{J-k} has several
/// components, faces[J][k][c] names the component of X_{J-k} containing
/// component c of X_J.
struct Cover {
  std::size_t size = 0;
  std::map<std::vector<std::size_t>, long> components;
  std::map<std::vector<std::size_t>, std::vector<std::vector<std::size_t>>> faces;

  /// Throws InconsistentIncidence.
  void validate() const;
  long count(const std::vector<std::size_t>& J) const;
  std::size_t face_component(const std::vector<std::size_t>& J, std::size_t k, std::size_t c) const;
};

/// Curves as the cover of D; pairs meet in their intersection points.
Cover cover_of(const PlumbingGraph& g);

/// Degree n = sum of components over |J| = n + 1; the face omitting the k-th
/// element of J enters with sign (-1)^k.
ChainComplexZ ordered_cech(const Cover& cover);

struct RzTerm {
  long degree = 0;
  long twist = 0;
  long shift = 0;
  std::size_t rank = 0;
  IntMatrix differential;  // to degree - 1; empty for degree 0
};

/// c = |J| >= 1 sits in degree c with twist c and shift 2c; degree 0 is 1_D
/// with the augmentation.
std::vector<RzTerm> rz_complex(const Cover& cover);

struct GradedPiece {
  long twist = 0;
  HomologyGroup group;
};

struct HomologyAtInfinity {
  std::array<std::vector<GradedPiece>, 4> hm;
  /// HM_1 and HM_2 are only known up to extension of their graded pieces.
  std::array<bool, 4> extension_unresolved{};
};

HomologyAtInfinity homology_at_infinity(const PlumbingGraph& g, Mode mode, bool rational = false,
                                        const ClassifyOptions& options = {});

}  // namespace mplumb
