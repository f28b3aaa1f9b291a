#pragma once

// Affine hyperplane arrangements over Q: the intersection poset by exact
// elimination, the multiplicities m(n), and the Tate decompositions of the
// complement, its dual, and its homotopy at infinity.

#include <map>
#include <string>
#include <vector>

#include "mplumb/gwring.hpp"
#include "mplumb/mumford.hpp"

namespace mplumb {

struct Hyperplane {
  std::vector<Integer> normal;  // a with a.x = b
  Integer offset;
};

struct Arrangement {
  std::size_t dimension = 0;
  std::vector<Hyperplane> hyperplanes;

  /// Throws ValidationError on zero normals, wrong lengths, duplicates.
  void validate() const;
};

/// One hyperplane per line "a1 ... ad | b"; '#' comments.  d is read off the
/// first hyperplane unless given.  An empty file needs an explicit d, or a
/// line "dim <d>".
Arrangement parse_arrangement(const std::string& text);

struct Flat {
  std::vector<std::size_t> J;  // sorted hyperplane indices
  bool consistent = false;
  long codim = 0;
};

struct FlatData {
  std::vector<Flat> flats;  // the consistent J, including the empty set, in DFS order
  /// The flat of J, or nullptr when the system for J is inconsistent.
  const Flat* find(const std::vector<std::size_t>& J) const;
  /// A consistent J inside a consistent K = J + {one more} with equal codim.
  std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> dense_violations;
  bool normal_crossing = true;  // c_J = |J| for every consistent J
};

constexpr std::size_t kDefaultHyperplaneBound = 20;

FlatData flats(const Arrangement& arr, std::size_t bound = kDefaultHyperplaneBound);

/// m(n) = number of consistent J with c_J = n; m(0) = 1.
std::map<long, long> multiplicities(const Arrangement& arr, std::size_t bound = kDefaultHyperplaneBound);

MotiveExpression complement_decomposition(const Arrangement& arr, std::size_t bound = kDefaultHyperplaneBound);
MotiveExpression infinity_decomposition(const Arrangement& arr, std::size_t bound = kDefaultHyperplaneBound);
MotiveExpression dual_decomposition(const Arrangement& arr, std::size_t bound = kDefaultHyperplaneBound);

/// Coordinate hyperplanes x_1 = 0, ..., x_e = 0 in A^d.
Arrangement coordinate_arrangement(std::size_t e, std::size_t d);

}  // namespace mplumb
