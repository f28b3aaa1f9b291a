#pragma once

// Weighted dual graphs of configurations of rational curves: vertices are the
// curves with their self-intersections, edges carry the individual
// intersection points.

#include <optional>
#include <string>
#include <vector>

#include "mplumb/gwring.hpp"
#include "mplumb/matrix.hpp"

namespace mplumb {

struct Point {
  long degree = 1;  // [kappa : k]
  std::optional<ExtensionSpec> extension;
  int unit_class = 1;  // square class of the orientation unit, +1 or -1
  long multiplicity = 1;

  friend bool operator==(const Point&, const Point&) = default;
};

struct Curve {
  std::string id;
  long self_intersection = 0;

  friend bool operator==(const Curve&, const Curve&) = default;
};

struct Intersection {
  std::string a;
  std::string b;
  std::vector<Point> points;

  friend bool operator==(const Intersection&, const Intersection&) = default;
};

struct GraphChecks {
  bool is_tree = false;
  bool is_orientable = false;
  bool is_transverse = false;
  bool all_points_rational = false;
};

class PlumbingGraph {
 public:
  std::vector<Curve> vertices;
  std::vector<Intersection> edges;
  FieldTag base_field = FieldTag::generic();

  /// Throws ValidationError on duplicate ids, dangling or looping edges,
  /// empty point lists, bad degrees/multiplicities/units.
  void validate() const;

  std::size_t size() const { return vertices.size(); }
  /// Index of a vertex id; throws ValidationError when absent.
  std::size_t index_of(const std::string& id) const;
  /// Total number of intersection points.
  std::size_t point_count() const;

  /// Same graph with vertices reordered: vertex i moves to position perm[i].
  PlumbingGraph permuted(const std::vector<std::size_t>& perm) const;

  friend bool operator==(const PlumbingGraph&, const PlumbingGraph&) = default;
};

/// Parse the line-oriented graph language:
///   vertex <id> <int> ;
///   edge <id> <id> [point deg=<int> unit=<+1|-1> mult=<int> f=<c0,c1,..> u=<c0,..>]* ;
///   field rational | finite <p> [<e>] | real | complex | generic ;
/// with '#' comments.  Throws ParseError (with position) or ValidationError.
PlumbingGraph parse_graph(const std::string& text);

/// Inverse of parse_graph up to whitespace and comments.
std::string serialize_graph(const PlumbingGraph& g);

GraphChecks checks(const PlumbingGraph& g);

// catalog

/// kind in {'A','D','E'}.  Vertex ids v1..vn.
PlumbingGraph dynkin(char kind, int n);
PlumbingGraph danielewski(int n);
/// The three-curve configuration Q, C, E with Q^2 = 4, C^2 = 3, E^2 = -1.
PlumbingGraph ramanujam();

}  // namespace mplumb
