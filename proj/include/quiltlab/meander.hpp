#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "quiltlab/errors.hpp"

namespace quiltlab {

enum class HalfPlane { Upper, Lower };

/// Noncrossing perfect matching on the points 1..2m-1 together with the point
/// at infinity, drawn in one half-plane. Infinity is stored as point 2m, which
/// sits to the right of every finite point.
///
/// Arcs are oriented by parity: the loop crosses the real line upward at odd
/// points and downward at even points, so upper arcs run from their odd end
/// to their even end (or to infinity) and lower arcs run from their even end
/// (or from infinity) to their odd end.
struct ArcDiagram {
  int m = 0;
  HalfPlane side = HalfPlane::Upper;
  std::vector<int> partner;  ///< partner[p] for p in 1..2m; index 0 unused.

  int infinity() const { return 2 * m; }
  /// Balanced-parenthesis word over positions 1..2m; bit p-1 set when p opens an arc.
  std::uint32_t code() const;
  /// Arcs as (from, to) pairs in the loop direction, listed by left endpoint.
  std::vector<std::pair<int, int>> oriented_arcs() const;
};

struct Meander {
  ArcDiagram upper;
  ArcDiagram lower;
  std::vector<int> crossing_order;  ///< v1..v_{2m-1}
};

/// Winding profile in units of pi, theta[v-1] for v = 1..2m-1.
struct WindingFunction {
  std::vector<int> theta;
  bool operator<(const WindingFunction& o) const { return theta < o.theta; }
  bool operator==(const WindingFunction& o) const { return theta == o.theta; }
};

std::uint64_t catalan(int m);

/// All noncrossing matchings of size m on one side, sorted by code.
std::vector<ArcDiagram> enumerate_arc_diagrams(int m, HalfPlane side);

/// True iff the matching is perfect and noncrossing with infinity at 2m.
bool is_noncrossing_matching(const ArcDiagram& d);

/// Union-find loop count of upper together with lower. Errors: SizeMismatch.
int loop_count(const ArcDiagram& upper, const ArcDiagram& lower);
bool is_single_loop(const ArcDiagram& upper, const ArcDiagram& lower);

/// Order in which the loop starting at infinity in the lower half-plane
/// visits the real line. Requires a single loop.
std::vector<int> trace_crossings(const ArcDiagram& upper, const ArcDiagram& lower);

/// Pair-filter enumeration, parallel over upper diagrams. Output sorted by
/// (upper code, lower code).
std::vector<Meander> enumerate_meanders(int m);
/// Single-threaded reference for enumerate_meanders.
std::vector<Meander> enumerate_meanders_serial(int m);

/// Counts meanders by scanning the line left to right with a state holding
/// the open upper and lower strands and how they are joined.
std::uint64_t count_meanders_transfer(int m);

WindingFunction winding_function(const Meander& mnd);

/// Diagrams of the given side whose finite arcs x<y satisfy
/// theta(y) = theta(x) - 1 (upper) or theta(y) = theta(x) + 1 (lower).
std::vector<ArcDiagram> admissible_diagrams(const WindingFunction& theta, HalfPlane side);

struct WindingClass {
  WindingFunction theta;
  std::size_t upper = 0;
  std::size_t lower = 0;
  std::size_t meanders = 0;
};

struct FactorizationReport {
  int m = 0;
  std::size_t total_meanders = 0;
  std::vector<WindingClass> classes;  ///< sorted by theta
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// For every winding class at size m checks that the meanders of the class are
/// exactly the admissible upper/lower product and that every product pair is a
/// single loop. Violations are recorded in the report.
FactorizationReport verify_factorization(int m);

/// {"m":int,"classes":[{"theta":[int],"upper":int,"lower":int,"meanders":int}]}
std::string classes_json(const FactorizationReport& report);
/// Parses classes_json output. Errors: ParseError.
FactorizationReport classes_from_json(const std::string& text);

}  // namespace quiltlab
