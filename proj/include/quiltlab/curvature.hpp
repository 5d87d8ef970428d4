#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "quiltlab/errors.hpp"

namespace quiltlab {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Ordered planar vertices. A closed curve does not repeat its first vertex;
/// the closing segment is implicit.
struct PolygonalCurve {
  std::vector<Point> vertices;
  bool closed = false;

  std::size_t segment_count() const;
};

/// Correctly rounded sum of the inputs, independent of their order.
double exact_sum(const std::vector<double>& terms);

/// Signed turning angles in (-pi, pi) at every interior vertex, and at every
/// vertex of a closed curve. Errors: DegenerateSegment for repeated
/// consecutive vertices, fewer than two segments, or a turn of exactly pi.
std::vector<double> turning_angles(const PolygonalCurve& curve);

/// Total curvature: the sum of turning_angles(curve).
double total_turning(const PolygonalCurve& curve);

/// Sign of the orientation determinant of (a, b, c), computed exactly.
int orientation(const Point& a, const Point& b, const Point& c);

/// True iff closed segments [a,b] and [c,d] share a point.
bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d);

/// No two non-adjacent segments meet and adjacent segments meet only at
/// their shared vertex.
bool is_simple(const PolygonalCurve& curve);

struct HopfReport {
  int sign = 0;
  double turning = 0.0;
  double tolerance = 0.0;
};

/// Checks |total_turning| = 2 pi within 1e-9 per vertex and returns the
/// orientation sign (+1 counterclockwise). Errors: NotSimple, HopfViolation.
HopfReport verify_hopf(const PolygonalCurve& loop);

PolygonalCurve reversed(const PolygonalCurve& curve);

/// CSV with an optional `x,y` header and one `x,y` row per vertex.
/// Errors: ParseError.
PolygonalCurve parse_curve_csv(std::istream& in, bool closed);
std::string curve_to_csv(const PolygonalCurve& curve);

using PlaneMap = std::function<Point(const Point&)>;

/// arg f' at the end of path, given its value at the start:
/// base_arg + total_turning(f o path) - total_turning(path).
/// The path must start at base and end at target.
/// Errors: PathDegeneratesUnderF, InvalidArgument.
double discrete_arg_derivative(const PlaneMap& f, const Point& base, double base_arg,
                               const Point& target, const PolygonalCurve& path);

}  // namespace quiltlab
