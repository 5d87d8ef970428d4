#include "quiltlab/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>
#include <fmt/format.h>

namespace quiltlab {

std::size_t PolygonalCurve::segment_count() const {
  if (vertices.size() < 2) return 0;
  return closed ? vertices.size() : vertices.size() - 1;
}

double exact_sum(const std::vector<double>& terms) {
  std::vector<double> partials;
  for (double x : terms) {
    std::size_t i = 0;
    for (double y : partials) {
      if (std::fabs(x) < std::fabs(y)) std::swap(x, y);
      const double hi = x + y;
      const double lo = y - (hi - x);
      if (lo != 0.0) partials[i++] = lo;
      x = hi;
    }
    partials.resize(i);
    partials.push_back(x);
  }
  std::size_t n = partials.size();
  double hi = 0.0;
  if (n > 0) {
    double lo = 0.0;
    hi = partials[--n];
    while (n > 0) {
      const double x = hi;
      const double y = partials[--n];
      hi = x + y;
      lo = y - (hi - x);
      if (lo != 0.0) break;
    }
    if (n > 0 && ((lo < 0.0 && partials[n - 1] < 0.0) || (lo > 0.0 && partials[n - 1] > 0.0))) {
      const double y = lo * 2.0;
      const double x = hi + y;
      if (y == x - hi) hi = x;
    }
  }
  return hi;
}

std::vector<double> turning_angles(const PolygonalCurve& curve) {
  const auto& v = curve.vertices;
  const std::size_t k = v.size();
  if (curve.segment_count() < 2 || (curve.closed && k < 3)) {
    throw Error(ErrorCode::DegenerateSegment, "curve needs at least two segments");
  }
  for (std::size_t i = 0; i < curve.segment_count(); ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % k];
    if (a.x == b.x && a.y == b.y) {
      throw Error(ErrorCode::DegenerateSegment, "repeated consecutive vertex " + std::to_string(i));
    }
  }
  std::vector<double> angles;
  const std::size_t first = curve.closed ? 0 : 1;
  const std::size_t last = curve.closed ? k : k - 1;
  for (std::size_t i = first; i < last; ++i) {
    const Point& p = v[(i + k - 1) % k];
    const Point& q = v[i];
    const Point& r = v[(i + 1) % k];
    const double ax = q.x - p.x;
    const double ay = q.y - p.y;
    const double bx = r.x - q.x;
    const double by = r.y - q.y;
    const double cross = ax * by - ay * bx;
    const double dot = ax * bx + ay * by;
    if (cross == 0.0 && dot < 0.0) {
      throw Error(ErrorCode::DegenerateSegment, "cusp at vertex " + std::to_string(i));
    }
    angles.push_back(std::atan2(cross, dot));
  }
  return angles;
}

double total_turning(const PolygonalCurve& curve) { return exact_sum(turning_angles(curve)); }

int orientation(const Point& a, const Point& b, const Point& c) {
  const double t1 = (b.x - a.x) * (c.y - a.y);
  const double t2 = (b.y - a.y) * (c.x - a.x);
  const double det = t1 - t2;
  const double bound = 3.3306690738754716e-16 * (std::fabs(t1) + std::fabs(t2));
  if (det > bound) return 1;
  if (-det > bound) return -1;
  using boost::multiprecision::cpp_rational;
  const cpp_rational ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y);
  const cpp_rational exact = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
  return exact > 0 ? 1 : (exact < 0 ? -1 : 0);
}

namespace {

bool on_segment(const Point& a, const Point& b, const Point& p) {
  return std::fmin(a.x, b.x) <= p.x && p.x <= std::fmax(a.x, b.x) && std::fmin(a.y, b.y) <= p.y &&
         p.y <= std::fmax(a.y, b.y);
}

}  // namespace

bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return (o1 * o2 < 0) && (o3 * o4 < 0);
}

bool is_simple(const PolygonalCurve& curve) {
  const auto& v = curve.vertices;
  const std::size_t k = v.size();
  const std::size_t segs = curve.segment_count();
  if (segs == 0) return false;
  auto seg = [&](std::size_t i) { return std::pair<Point, Point>{v[i], v[(i + 1) % k]}; };
  for (std::size_t i = 0; i < segs; ++i) {
    const auto [a, b] = seg(i);
    if (a.x == b.x && a.y == b.y) return false;
    for (std::size_t j = i + 1; j < segs; ++j) {
      const auto [c, d] = seg(j);
      const bool adjacent = (j == i + 1) || (curve.closed && i == 0 && j == segs - 1);
      if (adjacent) {
        // Shared vertex: b == c for (i, i+1), or d == a for the closing pair.
        const bool forward = (j == i + 1);
        const Point& shared = forward ? b : a;
        const Point& p = forward ? a : c;
        const Point& q = forward ? d : b;
        if (orientation(p, shared, q) == 0) {
          const double dot = (p.x - shared.x) * (q.x - shared.x) + (p.y - shared.y) * (q.y - shared.y);
          if (dot > 0.0) return false;
        }
        continue;
      }
      if (segments_intersect(a, b, c, d)) return false;
    }
  }
  return true;
}

HopfReport verify_hopf(const PolygonalCurve& loop) {
  if (!loop.closed) throw Error(ErrorCode::InvalidArgument, "Hopf check needs a closed curve");
  if (!is_simple(loop)) throw Error(ErrorCode::NotSimple, "loop self-intersects");
  HopfReport report;
  report.turning = total_turning(loop);
  report.tolerance = 1e-9 * static_cast<double>(loop.vertices.size());
  const double two_pi = 2.0 * std::numbers::pi;
  if (std::fabs(std::fabs(report.turning) - two_pi) > report.tolerance) {
    throw Error(ErrorCode::HopfViolation, "total turning " + std::to_string(report.turning));
  }
  report.sign = report.turning > 0 ? 1 : -1;
  return report;
}

PolygonalCurve reversed(const PolygonalCurve& curve) {
  PolygonalCurve out = curve;
  std::reverse(out.vertices.begin(), out.vertices.end());
  return out;
}

double discrete_arg_derivative(const PlaneMap& f, const Point& base, double base_arg, const Point& target,
                               const PolygonalCurve& path) {
  const auto& v = path.vertices;
  if (path.closed || v.size() < 3) {
    throw Error(ErrorCode::InvalidArgument, "path must be open with at least two segments");
  }
  if (v.front().x != base.x || v.front().y != base.y || v.back().x != target.x || v.back().y != target.y) {
    throw Error(ErrorCode::InvalidArgument, "path must run from base to target");
  }
  PolygonalCurve image;
  image.closed = false;
  image.vertices.reserve(v.size());
  for (const Point& p : v) image.vertices.push_back(f(p));
  for (std::size_t i = 0; i + 1 < image.vertices.size(); ++i) {
    const Point& a = image.vertices[i];
    const Point& b = image.vertices[i + 1];
    if (a.x == b.x && a.y == b.y) {
      throw Error(ErrorCode::PathDegeneratesUnderF, "image points coincide at segment " + std::to_string(i));
    }
  }
  return base_arg + total_turning(image) - total_turning(path);
}

PolygonalCurve parse_curve_csv(std::istream& in, bool closed) {
  PolygonalCurve c;
  c.closed = closed;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first && line == "x,y") {
      first = false;
      continue;
    }
    first = false;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::ParseError, "expected x,y in '" + line + "'");
    Point p;
    try {
      std::size_t used_x = 0;
      std::size_t used_y = 0;
      p.x = std::stod(line.substr(0, comma), &used_x);
      p.y = std::stod(line.substr(comma + 1), &used_y);
      if (used_x != comma || used_y != line.size() - comma - 1) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad coordinates in '" + line + "'");
    }
    c.vertices.push_back(p);
  }
  return c;
}

std::string curve_to_csv(const PolygonalCurve& curve) {
  std::string out = "x,y\n";
  for (const auto& p : curve.vertices) out += fmt::format("{:.17g},{:.17g}\n", p.x, p.y);
  return out;
}

}  // namespace quiltlab
