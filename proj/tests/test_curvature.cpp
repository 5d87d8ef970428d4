#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "quiltlab/curvature.hpp"

using namespace quiltlab;

namespace {

constexpr double kPi = std::numbers::pi;

PolygonalCurve square(bool ccw) {
  PolygonalCurve c;
  c.closed = true;
  c.vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  return ccw ? c : reversed(c);
}

PolygonalCurve arc(double from, double to, int segments) {
  PolygonalCurve c;
  for (int k = 0; k <= segments; ++k) {
    const double t = from + (to - from) * k / segments;
    c.vertices.push_back({std::cos(t), std::sin(t)});
  }
  c.vertices.front() = {std::cos(from), std::sin(from)};
  return c;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Curvature, ExactSumIsOrderIndependent) {
  EXPECT_EQ(exact_sum({1e16, 1.0, -1e16}), 1.0);
  EXPECT_EQ(exact_sum({-1e16, 1e16, 1.0}), 1.0);
  EXPECT_EQ(exact_sum({}), 0.0);
}

TEST(Curvature, CollinearPathHasZeroTurning) {
  PolygonalCurve c;
  c.vertices = {{0, 0}, {1, 1}, {2, 2}, {3, 3}};
  EXPECT_EQ(total_turning(c), 0.0);
  EXPECT_EQ(turning_angles(c).size(), 2u);
}

TEST(Curvature, RightTurnIsNegative) {
  PolygonalCurve c;
  c.vertices = {{0, 0}, {1, 0}, {1, -1}};
  EXPECT_NEAR(total_turning(c), -kPi / 2, 1e-15);
}

TEST(Curvature, SquareOrientation) {
  const HopfReport ccw = verify_hopf(square(true));
  EXPECT_EQ(ccw.sign, 1);
  EXPECT_NEAR(ccw.turning, 2 * kPi, 1e-12);
  const HopfReport cw = verify_hopf(square(false));
  EXPECT_EQ(cw.sign, -1);
  EXPECT_NEAR(cw.turning, -2 * kPi, 1e-12);
}

TEST(Curvature, HalfCircleApproximation) {
  const PolygonalCurve c = arc(0.0, kPi, 64);
  // Each of the 63 interior vertices of an inscribed polygon turns by pi/64.
  EXPECT_NEAR(total_turning(c), kPi * 63.0 / 64.0, 1e-12);
  const PolygonalCurve fine = arc(0.0, kPi, 1 << 20);
  EXPECT_NEAR(total_turning(fine), kPi, 1e-5);
}

TEST(Curvature, ReversalNegatesTurning) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    PolygonalCurve c;
    for (int i = 0; i < 12; ++i) c.vertices.push_back({u(rng), u(rng)});
    EXPECT_NEAR(total_turning(reversed(c)), -total_turning(c), 1e-12);
  }
}

TEST(Curvature, HopfOnRegularPolygons) {
  for (int k = 3; k <= 40; ++k) {
    PolygonalCurve c;
    c.closed = true;
    for (int i = 0; i < k; ++i) c.vertices.push_back({std::cos(2 * kPi * i / k), std::sin(2 * kPi * i / k)});
    const HopfReport r = verify_hopf(c);
    EXPECT_EQ(r.sign, 1);
    EXPECT_NEAR(std::abs(r.turning), 2 * kPi, 1e-9 * k);
    EXPECT_EQ(verify_hopf(reversed(c)).sign, -1);
  }
}

TEST(Curvature, NonSimpleLoopRejected) {
  PolygonalCurve bowtie;
  bowtie.closed = true;
  bowtie.vertices = {{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  EXPECT_FALSE(is_simple(bowtie));
  EXPECT_EQ(code_of([&] { verify_hopf(bowtie); }), ErrorCode::NotSimple);
}

TEST(Curvature, DegenerateInputs) {
  PolygonalCurve repeated;
  repeated.vertices = {{0, 0}, {0, 0}, {1, 0}};
  EXPECT_EQ(code_of([&] { turning_angles(repeated); }), ErrorCode::DegenerateSegment);
  PolygonalCurve back;
  back.vertices = {{0, 0}, {1, 0}, {0, 0}};
  EXPECT_EQ(code_of([&] { turning_angles(back); }), ErrorCode::DegenerateSegment);
}

TEST(Curvature, OrientationAndIntersection) {
  EXPECT_EQ(orientation({0, 0}, {1, 0}, {0, 1}), 1);
  EXPECT_EQ(orientation({0, 0}, {0, 1}, {1, 0}), -1);
  EXPECT_EQ(orientation({0, 0}, {1, 1}, {2, 2}), 0);
  EXPECT_TRUE(segments_intersect({0, 0}, {2, 2}, {0, 2}, {2, 0}));
  EXPECT_TRUE(segments_intersect({0, 0}, {1, 0}, {1, 0}, {2, 5}));
  EXPECT_FALSE(segments_intersect({0, 0}, {1, 0}, {0, 1}, {1, 1}));
}

TEST(Curvature, ArgDerivativeOfAffineMapIsConstant) {
  const double phi = 0.7;
  const PlaneMap f = [&](const Point& p) {
    return Point{2 * (std::cos(phi) * p.x - std::sin(phi) * p.y) + 3, 2 * (std::sin(phi) * p.x + std::cos(phi) * p.y) - 1};
  };
  PolygonalCurve path;
  path.vertices = {{0, 0}, {1, 0.5}, {0.5, 2}, {-1, 1}};
  EXPECT_NEAR(discrete_arg_derivative(f, {0, 0}, phi, {-1, 1}, path), phi, 1e-12);
}

TEST(Curvature, ArgDerivativeOfSquareMap) {
  const PlaneMap f = [](const Point& p) { return Point{p.x * p.x - p.y * p.y, 2 * p.x * p.y}; };
  const int n = 256;
  const PolygonalCurve path = arc(0.0, kPi / 2, n);
  const Point target = path.vertices.back();
  // f doubles chord angles, so the discrete value is (pi/2)(1 - 1/n); arg f'(i) = pi/2.
  const double got = discrete_arg_derivative(f, {1, 0}, 0.0, target, path);
  EXPECT_NEAR(got, kPi / 2 * (1.0 - 1.0 / n), 1e-12);
  EXPECT_NEAR(got, kPi / 2, kPi / (2.0 * n) + 1e-12);
}

TEST(Curvature, ArgDerivativeErrors) {
  const PlaneMap collapse = [](const Point&) { return Point{0, 0}; };
  PolygonalCurve path;
  path.vertices = {{0, 0}, {1, 0}, {1, 1}};
  EXPECT_EQ(code_of([&] { discrete_arg_derivative(collapse, {0, 0}, 0.0, {1, 1}, path); }),
            ErrorCode::PathDegeneratesUnderF);
  const PlaneMap id = [](const Point& p) { return p; };
  EXPECT_EQ(code_of([&] { discrete_arg_derivative(id, {5, 5}, 0.0, {1, 1}, path); }), ErrorCode::InvalidArgument);
}

TEST(Curvature, CsvRoundTrip) {
  PolygonalCurve c = arc(0.1, 2.9, 9);
  c.vertices.push_back({1e-300, -3.25});
  const std::string text = curve_to_csv(c);
  std::istringstream in(text);
  const PolygonalCurve back = parse_curve_csv(in, false);
  ASSERT_EQ(back.vertices.size(), c.vertices.size());
  for (std::size_t i = 0; i < c.vertices.size(); ++i) {
    EXPECT_EQ(back.vertices[i].x, c.vertices[i].x);
    EXPECT_EQ(back.vertices[i].y, c.vertices[i].y);
  }
  EXPECT_EQ(curve_to_csv(back), text);
}

TEST(Curvature, CsvRejectsGarbage) {
  std::istringstream a("x,y\n1,2\n3;4\n");
  EXPECT_EQ(code_of([&] { parse_curve_csv(a, true); }), ErrorCode::ParseError);
  std::istringstream b("1,2x\n");
  EXPECT_EQ(code_of([&] { parse_curve_csv(b, true); }), ErrorCode::ParseError);
}
