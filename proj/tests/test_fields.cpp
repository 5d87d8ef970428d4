#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "quiltlab/fields.hpp"

using namespace quiltlab;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::MatrixXd rotation2(double angle) {
  Eigen::MatrixXd a(2, 2);
  a << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return a;
}

/// Cayley's formula n^(n-2) for complete graphs.
std::uint64_t cayley(int n) {
  std::uint64_t r = 1;
  for (int i = 0; i < n - 2; ++i) r *= static_cast<std::uint64_t>(n);
  return r;
}

}  // namespace

TEST(Fields, SleCharges) {
  EXPECT_NEAR(c_sle(2.0), -2.0, 1e-12);
  EXPECT_NEAR(c_sle(4.0), 1.0, 1e-15);
  EXPECT_NEAR(c_sle(8.0), -2.0, 1e-12);
  EXPECT_NEAR(c_sle(8.0 / 3.0), 0.0, 1e-12);
  for (double kappa = 0.25; kappa <= 12.0; kappa += 0.25) {
    EXPECT_LE(c_sle(kappa), 1.0 + 1e-15);
    EXPECT_NEAR(c_sle(kappa), c_sle(16.0 / kappa), 1e-12);
  }
}

TEST(Fields, LiouvilleCharge) {
  EXPECT_NEAR(c_liouville(std::sqrt(8.0 / 3.0)), 26.0, 1e-12);
  EXPECT_NEAR(c_liouville(std::sqrt(2.0)), 1.0 + 6.0 * 4.5, 1e-12);
  const Coupling l = liouville_coupling(1.0);
  EXPECT_NEAR(l.c, 1.0 + 6.0 * l.q * l.q, 1e-12);
}

TEST(Fields, ChiRoundTrip) {
  for (double c : {1.0, 0.5, 0.0, -2.0, -25.0}) {
    EXPECT_NEAR(charge_of_chi(chi_of_charge(c)), c, 1e-12 * (1 + std::abs(c)));
    const Coupling m = matter_coupling(c);
    EXPECT_NEAR(m.c, 1.0 - 6.0 * m.chi * m.chi, 1e-12 * (1 + std::abs(c)));
  }
  EXPECT_THROW(chi_of_charge(2.0), Error);
}

TEST(Fields, ChargeSum) {
  EXPECT_TRUE(charge_sum_check(std::vector<Coupling>{liouville_coupling(std::sqrt(8.0 / 3.0)), sle_coupling(8.0 / 3.0)}));
  for (double x : {0.0, 0.3, 7.5}) EXPECT_TRUE(charge_sum_check(std::vector<double>{25.0 + x, 1.0 - x}));
  EXPECT_FALSE(charge_sum_check(std::vector<double>{27.0, 0.0}));
}

TEST(Fields, GridLaplacian) {
  const Eigen::MatrixXd l3 = grid_laplacian(3);
  ASSERT_EQ(l3.rows(), 1);
  EXPECT_EQ(l3(0, 0), 4.0);
  EXPECT_DOUBLE_EQ(l3.inverse()(0, 0), 0.25);
  // Interior of a 4x4 grid is a 4-cycle: eigenvalues 2, 4, 4, 6.
  EXPECT_NEAR(grid_laplacian(4).determinant(), 192.0, 1e-9);
  EXPECT_THROW(sample_gff(2, 1, 1), Error);
}

TEST(Fields, GffVarianceOnSingleVertex) {
  const auto batch = sample_gff_batch(3, 1, 20000, 17);
  ASSERT_EQ(batch.size(), 1u);
  const double var = batch[0].squaredNorm() / 20000.0;
  // Sample variance of a normal has stderr sigma^2 sqrt(2/N).
  EXPECT_NEAR(var, 0.25, 5 * 0.25 * std::sqrt(2.0 / 20000));
}

TEST(Fields, GffIsDeterministic) {
  const FieldVector a = sample_gff(6, 2, 99);
  const FieldVector b = sample_gff(6, 2, 99);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.values.rows(), 16);
  EXPECT_EQ(a.values.cols(), 2);
  EXPECT_NE(sample_gff(6, 2, 100).values, a.values);
}

TEST(Fields, RotateIdentityAndInvolution) {
  FieldVector fv = sample_gff(5, 2, 3);
  fv.charges = {-2.0, 1.0};
  const FieldVector same = rotate_fields(fv, Eigen::MatrixXd::Identity(2, 2));
  EXPECT_EQ(same.values, fv.values);
  EXPECT_NEAR(same.charges[0], -2.0, 1e-12);
  EXPECT_NEAR(same.charges[1], 1.0, 1e-12);
  const Eigen::MatrixXd a = random_orthogonal(2, 8);
  const FieldVector back = rotate_fields(rotate_fields(fv, a, false), a.transpose(), false);
  EXPECT_LT((back.values - fv.values).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Fields, RotateChargesExamples) {
  const auto zero = rotate_charges({1.0, 1.0}, rotation2(0.3), true);
  EXPECT_NEAR(zero[0], 1.0, 1e-15);
  EXPECT_NEAR(zero[1], 1.0, 1e-15);
  const double chi1 = 0.6;
  const double chi2 = 0.8;
  const double r = std::hypot(chi1, chi2);
  Eigen::MatrixXd to_axis(2, 2);
  to_axis << chi1 / r, chi2 / r, -chi2 / r, chi1 / r;
  const auto out = rotate_charges({charge_of_chi(chi1), charge_of_chi(chi2)}, to_axis, true);
  EXPECT_NEAR(out[0], 1.0 - 6.0 * (chi1 * chi1 + chi2 * chi2), 1e-12);
  EXPECT_NEAR(out[1], 1.0, 1e-12);
}

TEST(Fields, RotateErrors) {
  FieldVector fv = sample_gff(4, 2, 1);
  fv.charges = {-2.0, -2.0};
  Eigen::MatrixXd bad(2, 2);
  bad << 1, 1, 0, 1;
  try {
    rotate_fields(fv, bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotOrthogonal);
  }
  try {
    rotate_fields(fv, rotation2(3 * kPi / 4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativeChi);
  }
  EXPECT_NO_THROW(rotate_fields(fv, rotation2(3 * kPi / 4), false));
}

TEST(Fields, ChargeSumConservedUnderRandomRotations) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-20.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 5;
    const Eigen::MatrixXd a = random_orthogonal(n, 1000 + trial);
    EXPECT_TRUE(is_orthogonal(a));
    std::vector<double> c(n);
    for (double& x : c) x = u(rng);
    const auto out = rotate_charges(c, a, false);
    double before = 0.0;
    double after = 0.0;
    for (int i = 0; i < n; ++i) {
      before += c[i];
      after += out[i];
    }
    EXPECT_NEAR(after, before, 1e-12 * (1 + std::abs(before)));
  }
}

TEST(Fields, RotationIndependence) {
  const RotationStats s = rotation_independence_test(6, rotation2(kPi / 4), 10000, 3, {-2.0, 1.0});
  EXPECT_LT(s.max_cross_z, 4.0);
  EXPECT_LT(s.max_marginal_z, 5.0);
  EXPECT_NEAR(s.charge_sum_after, s.charge_sum_before, 1e-12);
}

TEST(Fields, SpanningTreeExamples) {
  EXPECT_EQ(spanning_tree_count(complete_graph(3)), 3u);
  EXPECT_EQ(spanning_tree_count(path_graph(4)), 1u);
  EXPECT_EQ(spanning_tree_count(complete_graph(4)), 16u);
  for (int n = 2; n <= 8; ++n) EXPECT_EQ(spanning_tree_count(complete_graph(n)), cayley(n));
  Graph split;
  split.vertices = 4;
  split.edges = {{0, 1}, {2, 3}};
  try {
    spanning_tree_count(split);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Disconnected);
  }
}

TEST(Fields, MatrixTreeMatchesBruteForce) {
  std::mt19937_64 rng(21);
  int checked = 0;
  while (checked < 60) {
    Graph g;
    g.vertices = 3 + static_cast<int>(rng() % 4);
    const int m = g.vertices - 1 + static_cast<int>(rng() % 6);
    for (int e = 0; e < m; ++e) {
      const int u = static_cast<int>(rng() % g.vertices);
      const int v = static_cast<int>(rng() % g.vertices);
      if (u != v) g.edges.push_back({u, v});
    }
    const std::uint64_t brute = spanning_tree_count_brute(g);
    if (brute == 0) continue;
    EXPECT_EQ(spanning_tree_count(g), brute);
    ++checked;
  }
}

TEST(Fields, BareissDeterminant) {
  EXPECT_EQ(static_cast<long long>(bareiss_determinant({{2, -1}, {-1, 2}})), 3);
  EXPECT_EQ(static_cast<long long>(bareiss_determinant({{0, 1}, {1, 0}})), -1);
  EXPECT_EQ(static_cast<long long>(bareiss_determinant({{1, 2}, {2, 4}})), 0);
  const __int128 big = static_cast<__int128>(1) << 100;
  EXPECT_THROW(bareiss_determinant({{big, big}, {big, 3}}), Error);
}

TEST(Fields, PartitionGridOverflowIsReportedNotSingular) {
  try {
    gaussian_partition_identity(grid_graph(10));
    FAIL() << "expected overflow error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
}

TEST(Fields, PartitionIdentitySingleVertex) {
  Graph star;
  star.vertices = 5;
  star.edges = {{0, 1}, {0, 2}, {0, 3}, {0, 4}};
  star.boundary = {1, 2, 3, 4};
  const PartitionIdentity p = gaussian_partition_identity(star);
  EXPECT_EQ(p.interior, 1);
  EXPECT_NEAR(p.integral, std::sqrt(kPi / 4), 1e-14);
  EXPECT_EQ(p.determinant, 4.0);
  EXPECT_NEAR(p.integral * p.integral * p.determinant, kPi, 1e-13);
}

TEST(Fields, PartitionIdentityGrids) {
  const PartitionIdentity four = gaussian_partition_identity(grid_graph(4));
  EXPECT_EQ(four.interior, 4);
  EXPECT_EQ(four.determinant, 192.0);
  EXPECT_LT(four.residual, 1e-12);
  for (int L = 3; L <= 8; ++L) EXPECT_LT(gaussian_partition_identity(grid_graph(L)).residual, 1e-10);
}

TEST(Fields, PartitionIdentityIgnoresBoundaryComponent) {
  Graph g = grid_graph(5);
  const double base = gaussian_partition_identity(g).residual;
  g.edges.push_back({g.vertices, g.vertices + 1});
  g.boundary.push_back(g.vertices);
  g.boundary.push_back(g.vertices + 1);
  g.vertices += 2;
  const PartitionIdentity extended = gaussian_partition_identity(g);
  EXPECT_EQ(extended.interior, 9);
  EXPECT_EQ(extended.residual, base);
}

TEST(Fields, GraphTextRoundTrip) {
  const Graph g = grid_graph(4);
  const std::string text = graph_to_text(g);
  std::istringstream in(text);
  const Graph back = parse_graph(in);
  EXPECT_EQ(back.edges, g.edges);
  EXPECT_EQ(graph_to_text(back), text);
  std::istringstream bad("0 x\n");
  EXPECT_THROW(parse_graph(bad), Error);
}
