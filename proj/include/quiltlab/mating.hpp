#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "quiltlab/template.hpp"

namespace quiltlab {

/// Mating-of-trees constants for an LQG parameter gamma in (0, 2): the
/// variance a^2 = 2 / sin(pi gamma^2 / 4) and the correlation
/// -cos(pi gamma^2 / 4) of the boundary-length process (L, R).
struct MotParams {
  double gamma = 0.0;
  double variance = 0.0;
  double correlation = 0.0;
  double epsilon = 0.1;
  int steps = 2000;          ///< target number of grid steps of a walk
  std::uint64_t seed = 0;
  int restart_budget = 1000; ///< walk restarts allowed before giving up
  double delta_factor = 3.0; ///< stopping radius in units of the step deviation
};

/// Errors: GammaOutOfRange unless 0 < gamma < 2; InvalidArgument for a
/// nonpositive epsilon or step count.
MotParams mot_params(double gamma, double epsilon, int steps, std::uint64_t seed);

/// Grid path of (L, R) from (0, 1) to (0, 0) inside the closed quadrant.
struct ConeWalk {
  double dt = 0.0;
  std::vector<double> L;
  std::vector<double> R;
  std::int64_t redraws = 0;  ///< increments redrawn because they left the quadrant
  int restarts = 0;          ///< walks abandoned for exceeding the length cap
  double delta = 0.0;        ///< stopping radius used for the pinned end

  int num_steps() const { return static_cast<int>(L.size()) - 1; }
  double duration() const { return dt * num_steps(); }
};

/// Cone excursion sampler. The walk runs in coordinates where the increments
/// are standard Gaussian, so the quadrant becomes a wedge of opening
/// pi gamma^2 / 4. Each step adds the drift of the harmonic function that
/// vanishes on the wedge sides and has a pole at the apex, and increments
/// leaving the wedge are redrawn. The walk stops once it is within
/// delta_factor step deviations of the apex; the final point is set to
/// (0, 0). Walks longer than 50 times the target step count restart.
/// Errors: RejectionBudgetExceeded.
ConeWalk sample_cone_walk(const MotParams& p, std::mt19937_64& rng);

/// Correlated Gaussian walk from (0, 1) with the grid of the cone sampler but
/// without drift or conditioning.
ConeWalk sample_free_walk(const MotParams& p, int steps, std::mt19937_64& rng);

/// Interval lengths of [0, t] cut at the points of a rate-1/epsilon Poisson
/// process. The lengths sum to t.
std::vector<double> poisson_partition(double t, double epsilon, std::mt19937_64& rng);

/// Side lengths of one cell in the order (l-, l+, r-, r+).
using Cell = std::array<double, 4>;

struct CellLengths {
  std::vector<Cell> cells;  ///< cells 0..n+1 with l0- = l_{n+1}+ = r_{n+1}+ = 0
  int n() const { return static_cast<int>(cells.size()) - 2; }
};

/// Grid indices of the cell boundaries obtained by rounding the partial sums
/// of parts to the walk grid. Returns an empty vector when two boundaries
/// coincide or fewer than two cells remain.
std::vector<int> snap_partition(const ConeWalk& w, const std::vector<double>& parts);

/// Cell side lengths from running infima of the walk over each cell.
/// boundaries lists grid indices 0 = b_0 < b_1 < ... < b_{n+2} = last index.
/// Errors: PartitionMismatch.
CellLengths extract_cell_lengths(const ConeWalk& w, const std::vector<int>& boundaries);

/// Largest violation of the closing relations for cell n+1.
double conservation_residual(const CellLengths& c);

/// Strict inequalities of the cell-length constraint set S_n together with
/// l0+ > 0. The remaining lengths are nonnegative by construction.
bool satisfies_sn2(const CellLengths& c);

/// Grid version of staying in the open quadrant: L > 0 on cells 1..n and
/// R > 0 on cells 0..n.
bool stays_in_cone(const ConeWalk& w, const std::vector<int>& boundaries);

struct BuildLog {
  int zero_nudges = 0;       ///< zero lengths raised to the smallest positive double
  int collision_nudges = 0;  ///< split points moved by one ulp after a LengthCollision
};

/// Iterative quilt construction from cell lengths.
/// Errors: ConstraintViolated, LengthCollision (after 8 one-ulp retries).
Quilt build_quilt(const CellLengths& cells, BuildLog* log = nullptr);

struct Provenance {
  std::uint64_t seed = 0;
  std::int64_t rejections = 0;  ///< redrawn increments plus restarted walks
  int restarts = 0;
  int partition_resamples = 0;
  int zero_nudges = 0;
  int collision_nudges = 0;
  int walk_steps = 0;
  double delta = 0.0;
};

struct Simulation {
  MotParams params;
  CellLengths cells;
  Quilt quilt;
  Provenance provenance;
};

/// One pass of the pipeline on a given stream: a cone walk, then Poisson
/// partitions until one snaps to at least two cells and builds a quilt.
struct DiskRun {
  ConeWalk walk;
  std::vector<int> boundaries;
  CellLengths cells;
  Quilt quilt;
  BuildLog log;
  int partition_resamples = 0;
};

/// Errors: RejectionBudgetExceeded when no partition of the walk builds
/// within 1000 attempts.
DiskRun run_disk_pipeline(const MotParams& p, std::mt19937_64& rng);

/// End-to-end run: walk, partition, cell lengths, quilt. Uses the stream
/// ("mating", index) of the master seed.
/// Errors: propagated from the stages.
Simulation simulate_discretized_disk(const MotParams& p, std::uint64_t index = 0);

/// JSON record {"params", "cells", "quilt", "provenance"} and its parser.
std::string simulation_to_json(const Simulation& s);
Simulation simulation_from_json(const std::string& text);

/// Sample covariance of the walk increments divided by dt.
std::array<double, 3> increment_covariance(const ConeWalk& w);

/// One entry of the increment covariance check: var L, cov(L, R) or var R
/// per unit time against the model matrix. deviation is relative to the
/// variance a^2 for all three entries.
struct CalibrationRow {
  double gamma = 0.0;
  std::string entry;
  double empirical = 0.0;
  double target = 0.0;
  double deviation = 0.0;
  bool pass = false;
};

/// Increment covariance of a steps-long walk from the sampler's increment
/// generator on stream ("calibrate", index), with a 5% tolerance.
std::vector<CalibrationRow> calibrate_covariance(const MotParams& p, int steps, std::uint64_t index = 0);
/// CSV with header gamma,entry,empirical,target,deviation,pass.
std::string calibration_to_csv(const std::vector<CalibrationRow>& rows);
/// Errors: ParseError.
std::vector<CalibrationRow> parse_calibration_csv(const std::string& text);

/// Kolmogorov distribution tail P(K > lambda).
double kolmogorov_tail(double lambda);
/// One-sample KS p-value against a continuous CDF.
double ks_pvalue(std::vector<double> sample, const std::function<double(double)>& cdf);
/// Two-sample KS p-value.
double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b);

}  // namespace quiltlab
