#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "quiltlab/errors.hpp"

namespace quiltlab {

enum class CouplingRole { Matter, Liouville, Sle };

struct Coupling {
  double c = 0.0;
  double chi = 0.0;  ///< sqrt((1-c)/6), matter charges c <= 1
  double q = 0.0;    ///< sqrt((c-1)/6), Liouville charges c > 25
  CouplingRole role = CouplingRole::Matter;
};

/// 1 - 6 (2/sqrt(kappa) - sqrt(kappa)/2)^2
double c_sle(double kappa);
/// 1 + 6 (2/gamma + gamma/2)^2
double c_liouville(double gamma);
/// sqrt((1 - c)/6) for c <= 1. Errors: InvalidArgument.
double chi_of_charge(double c);
double charge_of_chi(double chi);

Coupling matter_coupling(double c);
Coupling liouville_coupling(double gamma);
Coupling sle_coupling(double kappa);

/// True iff the charges sum to 26 within 1e-9.
bool charge_sum_check(const std::vector<Coupling>& couplings);
bool charge_sum_check(const std::vector<double>& charges);

/// Dirichlet Laplacian of the interior of an L x L grid (degree 4 on the
/// diagonal, -1 between interior neighbours). Interior vertex (i, j) with
/// 1 <= i, j <= L-2 has index (i-1)(L-2) + (j-1).
Eigen::MatrixXd grid_laplacian(int L);

/// n independent zero-boundary GFF draws on an L x L grid, each with
/// covariance grid_laplacian(L)^{-1}.
struct FieldVector {
  int L = 0;
  Eigen::MatrixXd values;        ///< interior vertices x fields
  std::vector<double> charges;   ///< one central charge per field
};

/// Samples covariance-L^{-1} fields through a dense Cholesky factor.
/// Errors: InvalidArgument (L < 3).
FieldVector sample_gff(int L, int n, std::uint64_t seed);

/// Batched draws: returns one matrix (interior vertices x samples) per field.
/// Field i draws from stream ("gff", i).
std::vector<Eigen::MatrixXd> sample_gff_batch(int L, int n, int samples, std::uint64_t seed);

/// Rotates field values pointwise by A and maps the couplings chi -> A chi,
/// c -> 1 - 6 chi^2. With interpret_charges, negative rotated chi is an error.
/// Errors: NotOrthogonal, NegativeChi, SizeMismatch, InvalidArgument.
FieldVector rotate_fields(const FieldVector& fv, const Eigen::MatrixXd& A, bool interpret_charges = true);

/// Rotated couplings only (same rules as rotate_fields).
std::vector<double> rotate_charges(const std::vector<double>& charges, const Eigen::MatrixXd& A,
                                   bool interpret_charges);

/// Orthonormalization of a Gaussian matrix (Haar distributed).
Eigen::MatrixXd random_orthogonal(int n, std::uint64_t seed);
bool is_orthogonal(const Eigen::MatrixXd& A, double tol = 1e-12);

struct RotationStats {
  int L = 0;
  int samples = 0;
  double max_cross_z = 0.0;     ///< max |z| of same-vertex cross covariances
  double max_marginal_z = 0.0;  ///< max |z| of covariance entries vs the inverse Laplacian
  double max_marginal_rel = 0.0;
  double charge_sum_before = 0.0;
  double charge_sum_after = 0.0;
};

/// Samples n fields, rotates them by A, and compares cross covariances with 0
/// and each marginal covariance with the inverse Laplacian.
RotationStats rotation_independence_test(int L, const Eigen::MatrixXd& A, int samples, std::uint64_t seed,
                                         const std::vector<double>& charges = {});

/// Undirected multigraph with optional boundary vertices.
struct Graph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> boundary;
};

/// Lines `u v` add an edge, `B v` marks a boundary vertex, `#` starts a comment.
Graph parse_graph(std::istream& in);
/// Edge lines followed by boundary lines, readable by parse_graph.
std::string graph_to_text(const Graph& g);
Graph grid_graph(int L);  ///< L x L grid with the outer ring as boundary
Graph complete_graph(int n);
Graph path_graph(int n);

/// Exact determinant of an integer matrix by fraction-free elimination.
/// Errors: InvalidArgument when an intermediate product leaves the 128-bit range.
__int128 bareiss_determinant(std::vector<std::vector<__int128>> a);

/// Number of spanning trees via the reduced Laplacian. Errors: Disconnected.
std::uint64_t spanning_tree_count(const Graph& g);
/// Enumerates edge subsets of size V-1 and counts the acyclic ones.
std::uint64_t spanning_tree_count_brute(const Graph& g);

struct PartitionIdentity {
  int interior = 0;
  double integral = 0.0;     ///< integral of exp(-sum (phi_x - phi_y)^2) over interior values
  double determinant = 0.0;  ///< det of the interior Laplacian (exact integer)
  double residual = 0.0;     ///< |integral^2 det / pi^k - 1|
};

/// Gaussian integral computed from a Cholesky factor and compared against the
/// exact integer determinant. Errors: SingularLaplacian, InvalidArgument.
PartitionIdentity gaussian_partition_identity(const Graph& g);

}  // namespace quiltlab
