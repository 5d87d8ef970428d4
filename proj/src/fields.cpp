#include "quiltlab/fields.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <numeric>
#include <sstream>

#include "quiltlab/rng.hpp"

namespace quiltlab {

double c_sle(double kappa) {
  if (!(kappa > 0.0)) throw Error(ErrorCode::InvalidArgument, "kappa must be positive");
  const double s = std::sqrt(kappa);
  const double t = 2.0 / s - s / 2.0;
  return 1.0 - 6.0 * t * t;
}

double c_liouville(double gamma) {
  if (!(gamma > 0.0)) throw Error(ErrorCode::InvalidArgument, "gamma must be positive");
  const double q = 2.0 / gamma + gamma / 2.0;
  return 1.0 + 6.0 * q * q;
}

double chi_of_charge(double c) {
  if (c > 1.0) throw Error(ErrorCode::InvalidArgument, "matter charge must be at most 1");
  return std::sqrt((1.0 - c) / 6.0);
}

double charge_of_chi(double chi) { return 1.0 - 6.0 * chi * chi; }

Coupling matter_coupling(double c) {
  Coupling k;
  k.c = c;
  k.chi = chi_of_charge(c);
  k.role = CouplingRole::Matter;
  return k;
}

Coupling liouville_coupling(double gamma) {
  Coupling k;
  k.c = c_liouville(gamma);
  k.q = 2.0 / gamma + gamma / 2.0;
  k.role = CouplingRole::Liouville;
  return k;
}

Coupling sle_coupling(double kappa) {
  Coupling k;
  k.c = c_sle(kappa);
  k.chi = std::fabs(2.0 / std::sqrt(kappa) - std::sqrt(kappa) / 2.0);
  k.role = CouplingRole::Sle;
  return k;
}

bool charge_sum_check(const std::vector<double>& charges) {
  const double sum = std::accumulate(charges.begin(), charges.end(), 0.0);
  return std::fabs(sum - 26.0) < 1e-9;
}

bool charge_sum_check(const std::vector<Coupling>& couplings) {
  std::vector<double> c;
  for (const auto& k : couplings) c.push_back(k.c);
  return charge_sum_check(c);
}

Eigen::MatrixXd grid_laplacian(int L) {
  if (L < 3) throw Error(ErrorCode::InvalidArgument, "grid size must be at least 3");
  const int w = L - 2;
  const int k = w * w;
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < w; ++i) {
    for (int j = 0; j < w; ++j) {
      const int v = i * w + j;
      lap(v, v) = 4.0;
      if (i + 1 < w) lap(v, v + w) = lap(v + w, v) = -1.0;
      if (j + 1 < w) lap(v, v + 1) = lap(v + 1, v) = -1.0;
    }
  }
  return lap;
}

std::vector<Eigen::MatrixXd> sample_gff_batch(int L, int n, int samples, std::uint64_t seed) {
  if (n < 1 || samples < 1) throw Error(ErrorCode::InvalidArgument, "need at least one field and sample");
  const Eigen::MatrixXd lap = grid_laplacian(L);
  const Eigen::LLT<Eigen::MatrixXd> llt(lap);
  const Eigen::MatrixXd lower = llt.matrixL();
  const int k = static_cast<int>(lap.rows());
  std::vector<Eigen::MatrixXd> out;
  out.reserve(n);
  for (int f = 0; f < n; ++f) {
    auto rng = make_stream(seed, "gff", static_cast<std::uint64_t>(f));
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd z(k, samples);
    for (int s = 0; s < samples; ++s) {
      for (int v = 0; v < k; ++v) z(v, s) = normal(rng);
    }
    lower.transpose().triangularView<Eigen::Upper>().solveInPlace(z);
    out.push_back(std::move(z));
  }
  return out;
}

FieldVector sample_gff(int L, int n, std::uint64_t seed) {
  const auto batch = sample_gff_batch(L, n, 1, seed);
  FieldVector fv;
  fv.L = L;
  fv.values.resize(batch[0].rows(), n);
  for (int f = 0; f < n; ++f) fv.values.col(f) = batch[f].col(0);
  fv.charges.assign(n, 1.0);
  return fv;
}

bool is_orthogonal(const Eigen::MatrixXd& A, double tol) {
  if (A.rows() != A.cols()) return false;
  const Eigen::MatrixXd defect = A.transpose() * A - Eigen::MatrixXd::Identity(A.rows(), A.cols());
  return defect.cwiseAbs().maxCoeff() <= tol;
}

std::vector<double> rotate_charges(const std::vector<double>& charges, const Eigen::MatrixXd& A,
                                   bool interpret_charges) {
  const int n = static_cast<int>(charges.size());
  if (A.rows() != n || A.cols() != n) throw Error(ErrorCode::SizeMismatch, "rotation size differs from field count");
  if (!is_orthogonal(A)) throw Error(ErrorCode::NotOrthogonal, "A^T A deviates from the identity");
  Eigen::VectorXd chi(n);
  for (int i = 0; i < n; ++i) chi(i) = chi_of_charge(charges[i]);
  const Eigen::VectorXd rotated = A * chi;
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    if (interpret_charges && rotated(i) < 0.0) {
      throw Error(ErrorCode::NegativeChi, "rotated chi " + std::to_string(i) + " is negative");
    }
    out[i] = charge_of_chi(rotated(i));
  }
  return out;
}

FieldVector rotate_fields(const FieldVector& fv, const Eigen::MatrixXd& A, bool interpret_charges) {
  if (A.rows() != fv.values.cols()) throw Error(ErrorCode::SizeMismatch, "rotation size differs from field count");
  FieldVector out;
  out.L = fv.L;
  out.charges = rotate_charges(fv.charges, A, interpret_charges);
  out.values = fv.values * A.transpose();
  return out;
}

Eigen::MatrixXd random_orthogonal(int n, std::uint64_t seed) {
  auto rng = make_stream(seed, "orthogonal", 0);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = normal(rng);
  }
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

RotationStats rotation_independence_test(int L, const Eigen::MatrixXd& A, int samples, std::uint64_t seed,
                                         const std::vector<double>& charges) {
  const int n = static_cast<int>(A.rows());
  if (!is_orthogonal(A)) throw Error(ErrorCode::NotOrthogonal, "A^T A deviates from the identity");
  const auto batch = sample_gff_batch(L, n, samples, seed);
  const int k = static_cast<int>(batch[0].rows());
  std::vector<Eigen::MatrixXd> rotated(n, Eigen::MatrixXd::Zero(k, samples));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) rotated[i] += A(i, j) * batch[j];
  }
  RotationStats stats;
  stats.L = L;
  stats.samples = samples;
  const double s = static_cast<double>(samples);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Eigen::ArrayXXd prod = rotated[i].array() * rotated[j].array();
      const Eigen::ArrayXd mean = prod.rowwise().mean();
      const Eigen::ArrayXd second = (prod * prod).rowwise().mean();
      for (int v = 0; v < k; ++v) {
        const double var = second(v) - mean(v) * mean(v);
        const double z = mean(v) / std::sqrt(var / s);
        stats.max_cross_z = std::max(stats.max_cross_z, std::fabs(z));
      }
    }
  }
  const Eigen::MatrixXd green = grid_laplacian(L).inverse();
  for (int i = 0; i < n; ++i) {
    const Eigen::MatrixXd& x = rotated[i];
    const Eigen::MatrixXd cov = x * x.transpose() / s;
    const Eigen::MatrixXd sq = x.cwiseProduct(x);
    const Eigen::MatrixXd second = sq * sq.transpose() / s;
    for (int u = 0; u < k; ++u) {
      for (int v = u; v < k; ++v) {
        const double var = second(u, v) - cov(u, v) * cov(u, v);
        const double z = (cov(u, v) - green(u, v)) / std::sqrt(var / s);
        stats.max_marginal_z = std::max(stats.max_marginal_z, std::fabs(z));
        if (u == v) {
          stats.max_marginal_rel = std::max(stats.max_marginal_rel, std::fabs(cov(u, v) / green(u, v) - 1.0));
        }
      }
    }
  }
  if (!charges.empty()) {
    const auto after = rotate_charges(charges, A, false);
    stats.charge_sum_before = std::accumulate(charges.begin(), charges.end(), 0.0);
    stats.charge_sum_after = std::accumulate(after.begin(), after.end(), 0.0);
  }
  return stats;
}

Graph parse_graph(std::istream& in) {
  Graph g;
  std::string line;
  int max_vertex = -1;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "B") {
      int v = 0;
      if (!(ls >> v) || v < 0) throw Error(ErrorCode::ParseError, "bad boundary line '" + line + "'");
      g.boundary.push_back(v);
      max_vertex = std::max(max_vertex, v);
      continue;
    }
    int u = 0;
    int v = 0;
    try {
      u = std::stoi(first);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad edge line '" + line + "'");
    }
    if (!(ls >> v) || u < 0 || v < 0) throw Error(ErrorCode::ParseError, "bad edge line '" + line + "'");
    g.edges.emplace_back(u, v);
    max_vertex = std::max({max_vertex, u, v});
  }
  g.vertices = max_vertex + 1;
  return g;
}

std::string graph_to_text(const Graph& g) {
  std::string out;
  for (const auto& [u, v] : g.edges) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  for (int b : g.boundary) out += "B " + std::to_string(b) + "\n";
  return out;
}

Graph grid_graph(int L) {
  Graph g;
  g.vertices = L * L;
  for (int i = 0; i < L; ++i) {
    for (int j = 0; j < L; ++j) {
      const int v = i * L + j;
      if (i + 1 < L) g.edges.emplace_back(v, v + L);
      if (j + 1 < L) g.edges.emplace_back(v, v + 1);
      if (i == 0 || j == 0 || i == L - 1 || j == L - 1) g.boundary.push_back(v);
    }
  }
  return g;
}

Graph complete_graph(int n) {
  Graph g;
  g.vertices = n;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) g.edges.emplace_back(u, v);
  }
  return g;
}

Graph path_graph(int n) {
  Graph g;
  g.vertices = n;
  for (int u = 0; u + 1 < n; ++u) g.edges.emplace_back(u, u + 1);
  return g;
}

__int128 bareiss_determinant(std::vector<std::vector<__int128>> a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return 1;
  __int128 sign = 1;
  __int128 prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < n; ++r) {
        if (a[r][k] != 0) {
          swap_row = r;
          break;
        }
      }
      if (swap_row < 0) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        __int128 lhs = 0;
        __int128 rhs = 0;
        __int128 diff = 0;
        if (__builtin_mul_overflow(a[i][j], a[k][k], &lhs) || __builtin_mul_overflow(a[i][k], a[k][j], &rhs) ||
            __builtin_sub_overflow(lhs, rhs, &diff)) {
          throw Error(ErrorCode::InvalidArgument, "exact determinant exceeds 128-bit range");
        }
        a[i][j] = diff / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

namespace {

int find_set(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

bool connected(const Graph& g) {
  if (g.vertices == 0) return false;
  std::vector<int> parent(g.vertices);
  std::iota(parent.begin(), parent.end(), 0);
  int components = g.vertices;
  for (const auto& [u, v] : g.edges) {
    const int a = find_set(parent, u);
    const int b = find_set(parent, v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

}  // namespace

std::uint64_t spanning_tree_count(const Graph& g) {
  if (!connected(g)) throw Error(ErrorCode::Disconnected, "graph is not connected");
  const int n = g.vertices;
  std::vector<std::vector<__int128>> lap(n - 1, std::vector<__int128>(n - 1, 0));
  for (const auto& [u, v] : g.edges) {
    if (u == v) continue;
    if (u > 0) lap[u - 1][u - 1] += 1;
    if (v > 0) lap[v - 1][v - 1] += 1;
    if (u > 0 && v > 0) {
      lap[u - 1][v - 1] -= 1;
      lap[v - 1][u - 1] -= 1;
    }
  }
  return static_cast<std::uint64_t>(bareiss_determinant(std::move(lap)));
}

std::uint64_t spanning_tree_count_brute(const Graph& g) {
  const int n = g.vertices;
  const int m = static_cast<int>(g.edges.size());
  if (n == 1) return 1;
  std::uint64_t count = 0;
  std::vector<int> pick(m, 0);
  std::fill(pick.end() - std::min(m, n - 1), pick.end(), 1);
  if (m < n - 1) return 0;
  do {
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    bool acyclic = true;
    for (int e = 0; e < m && acyclic; ++e) {
      if (!pick[e]) continue;
      const int a = find_set(parent, g.edges[e].first);
      const int b = find_set(parent, g.edges[e].second);
      if (a == b) acyclic = false;
      parent[a] = b;
    }
    if (acyclic) ++count;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return count;
}

PartitionIdentity gaussian_partition_identity(const Graph& g) {
  std::vector<int> index(g.vertices, -1);
  std::vector<bool> is_boundary(g.vertices, false);
  for (int b : g.boundary) {
    if (b >= 0 && b < g.vertices) is_boundary[b] = true;
  }
  int k = 0;
  for (int v = 0; v < g.vertices; ++v) {
    if (!is_boundary[v]) index[v] = k++;
  }
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "graph has no interior vertex");
  std::vector<std::vector<__int128>> exact(k, std::vector<__int128>(k, 0));
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(k, k);
  for (const auto& [u, v] : g.edges) {
    if (u == v) continue;
    const int a = index[u];
    const int b = index[v];
    if (a >= 0) exact[a][a] += 1;
    if (b >= 0) exact[b][b] += 1;
    if (a >= 0 && b >= 0) {
      exact[a][b] -= 1;
      exact[b][a] -= 1;
    }
  }
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) lap(i, j) = static_cast<double>(exact[i][j]);
  }
  const __int128 det = bareiss_determinant(exact);
  if (det <= 0) throw Error(ErrorCode::SingularLaplacian, "interior Laplacian is singular");
  const Eigen::LLT<Eigen::MatrixXd> llt(lap);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::SingularLaplacian, "Cholesky factorization failed");
  const Eigen::MatrixXd lower = llt.matrixL();
  // exp(-phi^T lap phi) integrates to prod_i sqrt(pi) / l_ii after y = L^T phi.
  double log_integral = 0.0;
  for (int i = 0; i < k; ++i) log_integral += 0.5 * std::log(std::numbers::pi) - std::log(lower(i, i));
  PartitionIdentity out;
  out.interior = k;
  out.integral = std::exp(log_integral);
  out.determinant = static_cast<double>(det);
  const double log_ratio = 2.0 * log_integral + std::log(out.determinant) - k * std::log(std::numbers::pi);
  out.residual = std::fabs(std::expm1(log_ratio));
  return out;
}

}  // namespace quiltlab
