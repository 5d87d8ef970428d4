#include "quiltlab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "quiltlab/curvature.hpp"
#include "quiltlab/fields.hpp"
#include "quiltlab/fillings.hpp"
#include "quiltlab/mating.hpp"
#include "quiltlab/meander.hpp"
#include "quiltlab/rng.hpp"
#include "quiltlab/template.hpp"
#include "quiltlab/verify.hpp"
#include "quiltlab/version.hpp"
#include "quiltlab/winding.hpp"

namespace quiltlab {

namespace {

using ordered_json = nlohmann::ordered_json;

/// Raised for bad flag values or unreadable inputs discovered after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::uint64_t seed = 1;
  std::string out_path;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes to --out when given, otherwise to stdout.
void emit(Context& ctx, const std::string& text) {
  if (ctx.out_path.empty()) {
    ctx.out << text;
    return;
  }
  std::ofstream f(ctx.out_path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + ctx.out_path);
  f << text;
}

ordered_json provenance(const Context& ctx, ordered_json params) {
  return {{"version", kVersion}, {"seed", ctx.seed}, {"params", std::move(params)}};
}

Template read_template(const std::string& path) {
  std::istringstream in(read_file(path));
  return parse_template_text(in);
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad integer '" + item + "'");
    }
  }
  return out;
}

// ---- meander -------------------------------------------------------------

int meander_count(Context& ctx, int m, const std::string& method) {
  std::uint64_t count = 0;
  if (method == "pair") {
    count = enumerate_meanders(m).size();
  } else if (method == "serial") {
    count = enumerate_meanders_serial(m).size();
  } else {
    count = count_meanders_transfer(m);
  }
  ordered_json j;
  j["m"] = m;
  j["method"] = method;
  j["count"] = count;
  j["provenance"] = provenance(ctx, {{"size", m}});
  emit(ctx, j.dump(2) + "\n");
  return kExitOk;
}

int meander_verify(Context& ctx, int m) {
  const FactorizationReport r = verify_factorization(m);
  std::string text = fmt::format("{} meanders, {} θ-classes, factorization {}\n", r.total_meanders, r.classes.size(),
                                 r.ok() ? "OK" : "FAILED");
  for (const auto& v : r.violations) text += "violation: " + v + "\n";
  emit(ctx, text);
  return r.ok() ? kExitOk : kExitVerificationFailure;
}

int meander_classes(Context& ctx, int m) {
  const FactorizationReport r = verify_factorization(m);
  emit(ctx, classes_json(r) + "\n");
  return r.ok() ? kExitOk : kExitVerificationFailure;
}

// ---- curvature -----------------------------------------------------------

int curvature(Context& ctx, const std::string& path, bool closed) {
  std::istringstream in(read_file(path));
  const PolygonalCurve c = parse_curve_csv(in, closed);
  ordered_json j;
  j["vertices"] = c.vertices.size();
  j["closed"] = closed;
  const double turning = total_turning(c);
  j["total_turning"] = turning;
  j["turning_over_2pi"] = turning / (2.0 * std::numbers::pi);
  int code = kExitOk;
  if (closed) {
    j["simple"] = is_simple(c);
    if (is_simple(c)) {
      try {
        const HopfReport h = verify_hopf(c);
        j["hopf"] = {{"sign", h.sign}, {"tolerance", h.tolerance}, {"ok", true}};
      } catch (const Error& e) {
        j["hopf"] = {{"ok", false}, {"error", e.what()}};
        code = kExitVerificationFailure;
      }
    }
  }
  j["provenance"] = provenance(ctx, {{"in", path}, {"closed", closed}});
  emit(ctx, j.dump(2) + "\n");
  return code;
}

// ---- quilt ---------------------------------------------------------------

std::string condition_line(const char* name, const ConditionResult& c) {
  if (c.ok) return fmt::format("({}) ok\n", name);
  return fmt::format("({}) FAILED at face position {}: {}\n", name, c.face_index, c.detail);
}

int quilt_validate(Context& ctx, const std::string& path) {
  const Template t = read_template(path);
  const ValidityReport r = validate_template(t);
  std::string text = fmt::format("n {}\n", r.n);
  text += condition_line("a", r.a) + condition_line("b", r.b) + condition_line("c", r.c) + condition_line("d", r.d);
  text += r.valid() ? "valid\n" : "invalid\n";
  emit(ctx, text);
  return r.valid() ? kExitOk : kExitVerificationFailure;
}

std::vector<int> hole_budgets(const Template& t, const std::optional<int>& budget, const std::string& budgets) {
  if (!budgets.empty()) {
    auto b = parse_int_list(budgets);
    if (static_cast<int>(b.size()) != t.num_holes()) {
      throw UsageError(fmt::format("--budgets has {} entries for {} holes", b.size(), t.num_holes()));
    }
    for (int x : b) {
      if (x < 0) throw UsageError("budgets must be nonnegative");
    }
    return b;
  }
  if (!budget) throw UsageError("one of --budget or --budgets is required");
  return std::vector<int>(t.num_holes(), *budget);
}

int quilt_bijection(Context& ctx, const std::string& path, const std::optional<int>& budget,
                    const std::string& budgets) {
  const Template t = read_template(path);
  if (t.num_holes() < 2) throw UsageError("verify-bijection needs a subtemplate with at least two holes");
  const BijectionReport r = check_product_bijection(t, hole_budgets(t, budget, budgets));
  std::string text = to_text(r);
  if (r.fillings == 0) text += "BudgetExhausted: no filling within the budget\n";
  text += r.ok() && r.fillings > 0 ? "bijection OK\n" : "bijection FAILED\n";
  emit(ctx, text);
  return r.ok() && r.fillings > 0 ? kExitOk : kExitVerificationFailure;
}

int quilt_determinant(Context& ctx, const std::string& path, bool inject) {
  const Template t = read_template(path);
  ordered_json j;
  int code = kExitOk;
  try {
    const DeterminantReport r = side_length_map_determinant(t, inject);
    j["n"] = r.n;
    j["determinant"] = r.determinant;
    j["left_edges"] = r.left_edges;
    j["left_tree"] = r.left_tree;
    j["earliest_unique"] = r.earliest_unique;
    j["upper_triangular"] = r.upper_triangular;
    j["contour_edges"] = r.contour_edges;
    const bool ok = r.left_edges == 2 * r.n + 1 && r.left_tree && r.earliest_unique && r.upper_triangular;
    j["ok"] = ok;
    if (!ok) code = kExitVerificationFailure;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularMap) throw;
    j["ok"] = false;
    j["error"] = e.what();
    code = kExitVerificationFailure;
  }
  j["provenance"] = provenance(ctx, {{"in", path}, {"inject_fault", inject}});
  emit(ctx, j.dump(2) + "\n");
  return code;
}

int quilt_winding(Context& ctx, const std::string& path, const std::optional<int>& budget,
                  const std::string& budgets) {
  const Template t = read_template(path);
  const SubtemplateEmbedding emb = embed_subtemplate(t);
  const FillingEnumeration e = enumerate_fillings(t, hole_budgets(t, budget, budgets));
  if (e.fillings.empty()) throw Error(ErrorCode::BudgetExhausted, "no filling within the budget");
  std::vector<WindingLabels> labels;
  for (const auto& f : e.fillings) labels.push_back(compute_winding_labels(t, emb, filling_traversal(t, f.full)));
  double worst = 0.0;
  bool agree = true;
  for (const auto& l : labels) {
    const LabelAgreement a = compare_labels(labels.front(), l);
    agree = agree && a.agree(1e-6);
    worst = std::max(worst, a.max_difference);
  }
  ordered_json j;
  j["fillings"] = labels.size();
  j["x"] = emb.x;
  j["theta_x"] = labels.front().theta_x;
  j["total_turning"] = labels.front().total_turning;
  ordered_json theta = ordered_json::array();
  for (const auto& [v, value] : labels.front().theta) theta.push_back({{"vertex", v}, {"theta", value}});
  j["theta"] = theta;
  ordered_json sets = ordered_json::array();
  for (int h = 0; h < t.num_holes(); ++h) {
    ordered_json hole = ordered_json::array();
    for (const auto& arcs : admissible_arc_sets(t, emb, labels.front(), h)) {
      ordered_json set = ordered_json::array();
      for (const auto& a : arcs) set.push_back({a.from, a.to});
      hole.push_back(set);
    }
    sets.push_back(hole);
  }
  j["admissible_arc_sets"] = sets;
  j["max_difference"] = worst;
  j["agree"] = agree;
  j["provenance"] = provenance(ctx, {{"in", path}});
  emit(ctx, j.dump(2) + "\n");
  return agree ? kExitOk : kExitVerificationFailure;
}

// ---- mating --------------------------------------------------------------

int mating_simulate(Context& ctx, double gamma, double eps, int steps, std::uint64_t index) {
  const MotParams p = mot_params(gamma, eps, steps, ctx.seed);
  emit(ctx, simulation_to_json(simulate_discretized_disk(p, index)));
  return kExitOk;
}

int mating_calibrate(Context& ctx, const std::vector<double>& gammas, int steps) {
  std::vector<CalibrationRow> rows;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    const auto r = calibrate_covariance(mot_params(gammas[i], 0.1, 2000, ctx.seed), steps, i);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  emit(ctx, calibration_to_csv(rows));
  const bool ok = std::all_of(rows.begin(), rows.end(), [](const CalibrationRow& r) { return r.pass; });
  return ok ? kExitOk : kExitVerificationFailure;
}

// ---- fields --------------------------------------------------------------

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad number '" + item + "'");
    }
  }
  return out;
}

int fields_rotate(Context& ctx, int n, const std::string& charges_text, const std::optional<double>& angle, int grid,
                  int samples) {
  std::vector<double> charges = parse_double_list(charges_text);
  if (!charges.empty() && static_cast<int>(charges.size()) != n) {
    throw UsageError(fmt::format("--charges has {} entries for --n {}", charges.size(), n));
  }
  Eigen::MatrixXd A;
  if (angle) {
    if (n != 2) throw UsageError("--angle requires --n 2");
    A.resize(2, 2);
    A << std::cos(*angle), -std::sin(*angle), std::sin(*angle), std::cos(*angle);
  } else {
    A = random_orthogonal(n, stream_seed(ctx.seed, "cli-orthogonal", 0));
  }
  const RotationStats s = rotation_independence_test(grid, A, samples, ctx.seed, charges);
  ordered_json j;
  j["grid"] = grid;
  j["samples"] = samples;
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(n);
    for (int k = 0; k < n; ++k) row[k] = A(i, k);
    rows.push_back(row);
  }
  j["matrix"] = rows;
  j["max_cross_z"] = s.max_cross_z;
  j["max_marginal_z"] = s.max_marginal_z;
  j["max_marginal_rel"] = s.max_marginal_rel;
  bool ok = s.max_cross_z < 4.0 && s.max_marginal_z < 5.0;
  if (!charges.empty()) {
    const auto after = rotate_charges(charges, A, false);
    j["charges_before"] = charges;
    j["charges_after"] = after;
    j["charge_sum_before"] = s.charge_sum_before;
    j["charge_sum_after"] = s.charge_sum_after;
    const double drift = std::fabs(s.charge_sum_after - s.charge_sum_before);
    j["charge_drift"] = drift;
    ok = ok && drift <= 1e-12;
  }
  j["ok"] = ok;
  ordered_json params = {{"n", n}, {"grid", grid}, {"samples", samples}};
  if (angle) params["angle"] = *angle;
  j["provenance"] = provenance(ctx, params);
  emit(ctx, j.dump(2) + "\n");
  return ok ? kExitOk : kExitVerificationFailure;
}

Graph read_graph(const std::string& path) {
  std::istringstream in(read_file(path));
  return parse_graph(in);
}

int fields_kirchhoff(Context& ctx, const std::string& path) {
  const Graph g = read_graph(path);
  ordered_json j;
  j["vertices"] = g.vertices;
  j["edges"] = g.edges.size();
  const std::uint64_t count = spanning_tree_count(g);
  j["spanning_trees"] = count;
  bool ok = true;
  if (g.edges.size() <= 24) {
    const std::uint64_t brute = spanning_tree_count_brute(g);
    j["brute_force"] = brute;
    ok = brute == count;
  }
  j["ok"] = ok;
  j["provenance"] = provenance(ctx, {{"graph", path}});
  emit(ctx, j.dump(2) + "\n");
  return ok ? kExitOk : kExitVerificationFailure;
}

int fields_partition(Context& ctx, const std::optional<int>& grid, const std::string& path) {
  if (grid.has_value() == !path.empty()) throw UsageError("give exactly one of --grid or --graph");
  const Graph g = grid ? grid_graph(*grid) : read_graph(path);
  const PartitionIdentity r = gaussian_partition_identity(g);
  ordered_json j;
  j["interior"] = r.interior;
  j["integral"] = r.integral;
  j["determinant"] = r.determinant;
  j["residual"] = r.residual;
  const bool ok = r.residual < 1e-10;
  j["ok"] = ok;
  j["provenance"] = provenance(ctx, grid ? ordered_json{{"grid", *grid}} : ordered_json{{"graph", path}});
  emit(ctx, j.dump(2) + "\n");
  return ok ? kExitOk : kExitVerificationFailure;
}

// ---- verify-all ----------------------------------------------------------

int verify_all_command(Context& ctx, double budget, const std::string& fault, const std::string& format) {
  VerifyOptions o;
  o.seed = ctx.seed;
  o.budget_seconds = budget;
  o.inject_determinant_fault = fault == "determinant";
  std::ostream& err = ctx.err;
  o.progress = [&err](const CheckResult& r) {
    err << fmt::format("[{}] {} {} ({:.1f} s)\n", to_string(r.status), r.criterion, r.name, r.seconds);
  };
  const VerifyReport r = verify_all(o);
  emit(ctx, format == "json" ? report_to_json(r) : to_text(r));
  return r.ok() ? kExitOk : kExitVerificationFailure;
}

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("QUILTLAB_SEED");
  if (s == nullptr) return std::nullopt;
  const std::string text(s);
  try {
    std::size_t used = 0;
    if (text.empty() || text.front() == '-') throw std::invalid_argument(text);
    const auto v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("QUILTLAB_SEED must be a nonnegative integer, got '" + text + "'");
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"quilt-lab: meanders, templates and quilts, mating-of-trees simulation and field rotations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Context ctx{out, err, 1, {}};
  std::uint64_t seed = 1;
  int size = 0;
  std::string method = "pair";
  std::string in_path;
  bool closed = false;
  std::optional<int> budget;
  std::string budgets;
  bool inject = false;
  double gamma = 1.0;
  double eps = 0.1;
  int steps = 2000;
  std::uint64_t index = 0;
  std::vector<double> gammas;
  int n = 2;
  std::string charges;
  std::optional<double> angle;
  int grid = 16;
  int samples = 10000;
  std::optional<int> partition_grid;
  std::string graph_path;
  double time_budget = 900.0;
  std::string fault;
  std::string format = "text";

  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", ctx.out_path, "Output file (default stdout)"); };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Master seed (QUILTLAB_SEED overrides)")->capture_default_str();
  };
  auto add_size = [&](CLI::App* sub) {
    sub->add_option("--size", size, "Meander size m (2m-1 crossings)")->required()->check(CLI::Range(1, 9));
  };

  auto* meander = app.add_subcommand("meander", "Open meanders and the winding factorization");
  meander->require_subcommand(1);
  auto* m_count = meander->add_subcommand("count", "Count open meanders of size m");
  add_size(m_count);
  m_count->add_option("--method", method, "pair, serial or transfer")
      ->check(CLI::IsMember({"pair", "serial", "transfer"}))
      ->capture_default_str();
  add_out(m_count);
  auto* m_verify = meander->add_subcommand("verify", "Check the factorization of every winding class");
  add_size(m_verify);
  add_out(m_verify);
  auto* m_classes = meander->add_subcommand("classes", "Winding classes with their counts as JSON");
  add_size(m_classes);
  add_out(m_classes);

  auto* curv = app.add_subcommand("curvature", "Total turning of a polygonal curve");
  curv->add_option("--in", in_path, "CSV of x,y vertices")->required();
  curv->add_flag("--closed", closed, "Treat the curve as a closed loop and check the Umlaufsatz");
  add_out(curv);

  auto* quilt = app.add_subcommand("quilt", "Templates, subtemplates and fillings");
  quilt->require_subcommand(1);
  auto* q_validate = quilt->add_subcommand("validate", "Check conditions (a)-(d) of a template");
  q_validate->add_option("--in", in_path, "Template file")->required();
  add_out(q_validate);
  auto* q_bij = quilt->add_subcommand("verify-bijection", "Product bijection of fillings of a subtemplate");
  q_bij->add_option("--in", in_path, "Subtemplate file")->required();
  q_bij->add_option("--budget", budget, "Added 4-gons per hole")->check(CLI::Range(0, 6));
  q_bij->add_option("--budgets", budgets, "Comma-separated budgets, one per hole");
  add_out(q_bij);
  auto* q_det = quilt->add_subcommand("determinant", "Determinant of the side-length map");
  q_det->add_option("--in", in_path, "Template file")->required();
  q_det->add_flag("--inject-fault", inject, "Corrupt the matrix before factoring");
  add_out(q_det);
  auto* q_wind = quilt->add_subcommand("winding-labels", "Winding labels across all fillings of a subtemplate");
  q_wind->add_option("--in", in_path, "Subtemplate file")->required();
  q_wind->add_option("--budget", budget, "Added 4-gons per hole")->check(CLI::Range(0, 6));
  q_wind->add_option("--budgets", budgets, "Comma-separated budgets, one per hole");
  add_out(q_wind);

  auto* mating = app.add_subcommand("mating", "Mating-of-trees discretization");
  mating->require_subcommand(1);
  auto* sim = mating->add_subcommand("simulate", "Simulate one quilt and write it as JSON");
  sim->add_option("--gamma", gamma, "LQG parameter in (0, 2)")->capture_default_str();
  sim->add_option("--eps", eps, "Poisson time scale")->check(CLI::PositiveNumber)->capture_default_str();
  sim->add_option("--steps", steps, "Target walk steps")->check(CLI::Range(10, 10000000))->capture_default_str();
  sim->add_option("--index", index, "Stream index under the master seed")->capture_default_str();
  add_seed(sim);
  add_out(sim);
  auto* cal = mating->add_subcommand("calibrate", "Increment covariance check as CSV");
  cal->add_option("--gamma", gammas, "LQG parameters (default 0.5 1 1.4142135623730951 1.8)");
  cal->add_option("--steps", steps, "Walk steps")->check(CLI::Range(10, 10000000));
  add_seed(cal);
  add_out(cal);

  auto* fields = app.add_subcommand("fields", "Gaussian free fields and lattice determinant identities");
  fields->require_subcommand(1);
  auto* rot = fields->add_subcommand("rotate", "Rotate independent fields and test the result");
  rot->add_option("--n", n, "Number of fields")->check(CLI::Range(1, 16))->capture_default_str();
  rot->add_option("--charges", charges, "Comma-separated central charges");
  rot->add_option("--angle", angle, "Rotation angle for n = 2 (default: random orthogonal matrix)");
  rot->add_option("--grid", grid, "Grid side length")->check(CLI::Range(3, 64))->capture_default_str();
  rot->add_option("--samples", samples, "Samples per field")->check(CLI::Range(2, 10000000))->capture_default_str();
  add_seed(rot);
  add_out(rot);
  auto* kir = fields->add_subcommand("kirchhoff", "Spanning tree count of a graph file");
  kir->add_option("--graph", graph_path, "Graph file of `u v` and `B v` lines")->required();
  add_out(kir);
  auto* part = fields->add_subcommand("partition-identity", "Gaussian integral against the Laplacian determinant");
  part->add_option("--grid", partition_grid, "Grid side length")->check(CLI::Range(3, 8));
  part->add_option("--graph", graph_path, "Graph file of `u v` and `B v` lines");
  add_out(part);

  auto* va = app.add_subcommand("verify-all", "Run every acceptance check");
  add_seed(va);
  va->add_option("--budget", time_budget, "Time budget in seconds; 0 skips every check")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  va->add_option("--inject-fault", fault, "Deliberate fault for mutation testing")
      ->check(CLI::IsMember({"determinant"}));
  va->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  add_out(va);

  try {
    std::vector<std::string> reversed_args(args.rbegin(), args.rend());
    app.parse(reversed_args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    ctx.seed = env_seed().value_or(seed);
    if (m_count->parsed()) return meander_count(ctx, size, method);
    if (m_verify->parsed()) return meander_verify(ctx, size);
    if (m_classes->parsed()) return meander_classes(ctx, size);
    if (curv->parsed()) return curvature(ctx, in_path, closed);
    if (q_validate->parsed()) return quilt_validate(ctx, in_path);
    if (q_bij->parsed()) return quilt_bijection(ctx, in_path, budget, budgets);
    if (q_det->parsed()) return quilt_determinant(ctx, in_path, inject);
    if (q_wind->parsed()) return quilt_winding(ctx, in_path, budget, budgets);
    if (sim->parsed()) return mating_simulate(ctx, gamma, eps, steps, index);
    if (cal->parsed()) {
      if (gammas.empty()) gammas = {0.5, 1.0, std::numbers::sqrt2, 1.8};
      return mating_calibrate(ctx, gammas, cal->count("--steps") ? steps : 10000);
    }
    if (rot->parsed()) return fields_rotate(ctx, n, charges, angle, grid, samples);
    if (kir->parsed()) return fields_kirchhoff(ctx, graph_path);
    if (part->parsed()) return fields_partition(ctx, partition_grid, graph_path);
    if (va->parsed()) return verify_all_command(ctx, time_budget, fault, format);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::ParseError:
      case ErrorCode::InvalidArgument:
      case ErrorCode::GammaOutOfRange:
      case ErrorCode::SizeMismatch:
      case ErrorCode::NotOrthogonal:
      case ErrorCode::Disconnected:
      case ErrorCode::MissingOrder:
      case ErrorCode::WrongGonProfile:
        return kExitUsage;
      default:
        return kExitVerificationFailure;
    }
  }
  err << "error: no command\n";
  return kExitUsage;
}

}  // namespace quiltlab
