#include "quiltlab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "json.hpp"
#include "quiltlab/curvature.hpp"
#include "quiltlab/fields.hpp"
#include "quiltlab/fillings.hpp"
#include "quiltlab/fixtures.hpp"
#include "quiltlab/mating.hpp"
#include "quiltlab/meander.hpp"
#include "quiltlab/rng.hpp"
#include "quiltlab/template.hpp"
#include "quiltlab/winding.hpp"

namespace quiltlab {

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "PASS";
    case CheckStatus::Fail:
      return "FAIL";
    case CheckStatus::Skipped:
      return "skipped";
  }
  return "?";
}

bool VerifyReport::ok() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const CheckResult& c) { return c.status == CheckStatus::Fail; });
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

CheckResult make_result(int criterion, const char* name, bool pass, std::string detail) {
  CheckResult r;
  r.criterion = criterion;
  r.name = name;
  r.status = pass ? CheckStatus::Pass : CheckStatus::Fail;
  r.detail = std::move(detail);
  return r;
}

Template fixture_template(const std::string& name) {
  std::istringstream in(builtin_fixture(name).text);
  return parse_template_text(in);
}

const std::vector<double>& gammas() {
  static const std::vector<double> g = {0.5, 1.0, std::numbers::sqrt2, 1.8};
  return g;
}

/// Random star-shaped polygon: sorted angles with jitter and random radii.
PolygonalCurve random_star_polygon(std::mt19937_64& rng, int k) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  PolygonalCurve c;
  c.closed = true;
  const double step = 2.0 * std::numbers::pi / k;
  for (int i = 0; i < k; ++i) {
    const double angle = step * (i + 0.1 + 0.8 * unit(rng));
    const double radius = 0.2 + unit(rng);
    c.vertices.push_back({radius * std::cos(angle), radius * std::sin(angle)});
  }
  return c;
}

void all_templates(const TemplateBuilder& b, int remaining, std::vector<Template>& out) {
  if (remaining == 0) {
    out.push_back(b.finish());
    return;
  }
  for (int k = 1; k <= b.p(); ++k) {
    for (int kp = 1; kp <= b.q(); ++kp) {
      TemplateBuilder child = b;
      child.step(k, kp);
      all_templates(child, remaining - 1, out);
    }
  }
}

struct DeterminantTally {
  int checked = 0;
  int failures = 0;
  double worst = 0.0;
  std::string first_failure;

  void add(const Template& t, bool inject, const std::string& label) {
    ++checked;
    std::string why;
    try {
      const DeterminantReport r = side_length_map_determinant(t, inject);
      const int n = r.n;
      worst = std::max(worst, std::fabs(std::fabs(r.determinant) - 1.0));
      if (r.left_edges != 2 * n + 1) why = fmt::format("|E^l| = {} for n = {}", r.left_edges, n);
      if (!r.left_tree) why = "E^l is not a tree";
      if (!r.earliest_unique) why = "earliest-edge property fails";
      if (!r.upper_triangular) why = "left block not unit upper triangular";
    } catch (const Error& e) {
      why = e.what();
    }
    if (!why.empty()) {
      if (failures == 0) first_failure = label + ": " + why;
      ++failures;
    }
  }
};

}  // namespace

CheckResult check_meander_counts(std::uint64_t) {
  const auto t0 = Clock::now();
  const std::vector<std::uint64_t> expected = {1, 2, 8, 42, 262};
  bool ok = true;
  std::string counts;
  for (int m = 1; m <= 5; ++m) {
    const auto pair = enumerate_meanders(m).size();
    const auto serial = enumerate_meanders_serial(m).size();
    const auto transfer = count_meanders_transfer(m);
    ok = ok && pair == expected[m - 1] && serial == pair && transfer == pair;
    counts += fmt::format("{}{}", m == 1 ? "" : ",", pair);
  }
  ok = ok && since(t0) < 60.0;
  return make_result(1, "meander-counts", ok, fmt::format("m=1..5 counts {} (pair filter, serial, transfer)", counts));
}

CheckResult check_meander_factorization(std::uint64_t) {
  bool ok = true;
  std::size_t classes = 0;
  for (int m = 1; m <= 5; ++m) {
    const FactorizationReport r = verify_factorization(m);
    classes += r.classes.size();
    ok = ok && r.ok();
  }
  const FactorizationReport r4 = verify_factorization(4);
  const WindingFunction figure{{0, 1, 0, -1, 0, 1, 0}};
  bool figure_ok = false;
  for (const auto& c : r4.classes) {
    if (c.theta == figure) figure_ok = c.upper == 2 && c.lower == 2 && c.meanders == 4;
  }
  return make_result(2, "meander-factorization", ok && figure_ok,
                     fmt::format("{} classes over m<=5 factor; class (0,1,0,-1,0,1,0) {}", classes,
                                 figure_ok ? "has 4 = 2x2" : "does not have 4 = 2x2"));
}

CheckResult check_hopf(std::uint64_t seed) {
  auto rng = make_stream(seed, "verify-hopf", 0);
  std::uniform_int_distribution<int> size(3, 60);
  int failures = 0;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int k = size(rng);
    const PolygonalCurve c = random_star_polygon(rng, k);
    try {
      const HopfReport r = verify_hopf(c);
      worst = std::max(worst, (std::fabs(r.turning) - 2.0 * std::numbers::pi) / k);
      if (r.sign != 1) ++failures;
    } catch (const Error&) {
      ++failures;
    }
  }
  int convex_failures = 0;
  for (int k = 3; k <= 16; ++k) {
    PolygonalCurve c;
    c.closed = true;
    for (int i = 0; i < k; ++i) {
      const double a = 2.0 * std::numbers::pi * i / k;
      c.vertices.push_back({std::cos(a), std::sin(a)});
    }
    try {
      if (verify_hopf(c).sign != 1 || verify_hopf(reversed(c)).sign != -1) ++convex_failures;
    } catch (const Error&) {
      ++convex_failures;
    }
  }
  return make_result(3, "hopf-umlaufsatz", failures == 0 && convex_failures == 0,
                     fmt::format("1000 star polygons, {} failures, max excess/vertex {:.1e}; 14 convex "
                                 "fixtures, {} sign errors",
                                 failures, worst, convex_failures));
}

CheckResult check_product_bijection(std::uint64_t) {
  bool ok = true;
  std::string detail;
  for (const char* name : {"two_hole_a", "two_hole_b", "two_hole_c"}) {
    const Template sub = fixture_template(name);
    const auto t0 = Clock::now();
    std::string part = fmt::format("{}:", name);
    for (const std::vector<int>& budget : {std::vector<int>{3, 3}, std::vector<int>{3, 2}}) {
      const BijectionReport r = check_product_bijection(sub, budget);
      ok = ok && r.ok() && r.fillings > 0;
      part += fmt::format(" ({},{}) {}={}x{}{}", budget[0], budget[1], r.fillings, r.projections.at(0),
                          r.projections.at(1), r.ok() ? "" : " VIOLATION");
    }
    ok = ok && since(t0) < 300.0;
    detail += (detail.empty() ? "" : "; ") + part;
  }
  return make_result(4, "product-bijection", ok, detail);
}

CheckResult check_unit_determinant(std::uint64_t seed, bool inject_fault) {
  DeterminantTally tally;
  for (const char* name : {"template_n0", "template_n2", "template_n21"}) {
    tally.add(fixture_template(name), inject_fault, name);
  }
  for (int n = 0; n <= 4; ++n) {
    std::vector<Template> ts;
    all_templates(TemplateBuilder{}, n, ts);
    for (std::size_t i = 0; i < ts.size(); ++i) tally.add(ts[i], inject_fault, fmt::format("enumerated n={} #{}", n, i));
  }
  const int fixtures = tally.checked;
  for (std::size_t g = 0; g < gammas().size(); ++g) {
    const MotParams p = mot_params(gammas()[g], 0.05, 2000, seed);
    for (int i = 0; i < 250; ++i) {
      auto rng = make_stream(seed, "verify-determinant", g * 250 + i);
      const DiskRun run = run_disk_pipeline(p, rng);
      tally.add(run.quilt.tmpl, inject_fault, fmt::format("gamma {:.4f} run {}", gammas()[g], i));
    }
  }
  std::string detail = fmt::format("{} fixture and enumerated templates, {} simulated; {} failures, max ||det|-1| {:.1e}",
                                   fixtures, tally.checked - fixtures, tally.failures, tally.worst);
  if (tally.failures > 0) detail += "; first: " + tally.first_failure;
  return make_result(5, "unit-determinant", tally.failures == 0, detail);
}

CheckResult check_winding_labels(std::uint64_t) {
  bool ok = true;
  std::string detail;
  for (const char* name : {"two_hole_a", "two_hole_b", "two_hole_c"}) {
    const Template sub = fixture_template(name);
    const SubtemplateEmbedding emb = embed_subtemplate(sub);
    const FillingEnumeration e = enumerate_fillings(sub, 2);
    std::vector<WindingLabels> labels;
    for (const auto& f : e.fillings) labels.push_back(compute_winding_labels(sub, emb, filling_traversal(sub, f.full)));
    double worst = 0.0;
    bool agree = !labels.empty();
    bool arcs_ok = true;
    for (const auto& l : labels) {
      const LabelAgreement a = compare_labels(labels.front(), l);
      agree = agree && a.agree(1e-6);
      worst = std::max(worst, a.max_difference);
      arcs_ok = arcs_ok && std::fabs(std::fabs(l.total_turning) - 2.0 * std::numbers::pi) < 1e-9;
      arcs_ok = arcs_ok && hamiltonian_closure(sub, l.arcs);
    }
    std::vector<std::size_t> sizes;
    for (int h = 0; h < sub.num_holes() && !labels.empty(); ++h) {
      const auto sets = admissible_arc_sets(sub, emb, labels.front(), h);
      sizes.push_back(sets.size());
      for (const auto& l : labels) arcs_ok = arcs_ok && std::find(sets.begin(), sets.end(), l.arcs[h]) != sets.end();
    }
    ok = ok && agree && arcs_ok;
    detail += fmt::format("{}{}: {} fillings, {} labels, max diff {:.1e}, |A_i| {}{}", detail.empty() ? "" : "; ", name,
                          labels.size(), labels.empty() ? 0 : labels.front().theta.size(), worst,
                          fmt::join(sizes, "x"), arcs_ok ? "" : ", arc check failed");
  }
  return make_result(6, "winding-labels", ok, detail);
}

CheckResult check_mating_pipeline(std::uint64_t seed) {
  constexpr int kQuilts = 2500;
  constexpr int kFreeWalks = 1000;
  int invalid = 0;
  int mismatches = 0;
  int rejected = 0;
  int covariance_failures = 0;
  double worst_residual = 0.0;
  double worst_cov = 0.0;
  std::string error;
  for (std::size_t g = 0; g < gammas().size(); ++g) {
    const MotParams p = mot_params(gammas()[g], 0.05, 2000, seed);
    std::vector<char> valid(kQuilts, 0);
    std::vector<char> equivalent(kQuilts, 0);
    std::vector<double> residual(kQuilts, 0.0);
    std::vector<std::string> errors(kQuilts);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < kQuilts; ++i) {
      try {
        auto rng = make_stream(seed, "verify-mating", g * kQuilts + i);
        const DiskRun run = run_disk_pipeline(p, rng);
        valid[i] = validate_template(run.quilt.tmpl).valid();
        residual[i] = conservation_residual(run.cells);
        equivalent[i] = stays_in_cone(run.walk, run.boundaries) == satisfies_sn2(run.cells);
      } catch (const Error& e) {
        errors[i] = e.what();
      }
    }
    for (int i = 0; i < kQuilts; ++i) {
      if (!errors[i].empty() && error.empty()) error = errors[i];
      invalid += !valid[i];
      mismatches += !equivalent[i];
      worst_residual = std::max(worst_residual, residual[i]);
    }
    for (int i = 0; i < kFreeWalks; ++i) {
      auto rng = make_stream(seed, "verify-free-walk", g * kFreeWalks + i);
      const ConeWalk w = sample_free_walk(p, p.steps, rng);
      std::vector<int> b;
      while (b.empty()) b = snap_partition(w, poisson_partition(w.duration(), w.duration() / 8.0, rng));
      const CellLengths cells = extract_cell_lengths(w, b);
      const bool cone = stays_in_cone(w, b);
      rejected += !cone;
      mismatches += cone != satisfies_sn2(cells);
    }
    for (const auto& row : calibrate_covariance(p, 10000, g)) {
      worst_cov = std::max(worst_cov, row.deviation);
      covariance_failures += !row.pass;
    }
  }
  const int total = kQuilts * static_cast<int>(gammas().size());
  const bool ok = error.empty() && invalid == 0 && worst_residual < 1e-9 && mismatches == 0 && covariance_failures == 0;
  std::string detail = fmt::format(
      "{} quilts, {} invalid, max residual {:.1e}; cone<=>SN2 mismatches {} over {} accepted and {} free walks "
      "({} rejected); max covariance deviation {:.3f}",
      total, invalid, worst_residual, mismatches, total, kFreeWalks * gammas().size(), rejected, worst_cov);
  if (!error.empty()) detail += "; error: " + error;
  return make_result(7, "mating-pipeline", ok, detail);
}

CheckResult check_poisson_partition(std::uint64_t seed) {
  constexpr int kTrials = 10000;
  constexpr double t = 1.0;
  constexpr double eps = 0.1;
  auto rng = make_stream(seed, "verify-poisson", 0);
  double sum = 0.0;
  std::vector<double> first;
  for (int i = 0; i < kTrials; ++i) {
    const auto parts = poisson_partition(t, eps, rng);
    sum += static_cast<double>(parts.size());
    first.push_back(parts.front());
  }
  const double mean = sum / kTrials;
  const double sigma = std::sqrt(t / eps / kTrials);
  const double p = ks_pvalue(first, [&](double s) { return s >= t ? 1.0 : 1.0 - std::exp(-s / eps); });
  const bool ok = std::fabs(mean - 11.0) <= 3.0 * sigma && p > 0.01;
  return make_result(8, "poisson-partition", ok,
                     fmt::format("mean parts {:.4f} (11 +- {:.4f}), KS p = {:.3f}", mean, 3.0 * sigma, p));
}

CheckResult check_field_rotation(std::uint64_t seed) {
  auto rng = make_stream(seed, "verify-charges", 0);
  std::uniform_int_distribution<int> size(2, 6);
  std::uniform_real_distribution<double> charge(-20.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int n = size(rng);
    std::vector<double> c(n);
    for (auto& x : c) x = charge(rng);
    const Eigen::MatrixXd A = random_orthogonal(n, stream_seed(seed, "verify-orthogonal", i));
    const auto after = rotate_charges(c, A, false);
    double before_sum = 0.0;
    double after_sum = 0.0;
    for (int j = 0; j < n; ++j) {
      before_sum += c[j];
      after_sum += after[j];
    }
    worst = std::max(worst, std::fabs(after_sum - before_sum));
  }
  const double angle = std::numbers::pi / 4.0;
  Eigen::MatrixXd R(2, 2);
  R << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  const RotationStats s = rotation_independence_test(16, R, 10000, stream_seed(seed, "verify-rotation", 0), {-2.0, 1.0});
  const bool ok = worst <= 1e-12 && s.max_cross_z < 4.0 && s.max_marginal_z < 5.0;
  return make_result(9, "field-rotation", ok,
                     fmt::format("charge drift {:.1e} over 1000 matrices; 16x16 grid, 10000 samples: max cross z "
                                 "{:.2f}, max marginal z {:.2f}",
                                 worst, s.max_cross_z, s.max_marginal_z));
}

CheckResult check_lattice_identities(std::uint64_t seed) {
  int graphs = 0;
  int tree_failures = 0;
  auto check_graph = [&](const Graph& g) {
    ++graphs;
    if (spanning_tree_count(g) != spanning_tree_count_brute(g)) ++tree_failures;
  };
  for (int n = 2; n <= 5; ++n) {
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    }
    for (std::uint32_t mask = 1; mask < (1u << pairs.size()); ++mask) {
      Graph g;
      g.vertices = n;
      for (std::size_t e = 0; e < pairs.size(); ++e) {
        if (mask >> e & 1) g.edges.push_back(pairs[e]);
      }
      try {
        check_graph(g);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::Disconnected) throw;
        --graphs;
      }
    }
  }
  auto rng = make_stream(seed, "verify-graphs", 0);
  std::uniform_int_distribution<int> vertex(0, 5);
  for (int i = 0; i < 300; ++i) {
    Graph g;
    g.vertices = 6;
    for (int v = 1; v < 6; ++v) g.edges.emplace_back(std::uniform_int_distribution<int>(0, v - 1)(rng), v);
    const int extra = std::uniform_int_distribution<int>(0, 8)(rng);
    for (int e = 0; e < extra; ++e) {
      const int u = vertex(rng);
      const int v = vertex(rng);
      if (u != v) g.edges.emplace_back(u, v);
    }
    check_graph(g);
  }
  check_graph(complete_graph(6));
  check_graph(path_graph(6));

  double worst = 0.0;
  for (int L = 3; L <= 8; ++L) worst = std::max(worst, gaussian_partition_identity(grid_graph(L)).residual);
  Graph star;
  star.vertices = 5;
  star.edges = {{0, 1}, {0, 2}, {0, 3}, {0, 4}};
  star.boundary = {1, 2, 3, 4};
  worst = std::max(worst, gaussian_partition_identity(star).residual);

  double duality = 0.0;
  for (double kappa = 0.25; kappa <= 12.0; kappa += 0.25) {
    duality = std::max(duality, std::fabs(c_sle(kappa) - c_sle(16.0 / kappa)));
  }
  const double c2 = c_sle(2.0);
  const bool ok = tree_failures == 0 && worst < 1e-10 && std::fabs(c2 + 2.0) <= 1e-12 && duality <= 1e-12;
  return make_result(10, "lattice-identities", ok,
                     fmt::format("matrix-tree {} graphs, {} mismatches; partition residual {:.1e}; c_sle(2) = {:.15g}; "
                                 "duality error {:.1e}",
                                 graphs, tree_failures, worst, c2, duality));
}

const std::vector<CheckEntry>& check_registry() {
  static const std::vector<CheckEntry> entries = {
      {1, "meander-counts", [](const VerifyOptions& o) { return check_meander_counts(o.seed); }},
      {2, "meander-factorization", [](const VerifyOptions& o) { return check_meander_factorization(o.seed); }},
      {3, "hopf-umlaufsatz", [](const VerifyOptions& o) { return check_hopf(o.seed); }},
      {4, "product-bijection", [](const VerifyOptions& o) { return check_product_bijection(o.seed); }},
      {5, "unit-determinant",
       [](const VerifyOptions& o) { return check_unit_determinant(o.seed, o.inject_determinant_fault); }},
      {6, "winding-labels", [](const VerifyOptions& o) { return check_winding_labels(o.seed); }},
      {7, "mating-pipeline", [](const VerifyOptions& o) { return check_mating_pipeline(o.seed); }},
      {8, "poisson-partition", [](const VerifyOptions& o) { return check_poisson_partition(o.seed); }},
      {9, "field-rotation", [](const VerifyOptions& o) { return check_field_rotation(o.seed); }},
      {10, "lattice-identities", [](const VerifyOptions& o) { return check_lattice_identities(o.seed); }},
  };
  return entries;
}

VerifyReport verify_all(const VerifyOptions& options) {
  VerifyReport report;
  report.seed = options.seed;
  report.budget_seconds = options.budget_seconds;
  report.inject_determinant_fault = options.inject_determinant_fault;
  const auto start = Clock::now();
  for (const auto& entry : check_registry()) {
    CheckResult r;
    if (options.budget_seconds <= 0.0 || since(start) >= options.budget_seconds) {
      r.criterion = entry.criterion;
      r.name = entry.name;
      r.status = CheckStatus::Skipped;
    } else {
      const auto t0 = Clock::now();
      try {
        r = entry.run(options);
      } catch (const std::exception& e) {
        r = make_result(entry.criterion, entry.name, false, std::string("error: ") + e.what());
      }
      r.seconds = since(t0);
    }
    if (options.progress) options.progress(r);
    report.checks.push_back(std::move(r));
  }
  return report;
}

std::string to_text(const VerifyReport& r) {
  std::string out = fmt::format("quilt-lab {} verify-all seed={} budget={}s{}\n", kVersion, r.seed, r.budget_seconds,
                                r.inject_determinant_fault ? " inject-fault=determinant" : "");
  for (const auto& c : r.checks) {
    out += fmt::format("[{}] {} {}", to_string(c.status), c.criterion, c.name);
    if (!c.detail.empty()) out += ": " + c.detail;
    out += "\n";
  }
  int pass = 0;
  int fail = 0;
  int skipped = 0;
  for (const auto& c : r.checks) {
    pass += c.status == CheckStatus::Pass;
    fail += c.status == CheckStatus::Fail;
    skipped += c.status == CheckStatus::Skipped;
  }
  out += fmt::format("summary: {} passed, {} failed, {} skipped\n", pass, fail, skipped);
  return out;
}

std::string report_to_json(const VerifyReport& r) {
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  j["seed"] = r.seed;
  j["budget_seconds"] = r.budget_seconds;
  j["inject_fault"] = r.inject_determinant_fault;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    j["checks"].push_back({{"criterion", c.criterion},
                           {"name", c.name},
                           {"status", to_string(c.status)},
                           {"detail", c.detail}});
  }
  return j.dump(2) + "\n";
}

VerifyReport report_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::ordered_json::parse(text);
    VerifyReport r;
    r.seed = j.at("seed").get<std::uint64_t>();
    r.budget_seconds = j.at("budget_seconds").get<double>();
    r.inject_determinant_fault = j.at("inject_fault").get<bool>();
    for (const auto& c : j.at("checks")) {
      CheckResult cr;
      cr.criterion = c.at("criterion").get<int>();
      cr.name = c.at("name").get<std::string>();
      const std::string status = c.at("status").get<std::string>();
      if (status == "PASS") {
        cr.status = CheckStatus::Pass;
      } else if (status == "FAIL") {
        cr.status = CheckStatus::Fail;
      } else if (status == "skipped") {
        cr.status = CheckStatus::Skipped;
      } else {
        throw Error(ErrorCode::ParseError, "unknown status " + status);
      }
      cr.detail = c.at("detail").get<std::string>();
      r.checks.push_back(std::move(cr));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

}  // namespace quiltlab
