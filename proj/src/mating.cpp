#include "quiltlab/mating.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"
#include "quiltlab/rng.hpp"
#include "quiltlab/version.hpp"

namespace quiltlab {

using ordered_json = nlohmann::ordered_json;

MotParams mot_params(double gamma, double epsilon, int steps, std::uint64_t seed) {
  if (!(gamma > 0.0 && gamma < 2.0)) {
    throw Error(ErrorCode::GammaOutOfRange, fmt::format("gamma = {} is outside (0, 2)", gamma));
  }
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  if (steps <= 0) throw Error(ErrorCode::InvalidArgument, "steps must be positive");
  MotParams p;
  const double angle = std::numbers::pi * gamma * gamma / 4.0;
  p.gamma = gamma;
  p.variance = 2.0 / std::sin(angle);
  p.correlation = -std::cos(angle);
  p.epsilon = epsilon;
  p.steps = steps;
  p.seed = seed;
  return p;
}

namespace {

/// Linear change of coordinates between (L, R) and standard Gaussian
/// coordinates (X, Y): L = a X, R = a (rho X + s Y).
struct Frame {
  double a = 0.0;
  double rho = 0.0;
  double s = 0.0;
  double wedge = 0.0;  ///< opening angle
  double alpha = 0.0;  ///< pi / wedge

  explicit Frame(const MotParams& p) {
    a = std::sqrt(p.variance);
    rho = p.correlation;
    wedge = std::numbers::pi * p.gamma * p.gamma / 4.0;
    s = std::sin(wedge);
    alpha = std::numbers::pi / wedge;
  }
  double L(double x, double) const { return a * x; }
  double R(double x, double y) const { return a * (rho * x + s * y); }
  double start_y() const { return 1.0 / (a * s); }
  double dt(int steps) const { return start_y() * start_y() / steps; }
};

}  // namespace

ConeWalk sample_cone_walk(const MotParams& p, std::mt19937_64& rng) {
  const Frame fr(p);
  std::normal_distribution<double> normal(0.0, 1.0);
  ConeWalk w;
  w.dt = fr.dt(p.steps);
  const double sd = std::sqrt(w.dt);
  w.delta = p.delta_factor * sd;
  const double offset = std::numbers::pi / 2.0 - fr.wedge;
  const std::size_t cap = static_cast<std::size_t>(p.steps) * 50;
  for (;;) {
    w.L.assign(1, 0.0);
    w.R.assign(1, 1.0);
    double x = 0.0;
    double y = fr.start_y();
    bool abandoned = false;
    while (std::hypot(x, y) >= w.delta) {
      if (w.L.size() > cap) {
        abandoned = true;
        break;
      }
      const double r = std::hypot(x, y);
      const double psi = std::atan2(y, x);
      const double phi = psi - offset;
      const double radial = -fr.alpha / r;
      const double angular = fr.alpha / (std::tan(fr.alpha * phi) * r);
      double dx = (radial * std::cos(psi) - angular * std::sin(psi)) * w.dt;
      double dy = (radial * std::sin(psi) + angular * std::cos(psi)) * w.dt;
      const double norm = std::hypot(dx, dy);
      if (norm > 3.0 * sd) {
        dx *= 3.0 * sd / norm;
        dy *= 3.0 * sd / norm;
      }
      double nx = 0.0;
      double ny = 0.0;
      int tries = 0;
      for (;;) {
        nx = x + dx + sd * normal(rng);
        ny = y + dy + sd * normal(rng);
        if (fr.L(nx, ny) > 0.0 && fr.R(nx, ny) > 0.0) break;
        ++w.redraws;
        if (++tries > 10000) {
          abandoned = true;
          break;
        }
      }
      if (abandoned) break;
      x = nx;
      y = ny;
      w.L.push_back(fr.L(x, y));
      w.R.push_back(fr.R(x, y));
    }
    if (!abandoned) break;
    if (++w.restarts > p.restart_budget) {
      throw Error(ErrorCode::RejectionBudgetExceeded, fmt::format("{} walk restarts", w.restarts - 1));
    }
  }
  w.L.push_back(0.0);
  w.R.push_back(0.0);
  return w;
}

ConeWalk sample_free_walk(const MotParams& p, int steps, std::mt19937_64& rng) {
  const Frame fr(p);
  std::normal_distribution<double> normal(0.0, 1.0);
  ConeWalk w;
  w.dt = fr.dt(p.steps);
  const double sd = std::sqrt(w.dt);
  double x = 0.0;
  double y = fr.start_y();
  w.L.assign(1, 0.0);
  w.R.assign(1, 1.0);
  for (int k = 0; k < steps; ++k) {
    x += sd * normal(rng);
    y += sd * normal(rng);
    w.L.push_back(fr.L(x, y));
    w.R.push_back(fr.R(x, y));
  }
  return w;
}

std::vector<double> poisson_partition(double t, double epsilon, std::mt19937_64& rng) {
  std::exponential_distribution<double> gap(1.0 / epsilon);
  std::vector<double> parts;
  double last = 0.0;
  for (;;) {
    const double next = last + gap(rng);
    if (next >= t) break;
    parts.push_back(next - last);
    last = next;
  }
  parts.push_back(t - last);
  return parts;
}

std::vector<int> snap_partition(const ConeWalk& w, const std::vector<double>& parts) {
  const int K = w.num_steps();
  std::vector<int> b = {0};
  double cum = 0.0;
  for (std::size_t j = 0; j + 1 < parts.size(); ++j) {
    cum += parts[j];
    const int idx = static_cast<int>(std::llround(cum / w.dt));
    if (idx <= b.back() || idx >= K) return {};
    b.push_back(idx);
  }
  b.push_back(K);
  if (b.size() < 3) return {};
  return b;
}

CellLengths extract_cell_lengths(const ConeWalk& w, const std::vector<int>& b) {
  const int K = w.num_steps();
  if (b.size() < 3 || b.front() != 0 || b.back() != K) {
    throw Error(ErrorCode::PartitionMismatch, "boundaries must run from 0 to the last grid index with two cells");
  }
  for (std::size_t j = 1; j < b.size(); ++j) {
    if (b[j] <= b[j - 1]) throw Error(ErrorCode::PartitionMismatch, "boundaries must increase strictly");
  }
  const std::size_t cells = b.size() - 1;
  CellLengths out;
  out.cells.resize(cells);
  auto min_over = [](const std::vector<double>& v, int lo, int hi) {
    return *std::min_element(v.begin() + lo, v.begin() + hi + 1);
  };
  for (std::size_t i = 0; i < cells; ++i) {
    const int lo = b[i];
    const int hi = b[i + 1];
    Cell& c = out.cells[i];
    if (i == 0) {
      const double mr = min_over(w.R, lo, hi);
      c = {0.0, w.L[hi] - w.L[lo], w.R[lo] - mr, w.R[hi] - mr};
    } else if (i + 1 == cells) {
      c = {w.L[lo] - w.L[hi], 0.0, w.R[lo] - w.R[hi], 0.0};
    } else {
      const double ml = min_over(w.L, lo, hi);
      const double mr = min_over(w.R, lo, hi);
      c = {w.L[lo] - ml, w.L[hi] - ml, w.R[lo] - mr, w.R[hi] - mr};
    }
  }
  return out;
}

double conservation_residual(const CellLengths& c) {
  const int n = c.n();
  double l = c.cells[0][1];
  double r = 1.0 + c.cells[0][3] - c.cells[0][2];
  for (int i = 1; i <= n; ++i) {
    l += c.cells[i][1] - c.cells[i][0];
    r += c.cells[i][3] - c.cells[i][2];
  }
  return std::max(std::fabs(c.cells[n + 1][0] - l), std::fabs(c.cells[n + 1][2] - r));
}

bool satisfies_sn2(const CellLengths& c) {
  const int n = c.n();
  double l = c.cells[0][1];
  if (!(l > 0.0)) return false;
  for (int i = 1; i <= n; ++i) {
    if (!(l - c.cells[i][0] > 0.0)) return false;
    l += c.cells[i][1] - c.cells[i][0];
  }
  double r = 1.0;
  for (int i = 0; i <= n; ++i) {
    if (!(r - c.cells[i][2] > 0.0)) return false;
    r += c.cells[i][3] - c.cells[i][2];
  }
  return true;
}

bool stays_in_cone(const ConeWalk& w, const std::vector<int>& b) {
  const int end = b[b.size() - 2];
  for (int k = b[1]; k <= end; ++k) {
    if (!(w.L[k] > 0.0)) return false;
  }
  for (int k = 0; k <= end; ++k) {
    if (!(w.R[k] > 0.0)) return false;
  }
  return true;
}

Quilt build_quilt(const CellLengths& cells, BuildLog* log) {
  BuildLog local;
  BuildLog& lg = log ? *log : local;
  const int n = cells.n();
  if (n < 0) throw Error(ErrorCode::ConstraintViolated, "need at least two cells");
  auto positive = [&](double v) {
    if (v < 0.0 || std::isnan(v)) throw Error(ErrorCode::ConstraintViolated, fmt::format("negative length {}", v));
    if (v == 0.0) {
      ++lg.zero_nudges;
      return std::numeric_limits<double>::denorm_min();
    }
    return v;
  };
  TemplateBuilder b;
  const Cell& c0 = cells.cells[0];
  b.set_initial_lengths(positive(c0[1]), positive(c0[2]), positive(c0[3]));
  for (int i = 1; i <= n; ++i) {
    const Cell& c = cells.cells[i];
    double lm = positive(c[0]);
    double rm = positive(c[2]);
    const double lp = positive(c[1]);
    const double rp = positive(c[3]);
    for (int attempt = 0;; ++attempt) {
      try {
        b.step_lengths(lm, lp, rm, rp);
        break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::LengthCollision || attempt >= 8) throw;
        ++lg.collision_nudges;
        lm = std::nextafter(lm, std::numeric_limits<double>::infinity());
        rm = std::nextafter(rm, std::numeric_limits<double>::infinity());
      }
    }
  }
  return b.finish_quilt();
}

DiskRun run_disk_pipeline(const MotParams& p, std::mt19937_64& rng) {
  DiskRun run;
  run.walk = sample_cone_walk(p, rng);
  for (int tries = 0; tries < 1000; ++tries) {
    const auto parts = poisson_partition(run.walk.duration(), p.epsilon, rng);
    auto b = snap_partition(run.walk, parts);
    if (b.empty()) {
      ++run.partition_resamples;
      continue;
    }
    CellLengths cells = extract_cell_lengths(run.walk, b);
    BuildLog log;
    try {
      run.quilt = build_quilt(cells, &log);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ConstraintViolated && e.code() != ErrorCode::LengthCollision) throw;
      ++run.partition_resamples;
      continue;
    }
    run.boundaries = std::move(b);
    run.cells = std::move(cells);
    run.log = log;
    return run;
  }
  throw Error(ErrorCode::RejectionBudgetExceeded, "no partition of the walk produced a quilt");
}

Simulation simulate_discretized_disk(const MotParams& p, std::uint64_t index) {
  auto rng = make_stream(p.seed, "mating", index);
  Simulation sim;
  sim.params = p;
  sim.provenance.seed = p.seed;
  for (int attempt = 0;; ++attempt) {
    if (attempt > p.restart_budget) {
      throw Error(ErrorCode::RejectionBudgetExceeded, "no walk admitted a valid partition");
    }
    try {
      DiskRun run = run_disk_pipeline(p, rng);
      sim.provenance.rejections += run.walk.redraws + run.walk.restarts;
      sim.provenance.restarts += run.walk.restarts;
      sim.provenance.partition_resamples += run.partition_resamples;
      sim.provenance.zero_nudges = run.log.zero_nudges;
      sim.provenance.collision_nudges = run.log.collision_nudges;
      sim.provenance.walk_steps = run.walk.num_steps();
      sim.provenance.delta = run.walk.delta;
      sim.cells = std::move(run.cells);
      sim.quilt = std::move(run.quilt);
      return sim;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::RejectionBudgetExceeded || attempt == p.restart_budget) throw;
      ++sim.provenance.restarts;
      ++sim.provenance.rejections;
    }
  }
}

namespace {

ordered_json quilt_json(const Quilt& q) {
  const Template& t = q.tmpl;
  ordered_json j;
  j["next"] = t.map.next_permutation();
  j["root"] = t.map.root();
  std::vector<int> holes;
  for (int f = 0; f < t.num_faces(); ++f) {
    if (t.is_hole(f)) holes.push_back(f);
  }
  j["holes"] = holes;
  j["marks"] = t.marks;
  j["order"] = t.order;
  j["lengths"] = q.length;
  return j;
}

Quilt quilt_from(const ordered_json& j) {
  Quilt q;
  Template& t = q.tmpl;
  t.map = HalfEdgeMap::from_normalized(j.at("next").get<std::vector<int>>(), j.at("root").get<int>());
  t.hole.assign(t.num_faces(), 0);
  for (int f : j.at("holes").get<std::vector<int>>()) t.hole.at(f) = 1;
  t.marks = j.at("marks").get<std::vector<std::vector<int>>>();
  t.order = j.at("order").get<std::vector<int>>();
  q.length = j.at("lengths").get<std::vector<double>>();
  if (static_cast<int>(t.marks.size()) != t.num_faces() || static_cast<int>(q.length.size()) != t.map.num_edges()) {
    throw Error(ErrorCode::ParseError, "quilt record sizes do not match the map");
  }
  for (int f = 0; f < t.num_faces(); ++f) {
    for (int d : t.marks[f]) {
      if (d < 0 || d >= t.map.num_darts() || t.map.face(d) != f) {
        throw Error(ErrorCode::ParseError, fmt::format("mark dart {} is not on face {}", d, f));
      }
    }
  }
  return q;
}

}  // namespace

std::string simulation_to_json(const Simulation& s) {
  ordered_json j;
  const MotParams& p = s.params;
  j["params"] = {{"gamma", p.gamma},       {"epsilon", p.epsilon},         {"steps", p.steps},
                 {"seed", p.seed},         {"variance", p.variance},       {"correlation", p.correlation},
                 {"restart_budget", p.restart_budget}, {"delta_factor", p.delta_factor}};
  ordered_json cells = ordered_json::array();
  for (const auto& c : s.cells.cells) cells.push_back(c);
  j["cells"] = cells;
  j["quilt"] = quilt_json(s.quilt);
  const Provenance& pv = s.provenance;
  j["provenance"] = {{"seed", pv.seed},
                     {"rejections", pv.rejections},
                     {"restarts", pv.restarts},
                     {"partition_resamples", pv.partition_resamples},
                     {"zero_nudges", pv.zero_nudges},
                     {"collision_nudges", pv.collision_nudges},
                     {"walk_steps", pv.walk_steps},
                     {"delta", pv.delta},
                     {"version", kVersion}};
  return j.dump(2) + "\n";
}

Simulation simulation_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
    Simulation s;
    const auto& p = j.at("params");
    s.params.gamma = p.at("gamma").get<double>();
    s.params.epsilon = p.at("epsilon").get<double>();
    s.params.steps = p.at("steps").get<int>();
    s.params.seed = p.at("seed").get<std::uint64_t>();
    s.params.variance = p.at("variance").get<double>();
    s.params.correlation = p.at("correlation").get<double>();
    s.params.restart_budget = p.at("restart_budget").get<int>();
    s.params.delta_factor = p.at("delta_factor").get<double>();
    for (const auto& c : j.at("cells")) s.cells.cells.push_back(c.get<Cell>());
    s.quilt = quilt_from(j.at("quilt"));
    const auto& pv = j.at("provenance");
    s.provenance.seed = pv.at("seed").get<std::uint64_t>();
    s.provenance.rejections = pv.at("rejections").get<std::int64_t>();
    s.provenance.restarts = pv.at("restarts").get<int>();
    s.provenance.partition_resamples = pv.at("partition_resamples").get<int>();
    s.provenance.zero_nudges = pv.at("zero_nudges").get<int>();
    s.provenance.collision_nudges = pv.at("collision_nudges").get<int>();
    s.provenance.walk_steps = pv.at("walk_steps").get<int>();
    s.provenance.delta = pv.at("delta").get<double>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::array<double, 3> increment_covariance(const ConeWalk& w) {
  const int k = w.num_steps();
  double ml = 0.0;
  double mr = 0.0;
  for (int i = 0; i < k; ++i) {
    ml += w.L[i + 1] - w.L[i];
    mr += w.R[i + 1] - w.R[i];
  }
  ml /= k;
  mr /= k;
  double vl = 0.0;
  double vr = 0.0;
  double c = 0.0;
  for (int i = 0; i < k; ++i) {
    const double dl = w.L[i + 1] - w.L[i] - ml;
    const double dr = w.R[i + 1] - w.R[i] - mr;
    vl += dl * dl;
    vr += dr * dr;
    c += dl * dr;
  }
  const double scale = 1.0 / ((k - 1) * w.dt);
  return {vl * scale, c * scale, vr * scale};
}

std::vector<CalibrationRow> calibrate_covariance(const MotParams& p, int steps, std::uint64_t index) {
  auto rng = make_stream(p.seed, "calibrate", index);
  const auto cov = increment_covariance(sample_free_walk(p, steps, rng));
  const double a2 = p.variance;
  const std::array<const char*, 3> names = {"var_L", "cov_LR", "var_R"};
  const std::array<double, 3> target = {a2, p.correlation * a2, a2};
  std::vector<CalibrationRow> rows;
  for (int i = 0; i < 3; ++i) {
    CalibrationRow r;
    r.gamma = p.gamma;
    r.entry = names[i];
    r.empirical = cov[i];
    r.target = target[i];
    r.deviation = std::fabs(cov[i] - target[i]) / a2;
    r.pass = r.deviation <= 0.05;
    rows.push_back(r);
  }
  return rows;
}

std::string calibration_to_csv(const std::vector<CalibrationRow>& rows) {
  std::string out = "gamma,entry,empirical,target,deviation,pass\n";
  for (const auto& r : rows) {
    out += fmt::format("{:.17g},{},{:.17g},{:.17g},{:.17g},{}\n", r.gamma, r.entry, r.empirical, r.target, r.deviation,
                       r.pass ? 1 : 0);
  }
  return out;
}

std::vector<CalibrationRow> parse_calibration_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "gamma,entry,empirical,target,deviation,pass") {
    throw Error(ErrorCode::ParseError, "missing calibration header");
  }
  std::vector<CalibrationRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (f.size() != 6 || (f[5] != "0" && f[5] != "1")) throw Error(ErrorCode::ParseError, "bad calibration row '" + line + "'");
    CalibrationRow r;
    try {
      r.gamma = std::stod(f[0]);
      r.empirical = std::stod(f[2]);
      r.target = std::stod(f[3]);
      r.deviation = std::stod(f[4]);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad number in '" + line + "'");
    }
    r.entry = f[1];
    r.pass = f[5] == "1";
    rows.push_back(r);
  }
  return rows;
}

double kolmogorov_tail(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = 2.0 * std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-17) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

double ks_pvalue(std::vector<double> sample, const std::function<double(double)>& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  const double rn = std::sqrt(n);
  return kolmogorov_tail((rn + 0.12 + 0.11 / rn) * d);
}

double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::fabs(i / na - j / nb));
  }
  const double ne = std::sqrt(na * nb / (na + nb));
  return kolmogorov_tail((ne + 0.12 + 0.11 / ne) * d);
}

}  // namespace quiltlab
