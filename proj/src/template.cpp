#include "quiltlab/template.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include <fmt/format.h>

namespace quiltlab {

int Template::num_holes() const { return static_cast<int>(std::count(hole.begin(), hole.end(), 1)); }

int Template::terminal_index(int f) const {
  switch (gon(f)) {
    case 1:
      return 0;
    case 2:
    case 3:
      return 1;
    case 4:
      return 2;
    default:
      return gon(f) / 2;
  }
}

std::vector<int> Template::side_darts(int f, int s) const {
  const auto& m = marks[f];
  const int k = static_cast<int>(m.size());
  const int start = m[s];
  const int stop = m[(s + 1) % k];
  std::vector<int> out;
  int d = start;
  do {
    out.push_back(d);
    d = map.phi(d);
  } while (d != stop);
  return out;
}

int Template::three_gon() const {
  int found = -1;
  for (int f = 0; f < num_faces(); ++f) {
    if (!is_hole(f) && gon(f) == 3) {
      if (found >= 0) return -1;
      found = f;
    }
  }
  return found;
}

int Template::four_gon_count() const {
  int n = 0;
  for (int f = 0; f < num_faces(); ++f) {
    if (!is_hole(f) && gon(f) == 4) ++n;
  }
  return n;
}

double Quilt::side_length(int f, int s) const {
  double total = 0.0;
  for (int d : tmpl.side_darts(f, s)) total += length[d / 2];
  return total;
}

// ---------------------------------------------------------------------------
// Text format

std::string template_to_text(const Template& t) {
  std::string out = to_text(t.map);
  for (int f = 0; f < t.num_faces(); ++f) {
    if (t.is_hole(f)) out += fmt::format("HOLE {}\n", f);
  }
  for (int f = 0; f < t.num_faces(); ++f) {
    if (t.is_hole(f)) continue;
    out += fmt::format("MARKS {}", f);
    for (int d : t.marks[f]) out += fmt::format(" {}", t.map.tail(d));
    out += "\n";
  }
  if (!t.order.empty()) {
    out += "ORDER";
    for (int f : t.order) out += fmt::format(" {}", f);
    out += "\n";
  }
  if (t.has_marked_flags()) {
    out += "MARKED";
    for (int f = 0; f < t.num_faces(); ++f) {
      if (t.marked[f]) out += fmt::format(" {}", f);
    }
    out += "\n";
  }
  return out;
}

namespace {

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<int> parse_ints(std::istringstream& ls, const std::string& line) {
  std::vector<int> values;
  int v = 0;
  while (ls >> v) values.push_back(v);
  if (!ls.eof()) throw Error(ErrorCode::ParseError, "bad integer list in '" + line + "'");
  return values;
}

}  // namespace

Template parse_template_lines(const std::vector<std::string>& lines, std::size_t& cursor) {
  Template t;
  t.map = parse_map_lines(lines, cursor);
  const int faces = t.map.num_faces();
  t.hole.assign(faces, 0);
  t.marks.assign(faces, {});
  std::vector<std::vector<int>> mark_vertices(faces);
  auto check_face = [&](int f, const std::string& line) {
    if (f < 0 || f >= faces) throw Error(ErrorCode::ParseError, "face out of range in '" + line + "'");
  };
  for (; cursor < lines.size(); ++cursor) {
    const std::string& line = lines[cursor];
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key) || key[0] == '#') continue;
    if (key == "LENGTH") break;
    const std::vector<int> values = parse_ints(ls, line);
    if (key == "HOLE") {
      if (values.size() != 1) throw Error(ErrorCode::ParseError, "HOLE takes one face: '" + line + "'");
      check_face(values[0], line);
      t.hole[values[0]] = 1;
    } else if (key == "MARKS") {
      if (values.size() < 2) throw Error(ErrorCode::ParseError, "MARKS needs a face and a root: '" + line + "'");
      check_face(values[0], line);
      mark_vertices[values[0]].assign(values.begin() + 1, values.end());
    } else if (key == "ORDER") {
      for (int f : values) check_face(f, line);
      t.order = values;
    } else if (key == "MARKED") {
      t.marked.assign(faces, 0);
      for (int f : values) {
        check_face(f, line);
        t.marked[f] = 1;
      }
    } else {
      throw Error(ErrorCode::ParseError, "unknown template line '" + line + "'");
    }
  }
  for (int f = 0; f < faces; ++f) {
    if (t.is_hole(f)) {
      if (!mark_vertices[f].empty()) throw Error(ErrorCode::ParseError, fmt::format("hole {} has marks", f));
      continue;
    }
    if (mark_vertices[f].empty()) throw Error(ErrorCode::ParseError, fmt::format("face {} has no marks", f));
    const auto& cycle = t.map.face_darts(f);
    for (int v : mark_vertices[f]) {
      int found = -1;
      for (int d : cycle) {
        if (t.map.tail(d) != v) continue;
        if (found >= 0) throw Error(ErrorCode::ParseError, fmt::format("vertex {} repeats on face {}", v, f));
        found = d;
      }
      if (found < 0) throw Error(ErrorCode::ParseError, fmt::format("vertex {} is not on face {}", v, f));
      t.marks[f].push_back(found);
    }
    // Marks must appear in face order starting from the root.
    const int k = static_cast<int>(cycle.size());
    std::vector<int> pos(t.map.num_darts(), -1);
    for (int i = 0; i < k; ++i) pos[cycle[i]] = i;
    const int base = pos[t.marks[f][0]];
    for (std::size_t i = 1; i < t.marks[f].size(); ++i) {
      const int a = (pos[t.marks[f][i - 1]] - base + k) % k;
      const int b = (pos[t.marks[f][i]] - base + k) % k;
      if (b <= a) throw Error(ErrorCode::ParseError, fmt::format("marks of face {} are not in face order", f));
    }
  }
  return t;
}

Template parse_template_text(std::istream& in) {
  const auto lines = read_lines(in);
  std::size_t cursor = 0;
  return parse_template_lines(lines, cursor);
}

Template load_template(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  return parse_template_text(in);
}

std::string quilt_to_text(const Quilt& q) {
  std::string out = template_to_text(q.tmpl);
  for (std::size_t e = 0; e < q.length.size(); ++e) out += fmt::format("LENGTH {} {:.17g}\n", e, q.length[e]);
  return out;
}

Quilt parse_quilt_text(std::istream& in) {
  const auto lines = read_lines(in);
  std::size_t cursor = 0;
  Quilt q;
  q.tmpl = parse_template_lines(lines, cursor);
  q.length.assign(q.tmpl.map.num_edges(), 0.0);
  std::vector<char> seen(q.length.size(), 0);
  for (; cursor < lines.size(); ++cursor) {
    std::istringstream ls(lines[cursor]);
    std::string key;
    if (!(ls >> key) || key[0] == '#') continue;
    int e = 0;
    double x = 0.0;
    if (key != "LENGTH" || !(ls >> e >> x) || e < 0 || e >= static_cast<int>(q.length.size())) {
      throw Error(ErrorCode::ParseError, "bad length line '" + lines[cursor] + "'");
    }
    q.length[e] = x;
    seen[e] = 1;
  }
  if (std::count(seen.begin(), seen.end(), 0) > 0) throw Error(ErrorCode::ParseError, "missing edge lengths");
  return q;
}

// ---------------------------------------------------------------------------
// Canonical code

std::string template_code(const Template& t) {
  const int three = t.three_gon();
  const int root = three >= 0 ? t.root_dart(three) : t.map.root();
  const HalfEdgeMap rooted = t.map.rerooted(root);
  const std::vector<int> label = rooted.canonical_labeling();
  std::string code = rooted.canonical_code();
  std::vector<std::pair<int, int>> face_by_label;
  for (int f = 0; f < t.num_faces(); ++f) {
    int best = t.map.num_darts();
    for (int d : t.map.face_darts(f)) best = std::min(best, label[d]);
    face_by_label.emplace_back(best, f);
  }
  std::sort(face_by_label.begin(), face_by_label.end());
  for (const auto& [lab, f] : face_by_label) {
    std::uint64_t kind = t.is_hole(f) ? 1 : 0;
    if (t.has_marked_flags()) kind += t.marked[f] ? 6 : 4;
    append_varint(code, kind);
    append_varint(code, t.marks[f].size());
    for (int d : t.marks[f]) append_varint(code, static_cast<std::uint64_t>(label[d]));
  }
  return code;
}

// ---------------------------------------------------------------------------
// Construction

TemplateBuilder::TemplateBuilder() {
  // Darts: 0/1 arc c0-x (0: c0 -> x), 2/3 radius d0-c0 (2: d0 -> c0),
  // 4/5 radius x-d0 (4: x -> d0), 6/7 long arc (6: x -> c0).
  next_ = {7, 4, 5, 0, 6, 2, 1, 3};
  length_.assign(4, 0.0);
  left_ = {5};
  right_ = {6, 3};
  faces_ = {{1}, {4, 2, 0}};
}

int TemplateBuilder::add_edge() {
  const int d = static_cast<int>(next_.size());
  next_.push_back(d);
  next_.push_back(d + 1);
  length_.push_back(0.0);
  return d;
}

void TemplateBuilder::replace_mark(int old_dart, int new_dart) {
  for (auto& face : faces_) {
    for (int& m : face) {
      if (m == old_dart) m = new_dart;
    }
  }
}

int TemplateBuilder::split(int dart, double tail_part) {
  const int back = dart ^ 1;
  const int g = add_edge();
  const int gb = g ^ 1;
  // gb takes the place of back in the rotation at the head vertex.
  int p = back;
  while (next_[p] != back) p = next_[p];
  next_[p] = gb;
  next_[gb] = next_[back] == back ? gb : next_[back];
  // The new vertex carries back and g.
  next_[back] = g;
  next_[g] = back;
  length_[g / 2] = length_[dart / 2] - tail_part;
  length_[dart / 2] = tail_part;
  replace_mark(back, gb);
  return g;
}

void TemplateBuilder::step(int k, int kp) {
  if (k < 1 || k > p() || kp < 1 || kp > q()) {
    throw Error(ErrorCode::InvalidChoice, fmt::format("choice ({}, {}) outside 1..{} x 1..{}", k, kp, p(), q()));
  }
  const int s = q() - kp;
  const int dk = left_[k - 1];
  const int ds = right_[s];
  const int gb = split(dk, 0.0);
  const int gc = split(ds, 0.0);
  const int e1 = add_edge();
  const int e2 = add_edge();
  next_[dk ^ 1] = e1;
  next_[e1] = gb;
  next_[ds ^ 1] = e2;
  next_[e2] = gc;
  next_[e1 ^ 1] = e2 ^ 1;
  next_[e2 ^ 1] = e1 ^ 1;
  faces_.push_back({left_[0], e1, e2 ^ 1, gc});
  std::vector<int> left = {e1 ^ 1, gb};
  left.insert(left.end(), left_.begin() + k, left_.end());
  std::vector<int> right(right_.begin(), right_.begin() + s + 1);
  right.push_back(e2);
  left_ = std::move(left);
  right_ = std::move(right);
}

void TemplateBuilder::set_initial_lengths(double l0p, double r0m, double r0p) {
  if (!(l0p > 0.0 && r0m > 0.0 && r0p > 0.0 && r0m < 1.0)) {
    throw Error(ErrorCode::ConstraintViolated,
                fmt::format("initial cell ({}, {}, {}) needs positive lengths and r0- < 1", l0p, r0m, r0p));
  }
  length_[0] = r0m;
  length_[1] = r0p;
  length_[2] = l0p;
  length_[3] = 1.0 - r0m;
  metric_ = true;
}

double TemplateBuilder::left_arc_length() const {
  double total = 0.0;
  for (int d : left_) total += length_[d / 2];
  return total;
}

double TemplateBuilder::right_arc_length() const {
  double total = 0.0;
  for (int d : right_) total += length_[d / 2];
  return total;
}

void TemplateBuilder::step_lengths(double lm, double lp, double rm, double rp) {
  if (!metric_) throw Error(ErrorCode::ConstraintViolated, "initial lengths not set");
  if (!(lm > 0.0 && lp > 0.0 && rm > 0.0 && rp > 0.0)) {
    throw Error(ErrorCode::ConstraintViolated, fmt::format("cell ({}, {}, {}, {}) has a nonpositive side", lm, lp, rm, rp));
  }
  int k = 0;
  double tb = 0.0;
  double cum = 0.0;
  for (int i = 0; i < p(); ++i) {
    const double len = length_[left_[i] / 2];
    if (lm == cum + len) throw Error(ErrorCode::LengthCollision, "b lands on an existing vertex");
    if (lm < cum + len) {
      k = i + 1;
      tb = lm - cum;
      break;
    }
    cum += len;
  }
  if (k == 0) throw Error(ErrorCode::ConstraintViolated, fmt::format("l- = {} exceeds the left arc {}", lm, cum));
  int kp = 0;
  double tc = 0.0;
  cum = 0.0;
  for (int i = q() - 1; i >= 0; --i) {
    const double len = length_[right_[i] / 2];
    if (rm == cum + len) throw Error(ErrorCode::LengthCollision, "c lands on an existing vertex");
    if (rm < cum + len) {
      kp = q() - i;
      tc = len - (rm - cum);
      break;
    }
    cum += len;
  }
  if (kp == 0) throw Error(ErrorCode::ConstraintViolated, fmt::format("r- = {} exceeds the right arc {}", rm, cum));
  const int s = q() - kp;
  const int dk = left_[k - 1];
  const int ds = right_[s];
  const int gb = split(dk, tb);
  const int gc = split(ds, tc);
  const int e1 = add_edge();
  const int e2 = add_edge();
  length_[e1 / 2] = lp;
  length_[e2 / 2] = rp;
  next_[dk ^ 1] = e1;
  next_[e1] = gb;
  next_[ds ^ 1] = e2;
  next_[e2] = gc;
  next_[e1 ^ 1] = e2 ^ 1;
  next_[e2 ^ 1] = e1 ^ 1;
  faces_.push_back({left_[0], e1, e2 ^ 1, gc});
  std::vector<int> left = {e1 ^ 1, gb};
  left.insert(left.end(), left_.begin() + k, left_.end());
  std::vector<int> right(right_.begin(), right_.begin() + s + 1);
  right.push_back(e2);
  left_ = std::move(left);
  right_ = std::move(right);
}

Template TemplateBuilder::finish() const {
  Template t;
  t.map = HalfEdgeMap::from_normalized(next_, faces_[1][0]);
  const int faces = t.map.num_faces();
  t.hole.assign(faces, 0);
  t.marks.assign(faces, {});
  std::vector<std::vector<int>> all = faces_;
  all.push_back({left_[0], right_[0]});
  for (const auto& m : all) {
    const int f = t.map.face(m[0]);
    t.marks[f] = m;
    t.order.push_back(f);
  }
  return t;
}

Quilt TemplateBuilder::finish_quilt() const {
  Quilt q;
  q.tmpl = finish();
  q.length = length_;
  return q;
}

Template build_template(const std::vector<std::pair<int, int>>& choices) {
  TemplateBuilder b;
  for (const auto& [k, kp] : choices) b.step(k, kp);
  return b.finish();
}

namespace {

void visit_sequences(const TemplateBuilder& b, int remaining, const std::function<void(const TemplateBuilder&)>& fn) {
  if (remaining == 0) {
    fn(b);
    return;
  }
  for (int k = 1; k <= b.p(); ++k) {
    for (int kp = 1; kp <= b.q(); ++kp) {
      TemplateBuilder child = b;
      child.step(k, kp);
      visit_sequences(child, remaining - 1, fn);
    }
  }
}

std::uint64_t count_from(int p, int q, int remaining) {
  if (remaining == 0) return 1;
  std::uint64_t total = 0;
  for (int k = 1; k <= p; ++k) {
    for (int kp = 1; kp <= q; ++kp) total += count_from(p - k + 2, q - kp + 2, remaining - 1);
  }
  return total;
}

}  // namespace

std::uint64_t count_choice_sequences(int n) { return count_from(1, 2, n); }

std::size_t count_distinct_templates(int n) {
  std::set<std::string> codes;
  visit_sequences(TemplateBuilder{}, n, [&](const TemplateBuilder& b) { codes.insert(template_code(b.finish())); });
  return codes.size();
}

// ---------------------------------------------------------------------------
// Validation

namespace {

std::vector<std::set<int>> faces_at_vertices(const HalfEdgeMap& map) {
  std::vector<std::set<int>> out(map.num_vertices());
  for (int d = 0; d < map.num_darts(); ++d) out[map.tail(d)].insert(map.face(d));
  return out;
}

void fail(ConditionResult& r, int index, const std::string& detail) {
  if (!r.ok) return;
  r.ok = false;
  r.face_index = index;
  r.detail = detail;
}

void check_profile(const Template& t) {
  if (t.order.empty()) throw Error(ErrorCode::MissingOrder, "template has no face order");
  const int faces = t.num_faces();
  if (static_cast<int>(t.order.size()) != faces || faces < 3) {
    throw Error(ErrorCode::WrongGonProfile, "face order must list every face once");
  }
  std::vector<char> seen(faces, 0);
  for (int f : t.order) {
    if (f < 0 || f >= faces || seen[f]++) throw Error(ErrorCode::WrongGonProfile, "face order is not a permutation");
    if (t.is_hole(f)) throw Error(ErrorCode::WrongGonProfile, "templates of the ordered family have no holes");
  }
  const int last = faces - 1;
  for (int i = 0; i < faces; ++i) {
    const int want = i == 0 ? 1 : (i == 1 ? 3 : (i == last ? 2 : 4));
    if (t.gon(t.order[i]) != want) {
      throw Error(ErrorCode::WrongGonProfile,
                  fmt::format("face at position {} is a {}-gon, expected a {}-gon", i, t.gon(t.order[i]), want));
    }
  }
}

}  // namespace

ValidityReport validate_template(const Template& t) {
  check_profile(t);
  const auto& map = t.map;
  const auto& order = t.order;
  const int faces = t.num_faces();
  const int n = faces - 3;
  ValidityReport report;
  report.n = n;
  const int fext = order[0];
  const int f0 = order[1];

  if (t.root_vertex(fext) != t.root_vertex(f0)) fail(report.a, 1, "roots of F_ext and F_0 differ");
  for (int d : t.side_darts(f0, t.gon(f0) - 1)) {
    if (map.face(d ^ 1) != fext) fail(report.a, 1, "side of F_0 counterclockwise of the root leaves the boundary");
  }

  for (int i = 1; i < faces; ++i) {
    const int f = order[i];
    const int g = i + 1 < faces ? order[i + 1] : f0;
    if (t.terminal_vertex(f) != t.root_vertex(g)) {
      fail(report.b, i, fmt::format("terminal of position {} is not the next root", i));
    }
  }

  for (int i = 2; i < faces; ++i) {
    const int f = order[i];
    const int root = t.root_vertex(f);
    if (map.degree(root) != 2) fail(report.c, i, fmt::format("root degree {}", map.degree(root)));
    for (int m = 1; m < t.gon(f); ++m) {
      const int v = map.tail(t.marks[f][m]);
      const bool chained = m == t.terminal_index(f) && i + 1 < faces && v == t.root_vertex(order[i + 1]);
      if (!chained && map.degree(v) != 3) fail(report.c, i, fmt::format("mark {} has degree {}", m, map.degree(v)));
    }
  }

  const auto incident = faces_at_vertices(map);
  std::vector<char> earlier(faces, 0);
  earlier[fext] = 1;
  earlier[f0] = 1;
  for (int i = 2; i < faces - 1; ++i) {
    const int f = order[i];
    for (int s : {0, 3}) {
      for (int d : t.side_darts(f, s)) {
        if (!earlier[map.face(d ^ 1)]) fail(report.d, i, fmt::format("side {} leaves the explored boundary", s));
      }
    }
    for (int s : {1, 2}) {
      const auto side = t.side_darts(f, s);
      for (std::size_t j = 0; j < side.size(); ++j) {
        if (earlier[map.face(side[j] ^ 1)]) fail(report.d, i, fmt::format("side {} runs along the explored boundary", s));
        if (j == 0) continue;
        for (int g : incident[map.tail(side[j])]) {
          if (earlier[g]) fail(report.d, i, fmt::format("side {} touches the explored boundary", s));
        }
      }
    }
    earlier[f] = 1;
  }
  return report;
}

std::optional<std::vector<int>> derive_face_order(const Template& t) {
  int fext = -1;
  int f0 = -1;
  for (int f = 0; f < t.num_faces(); ++f) {
    if (t.is_hole(f)) return std::nullopt;
    if (t.gon(f) == 1) {
      if (fext >= 0) return std::nullopt;
      fext = f;
    } else if (t.gon(f) == 3) {
      if (f0 >= 0) return std::nullopt;
      f0 = f;
    }
  }
  if (fext < 0 || f0 < 0) return std::nullopt;
  std::vector<int> order = {fext, f0};
  std::vector<char> used(t.num_faces(), 0);
  used[fext] = used[f0] = 1;
  int cur = f0;
  while (static_cast<int>(order.size()) < t.num_faces()) {
    const int v = t.terminal_vertex(cur);
    int found = -1;
    for (int f = 0; f < t.num_faces(); ++f) {
      if (used[f] || t.root_vertex(f) != v) continue;
      if (found >= 0) return std::nullopt;
      found = f;
    }
    if (found < 0) return std::nullopt;
    used[found] = 1;
    order.push_back(found);
    cur = found;
  }
  if (t.terminal_vertex(cur) != t.root_vertex(f0)) return std::nullopt;
  return order;
}

// ---------------------------------------------------------------------------
// Side-length map

SideMap side_length_map(const Template& t) {
  check_profile(t);
  const int faces = t.num_faces();
  const int n = faces - 3;
  const int edges = t.map.num_edges();
  SideMap sm;
  std::vector<std::vector<int>> rows;
  auto add_row = [&](const std::vector<int>& darts, const std::string& name, bool left) {
    std::vector<int> e;
    for (int d : darts) e.push_back(d / 2);
    rows.push_back(e);
    sm.row_names.push_back(name);
    if (left) sm.left_sides.push_back(e);
  };
  const int f0 = t.order[1];
  add_row(t.side_darts(f0, 0), "l0+", true);
  add_row(t.side_darts(f0, 2), "r0-", false);
  add_row(t.side_darts(f0, 1), "r0+", false);
  for (int i = 1; i <= n; ++i) {
    const int f = t.order[i + 1];
    add_row(t.side_darts(f, 0), fmt::format("l{}-", i), true);
    add_row(t.side_darts(f, 1), fmt::format("l{}+", i), true);
    add_row(t.side_darts(f, 3), fmt::format("r{}-", i), false);
    add_row(t.side_darts(f, 2), fmt::format("r{}+", i), false);
  }
  add_row(t.map.face_darts(t.order[0]), "boundary", false);
  sm.matrix = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), edges);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int e : rows[r]) sm.matrix(static_cast<Eigen::Index>(r), e) += 1.0;
  }
  return sm;
}

DeterminantReport side_length_map_determinant(const Template& t, bool inject_fault) {
  SideMap sm = side_length_map(t);
  const auto& map = t.map;
  DeterminantReport rep;
  rep.n = t.num_faces() - 3;
  if (sm.matrix.rows() != sm.matrix.cols()) {
    throw Error(ErrorCode::SingularMap, fmt::format("side map is {}x{}", sm.matrix.rows(), sm.matrix.cols()));
  }
  if (inject_fault) sm.matrix.row(sm.matrix.rows() - 1) = sm.matrix.row(1);

  std::vector<char> in_tree(map.num_edges(), 0);
  for (const auto& side : sm.left_sides) {
    for (int e : side) in_tree[e] = 1;
  }
  rep.left_edges = static_cast<int>(std::count(in_tree.begin(), in_tree.end(), 1));

  // Tree check by union-find over the endpoints of the left edges.
  std::vector<int> parent(map.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::set<int> verts;
  bool acyclic = true;
  for (int e = 0; e < map.num_edges(); ++e) {
    if (!in_tree[e]) continue;
    const int a = map.tail(2 * e);
    const int b = map.head(2 * e);
    verts.insert(a);
    verts.insert(b);
    const int ra = find(a);
    const int rb = find(b);
    if (ra == rb) acyclic = false;
    parent[ra] = rb;
  }
  const int x = t.root_vertex(t.order[1]);
  std::set<int> roots;
  for (int v : verts) roots.insert(find(v));
  rep.left_tree = acyclic && roots.size() == 1 && verts.count(x) == 1;

  // Counterclockwise contour of the tree from the root of F_0.
  std::vector<int> rank(map.num_edges(), -1);
  int start = -1;
  for (int d : map.vertex_darts(x)) {
    if (in_tree[d / 2]) {
      start = d;
      break;
    }
  }
  if (start >= 0) {
    int d = start;
    int counter = 0;
    const int limit = 2 * map.num_darts();
    for (int step = 0; step < limit; ++step) {
      if (rank[d / 2] < 0) {
        rank[d / 2] = counter++;
        rep.contour_edges.push_back(d / 2);
      }
      int e = map.next(d ^ 1);
      while (!in_tree[e / 2]) e = map.next(e);
      d = e;
      if (d == start) break;
    }
  }

  std::vector<int> earliest_count(map.num_edges(), 0);
  std::vector<std::pair<int, int>> row_by_earliest;
  bool ranked = true;
  for (std::size_t s = 0; s < sm.left_sides.size(); ++s) {
    int best = -1;
    for (int e : sm.left_sides[s]) {
      if (rank[e] < 0) ranked = false;
      if (best < 0 || rank[e] < rank[best]) best = e;
    }
    if (best >= 0) {
      ++earliest_count[best];
      row_by_earliest.emplace_back(rank[best], static_cast<int>(s));
    }
  }
  rep.earliest_unique = ranked;
  for (int e = 0; e < map.num_edges(); ++e) {
    if (in_tree[e] && earliest_count[e] != 1) rep.earliest_unique = false;
  }

  // Unit upper triangularity of the left block in contour order.
  std::sort(row_by_earliest.begin(), row_by_earliest.end());
  rep.upper_triangular = ranked && static_cast<int>(row_by_earliest.size()) == rep.left_edges;
  for (std::size_t i = 0; rep.upper_triangular && i < row_by_earliest.size(); ++i) {
    std::vector<char> row(rep.left_edges, 0);
    for (int e : sm.left_sides[row_by_earliest[i].second]) row[rank[e]] = 1;
    for (int c = 0; c < rep.left_edges; ++c) {
      const bool want_zero = c < static_cast<int>(i);
      if (want_zero && row[c]) rep.upper_triangular = false;
      if (c == static_cast<int>(i) && !row[c]) rep.upper_triangular = false;
    }
  }

  rep.determinant = Eigen::PartialPivLU<Eigen::MatrixXd>(sm.matrix).determinant();
  if (!(std::fabs(std::fabs(rep.determinant) - 1.0) <= 1e-9)) {
    throw Error(ErrorCode::SingularMap, fmt::format("side map determinant {}", rep.determinant));
  }
  return rep;
}

}  // namespace quiltlab
