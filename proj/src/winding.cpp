#include "quiltlab/winding.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <numbers>
#include <set>

#include <Eigen/Sparse>
#include <fmt/format.h>

namespace quiltlab {

namespace {

int unique_face(const Template& t, int gon) {
  int found = -1;
  for (int f = 0; f < t.num_faces(); ++f) {
    if (t.is_hole(f) || t.gon(f) != gon) continue;
    if (found >= 0) throw Error(ErrorCode::InvalidArgument, fmt::format("several {}-gons", gon));
    found = f;
  }
  if (found < 0) throw Error(ErrorCode::InvalidArgument, fmt::format("no {}-gon outside the holes", gon));
  return found;
}

bool has_curve(const Template& t, int f) { return !t.is_hole(f) && t.gon(f) >= 2; }

Template without_flags(const Template& t) {
  Template out = t;
  out.marked.clear();
  out.order.clear();
  return out;
}

}  // namespace

SubtemplateEmbedding embed_subtemplate(const Template& t) {
  const HalfEdgeMap& map = t.map;
  SubtemplateEmbedding emb;
  emb.outer_face = unique_face(t, 1);
  emb.x = t.root_vertex(unique_face(t, 3));
  const int nv = map.num_vertices();
  const int ne = map.num_edges();
  const int nf = map.num_faces();
  const int nodes = nv + ne + nf;
  auto mid = [&](int d) { return nv + d / 2; };
  auto center = [&](int f) { return nv + ne + f; };

  std::vector<Point> pos(nodes);
  std::vector<char> fixed(nodes, 0);
  const auto& outer = map.face_darts(emb.outer_face);
  {
    std::set<int> seen;
    for (int d : outer) {
      if (!seen.insert(map.tail(d)).second) {
        throw Error(ErrorCode::EmbeddingDegenerate, "outer boundary revisits a vertex");
      }
    }
    const int m = 2 * static_cast<int>(outer.size());
    if (m < 3) throw Error(ErrorCode::EmbeddingDegenerate, "outer boundary too short");
    for (std::size_t j = 0; j < outer.size(); ++j) {
      const double a0 = 2.0 * std::numbers::pi * static_cast<double>(2 * j) / m;
      const double a1 = 2.0 * std::numbers::pi * static_cast<double>(2 * j + 1) / m;
      pos[map.tail(outer[j])] = {std::cos(a0), std::sin(a0)};
      pos[mid(outer[j])] = {std::cos(a1), std::sin(a1)};
      fixed[map.tail(outer[j])] = 1;
      fixed[mid(outer[j])] = 1;
    }
  }
  fixed[center(emb.outer_face)] = 1;

  std::vector<std::pair<int, int>> links;
  for (int d = 0; d < map.num_darts(); d += 2) {
    links.emplace_back(map.tail(d), mid(d));
    links.emplace_back(mid(d), map.head(d));
  }
  for (int f = 0; f < nf; ++f) {
    if (f == emb.outer_face) continue;
    for (int d : map.face_darts(f)) {
      links.emplace_back(center(f), map.tail(d));
      links.emplace_back(center(f), mid(d));
    }
  }

  std::vector<int> index(nodes, -1);
  int free_count = 0;
  for (int v = 0; v < nodes; ++v) {
    if (!fixed[v]) index[v] = free_count++;
  }
  std::vector<Eigen::Triplet<double>> triplets;
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(free_count, 2);
  std::vector<double> degree(nodes, 0.0);
  auto couple = [&](int a, int b) {
    degree[a] += 1.0;
    if (index[a] < 0) return;
    if (index[b] >= 0) {
      triplets.emplace_back(index[a], index[b], -1.0);
    } else {
      rhs(index[a], 0) += pos[b].x;
      rhs(index[a], 1) += pos[b].y;
    }
  };
  for (const auto& [a, b] : links) {
    couple(a, b);
    couple(b, a);
  }
  for (int v = 0; v < nodes; ++v) {
    if (index[v] >= 0) triplets.emplace_back(index[v], index[v], degree[v]);
  }
  if (free_count > 0) {
    Eigen::SparseMatrix<double> lap(free_count, free_count);
    lap.setFromTriplets(triplets.begin(), triplets.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(lap);
    if (solver.info() != Eigen::Success) throw Error(ErrorCode::EmbeddingDegenerate, "singular placement system");
    const Eigen::MatrixXd sol = solver.solve(rhs);
    for (int v = 0; v < nodes; ++v) {
      if (index[v] >= 0) pos[v] = {sol(index[v], 0), sol(index[v], 1)};
    }
  }

  for (int f = 0; f < nf; ++f) {
    if (f == emb.outer_face) continue;
    const Point c = pos[center(f)];
    std::vector<int> ring;
    for (int d : map.face_darts(f)) {
      ring.push_back(map.tail(d));
      ring.push_back(mid(d));
    }
    for (std::size_t j = 0; j < ring.size(); ++j) {
      const Point a = pos[ring[j]];
      const Point b = pos[ring[(j + 1) % ring.size()]];
      const double cross = (a.x - c.x) * (b.y - c.y) - (a.y - c.y) * (b.x - c.x);
      if (!(cross < -1e-14)) {
        throw Error(ErrorCode::EmbeddingDegenerate, fmt::format("star triangle of face {} is not clockwise", f));
      }
    }
  }

  emb.vertex.assign(pos.begin(), pos.begin() + nv);
  emb.center.assign(pos.begin() + nv + ne, pos.end());
  return emb;
}

std::vector<CurveStep> filling_traversal(const Template& t_sub, const Template& filling) {
  if (!filling.has_marked_flags()) throw Error(ErrorCode::InvalidArgument, "filling has no marked faces");
  std::vector<int> order = filling.order;
  if (order.empty()) {
    const auto derived = derive_face_order(filling);
    if (!derived) throw Error(ErrorCode::MissingOrder, "filling has no face order");
    order = *derived;
  }
  std::vector<int> selected;
  for (int f = 0; f < filling.num_faces(); ++f) {
    if (filling.marked[f]) selected.push_back(f);
  }
  const MarkedSubtemplate ms = mark_subtemplate(filling, selected);
  const Template plain_ms = without_flags(ms.tmpl);
  if (template_code(plain_ms) != template_code(without_flags(t_sub))) {
    throw Error(ErrorCode::InvalidArgument, "filling does not reduce to the subtemplate");
  }
  auto labels_of = [](const Template& t) {
    const int three = t.three_gon();
    return t.map.rerooted(three >= 0 ? t.root_dart(three) : t.map.root()).canonical_labeling();
  };
  const std::vector<int> ms_label = labels_of(ms.tmpl);
  const std::vector<int> sub_label = labels_of(t_sub);
  std::vector<int> sub_dart_by_label(sub_label.size());
  for (std::size_t d = 0; d < sub_label.size(); ++d) sub_dart_by_label[sub_label[d]] = static_cast<int>(d);
  auto to_sub = [&](int ms_dart) { return sub_dart_by_label[ms_label[ms_dart]]; };

  std::vector<int> ms_vertex(filling.map.num_vertices(), -1);
  for (int v = 0; v < ms.tmpl.map.num_vertices(); ++v) ms_vertex[ms.parent_vertex[v]] = v;
  std::vector<int> ms_face(filling.num_faces(), -1);
  for (int f = 0; f < ms.tmpl.num_faces(); ++f) {
    if (ms.parent_face[f] >= 0) ms_face[ms.parent_face[f]] = f;
  }
  for (int h = 0; h < ms.num_holes(); ++h) {
    for (int f : ms.hole_parent_faces[h]) ms_face[f] = ms.holes[h];
  }
  auto sub_vertex = [&](int parent_vertex) {
    const int v = ms_vertex[parent_vertex];
    if (v < 0) throw Error(ErrorCode::InvalidArgument, "hole passage ends at a deleted vertex");
    return t_sub.map.tail(to_sub(ms.tmpl.map.vertex_darts(v).front()));
  };

  std::vector<CurveStep> steps;
  if (!filling.marked[order[0]]) throw Error(ErrorCode::InvalidArgument, "the 1-gon must be marked");
  for (std::size_t i = 1; i < order.size();) {
    const int f = order[i];
    CurveStep step;
    if (filling.marked[f]) {
      const int d = to_sub(ms.tmpl.root_dart(ms_face[f]));
      step.face = t_sub.map.face(d);
      step.from = t_sub.map.tail(d);
      step.to = t_sub.terminal_vertex(step.face);
      ++i;
    } else {
      step.hole = true;
      step.face = t_sub.map.face(to_sub(ms.tmpl.map.face_darts(ms_face[f]).front()));
      step.from = sub_vertex(filling.root_vertex(f));
      std::size_t j = i;
      while (j + 1 < order.size() && !filling.marked[order[j + 1]]) ++j;
      step.to = sub_vertex(filling.terminal_vertex(order[j]));
      i = j + 1;
    }
    steps.push_back(step);
  }
  return steps;
}

WindingLabels compute_winding_labels(const Template& t_sub, const SubtemplateEmbedding& emb,
                                     const std::vector<CurveStep>& steps) {
  PolygonalCurve curve;
  curve.vertices.push_back(emb.vertex[emb.x]);
  for (const auto& s : steps) {
    curve.vertices.push_back(emb.center[s.face]);
    curve.vertices.push_back(emb.vertex[s.to]);
  }
  const std::vector<double> turns = turning_angles(curve);
  const Point& p0 = curve.vertices[0];
  const Point& p1 = curve.vertices[1];
  WindingLabels out;
  double heading = std::atan2(p1.y - p0.y, p1.x - p0.x);
  if (heading < 0.0) heading += 2.0 * std::numbers::pi;
  out.theta_x = heading;
  // theta at curve vertex k >= 1: heading into it plus half the turn there.
  std::vector<double> at(curve.vertices.size(), 0.0);
  double h = heading;
  for (std::size_t k = 1; k < curve.vertices.size(); ++k) {
    const double turn = k - 1 < turns.size() ? turns[k - 1] : 0.0;
    at[k] = h + turn / 2.0;
    h += turn;
  }
  {
    const Point& a = curve.vertices[curve.vertices.size() - 2];
    const Point& b = curve.vertices.back();
    const double ux = b.x - a.x;
    const double uy = b.y - a.y;
    const double vx = p1.x - p0.x;
    const double vy = p1.y - p0.y;
    const double closing = std::atan2(ux * vy - uy * vx, ux * vx + uy * vy);
    out.total_turning = h - heading + closing;
    out.x_end = h + closing / 2.0;
    out.x_start = heading - closing / 2.0;
  }
  const std::vector<int> holes = hole_labels(t_sub);
  out.arcs.assign(holes.size(), {});
  auto record = [&](int v, double value) {
    auto [it, inserted] = out.theta.emplace(v, value);
    if (!inserted && std::fabs(it->second - value) > 1e-9) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("vertex {} receives two labels", v));
    }
  };
  for (std::size_t s = 0; s < steps.size(); ++s) {
    if (!steps[s].hole) continue;
    const std::size_t start = 2 * s;
    const std::size_t end = 2 * s + 2;
    if (steps[s].from != emb.x) record(steps[s].from, at[start]);
    if (steps[s].to != emb.x) record(steps[s].to, at[end]);
    const auto label = std::find(holes.begin(), holes.end(), steps[s].face) - holes.begin();
    out.arcs[label].push_back({steps[s].from, steps[s].to});
  }
  for (auto& a : out.arcs) std::sort(a.begin(), a.end());
  return out;
}

LabelAgreement compare_labels(const WindingLabels& a, const WindingLabels& b) {
  LabelAgreement r;
  r.labels = a.theta.size();
  r.same_vertices = a.theta.size() == b.theta.size();
  r.max_difference = std::max({std::fabs(a.theta_x - b.theta_x), std::fabs(a.x_start - b.x_start),
                                std::fabs(a.x_end - b.x_end)});
  for (const auto& [v, value] : a.theta) {
    const auto it = b.theta.find(v);
    if (it == b.theta.end()) {
      r.same_vertices = false;
      continue;
    }
    r.max_difference = std::max(r.max_difference, std::fabs(value - it->second));
  }
  return r;
}

LabelAgreement winding_labels(const Template& t_sub, const Template& filling_a, const Template& filling_b) {
  const SubtemplateEmbedding emb = embed_subtemplate(t_sub);
  return compare_labels(compute_winding_labels(t_sub, emb, filling_traversal(t_sub, filling_a)),
                        compute_winding_labels(t_sub, emb, filling_traversal(t_sub, filling_b)));
}

std::vector<HoleVertices> hole_vertices(const Template& t) {
  std::vector<int> in(t.map.num_vertices(), 0);
  std::vector<int> out(t.map.num_vertices(), 0);
  for (int f = 0; f < t.num_faces(); ++f) {
    if (!has_curve(t, f)) continue;
    ++out[t.root_vertex(f)];
    ++in[t.terminal_vertex(f)];
  }
  std::vector<HoleVertices> result;
  for (int h : hole_labels(t)) {
    HoleVertices hv;
    hv.face = h;
    std::set<int> seen;
    for (int d : t.map.face_darts(h)) {
      const int v = t.map.tail(d);
      if (!seen.insert(v).second) continue;
      if (in[v] + out[v] == 0) continue;
      hv.boundary.push_back(v);
      if (in[v] == 1 && out[v] == 0) hv.entries.push_back(v);
      if (out[v] == 1 && in[v] == 0) hv.exits.push_back(v);
    }
    result.push_back(std::move(hv));
  }
  return result;
}

double arc_curvature(const Template& t, const SubtemplateEmbedding& emb, int hole_face, int from, int to) {
  int into = -1;
  int away = -1;
  for (int f = 0; f < t.num_faces(); ++f) {
    if (!has_curve(t, f)) continue;
    if (t.terminal_vertex(f) == from) into = f;
    if (t.root_vertex(f) == to) away = f;
  }
  if (into < 0 || away < 0) throw Error(ErrorCode::InvalidArgument, "passage endpoints are not curve ends");
  PolygonalCurve c;
  c.vertices = {emb.center[into], emb.vertex[from], emb.center[hole_face], emb.vertex[to], emb.center[away]};
  const auto turns = turning_angles(c);
  return turns[0] / 2.0 + turns[1] + turns[2] / 2.0;
}

std::vector<std::vector<HoleArc>> admissible_arc_sets(const Template& t, const SubtemplateEmbedding& emb,
                                                      const WindingLabels& labels, int hole, double tol) {
  const int x = emb.x;
  auto label = [&](int v, bool leaving) -> std::optional<double> {
    if (v == x) return leaving ? labels.x_start : labels.x_end;
    const auto it = labels.theta.find(v);
    if (it == labels.theta.end()) return std::nullopt;
    return it->second;
  };
  const HoleVertices hv = hole_vertices(t).at(hole);
  std::vector<std::vector<HoleArc>> result;
  if (hv.entries.size() != hv.exits.size()) return result;
  std::map<int, int> position;
  for (std::size_t i = 0; i < hv.boundary.size(); ++i) position[hv.boundary[i]] = static_cast<int>(i);
  auto crosses = [&](const HoleArc& a, const HoleArc& b) {
    int lo = position[a.from];
    int hi = position[a.to];
    if (lo > hi) std::swap(lo, hi);
    auto inside = [&](int v) { return position[v] > lo && position[v] < hi; };
    return inside(b.from) != inside(b.to);
  };
  const std::size_t k = hv.entries.size();
  std::vector<char> used(k, 0);
  std::vector<HoleArc> chosen;
  std::function<void(std::size_t)> extend = [&](std::size_t i) {
    if (i == k) {
      std::vector<HoleArc> sorted = chosen;
      std::sort(sorted.begin(), sorted.end());
      result.push_back(std::move(sorted));
      return;
    }
    const int v = hv.entries[i];
    for (std::size_t j = 0; j < k; ++j) {
      if (used[j]) continue;
      const HoleArc arc{v, hv.exits[j]};
      bool ok = std::none_of(chosen.begin(), chosen.end(), [&](const HoleArc& c) { return crosses(c, arc); });
      if (!ok) continue;
      const auto tv = label(v, true);
      const auto tw = label(arc.to, false);
      if (!tv || !tw) continue;
      if (std::fabs(arc_curvature(t, emb, hv.face, v, arc.to) - (*tw - *tv)) > tol) continue;
      used[j] = 1;
      chosen.push_back(arc);
      extend(i + 1);
      chosen.pop_back();
      used[j] = 0;
    }
  };
  extend(0);
  std::sort(result.begin(), result.end());
  return result;
}

bool hamiltonian_closure(const Template& t, const std::vector<std::vector<HoleArc>>& choices) {
  const int nv = t.map.num_vertices();
  std::vector<int> succ(nv, -1);
  std::vector<int> in(nv, 0);
  std::vector<int> out(nv, 0);
  int edges = 0;
  auto add = [&](int a, int b) {
    succ[a] = b;
    ++out[a];
    ++in[b];
    ++edges;
  };
  for (int f = 0; f < t.num_faces(); ++f) {
    if (has_curve(t, f)) add(t.root_vertex(f), t.terminal_vertex(f));
  }
  for (const auto& arcs : choices) {
    for (const auto& a : arcs) add(a.from, a.to);
  }
  for (int v = 0; v < nv; ++v) {
    if (in[v] + out[v] == 0) continue;
    if (in[v] != 1 || out[v] != 1) {
      throw Error(ErrorCode::InvalidChoice, fmt::format("vertex {} has in-degree {} and out-degree {}", v, in[v], out[v]));
    }
  }
  const int x = t.root_vertex(unique_face(t, 3));
  int v = x;
  int walked = 0;
  do {
    v = succ[v];
    ++walked;
  } while (v != x && walked <= edges);
  return v == x && walked == edges;
}

}  // namespace quiltlab
