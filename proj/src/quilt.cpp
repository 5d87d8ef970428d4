#include "quiltlab/quilt.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include <fmt/format.h>

namespace quiltlab {

std::vector<int> hole_labels(const Template& t) {
  const int three = t.three_gon();
  const int root = three >= 0 ? t.root_dart(three) : t.map.root();
  const std::vector<int> label = t.map.rerooted(root).canonical_labeling();
  std::vector<std::pair<int, int>> keyed;
  for (int f = 0; f < t.num_faces(); ++f) {
    if (!t.is_hole(f)) continue;
    int best = t.map.num_darts();
    for (int d : t.map.face_darts(f)) best = std::min(best, label[d]);
    keyed.emplace_back(best, f);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<int> out;
  for (const auto& [lab, f] : keyed) out.push_back(f);
  return out;
}

Template with_marked_flags(const Template& t, const std::vector<int>& faces) {
  Template out = t;
  out.marked.assign(t.num_faces(), 0);
  for (int f : faces) out.marked.at(f) = 1;
  return out;
}

MarkedSubtemplate mark_subtemplate(const Template& t, const std::vector<int>& faces) {
  const HalfEdgeMap& map = t.map;
  const int nf = t.num_faces();
  std::vector<char> sel(nf, 0);
  for (int f : faces) {
    if (f < 0 || f >= nf) throw Error(ErrorCode::InvalidArgument, fmt::format("face {} out of range", f));
    if (t.is_hole(f)) throw Error(ErrorCode::InvalidArgument, fmt::format("face {} is a hole", f));
    sel[f] = 1;
  }
  const int first = static_cast<int>(std::find(sel.begin(), sel.end(), 1) - sel.begin());
  if (first == nf) throw Error(ErrorCode::DisconnectedSelection, "empty selection");

  // Connectivity of the selection and components of its complement.
  std::vector<std::vector<int>> adjacent(nf);
  for (int d = 0; d < map.num_darts(); d += 2) {
    const int a = map.face(d);
    const int b = map.face(d + 1);
    if (a != b) {
      adjacent[a].push_back(b);
      adjacent[b].push_back(a);
    }
  }
  std::vector<int> region(nf, -1);
  {
    std::vector<char> seen(nf, 0);
    std::deque<int> queue = {first};
    seen[first] = 1;
    int reached = 0;
    while (!queue.empty()) {
      const int f = queue.front();
      queue.pop_front();
      ++reached;
      for (int g : adjacent[f]) {
        if (sel[g] && !seen[g]) {
          seen[g] = 1;
          queue.push_back(g);
        }
      }
    }
    if (reached != std::count(sel.begin(), sel.end(), 1)) {
      throw Error(ErrorCode::DisconnectedSelection, "selected faces are not edge-connected");
    }
  }
  int components = 0;
  for (int f = 0; f < nf; ++f) {
    if (sel[f] || region[f] >= 0) continue;
    std::deque<int> queue = {f};
    region[f] = components;
    while (!queue.empty()) {
      const int g = queue.front();
      queue.pop_front();
      for (int h : adjacent[g]) {
        if (!sel[h] && region[h] < 0) {
          region[h] = components;
          queue.push_back(h);
        }
      }
    }
    ++components;
  }

  auto dropped = [&](int d) {
    const int a = map.face(d);
    const int b = map.face(d ^ 1);
    return !sel[a] && !sel[b];
  };

  std::vector<char> kept(map.num_vertices(), 0);
  for (int f = 0; f < nf; ++f) {
    if (!sel[f]) continue;
    for (int d : t.marks[f]) kept[map.tail(d)] = 1;
  }
  for (int v = 0; v < map.num_vertices(); ++v) {
    std::set<int> around;
    for (int d : map.vertex_darts(v)) {
      if (sel[map.face(d)]) around.insert(map.face(d));
    }
    if (around.size() >= 2) kept[v] = 1;
  }

  auto successor = [&](int g) {
    if (sel[map.face(g)]) return map.phi(g);
    int s = map.next(g ^ 1);
    while (dropped(s)) s = map.next(s);
    return s;
  };

  // Chains of parent darts between kept vertices.
  std::vector<int> chain_of(map.num_darts(), -1);
  std::vector<std::vector<int>> chains;
  for (int d = 0; d < map.num_darts(); ++d) {
    if (!kept[map.tail(d)] || dropped(d)) continue;
    std::vector<int> chain;
    int g = d;
    for (;;) {
      if (chain_of[g] >= 0) throw Error(ErrorCode::InvalidArgument, "hole boundary branches at a deleted vertex");
      chain.push_back(g);
      chain_of[g] = static_cast<int>(chains.size());
      if (kept[map.head(g)]) break;
      g = successor(g);
    }
    chains.push_back(std::move(chain));
  }
  for (int d = 0; d < map.num_darts(); ++d) {
    if (!dropped(d) && chain_of[d] < 0) {
      throw Error(ErrorCode::InvalidArgument, "a boundary cycle has no kept vertex");
    }
  }

  // Pair each chain with the chain running back along it.
  std::vector<int> sub_dart(chains.size(), -1);
  MarkedSubtemplate out;
  for (std::size_t c = 0; c < chains.size(); ++c) {
    if (sub_dart[c] >= 0) continue;
    const auto& chain = chains[c];
    const int back = chain_of[chain.back() ^ 1];
    const auto& other = chains[back];
    bool mirrored = other.size() == chain.size();
    for (std::size_t i = 0; mirrored && i < chain.size(); ++i) {
      mirrored = other[i] == (chain[chain.size() - 1 - i] ^ 1);
    }
    if (!mirrored || back == static_cast<int>(c)) {
      throw Error(ErrorCode::InvalidArgument, "hole boundary branches at a deleted vertex");
    }
    sub_dart[c] = static_cast<int>(out.dart_chain.size());
    out.dart_chain.push_back(chain);
    sub_dart[back] = static_cast<int>(out.dart_chain.size());
    out.dart_chain.push_back(other);
  }

  const int nd = static_cast<int>(out.dart_chain.size());
  std::vector<int> next(nd, -1);
  for (int v = 0; v < map.num_vertices(); ++v) {
    if (!kept[v]) continue;
    std::vector<int> around;
    for (int d : map.vertex_darts(v)) {
      if (!dropped(d)) around.push_back(sub_dart[chain_of[d]]);
    }
    for (std::size_t i = 0; i < around.size(); ++i) next[around[i]] = around[(i + 1) % around.size()];
  }

  int root = 0;
  const int three = t.three_gon();
  if (three >= 0 && sel[three]) {
    root = sub_dart[chain_of[t.root_dart(three)]];
  } else if (chain_of[map.root()] >= 0 && chains[chain_of[map.root()]].front() == map.root()) {
    root = sub_dart[chain_of[map.root()]];
  }
  Template& s = out.tmpl;
  s.map = HalfEdgeMap::from_normalized(std::move(next), root);
  const int sf = s.map.num_faces();
  s.hole.assign(sf, 0);
  s.marks.assign(sf, {});
  out.parent_face.assign(sf, -2);
  std::vector<int> hole_region(sf, -1);
  for (int sd = 0; sd < nd; ++sd) {
    const int pf = map.face(out.dart_chain[sd].front());
    const int key = sel[pf] ? pf : -1;
    const int f = s.map.face(sd);
    if (out.parent_face[f] == -2) {
      out.parent_face[f] = key;
      if (key < 0) hole_region[f] = region[pf];
    } else if (out.parent_face[f] != key || (key < 0 && hole_region[f] != region[pf])) {
      throw Error(ErrorCode::InvalidArgument, "a subtemplate face mixes parent regions");
    }
  }
  for (int f = 0; f < sf; ++f) {
    if (out.parent_face[f] >= 0) {
      for (int d : t.marks[out.parent_face[f]]) s.marks[f].push_back(sub_dart[chain_of[d]]);
    } else {
      s.hole[f] = 1;
    }
  }
  if (std::count(out.parent_face.begin(), out.parent_face.end(), -1) != components) {
    throw Error(ErrorCode::InvalidArgument, "a hole region splits into several faces");
  }
  if (t.has_marked_flags()) {
    s.marked.assign(sf, 0);
    for (int f = 0; f < sf; ++f) {
      if (out.parent_face[f] >= 0) s.marked[f] = t.marked[out.parent_face[f]];
    }
  }
  if (components == 0 && !t.order.empty()) {
    std::vector<int> face_of_parent(nf, -1);
    for (int f = 0; f < sf; ++f) face_of_parent[out.parent_face[f]] = f;
    for (int f : t.order) s.order.push_back(face_of_parent[f]);
  }

  out.holes = hole_labels(s);
  for (int h : out.holes) {
    std::vector<int> members;
    for (int f = 0; f < nf; ++f) {
      if (!sel[f] && region[f] == hole_region[h]) members.push_back(f);
    }
    out.hole_parent_faces.push_back(std::move(members));
  }
  for (int f = 0; f < nf; ++f) {
    if (sel[f]) out.selection.push_back(f);
  }
  out.parent_vertex.assign(s.map.num_vertices(), -1);
  for (int sd = 0; sd < nd; ++sd) out.parent_vertex[s.map.tail(sd)] = map.tail(out.dart_chain[sd].front());
  return out;
}

}  // namespace quiltlab
