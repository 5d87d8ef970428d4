#include "quiltlab/planar_map.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <sstream>

namespace quiltlab {

HalfEdgeMap HalfEdgeMap::build(const std::vector<int>& next, const std::vector<int>& twin,
                               int root) {
  const int n = static_cast<int>(next.size());
  if (static_cast<int>(twin.size()) != n || n % 2 != 0 || n == 0) {
    throw Error(ErrorCode::SizeMismatch, "next and twin must act on the same even-sized dart set");
  }
  if (root < 0 || root >= n) throw Error(ErrorCode::SizeMismatch, "root dart out of range");
  for (int d = 0; d < n; ++d) {
    if (twin[d] < 0 || twin[d] >= n || twin[twin[d]] != d) {
      throw Error(ErrorCode::NonInvolution, "twin is not an involution at dart " + std::to_string(d));
    }
    if (twin[d] == d) {
      throw Error(ErrorCode::FixedPointInTwin, "twin fixes dart " + std::to_string(d));
    }
  }
  std::vector<int> relabel(n, -1);
  std::vector<int> original;
  original.reserve(n);
  for (int d = 0; d < n; ++d) {
    if (relabel[d] >= 0) continue;
    relabel[d] = static_cast<int>(original.size());
    original.push_back(d);
    relabel[twin[d]] = static_cast<int>(original.size());
    original.push_back(twin[d]);
  }
  std::vector<int> seen(n, 0);
  std::vector<int> new_next(n);
  for (int d = 0; d < n; ++d) {
    if (next[d] < 0 || next[d] >= n) throw Error(ErrorCode::SizeMismatch, "next out of range");
    if (seen[next[d]]++) throw Error(ErrorCode::NotPermutation, "next is not a permutation");
    new_next[relabel[d]] = relabel[next[d]];
  }
  HalfEdgeMap map = from_normalized(std::move(new_next), relabel[root]);
  map.input_dart_ = std::move(original);
  return map;
}

HalfEdgeMap HalfEdgeMap::from_normalized(std::vector<int> next, int root) {
  const int n = static_cast<int>(next.size());
  if (n == 0 || n % 2 != 0) throw Error(ErrorCode::SizeMismatch, "dart count must be positive and even");
  if (root < 0 || root >= n) throw Error(ErrorCode::SizeMismatch, "root dart out of range");
  HalfEdgeMap map;
  map.prev_.assign(n, -1);
  for (int d = 0; d < n; ++d) {
    if (next[d] < 0 || next[d] >= n) throw Error(ErrorCode::SizeMismatch, "next out of range");
    if (map.prev_[next[d]] != -1) throw Error(ErrorCode::NotPermutation, "next is not a permutation");
    map.prev_[next[d]] = d;
  }
  map.next_ = std::move(next);
  map.root_ = root;
  map.input_dart_.resize(n);
  for (int d = 0; d < n; ++d) map.input_dart_[d] = d;
  map.derive();
  return map;
}

void HalfEdgeMap::derive() {
  const int n = num_darts();
  vertex_of_.assign(n, -1);
  face_of_.assign(n, -1);
  vertex_darts_.clear();
  face_darts_.clear();
  for (int d = 0; d < n; ++d) {
    if (vertex_of_[d] < 0) {
      const int v = static_cast<int>(vertex_darts_.size());
      vertex_darts_.emplace_back();
      int e = d;
      do {
        vertex_of_[e] = v;
        vertex_darts_[v].push_back(e);
        e = next_[e];
      } while (e != d);
    }
    if (face_of_[d] < 0) {
      const int f = static_cast<int>(face_darts_.size());
      face_darts_.emplace_back();
      int e = d;
      do {
        face_of_[e] = f;
        face_darts_[f].push_back(e);
        e = phi(e);
      } while (e != d);
    }
  }
}

HalfEdgeMap HalfEdgeMap::rerooted(int root) const {
  if (root < 0 || root >= num_darts()) throw Error(ErrorCode::SizeMismatch, "root dart out of range");
  HalfEdgeMap copy = *this;
  copy.root_ = root;
  return copy;
}

std::vector<int> HalfEdgeMap::canonical_labeling() const {
  const int n = num_darts();
  std::vector<int> label(n, -1);
  std::deque<int> queue;
  int counter = 0;
  label[root_] = counter++;
  queue.push_back(root_);
  while (!queue.empty()) {
    const int d = queue.front();
    queue.pop_front();
    for (int e : {twin(d), next_[d]}) {
      if (label[e] < 0) {
        label[e] = counter++;
        queue.push_back(e);
      }
    }
  }
  // Darts of other connected components are appended in input order so the
  // labelling stays a permutation; such maps are not spherical anyway.
  for (int d = 0; d < n; ++d) {
    if (label[d] < 0) label[d] = counter++;
  }
  return label;
}

void append_varint(std::string& out, std::uint64_t value) {
  while (value >= 0x80) {
    out.push_back(static_cast<char>((value & 0x7f) | 0x80));
    value >>= 7;
  }
  out.push_back(static_cast<char>(value));
}

std::string HalfEdgeMap::canonical_code() const {
  const std::vector<int> label = canonical_labeling();
  const int n = num_darts();
  std::vector<int> dart_at(n);
  for (int d = 0; d < n; ++d) dart_at[label[d]] = d;
  std::string code;
  code.reserve(static_cast<std::size_t>(2 * n + 4));
  append_varint(code, static_cast<std::uint64_t>(n));
  for (int i = 0; i < n; ++i) {
    const int d = dart_at[i];
    append_varint(code, static_cast<std::uint64_t>(label[next_[d]]));
    append_varint(code, static_cast<std::uint64_t>(label[twin(d)]));
  }
  return code;
}

std::vector<std::vector<int>> faces(const HalfEdgeMap& map) {
  std::vector<std::vector<int>> out;
  out.reserve(map.num_faces());
  for (int f = 0; f < map.num_faces(); ++f) out.push_back(map.face_darts(f));
  return out;
}

std::string to_text(const HalfEdgeMap& map) {
  std::ostringstream out;
  out << "E=" << map.num_edges() << "\n";
  out << "ROOT " << map.root() << "\n";
  for (int d = 0; d < map.num_darts(); ++d) {
    out << map.next(d) << " " << HalfEdgeMap::twin(d) << "\n";
  }
  return out.str();
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

HalfEdgeMap parse_map_lines(const std::vector<std::string>& lines, std::size_t& cursor) {
  auto skip_blank = [&]() {
    while (cursor < lines.size()) {
      const std::string t = trim(lines[cursor]);
      if (!t.empty() && t[0] != '#') break;
      ++cursor;
    }
  };
  skip_blank();
  if (cursor >= lines.size()) throw Error(ErrorCode::ParseError, "missing E=<n> header");
  const std::string header = trim(lines[cursor]);
  if (header.rfind("E=", 0) != 0) throw Error(ErrorCode::ParseError, "expected E=<n>, got '" + header + "'");
  int edges = 0;
  try {
    edges = std::stoi(header.substr(2));
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "bad edge count '" + header + "'");
  }
  if (edges <= 0) throw Error(ErrorCode::ParseError, "edge count must be positive");
  ++cursor;
  skip_blank();
  int root = 0;
  if (cursor < lines.size() && trim(lines[cursor]).rfind("ROOT", 0) == 0) {
    std::istringstream ls(trim(lines[cursor]).substr(4));
    if (!(ls >> root)) throw Error(ErrorCode::ParseError, "bad ROOT line");
    ++cursor;
  }
  std::vector<int> next;
  std::vector<int> twin;
  for (int d = 0; d < 2 * edges; ++d) {
    skip_blank();
    if (cursor >= lines.size()) throw Error(ErrorCode::ParseError, "truncated dart list");
    std::istringstream ls(trim(lines[cursor]));
    int a = 0;
    int b = 0;
    if (!(ls >> a >> b)) throw Error(ErrorCode::ParseError, "bad dart line '" + lines[cursor] + "'");
    next.push_back(a);
    twin.push_back(b);
    ++cursor;
  }
  return HalfEdgeMap::build(next, twin, root);
}

HalfEdgeMap parse_map_text(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  std::size_t cursor = 0;
  return parse_map_lines(lines, cursor);
}

}  // namespace quiltlab
