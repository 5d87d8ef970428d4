#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "quiltlab/errors.hpp"

namespace quiltlab {

/// Rooted combinatorial planar map stored as a rotation system on darts.
///
/// Conventions used throughout the library:
///  * darts are dense integers 0..2E-1 and twin(2k) = 2k+1;
///  * a dart is attached to its tail vertex, and next(d) is the dart
///    following d counterclockwise around that vertex;
///  * faces are the orbits of phi = next o twin, i.e. phi(d) = next(twin(d)).
///    The face of d lies on the right of d, so bounded faces of a planar
///    drawing are traced clockwise and the outer face counterclockwise.
///
/// Vertices and faces are numbered in increasing order of the smallest dart
/// they contain. Maps are immutable after construction.
class HalfEdgeMap {
 public:
  HalfEdgeMap() = default;

  /// Validates and builds a map from an arbitrary dart labelling. Darts are
  /// relabelled so that twin pairs become (2k, 2k+1); input_dart() records
  /// the original label of each internal dart.
  /// Errors: SizeMismatch, NonInvolution, FixedPointInTwin, NotPermutation.
  static HalfEdgeMap build(const std::vector<int>& next, const std::vector<int>& twin, int root);

  /// Builds a map whose darts already satisfy twin(2k) = 2k+1.
  /// Errors: SizeMismatch, NotPermutation.
  static HalfEdgeMap from_normalized(std::vector<int> next, int root);

  int num_darts() const { return static_cast<int>(next_.size()); }
  int num_edges() const { return num_darts() / 2; }
  int num_vertices() const { return static_cast<int>(vertex_darts_.size()); }
  int num_faces() const { return static_cast<int>(face_darts_.size()); }
  int euler_characteristic() const { return num_vertices() - num_edges() + num_faces(); }
  bool is_spherical() const { return euler_characteristic() == 2; }

  int root() const { return root_; }
  int next(int d) const { return next_[d]; }
  int prev(int d) const { return prev_[d]; }
  static int twin(int d) { return d ^ 1; }
  int phi(int d) const { return next_[d ^ 1]; }
  int phi_inverse(int d) const { return prev_[d] ^ 1; }
  int tail(int d) const { return vertex_of_[d]; }
  int head(int d) const { return vertex_of_[d ^ 1]; }
  int vertex(int d) const { return vertex_of_[d]; }
  int face(int d) const { return face_of_[d]; }
  int degree(int v) const { return static_cast<int>(vertex_darts_[v].size()); }

  /// Darts leaving vertex v in counterclockwise order.
  const std::vector<int>& vertex_darts(int v) const { return vertex_darts_[v]; }
  /// Darts of face f in traversal order (phi-orbit).
  const std::vector<int>& face_darts(int f) const { return face_darts_[f]; }
  const std::vector<int>& next_permutation() const { return next_; }
  const std::vector<int>& input_dart() const { return input_dart_; }

  /// Same map with a different root dart.
  HalfEdgeMap rerooted(int root) const;

  /// Position of each dart in the breadth-first exploration from the root,
  /// where each dart enqueues twin(d) and then next(d).
  std::vector<int> canonical_labeling() const;

  /// Byte string identifying the rooted map up to isomorphism.
  std::string canonical_code() const;

 private:
  void derive();

  std::vector<int> next_;
  std::vector<int> prev_;
  std::vector<int> vertex_of_;
  std::vector<int> face_of_;
  std::vector<std::vector<int>> vertex_darts_;
  std::vector<std::vector<int>> face_darts_;
  std::vector<int> input_dart_;
  int root_ = 0;
};

/// Faces as dart cycles, indexed by face id.
std::vector<std::vector<int>> faces(const HalfEdgeMap& map);

/// Appends an integer to a byte code using a variable-length encoding.
void append_varint(std::string& out, std::uint64_t value);

/// Text format: a line `E=<n>`, an optional `ROOT <d>` line, then 2n lines
/// `next twin`, one per dart.
std::string to_text(const HalfEdgeMap& map);
HalfEdgeMap parse_map_text(std::istream& in);

/// Parses the leading map section of a line list and returns the index of
/// the first unconsumed line.
HalfEdgeMap parse_map_lines(const std::vector<std::string>& lines, std::size_t& cursor);

}  // namespace quiltlab
