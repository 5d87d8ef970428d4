#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "quiltlab/errors.hpp"
#include "quiltlab/planar_map.hpp"

namespace quiltlab {

/// Planar map with holes and marked vertices per face.
///
/// Marks are stored as darts: a mark of face f is the dart of f whose tail is
/// the marked vertex. marks[f] lists them in face order (clockwise for
/// bounded faces) starting with the root. Hole faces carry no marks.
struct Template {
  HalfEdgeMap map;
  std::vector<char> hole;               ///< per face
  std::vector<std::vector<int>> marks;  ///< per face, root first
  std::vector<int> order;               ///< F_ext, F_0, ..., F_{n+1} when known
  std::vector<char> marked;             ///< optional per-face selection flag

  int num_faces() const { return map.num_faces(); }
  int num_holes() const;
  int gon(int f) const { return static_cast<int>(marks[f].size()); }
  bool is_hole(int f) const { return hole[f] != 0; }
  bool has_marked_flags() const { return !marked.empty(); }

  int root_dart(int f) const { return marks[f].front(); }
  int root_vertex(int f) const { return map.tail(marks[f].front()); }
  /// Index into marks[f] of the terminal vertex: the vertex clockwise of the
  /// root for a 3-gon, the opposite vertex for a 2-gon or 4-gon.
  int terminal_index(int f) const;
  int terminal_dart(int f) const { return marks[f][terminal_index(f)]; }
  int terminal_vertex(int f) const { return map.tail(terminal_dart(f)); }

  /// Darts of side s of face f: from mark s up to, not including, mark s+1.
  std::vector<int> side_darts(int f, int s) const;
  /// The unique 3-gon, or -1.
  int three_gon() const;
  /// n for a template whose faces are F_ext, F_0, n 4-gons and a 2-gon.
  int four_gon_count() const;
};

/// A template with a positive length per edge.
struct Quilt {
  Template tmpl;
  std::vector<double> length;  ///< per edge

  double side_length(int f, int s) const;
};

/// Text format: the planar map section followed by `HOLE <face>`,
/// `MARKS <face> <root> <v2> ... <vk>` (vertex ids), an optional
/// `ORDER <f_ext> <f_0> ... <f_{n+1}>` line and an optional
/// `MARKED <face> ...` line.
std::string template_to_text(const Template& t);
Template parse_template_text(std::istream& in);
Template parse_template_lines(const std::vector<std::string>& lines, std::size_t& cursor);
Template load_template(const std::string& path);

/// Quilt text: the template followed by one `LENGTH <edge> <value>` line per edge.
std::string quilt_to_text(const Quilt& q);
Quilt parse_quilt_text(std::istream& in);

/// Rooted isomorphism code of a template, rooted at the root dart of its
/// 3-gon. It covers the map, the hole set, the marks and the marked flags.
std::string template_code(const Template& t);

/// Iterative construction of templates in the set of valid templates.
///
/// The state holds the current unexplored face U_j as its left arc (root to
/// the root of F_0, clockwise) and its right arc. A step splits the k-th left
/// edge and the k'-th right edge counted from the root of U_j, joins the two
/// new vertices to a new interior vertex and closes face F_j.
class TemplateBuilder {
 public:
  TemplateBuilder();

  /// Number of edges on the left (p) and right (q) arcs of U_j.
  int p() const { return static_cast<int>(left_.size()); }
  int q() const { return static_cast<int>(right_.size()); }
  int steps() const { return static_cast<int>(faces_.size()) - 2; }

  /// Combinatorial step with 1 <= k <= p and 1 <= kp <= q. Errors: InvalidChoice.
  void step(int k, int kp);

  /// Sets the lengths of the initial edges from the first cell.
  /// Errors: ConstraintViolated.
  void set_initial_lengths(double l0p, double r0m, double r0p);
  /// Metric step: places b and c at distances lm and rm from the root of U_j.
  /// Errors: ConstraintViolated, LengthCollision.
  void step_lengths(double lm, double lp, double rm, double rp);

  double left_arc_length() const;
  double right_arc_length() const;

  Template finish() const;
  Quilt finish_quilt() const;

 private:
  int split(int dart, double tail_part);
  int add_edge();
  void replace_mark(int old_dart, int new_dart);

  std::vector<int> next_;
  std::vector<double> length_;
  std::vector<int> left_;
  std::vector<int> right_;
  std::vector<std::vector<int>> faces_;  ///< marks of F_ext, F_0, F_1, ...
  bool metric_ = false;
};

/// Builds the template of a choice sequence of (k, k') pairs.
Template build_template(const std::vector<std::pair<int, int>>& choices);

/// Number of distinct choice sequences of length n, and of templates they
/// produce up to rooted isomorphism.
std::uint64_t count_choice_sequences(int n);
std::size_t count_distinct_templates(int n);

struct ConditionResult {
  bool ok = true;
  int face_index = -1;  ///< position in the face order of the first failure
  std::string detail;
};

struct ValidityReport {
  int n = 0;
  ConditionResult a;
  ConditionResult b;
  ConditionResult c;
  ConditionResult d;
  bool valid() const { return a.ok && b.ok && c.ok && d.ok; }
};

/// Checks conditions (a)-(d) of a template with a face order. The terminal
/// vertex of F_i is exempt from the degree-3 rule of (c) when it is the root
/// of F_{i+1}. Errors: MissingOrder, WrongGonProfile.
ValidityReport validate_template(const Template& t);

/// Recovers F_ext, F_0, ..., F_{n+1} by following terminal-to-root links.
std::optional<std::vector<int>> derive_face_order(const Template& t);

/// Side-length coordinates in the order l0+, r0-, r0+, then li-, li+, ri-,
/// ri+ for i = 1..n, then the total boundary length of F_ext.
struct SideMap {
  Eigen::MatrixXd matrix;                    ///< rows coordinates, columns edges
  std::vector<std::string> row_names;
  std::vector<std::vector<int>> left_sides;  ///< edge sets of l0+, l1-, l1+, ...
};
SideMap side_length_map(const Template& t);

struct DeterminantReport {
  double determinant = 0.0;
  int n = 0;
  int left_edges = 0;                ///< |E^l|
  bool left_tree = false;            ///< E^l is a tree containing the root of F_0
  bool earliest_unique = false;      ///< every E^l edge is the earliest edge of exactly one left side
  bool upper_triangular = false;     ///< left block is unit upper triangular in contour order
  std::vector<int> contour_edges;    ///< E^l edges in first-visit order
};

/// Determinant of the side-length map with the contour-order checks.
/// With inject_fault the last row is overwritten by the second before factoring.
/// Errors: SingularMap when |det| differs from 1 by more than 1e-9.
DeterminantReport side_length_map_determinant(const Template& t, bool inject_fault = false);

}  // namespace quiltlab
