#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "quiltlab/curvature.hpp"
#include "quiltlab/fillings.hpp"

namespace quiltlab {

/// Straight-line drawing of a subtemplate. Every face other than the 1-gon,
/// holes included, is subdivided by a center node joined to its corners and
/// edge midpoints. The 1-gon boundary sits on the unit circle and all other
/// nodes are placed by uniform barycentric (Tutte) averaging.
struct SubtemplateEmbedding {
  std::vector<Point> vertex;  ///< per map vertex
  std::vector<Point> center;  ///< per face; unused for the 1-gon
  int outer_face = -1;        ///< the 1-gon
  int x = -1;                 ///< root vertex of the 3-gon
};

/// Errors: InvalidArgument when the 1-gon or 3-gon is missing or in a hole,
/// EmbeddingDegenerate when a star triangle is not strictly clockwise.
SubtemplateEmbedding embed_subtemplate(const Template& t_sub);

/// One step of the closed curve from x to x: either the curve of a marked
/// face from its root to its terminal vertex or a passage through a hole.
struct CurveStep {
  bool hole = false;
  int face = -1;  ///< face of t_sub (a hole face for hole steps)
  int from = -1;  ///< vertex of t_sub
  int to = -1;    ///< vertex of t_sub
};

/// Visits of the faces of t_sub in the face order of a filling, with each
/// maximal run of unmarked faces replaced by one hole step.
/// Errors: InvalidArgument when the filling does not reduce to t_sub.
std::vector<CurveStep> filling_traversal(const Template& t_sub, const Template& filling);

/// Directed hole passage from vertex `from` to vertex `to` of t_sub.
struct HoleArc {
  int from = -1;
  int to = -1;
  bool operator<(const HoleArc& o) const { return std::pair(from, to) < std::pair(o.from, o.to); }
  bool operator==(const HoleArc& o) const { return from == o.from && to == o.to; }
};

struct WindingLabels {
  double theta_x = 0.0;                ///< initial heading in [0, 2 pi)
  double x_start = 0.0;                ///< label of x where the curve leaves it
  double x_end = 0.0;                  ///< label of x where the curve returns; x_start + 2 pi w
  double total_turning = 0.0;          ///< 2 pi w for the rotation number w of the closed curve
  std::map<int, double> theta;         ///< vertex of V_1 u ... u V_b other than x -> label
  std::vector<std::vector<HoleArc>> arcs;  ///< per hole label, sorted
};

/// Labels obtained by drawing face curves root -> center -> terminal and hole
/// passages from -> hole center -> to, and accumulating turning angles.
/// The label of a vertex is the heading before it plus half the turn at it.
WindingLabels compute_winding_labels(const Template& t_sub, const SubtemplateEmbedding& emb,
                                     const std::vector<CurveStep>& steps);

struct LabelAgreement {
  bool same_vertices = false;
  double max_difference = 0.0;
  std::size_t labels = 0;
  bool agree(double tol = 1e-6) const { return same_vertices && max_difference <= tol; }
};

LabelAgreement compare_labels(const WindingLabels& a, const WindingLabels& b);

/// Embeds t_sub once and compares the labels induced by two fillings.
/// Errors: EmbeddingDegenerate, InvalidArgument.
LabelAgreement winding_labels(const Template& t_sub, const Template& filling_a, const Template& filling_b);

/// The vertices V_i of hole i (by label order), split by whether a hole
/// passage leaves them (entries) or reaches them (exits), each in boundary
/// order of the hole.
struct HoleVertices {
  int face = -1;
  std::vector<int> boundary;  ///< vertices of V_i in boundary order
  std::vector<int> entries;
  std::vector<int> exits;
};
std::vector<HoleVertices> hole_vertices(const Template& t_sub);

/// Total curvature of the passage from -> hole center -> to, including half
/// of the turns where it joins the face curves at both ends.
double arc_curvature(const Template& t_sub, const SubtemplateEmbedding& emb, int hole_face, int from, int to);

/// The admissible sets A_i: noncrossing perfect matchings from entries to
/// exits of hole i whose passages have curvature theta(to) - theta(from)
/// within tol. A passage leaving x uses x_start and one reaching x uses x_end.
std::vector<std::vector<HoleArc>> admissible_arc_sets(const Template& t_sub, const SubtemplateEmbedding& emb,
                                                      const WindingLabels& labels, int hole,
                                                      double tol = 1e-6);

/// Adds the chosen passages to the graph of face curves and reports whether
/// the result is a single cycle through x.
/// Errors: InvalidChoice when a vertex ends with in- or out-degree other than 1.
bool hamiltonian_closure(const Template& t_sub, const std::vector<std::vector<HoleArc>>& choices);

}  // namespace quiltlab
