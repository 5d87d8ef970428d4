#pragma once

#include <string>
#include <vector>

#include "quiltlab/template.hpp"

namespace quiltlab {

/// Template obtained from a parent by keeping a set of marked faces, turning
/// every connected component of the remaining faces into a hole and deleting
/// the vertices that are neither marks of marked faces nor shared by two
/// marked faces.
struct MarkedSubtemplate {
  Template tmpl;
  std::vector<int> selection;                       ///< marked parent faces, sorted
  std::vector<int> holes;                           ///< sub face id of hole label 1..b
  std::vector<std::vector<int>> hole_parent_faces;  ///< parent faces merged into each hole
  std::vector<int> parent_face;                     ///< per sub face, -1 for holes
  std::vector<int> parent_vertex;                   ///< per sub vertex
  std::vector<std::vector<int>> dart_chain;         ///< per sub dart, the parent darts it replaces

  int num_holes() const { return static_cast<int>(holes.size()); }
};

/// Hole faces of a template ordered by their first appearance in the
/// canonical breadth-first dart order from the root of the 3-gon.
std::vector<int> hole_labels(const Template& t);

/// Errors: DisconnectedSelection when the selected faces are not connected
/// by shared edges or the selection is empty; InvalidArgument when a selected
/// face is already a hole or the boundary of a hole branches at a deleted
/// vertex.
MarkedSubtemplate mark_subtemplate(const Template& t, const std::vector<int>& faces);

/// Copy of t with the marked flag set exactly on the given faces.
Template with_marked_flags(const Template& t, const std::vector<int>& faces);

}  // namespace quiltlab
