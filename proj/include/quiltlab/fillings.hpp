#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "quiltlab/quilt.hpp"

namespace quiltlab {

/// A template T* together with the faces whose marked subtemplate is T_sub.
struct Filling {
  Template full;                              ///< marked flags set on the selected faces
  std::string code;                           ///< template_code of full
  std::vector<int> hole_four_gons;            ///< 4-gons placed in each hole, by hole label
  std::vector<std::string> projection_codes;  ///< code of T_i* for each hole label i
};

struct FillingEnumeration {
  std::vector<Filling> fillings;  ///< sorted by code, duplicate-free
  std::vector<int> budget;        ///< per hole
  int templates_scanned = 0;
  bool budget_exhausted = false;  ///< no filling within the budget
};

/// Number of 4-gons of a subtemplate outside its holes.
int subtemplate_four_gons(const Template& t_sub);

/// Every T* in the set of valid templates whose marked subtemplate is t_sub,
/// with at most budget[i] 4-gons inside hole i. Candidates are produced by
/// exhaustive construction, so each is valid by construction. The search
/// runs in parallel over the first construction steps.
/// Errors: InvalidArgument when the budget size differs from the hole count.
FillingEnumeration enumerate_fillings(const Template& t_sub, const std::vector<int>& budget);

/// Same with one budget for every hole.
FillingEnumeration enumerate_fillings(const Template& t_sub, int budget_per_hole);

struct BijectionReport {
  int holes = 0;
  std::vector<int> budget;
  std::size_t fillings = 0;                  ///< |T*|
  std::vector<std::size_t> projections;      ///< |T_i*| per hole
  std::size_t product = 1;                   ///< product of the projection sizes
  std::size_t distinct_images = 0;           ///< distinct tuples (T_1*, ..., T_b*)
  bool injective = false;
  bool surjective = false;
  bool fibers_match = false;                 ///< each fiber over fixed other holes is all of T_i*
  bool ok() const { return injective && surjective && fibers_match && fillings > 0; }
};

/// Product map check without throwing.
BijectionReport check_product_bijection(const Template& t_sub, const std::vector<int>& budget);

/// Errors: BijectionViolation when the product map is not a bijection,
/// BudgetExhausted when t_sub has no filling within the budget.
BijectionReport verify_product_bijection(const Template& t_sub, const std::vector<int>& budget);

/// Text summary with one key per line.
std::string to_text(const BijectionReport& r);

}  // namespace quiltlab
