#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "quiltlab/fillings.hpp"
#include "quiltlab/fixtures.hpp"

using namespace quiltlab;

namespace {

Template fixture(const std::string& name) {
  std::istringstream in(builtin_fixture(name).text);
  return parse_template_text(in);
}

Template plain(Template t) {
  t.marked.clear();
  t.order.clear();
  return t;
}

std::vector<int> marked_faces(const Template& t) {
  std::vector<int> out;
  for (int f = 0; f < t.num_faces(); ++f) {
    if (t.marked[f]) out.push_back(f);
  }
  return out;
}

}  // namespace

TEST(Fillings, FullTemplateFillsOnlyItself) {
  const Template t = fixture("template_n2");
  const FillingEnumeration e = enumerate_fillings(t, std::vector<int>{});
  ASSERT_EQ(e.fillings.size(), 1u);
  EXPECT_EQ(template_code(plain(e.fillings[0].full)), template_code(plain(t)));
}

TEST(Fillings, TwoGonHoleHasOneMinimalFilling) {
  const Template t = build_template({{1, 1}});
  std::vector<int> keep = {t.order[0], t.order[1], t.order[2]};
  const MarkedSubtemplate s = mark_subtemplate(t, keep);
  ASSERT_EQ(s.num_holes(), 1);
  const FillingEnumeration e = enumerate_fillings(s.tmpl, 0);
  ASSERT_EQ(e.fillings.size(), 1u);
  EXPECT_EQ(e.fillings[0].hole_four_gons, std::vector<int>{0});
  EXPECT_EQ(template_code(plain(e.fillings[0].full)), template_code(plain(t)));
  EXPECT_GE(enumerate_fillings(s.tmpl, 2).fillings.size(), e.fillings.size());
}

TEST(Fillings, EveryFillingReducesToTheSubtemplate) {
  const Template sub = fixture("two_hole_a");
  const FillingEnumeration e = enumerate_fillings(sub, 1);
  ASSERT_FALSE(e.fillings.empty());
  std::set<std::string> codes;
  for (const Filling& f : e.fillings) {
    EXPECT_TRUE(validate_template(f.full).valid());
    const MarkedSubtemplate back = mark_subtemplate(f.full, marked_faces(f.full));
    EXPECT_EQ(template_code(plain(back.tmpl)), template_code(plain(sub)));
    EXPECT_TRUE(codes.insert(f.code).second);
    ASSERT_EQ(f.hole_four_gons.size(), 2u);
    EXPECT_LE(f.hole_four_gons[0], 1);
    EXPECT_LE(f.hole_four_gons[1], 1);
    EXPECT_EQ(f.projection_codes.size(), 2u);
  }
}

TEST(Fillings, SingleHoleIsTriviallyBijective) {
  const Template t = build_template({{1, 2}, {1, 1}});
  const MarkedSubtemplate s = mark_subtemplate(t, {t.order[0], t.order[1], t.order[2]});
  ASSERT_EQ(s.num_holes(), 1);
  const BijectionReport r = check_product_bijection(s.tmpl, {2});
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.product, r.fillings);
}

TEST(Fillings, ProductLawOnTwoHoleFixtures) {
  for (const char* name : {"two_hole_a", "two_hole_b", "two_hole_c"}) {
    const Template sub = fixture(name);
    for (const std::vector<int>& budget : {std::vector<int>{1, 1}, std::vector<int>{2, 1}, std::vector<int>{1, 2}}) {
      const BijectionReport r = verify_product_bijection(sub, budget);
      EXPECT_TRUE(r.ok()) << name;
      ASSERT_EQ(r.projections.size(), 2u);
      EXPECT_EQ(r.fillings, r.projections[0] * r.projections[1]) << name;
      EXPECT_EQ(r.distinct_images, r.fillings);
    }
  }
}

TEST(Fillings, ProjectionsMatchDirectSingleHoleEnumeration) {
  const Template sub = fixture("two_hole_b");
  const FillingEnumeration e = enumerate_fillings(sub, 1);
  ASSERT_FALSE(e.fillings.empty());
  const BijectionReport r = check_product_bijection(sub, {1, 1});
  for (int h = 0; h < 2; ++h) {
    std::set<std::string> projected;
    for (const Filling& f : e.fillings) projected.insert(f.projection_codes[h]);
    EXPECT_EQ(projected.size(), r.projections[h]);
  }
}

TEST(Fillings, BudgetArityIsChecked) {
  const Template sub = fixture("two_hole_a");
  EXPECT_THROW(enumerate_fillings(sub, std::vector<int>{1}), Error);
}

TEST(Fillings, ReportText) {
  const BijectionReport r = check_product_bijection(fixture("two_hole_c"), {1, 1});
  const std::string text = to_text(r);
  EXPECT_NE(text.find("fillings"), std::string::npos);
  EXPECT_EQ(text.back(), '\n');
}
