#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "quiltlab/fixtures.hpp"
#include "quiltlab/winding.hpp"

using namespace quiltlab;

namespace {

constexpr double kPi = std::numbers::pi;

Template fixture(const std::string& name) {
  std::istringstream in(builtin_fixture(name).text);
  return parse_template_text(in);
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Winding, EmbeddingPlacesOuterFaceOnCircle) {
  const Template sub = fixture("two_hole_a");
  const SubtemplateEmbedding emb = embed_subtemplate(sub);
  ASSERT_GE(emb.outer_face, 0);
  ASSERT_GE(emb.x, 0);
  const HalfEdgeMap& m = sub.map;
  for (int d : m.face_darts(emb.outer_face)) {
    const Point p = emb.vertex[m.tail(d)];
    EXPECT_NEAR(std::hypot(p.x, p.y), 1.0, 1e-12);
  }
  for (int v = 0; v < m.num_vertices(); ++v) {
    const Point p = emb.vertex[v];
    EXPECT_LE(std::hypot(p.x, p.y), 1.0 + 1e-12);
  }
}

TEST(Winding, SameFillingAgreesExactly) {
  const Template sub = fixture("two_hole_a");
  const FillingEnumeration e = enumerate_fillings(sub, 1);
  ASSERT_FALSE(e.fillings.empty());
  const LabelAgreement a = winding_labels(sub, e.fillings[0].full, e.fillings[0].full);
  EXPECT_TRUE(a.same_vertices);
  EXPECT_EQ(a.max_difference, 0.0);
  EXPECT_GT(a.labels, 0u);
}

TEST(Winding, LabelsIndependentOfFilling) {
  for (const char* name : {"two_hole_a", "two_hole_b", "two_hole_c"}) {
    const Template sub = fixture(name);
    const FillingEnumeration e = enumerate_fillings(sub, 2);
    ASSERT_GE(e.fillings.size(), 2u) << name;
    for (std::size_t i = 1; i < e.fillings.size(); ++i) {
      const LabelAgreement a = winding_labels(sub, e.fillings[0].full, e.fillings[i].full);
      EXPECT_TRUE(a.agree(1e-6)) << name << " filling " << i << " diff " << a.max_difference;
    }
  }
}

TEST(Winding, ClosedCurveTurnsOnce) {
  const Template sub = fixture("two_hole_b");
  const SubtemplateEmbedding emb = embed_subtemplate(sub);
  for (const Filling& f : enumerate_fillings(sub, 1).fillings) {
    const WindingLabels l = compute_winding_labels(sub, emb, filling_traversal(sub, f.full));
    EXPECT_NEAR(std::abs(l.total_turning), 2 * kPi, 1e-9);
    EXPECT_NEAR(l.x_end - l.x_start, l.total_turning, 1e-9);
    EXPECT_GE(l.theta_x, 0.0);
    EXPECT_LT(l.theta_x, 2 * kPi);
  }
}

TEST(Winding, TraversalAlternatesFacesAndHoles) {
  const Template sub = fixture("two_hole_c");
  const Filling f = enumerate_fillings(sub, 1).fillings.front();
  const auto steps = filling_traversal(sub, f.full);
  ASSERT_FALSE(steps.empty());
  int holes = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    holes += steps[i].hole;
    if (i > 0) {
      EXPECT_EQ(steps[i].from, steps[i - 1].to);
      EXPECT_FALSE(steps[i].hole && steps[i - 1].hole);
    }
  }
  EXPECT_GE(holes, 2);
  EXPECT_EQ(steps.front().from, embed_subtemplate(sub).x);
  EXPECT_EQ(code_of([&] { filling_traversal(sub, fixture("template_n2")); }), ErrorCode::InvalidArgument);
}

TEST(Winding, ObservedArcsAreAdmissibleAndClose) {
  for (const char* name : {"two_hole_a", "two_hole_b", "two_hole_c"}) {
    const Template sub = fixture(name);
    const SubtemplateEmbedding emb = embed_subtemplate(sub);
    const auto holes = hole_vertices(sub);
    ASSERT_EQ(holes.size(), 2u);
    for (const Filling& f : enumerate_fillings(sub, 1).fillings) {
      const WindingLabels l = compute_winding_labels(sub, emb, filling_traversal(sub, f.full));
      ASSERT_EQ(l.arcs.size(), 2u);
      EXPECT_TRUE(hamiltonian_closure(sub, l.arcs));
      for (int h = 0; h < 2; ++h) {
        EXPECT_EQ(l.arcs[h].size(), holes[h].entries.size());
        const auto sets = admissible_arc_sets(sub, emb, l, h);
        EXPECT_NE(std::find(sets.begin(), sets.end(), l.arcs[h]), sets.end()) << name;
        for (const auto& alpha : sets) {
          auto choice = l.arcs;
          choice[h] = alpha;
          EXPECT_TRUE(hamiltonian_closure(sub, choice));
        }
      }
    }
  }
}

TEST(Winding, IncompatibleArcsAreRejected) {
  const Template sub = fixture("two_hole_a");
  const SubtemplateEmbedding emb = embed_subtemplate(sub);
  const Filling f = enumerate_fillings(sub, 1).fillings.front();
  const WindingLabels l = compute_winding_labels(sub, emb, filling_traversal(sub, f.full));
  auto reversed_arcs = l.arcs;
  for (auto& arc : reversed_arcs[0]) std::swap(arc.from, arc.to);
  bool rejected = false;
  try {
    rejected = !hamiltonian_closure(sub, reversed_arcs);
  } catch (const Error& e) {
    rejected = e.code() == ErrorCode::InvalidChoice;
  }
  EXPECT_TRUE(rejected);
  auto missing = l.arcs;
  missing[1].clear();
  EXPECT_EQ(code_of([&] { hamiltonian_closure(sub, missing); }), ErrorCode::InvalidChoice);
}

TEST(Winding, ArcCurvatureMatchesLabelDifference) {
  const Template sub = fixture("two_hole_c");
  const SubtemplateEmbedding emb = embed_subtemplate(sub);
  const Filling f = enumerate_fillings(sub, 1).fillings.front();
  const WindingLabels l = compute_winding_labels(sub, emb, filling_traversal(sub, f.full));
  const auto labels = hole_labels(sub);
  auto label_of = [&](int v, bool leaving) {
    if (v == emb.x) return leaving ? l.x_start : l.x_end;
    return l.theta.at(v);
  };
  for (int h = 0; h < 2; ++h) {
    for (const HoleArc& a : l.arcs[h]) {
      const double k = arc_curvature(sub, emb, labels[h], a.from, a.to);
      EXPECT_NEAR(k, label_of(a.to, false) - label_of(a.from, true), 1e-6);
    }
  }
}
