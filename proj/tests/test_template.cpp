#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "quiltlab/fixtures.hpp"
#include "quiltlab/template.hpp"

using namespace quiltlab;

namespace {

Template fixture(const std::string& name) {
  std::istringstream in(builtin_fixture(name).text);
  return parse_template_text(in);
}

std::uint64_t catalan(int n) {
  std::uint64_t c = 1;
  for (int k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

void for_each_template(int n, const std::function<void(const Template&)>& fn) {
  std::function<void(const TemplateBuilder&, int)> rec = [&](const TemplateBuilder& b, int left) {
    if (left == 0) {
      fn(b.finish());
      return;
    }
    for (int k = 1; k <= b.p(); ++k) {
      for (int kp = 1; kp <= b.q(); ++kp) {
        TemplateBuilder c = b;
        c.step(k, kp);
        rec(c, left - 1);
      }
    }
  };
  rec(TemplateBuilder{}, n);
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

TEST(Template, MinimalTemplateIsValid) {
  const Template t = fixture("template_n0");
  const ValidityReport r = validate_template(t);
  EXPECT_TRUE(r.valid());
  EXPECT_EQ(r.n, 0);
  ASSERT_EQ(t.order.size(), 3u);
  EXPECT_EQ(t.gon(t.order[0]), 1);
  EXPECT_EQ(t.gon(t.order[1]), 3);
  EXPECT_EQ(t.gon(t.order[2]), 2);
  EXPECT_EQ(template_code(t), template_code(build_template({})));
}

TEST(Template, LargeFixtureIsValid) {
  const Template t = fixture("template_n21");
  const ValidityReport r = validate_template(t);
  EXPECT_TRUE(r.valid());
  EXPECT_EQ(r.n, 21);
  EXPECT_EQ(t.four_gon_count(), 21);
  EXPECT_EQ(t.num_holes(), 0);
  int ones = 0;
  int twos = 0;
  int threes = 0;
  for (int f = 0; f < t.num_faces(); ++f) {
    ones += t.gon(f) == 1;
    twos += t.gon(f) == 2;
    threes += t.gon(f) == 3;
  }
  EXPECT_EQ(ones, 1);
  EXPECT_EQ(twos, 1);
  EXPECT_EQ(threes, 1);
}

TEST(Template, RootDegreeViolationFailsConditionC) {
  Template t = build_template({{1, 1}});
  ASSERT_TRUE(validate_template(t).valid());
  const int f1 = t.order[2];
  ASSERT_EQ(t.gon(f1), 4);
  auto& m = t.marks[f1];
  std::rotate(m.begin(), m.begin() + 1, m.end());
  const ValidityReport r = validate_template(t);
  EXPECT_FALSE(r.c.ok);
  EXPECT_FALSE(r.valid());
}

TEST(Template, ValidationErrors) {
  Template t = build_template({{1, 1}});
  Template no_order = t;
  no_order.order.clear();
  EXPECT_EQ(code_of([&] { validate_template(no_order); }), ErrorCode::MissingOrder);
  Template swapped = t;
  std::swap(swapped.order[1], swapped.order[2]);
  EXPECT_EQ(code_of([&] { validate_template(swapped); }), ErrorCode::WrongGonProfile);
}

TEST(Template, ChoiceSequenceCounts) {
  // The (p, q) arc lengths perform a quadrant walk counted by C_n C_{n+1}.
  for (int n = 0; n <= 5; ++n) {
    EXPECT_EQ(count_choice_sequences(n), catalan(n) * catalan(n + 1)) << n;
  }
  for (int n = 0; n <= 4; ++n) EXPECT_EQ(count_distinct_templates(n), count_choice_sequences(n));
}

TEST(Template, BuilderRejectsOutOfRangeChoices) {
  TemplateBuilder b;
  EXPECT_EQ(b.p(), 1);
  EXPECT_EQ(b.q(), 2);
  EXPECT_EQ(code_of([&] { b.step(2, 1); }), ErrorCode::InvalidChoice);
  EXPECT_EQ(code_of([&] { b.step(1, 3); }), ErrorCode::InvalidChoice);
  EXPECT_EQ(code_of([&] { b.step(0, 1); }), ErrorCode::InvalidChoice);
}

TEST(Template, EveryBuiltTemplateValidates) {
  for (int n = 0; n <= 4; ++n) {
    int count = 0;
    for_each_template(n, [&](const Template& t) {
      ++count;
      const ValidityReport r = validate_template(t);
      EXPECT_TRUE(r.valid());
      EXPECT_EQ(r.n, n);
      const auto order = derive_face_order(t);
      ASSERT_TRUE(order.has_value());
      EXPECT_EQ(*order, t.order);
    });
    EXPECT_EQ(static_cast<std::uint64_t>(count), count_choice_sequences(n));
  }
}

TEST(Template, DegreeLaw) {
  for_each_template(3, [](const Template& t) {
    const HalfEdgeMap& m = t.map;
    for (std::size_t i = 2; i < t.order.size(); ++i) {
      const int f = t.order[i];
      for (int j = 0; j < t.gon(f); ++j) {
        const int deg = static_cast<int>(m.vertex_darts(m.tail(t.marks[f][j])).size());
        if (j == 0) {
          EXPECT_EQ(deg, 2);
        } else if (j != t.terminal_index(f)) {
          EXPECT_EQ(deg, 3);
        }
      }
    }
  });
}

TEST(Template, MinimalDeterminant) {
  const Template t = fixture("template_n0");
  const SideMap s = side_length_map(t);
  EXPECT_EQ(s.matrix.rows(), 4);
  EXPECT_EQ(s.matrix.cols(), t.map.num_edges());
  EXPECT_NEAR(std::abs(s.matrix.determinant()), 1.0, 1e-12);
  const DeterminantReport d = side_length_map_determinant(t);
  EXPECT_NEAR(std::abs(d.determinant), 1.0, 1e-12);
  EXPECT_EQ(d.left_edges, 1);
}

TEST(Template, DeterminantAndContourOrder) {
  for (const char* name : {"template_n2", "template_n21"}) {
    const Template t = fixture(name);
    const DeterminantReport d = side_length_map_determinant(t);
    EXPECT_NEAR(std::abs(d.determinant), 1.0, 1e-9) << name;
    EXPECT_EQ(d.left_edges, 2 * d.n + 1);
    EXPECT_TRUE(d.left_tree);
    EXPECT_TRUE(d.earliest_unique);
    EXPECT_TRUE(d.upper_triangular);
    EXPECT_EQ(d.contour_edges.size(), static_cast<std::size_t>(d.left_edges));
  }
  for (int n = 0; n <= 4; ++n) {
    for_each_template(n, [&](const Template& t) {
      const DeterminantReport d = side_length_map_determinant(t);
      EXPECT_NEAR(std::abs(d.determinant), 1.0, 1e-9);
      EXPECT_EQ(d.left_edges, 2 * n + 1);
      EXPECT_TRUE(d.left_tree && d.earliest_unique && d.upper_triangular);
    });
  }
}

TEST(Template, InjectedFaultIsDetected) {
  EXPECT_EQ(code_of([] { side_length_map_determinant(fixture("template_n2"), true); }), ErrorCode::SingularMap);
}

TEST(Template, MetricBuilderReproducesSideLengths) {
  TemplateBuilder b;
  b.set_initial_lengths(0.3, 0.5, 0.2);
  b.step_lengths(0.1, 0.25, 0.4, 0.05);
  const Quilt q = b.finish_quilt();
  ASSERT_TRUE(validate_template(q.tmpl).valid());
  const SideMap s = side_length_map(q.tmpl);
  const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(q.length.data(), q.length.size());
  const Eigen::VectorXd sides = s.matrix * x;
  const std::vector<double> expected = {0.3, 0.5, 0.2, 0.1, 0.25, 0.4, 0.05};
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(sides(i), expected[i], 1e-15) << s.row_names[i];
  for (double len : q.length) EXPECT_GT(len, 0.0);
}

TEST(Template, MetricBuilderRejectsOverlongSplit) {
  TemplateBuilder b;
  b.set_initial_lengths(0.3, 0.5, 0.2);
  EXPECT_EQ(code_of([&] { b.step_lengths(0.9, 0.1, 0.1, 0.1); }), ErrorCode::ConstraintViolated);
}

TEST(Template, TextRoundTrips) {
  for (const Fixture& f : builtin_fixtures()) {
    std::istringstream in(f.text);
    const Template t = parse_template_text(in);
    const std::string text = template_to_text(t);
    std::istringstream again(text);
    EXPECT_EQ(template_to_text(parse_template_text(again)), text) << f.name;
  }
  TemplateBuilder b;
  b.set_initial_lengths(0.125, 0.5, 0.375);
  const Quilt q = b.finish_quilt();
  const std::string qt = quilt_to_text(q);
  std::istringstream in(qt);
  const Quilt back = parse_quilt_text(in);
  EXPECT_EQ(back.length, q.length);
  EXPECT_EQ(quilt_to_text(back), qt);
}

TEST(Template, ParseErrors) {
  std::istringstream bad("E=1\nROOT 0\n1 1\n0 0\nMARKS 9 0\n");
  EXPECT_THROW(parse_template_text(bad), Error);
  EXPECT_EQ(code_of([] { builtin_fixture("missing"); }), ErrorCode::InvalidArgument);
}
