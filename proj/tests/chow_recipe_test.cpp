#include <gtest/gtest.h>

#include "fansy/chow_recipe.hpp"

using namespace fansy;

namespace {

RatVector rv(std::initializer_list<Rational> xs) { return RatVector(xs); }
IntVector iv(std::initializer_list<long> xs) { return int_vector(xs); }
Rational q(long p, long d = 1) { return make_rational(p, d); }

struct ExampleCase {
  long a, b, A, B;
};

// Weights [a,1], [b,1], [0,1] with A a - B b = 1, 0 < A <= b, 0 <= B < a.
IntMatrix example_weights(long a, long b) { return int_matrix({{a, b, 0}, {1, 1, 1}}); }

RatMatrix example_section(const ExampleCase& c) {
  RatMatrix s(3, 1);
  s(0, 0) = -c.B;
  s(1, 0) = -c.A;
  return s;
}

WeightSetup example_setup(const ExampleCase& c) { return build_setup(example_weights(c.a, c.b), example_section(c)); }

RecipeDivisor example_recipe(const WeightSetup& s) {
  return pp_from_weights(s, std::vector<RaySpec>{{iv({1}), NamedLabel{"0"}}, {iv({-1}), NamedLabel{"inf"}}});
}

Polyhedron half_line(Rational start, long dir) { return Polyhedron::from_generators(1, {rv({start})}, {iv({dir})}); }

}  // namespace

TEST(Setup, IdentityHasNoQuotient) {
  WeightSetup s = build_setup(IntMatrix::identity(2));
  EXPECT_EQ(s.quotient_rank(), 0u);
  EXPECT_THROW(pp_from_weights(s), RecipeError);
}

TEST(Setup, ExampleWeights) {
  WeightSetup s = build_setup(example_weights(2, 1));
  ASSERT_EQ(s.pi.matrix.rows(), 1u);
  IntVector row = s.pi.matrix.row(0);
  EXPECT_TRUE(row == iv({1, -2, 1}) || row == iv({-1, 2, -1}));
  ASSERT_TRUE(s.degree_element);
  EXPECT_EQ(*s.degree_element, rv({0, 1}));
  EXPECT_TRUE(is_section(s, s.section));
  EXPECT_EQ(s.sigma, Cone::from_generators(2, {iv({1, 0}), iv({-1, 2})}));
}

TEST(Setup, PluckerOverlattice) {
  IntMatrix deg(4, 6);
  std::size_t c = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j, ++c) {
      deg(static_cast<std::size_t>(i), c) = 1;
      deg(static_cast<std::size_t>(j), c) = 1;
    }
  WeightSetup s = build_setup(deg);
  EXPECT_EQ(s.dual_basis.rows(), 4u);
  EXPECT_EQ(s.quotient_rank(), 2u);
  auto coords = solve(s.dual_basis, RatVector(4, q(1, 2)));
  ASSERT_TRUE(coords);
  EXPECT_TRUE(is_integral(*coords));
  // (1/2, 0, 0, 0) is not a cocharacter
  auto bad = solve(s.dual_basis, rv({q(1, 2), 0, 0, 0}));
  ASSERT_TRUE(bad);
  EXPECT_FALSE(is_integral(*bad));
  EXPECT_EQ(*s.degree_element, RatVector(4, q(1, 2)));
}

TEST(Setup, RejectsBadSection) {
  RatMatrix s(3, 1);
  s(0, 0) = 1;
  s(1, 0) = 1;
  EXPECT_THROW(build_setup(example_weights(2, 1), s), RecipeError);
}

class ExampleFamily : public ::testing::TestWithParam<ExampleCase> {};

TEST_P(ExampleFamily, MatchesDisplayedFormula) {
  const ExampleCase c = GetParam();
  ASSERT_EQ(c.A * c.a - c.B * c.b, 1);
  WeightSetup s = example_setup(c);
  EXPECT_EQ(s.pi.matrix.row(0), iv({c.b, -c.a, c.a - c.b}));
  RecipeDivisor d = example_recipe(s);
  Cone sigma = Cone::from_generators(2, {iv({1, 0}), iv({-1, c.a})});
  EXPECT_EQ(d.divisor.tail(), sigma);
  Polyhedron d0 = minkowski_sum(
      Polyhedron::from_generators(2, {rv({q(c.B - c.A, c.a - c.b), q(1, c.a - c.b)}), rv({q(c.A, c.b), 0})}),
      sigma.polyhedron());
  Polyhedron dinf = minkowski_sum(Polyhedron::point(rv({q(-c.B, c.a), 0})), sigma.polyhedron());
  EXPECT_EQ(*d.divisor.coefficient(NamedLabel{"0"}), d0);
  EXPECT_EQ(*d.divisor.coefficient(NamedLabel{"inf"}), dinf);
  // ∂_1 Δ_∞ is empty
  EXPECT_TRUE(boundary_face(s, dinf, d.rays[1].offset, 1).is_empty());
}

INSTANTIATE_TEST_SUITE_P(Weights, ExampleFamily,
                         ::testing::Values(ExampleCase{2, 1, 1, 1}, ExampleCase{3, 1, 1, 2}, ExampleCase{3, 2, 1, 1},
                                           ExampleCase{5, 3, 2, 3}));

TEST(Recipe, DefaultRaysAreTheRefinementRays) {
  WeightSetup s = example_setup({2, 1, 1, 1});
  RecipeDivisor d = pp_from_weights(s);
  ASSERT_EQ(d.divisor.terms().size(), 2u);
  EXPECT_EQ(label_string(d.divisor.terms()[0].label), "orb(-1)");
  EXPECT_EQ(label_string(d.divisor.terms()[1].label), "orb(1)");
  EXPECT_EQ(d.divisor.terms()[0].coefficient,
            minkowski_sum(Polyhedron::point(rv({q(-1, 2), 0})), s.sigma.polyhedron()));
}

TEST(Recipe, TailIsSigmaForEveryRay) {
  WeightSetup s = build_setup(int_matrix({{1, 1, 1, 1}, {0, 1, 2, 5}}));
  RecipeDivisor d = pp_from_weights(s);
  for (const auto& t : d.divisor.terms())
    if (!t.coefficient.is_empty()) {
      EXPECT_EQ(tail_cone(t.coefficient), s.sigma.polyhedron());
    }
}

TEST(BoundaryFaces, ExampleEdge) {
  WeightSetup s = example_setup({2, 1, 1, 1});
  RecipeDivisor d = example_recipe(s);
  const Polyhedron& d0 = *d.divisor.coefficient(NamedLabel{"0"});
  EXPECT_EQ(boundary_face(s, d0, d.rays[0].offset, 0),
            Polyhedron::from_generators(2, {rv({0, 1})}, {iv({-1, 2})}));
  EXPECT_EQ(boundary_face(s, d0, d.rays[0].offset, 1), Polyhedron::from_generators(2, {rv({0, 1}), rv({1, 0})}));
  EXPECT_EQ(boundary_face(s, d0, d.rays[0].offset, 2), Polyhedron::from_generators(2, {rv({1, 0})}, {iv({1, 0})}));
}

TEST(Projectivize, ExampleCells) {
  WeightSetup s = example_setup({2, 1, 1, 1});
  RecipeDivisor d = example_recipe(s);
  RatMatrix p(1, 2);
  p(0, 0) = 1;
  EXPECT_EQ(default_projection(s), p);
  FansyDivisor f = projectivize(s, d, p);
  ASSERT_EQ(f.cells.size(), 3u);
  DivisorLabel z = NamedLabel{"0"}, inf = NamedLabel{"inf"};
  EXPECT_EQ(f.cell_names, (std::vector<std::string>{"z0", "z1", "z2"}));
  EXPECT_EQ(*f.cells[0].coefficient(z), half_line(0, -1));
  EXPECT_EQ(*f.cells[0].coefficient(inf), half_line(q(-1, 2), -1));
  EXPECT_EQ(*f.cells[1].coefficient(z), Polyhedron::from_generators(1, {rv({0}), rv({1})}));
  EXPECT_TRUE(f.cells[1].coefficient(inf)->is_empty());
  EXPECT_EQ(*f.cells[2].coefficient(z), half_line(1, 1));
  EXPECT_EQ(*f.cells[2].coefficient(inf), half_line(q(-1, 2), 1));
  EXPECT_TRUE(check_subdivision_structure(f).pass);
  auto c1 = check_fansy_condition1(f);
  for (const auto& pw : c1.pairs) EXPECT_TRUE(pw.u);
}

TEST(Projectivize, RequiresDegreeElement) {
  WeightSetup s = build_setup(int_matrix({{1, 0, 1}, {0, 1, 1}}));
  EXPECT_FALSE(s.degree_element);
  RecipeDivisor d = pp_from_weights(s);
  EXPECT_THROW(projectivize(s, d), RecipeError);
}

TEST(SectionChange, CoefficientsMoveByTheDifference) {
  const ExampleCase c{3, 2, 1, 1};
  WeightSetup s1 = example_setup(c);
  WeightSetup s2 = build_setup(example_weights(c.a, c.b));
  RecipeDivisor d1 = example_recipe(s1), d2 = example_recipe(s2);
  PPDivisor moved = d2.divisor;
  for (std::size_t i = 0; i < d1.rays.size(); ++i) {
    RatVector shift = s1.left_inverse.apply(sub(d2.rays[i].offset, d1.rays[i].offset));
    moved = translate_coefficient(moved, moved.terms()[i].label, shift);
  }
  EXPECT_EQ(moved, d1.divisor);
}

TEST(Projectivize, WeightedProjectivePlaneCoverage) {
  WeightSetup s = build_setup(int_matrix({{1, 1, 1, 1}, {0, 1, 3, 4}}));
  RecipeDivisor d = pp_from_weights(s);
  FansyDivisor f = projectivize(s, d);
  Report r = check_subdivision_structure(f);
  EXPECT_TRUE(r.pass);
  for (const auto& x : r.findings) ADD_FAILURE() << x;
}
