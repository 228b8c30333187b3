#include <gtest/gtest.h>

#include <random>

#include "segre/tensor.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace segre;
using namespace segre::testing;

namespace {

struct Example {
  Seed s1 = example_left();
  Seed s2 = example_right();
  GluedSeed g = glue(s1, "x3", s2, "y3");

  LaurentPoly glued(std::string_view text) const { return parse_laurent(g.seed.universe(), text); }
  LaurentPoly tensor(const SegreMap& m, std::string_view text) const {
    return parse_laurent(m.context()->universe, text);
  }
};

}  // namespace

TEST(Phi, ImagesOfInitialVariables) {
  Example e;
  SegreMap m(e.g);
  EXPECT_EQ(m.context()->universe->names(),
            (std::vector<std::string>{"x1", "x2", "x3", "y1", "y2", "y3"}));
  EXPECT_EQ(m(e.glued("z")).to_string(), "x3*y3");
  EXPECT_EQ(m(e.glued("x1")).to_string(), "x1*y3");
  EXPECT_EQ(m(e.glued("y2")).to_string(), "x3*y2");
  EXPECT_EQ(m(e.glued("z")), m.proxy_tensor());
}

TEST(Phi, MutatedVariableMatchesTensor) {
  Example e;
  SegreMap m(e.g);
  auto v = m(e.glued("x1^-1*x2 + x1^-1*z"));
  EXPECT_EQ(v.to_string(), "x1^-1*x2 + x1^-1*x3");
  auto left = mutate_seed(e.s1, "x1");
  EXPECT_EQ(v, m.left_tensor(left.value(e.s1.id("x1")), 0));
  auto w = m(e.glued("y1^-1*y2 + y1^-1*z"));
  auto right = mutate_seed(e.s2, "y1");
  EXPECT_EQ(w, m.right_tensor(right.value(e.s2.id("y1")), 0));
}

TEST(Phi, RequiresDegreeOne) {
  Example e;
  auto g2 = glue(scale_grading(e.s1, 2), "x3", scale_grading(e.s2, 2), "y3");
  EXPECT_THROW(SegreMap{g2}, Error);
  EXPECT_NO_THROW(SegreMap(g2, {MapKind::phi, true, {}, {}}));
  EXPECT_THROW(phi(g2, e.glued("z")), Error);
}

TEST(Phi, ClaimedDegreeIsChecked) {
  Example e;
  EXPECT_NO_THROW(phi(e.g, e.glued("x1^-1*x2 + x1^-1*z"), 0));
  EXPECT_THROW(phi(e.g, e.glued("x1^-1*x2 + x1^-1*z"), 1), InternalInconsistency);
  EXPECT_THROW(phi(e.g, e.glued("x1 + 1"), 1), InternalInconsistency);
}

TEST(Phi, UniverseMismatch) {
  Example e;
  EXPECT_THROW(phi(e.g, LaurentPoly::variable(e.s1.universe(), VariableId{0})), UniverseMismatch);
}

TEST(Membership, Examples) {
  Example e;
  SegreMap m(e.g);
  const auto& ctx = m.context();
  EXPECT_TRUE(segre_membership(SegreTensor(e.tensor(m, "x1*y3"), ctx)));
  EXPECT_FALSE(segre_membership(SegreTensor(e.tensor(m, "x1"), ctx)));
  EXPECT_FALSE(segre_membership(SegreTensor(e.tensor(m, "x1*y3 + x2"), ctx)));
  EXPECT_TRUE(segre_membership(SegreTensor(e.tensor(m, "x1^-1*x2 + 5*x2*x3^-1*y1*y2^-1"), ctx)));
}

TEST(Membership, ImageOfPhiLiesInSegreProduct) {
  std::mt19937_64 rng(19);
  Example e;
  SegreMap m(e.g);
  for (int i = 0; i < 200; ++i) {
    auto p = random_poly(rng, e.g.seed.universe(), 4, 3);
    ASSERT_TRUE(segre_membership(m(p))) << p.to_string();
  }
}

TEST(Naive, AgreesWithPhiAtDegreeOne) {
  std::mt19937_64 rng(23);
  Example e;
  SegreMap phi_map(e.g);
  SegreMap naive(e.g, {MapKind::naive, false, {}, {}});
  for (int i = 0; i < 200; ++i) {
    auto p = random_poly(rng, e.g.seed.universe(), 4, 3);
    ASSERT_EQ(phi_map(p), naive(p));
  }
}

TEST(Naive, UnequalDegrees) {
  Example e;
  EXPECT_EQ(phi_naive(e.g, e.glued("z"), 1, 2).to_string(), "x3^2*y3");
  EXPECT_EQ(phi_naive(e.g, e.glued("x1"), 1, 2).to_string(), "x1^2*y3");
  EXPECT_EQ(phi_naive(e.g, e.glued("y1"), 1, 2).to_string(), "x3*y1");
  EXPECT_THROW(phi_naive(e.g, e.glued("z"), 0, 1), Error);
}

TEST(Naive, DegreeTwoBreaksCommutation) {
  Example e;
  Seed s1 = scale_grading(e.s1, 2);
  Seed s2 = scale_grading(e.s2, 2);
  auto g = glue(s1, "x3", s2, "y3");
  SegreMap m(g, {MapKind::naive, false, {}, {}});
  auto mutated = mutate_seed(g.seed, "x1");
  auto actual = m(mutated.value(g.seed.id("x1")));
  auto expected = m.left_tensor(mutate_seed(s1, "x1").value(s1.id("x1")), 0);
  EXPECT_EQ(actual.to_string(), "x1^-2*x2^2 + x1^-2*x3^2");
  EXPECT_EQ(expected.to_string(), "x1^-2*x2^2 + 2*x1^-2*x2*x3 + x1^-2*x3^2");
  EXPECT_NE(actual, expected);
}

TEST(Surjectivity, Examples) {
  Example e;
  auto a = parse_laurent(e.s1.universe(), "x2");
  auto b = parse_laurent(e.s2.universe(), "y2");
  auto w = surjectivity_witness(e.g, a, 1, b, 1);
  EXPECT_TRUE(w.holds);
  EXPECT_EQ(w.product.to_string(), "x2*y2");
  EXPECT_EQ(w.phi_a.to_string(), "x2*y3");
  EXPECT_EQ(w.phi_b.to_string(), "x3*y2");

  auto x = parse_laurent(e.s1.universe(), "x3");
  auto y = parse_laurent(e.s2.universe(), "y3");
  auto wz = surjectivity_witness(e.g, x, 1, y, 1);
  EXPECT_TRUE(wz.holds);
  EXPECT_EQ(wz.product, phi(e.g, e.glued("z")));

  auto one_l = LaurentPoly::constant(e.s1.universe(), 1);
  auto one_r = LaurentPoly::constant(e.s2.universe(), 1);
  EXPECT_EQ(surjectivity_witness(e.g, one_l, 0, one_r, 0).product.to_string(), "1");
  EXPECT_THROW(surjectivity_witness(e.g, a, 1, y, 2), DegreeMismatch);
}

TEST(Surjectivity, RandomHomogeneousPairs) {
  std::mt19937_64 rng(29);
  Example e;
  GradingVector g1 = e.s1.initial_degrees();
  GradingVector g2 = e.s2.initial_degrees();
  for (int i = 0; i < 100; ++i) {
    Exponent d = uniform(rng, -2, 3);
    auto a = random_homogeneous(rng, e.s1.universe(), g1, d);
    auto b = random_homogeneous(rng, e.s2.universe(), g2, d);
    ASSERT_TRUE(surjectivity_witness(e.g, a, d, b, d).holds);
  }
}

TEST(Injectivity, MonomialLattice) {
  Example e;
  EXPECT_TRUE(SegreMap(e.g).is_unimodular_embedding());
  auto g2 = glue(scale_grading(e.s1, 2), "x3", scale_grading(e.s2, 2), "y3");
  EXPECT_FALSE(SegreMap(g2, {MapKind::naive, false, {}, {}}).is_unimodular_embedding());
}
