#include <gtest/gtest.h>

#include <random>

#include "segre/explorer.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

using namespace segre;
using namespace segre::testing;

namespace {

std::size_t mutable_variable_count(const ExchangeGraph& g) {
  std::set<LaurentPoly> out;
  for (const auto& n : g.nodes)
    for (auto k : n.seed.mutable_ids()) out.insert(n.seed.value(k));
  return out.size();
}

}  // namespace

TEST(Enumerate, LeftFactor) {
  auto g = enumerate(example_left());
  EXPECT_TRUE(g.exhausted());
  EXPECT_EQ(g.nodes.size(), 2u);
  EXPECT_EQ(kappa(g), 4u);
  EXPECT_EQ(cluster_count(g), 2u);
  EXPECT_EQ(g.nodes[1].seed.value(VariableId{0}).to_string(), "x1^-1*x2 + x1^-1*x3");
  EXPECT_EQ(g.edges.size(), 2u);
}

TEST(Enumerate, A2) {
  auto g = enumerate(a2_seed());
  EXPECT_TRUE(g.exhausted());
  EXPECT_EQ(cluster_count(g), 5u);
  EXPECT_EQ(mutable_variable_count(g), 5u);
  EXPECT_EQ(kappa(g), 6u);
  // Every node has one edge per mutable slot.
  EXPECT_EQ(g.edges.size(), 10u);
}

TEST(Enumerate, A3) {
  auto g = enumerate(a3_seed());
  EXPECT_TRUE(g.exhausted());
  EXPECT_EQ(cluster_count(g), 14u);
  EXPECT_EQ(mutable_variable_count(g), 9u);
}

TEST(Enumerate, MarkovTruncates) {
  ExploreBounds b;
  b.max_nodes = 1000;
  b.max_depth = 6;
  auto g = enumerate(markov_seed(), b);
  EXPECT_FALSE(g.exhausted());
  EXPECT_THROW(kappa(g), TruncatedGraph);
  EXPECT_THROW(cluster_count(g), TruncatedGraph);
  // The exchange graph is a 3-regular tree: 3 * 2^d - 2 nodes within depth d.
  EXPECT_EQ(g.nodes.size(), 190u);

  b.max_nodes = 50;
  b.max_depth = 100;
  auto h = enumerate(markov_seed(), b);
  EXPECT_FALSE(h.exhausted());
  EXPECT_EQ(h.nodes.size(), 50u);
}

TEST(Enumerate, FrozenOnly) {
  auto g = enumerate(frozen_only({"p", "q", "r"}));
  EXPECT_TRUE(g.exhausted());
  EXPECT_EQ(kappa(g), 3u);
  EXPECT_EQ(cluster_count(g), 1u);
}

TEST(Enumerate, GluedExample) {
  auto g = glue(example_left(), "x3", example_right(), "y3");
  auto e = enumerate(g.seed);
  EXPECT_TRUE(e.exhausted());
  EXPECT_EQ(kappa(e), 7u);
  EXPECT_EQ(cluster_count(e), 4u);
}

TEST(Enumerate, ThreadCountDoesNotChangeResult) {
  std::mt19937_64 rng(41);
  SeedShape shape;
  shape.min_mutable = 2;
  shape.max_mutable = 3;
  shape.finite_type = true;
  for (int i = 0; i < 10; ++i) {
    Seed s = random_seed(rng, shape);
    ExploreBounds one;
    ExploreBounds four;
    four.threads = 4;
    auto a = enumerate(s, one);
    auto b = enumerate(s, four);
    ASSERT_EQ(a.nodes.size(), b.nodes.size());
    for (std::size_t n = 0; n < a.nodes.size(); ++n) ASSERT_EQ(a.nodes[n].key, b.nodes[n].key);
    ASSERT_EQ(a.edges, b.edges);
  }
  ExploreBounds mb;
  mb.max_nodes = 100;
  mb.max_depth = 5;
  auto m1 = enumerate(markov_seed(), mb);
  mb.threads = 3;
  auto m3 = enumerate(markov_seed(), mb);
  ASSERT_EQ(m1.nodes.size(), m3.nodes.size());
  for (std::size_t n = 0; n < m1.nodes.size(); ++n) ASSERT_EQ(m1.nodes[n].key, m3.nodes[n].key);
}

TEST(Enumerate, CountsIgnoreNames) {
  Seed a = a3_seed();
  Seed b = make_seed({"p", "q", "r", "s"}, {false, false, false, true},
                     {{"p", "q", 1}, {"q", "r", 1}}, {0, 0, 0, 1});
  Seed c = make_seed({"r", "q", "p", "s"}, {false, false, false, true},
                     {{"r", "q", 1}, {"q", "p", 1}}, {0, 0, 0, 1});
  for (const Seed& s : {b, c}) {
    auto g = enumerate(s);
    EXPECT_EQ(kappa(g), kappa(enumerate(a)));
    EXPECT_EQ(cluster_count(g), cluster_count(enumerate(a)));
  }
}

TEST(Enumerate, StrictKeysAgreeOnFiniteType) {
  ExploreBounds strict;
  strict.mode = KeyMode::strict;
  for (const Seed& s : {a2_seed(), a3_seed(), example_left()}) {
    auto v = enumerate(s);
    auto k = enumerate(s, strict);
    EXPECT_EQ(cluster_count(v), cluster_count(k));
    EXPECT_EQ(kappa(v), kappa(k));
  }
}

TEST(Correspondence, Example) {
  Seed s1 = example_left();
  Seed s2 = example_right();
  auto r = verify_correspondence(s1, s1.id("x3"), s2, s2.id("y3"));
  EXPECT_EQ(r.status, CheckStatus::success);
  EXPECT_TRUE(r.variables_identified);
  EXPECT_TRUE(r.clusters_bijective);
  EXPECT_EQ(r.glued_clusters, 4u);
}

TEST(Correspondence, CorruptedGluingFails) {
  auto bad = corrupted_glued_example();
  ASSERT_TRUE(validate_seed(bad.seed).empty());
  auto r = verify_correspondence(example_left(), example_right(), bad);
  EXPECT_EQ(r.status, CheckStatus::failure);
  EXPECT_EQ(r.glued_clusters, 5u);
  EXPECT_FALSE(r.clusters_bijective);
  EXPECT_FALSE(r.problems.empty());
}

TEST(Correspondence, RandomFiniteTypePairs) {
  std::mt19937_64 rng(43);
  SeedShape shape;
  shape.finite_type = true;
  shape.max_mutable = 2;
  for (int i = 0; i < 10; ++i) {
    auto p = random_glueable_pair(rng, shape);
    auto r = verify_correspondence(p.left, p.x, p.right, p.y);
    ASSERT_EQ(r.status, CheckStatus::success) << i;
  }
}

TEST(Corollary, Example) {
  Seed s1 = example_left();
  Seed s2 = example_right();
  auto r = verify_corollary(s1, s1.id("x3"), s2, s2.id("y3"));
  EXPECT_EQ(r.status, CheckStatus::success);
  EXPECT_EQ(*r.left.kappa, 4u);
  EXPECT_EQ(*r.right.kappa, 4u);
  EXPECT_EQ(*r.glued.kappa, 7u);
  EXPECT_EQ(*r.left.clusters, 2u);
  EXPECT_EQ(*r.glued.clusters, 4u);
  EXPECT_TRUE(r.finite_type_consistent);
}

TEST(Corollary, InfiniteFactorMakesGluedInfinite) {
  Seed m = markov_seed();
  Seed s2 = example_right();
  PairBounds b;
  b.max_nodes = 40;
  b.max_depth = 4;
  b.glued_max_nodes = 200;
  auto r = verify_corollary(m, m.id("f"), s2, s2.id("y3"), b);
  EXPECT_EQ(r.status, CheckStatus::inconclusive);
  EXPECT_EQ(r.left.status, GraphStatus::truncated);
  EXPECT_EQ(r.right.status, GraphStatus::exhausted);
  EXPECT_EQ(r.glued.status, GraphStatus::truncated);
  EXPECT_TRUE(r.finite_type_consistent);
  EXPECT_FALSE(r.left.kappa.has_value());
}

TEST(Corollary, FrozenOnlyFactors) {
  Seed s1 = frozen_only({"p", "q", "r"});
  Seed s2 = frozen_only({"s", "t"});
  auto r = verify_corollary(s1, s1.id("r"), s2, s2.id("s"));
  EXPECT_EQ(r.status, CheckStatus::success);
  EXPECT_EQ(*r.glued.kappa, 3u + 2u - 1u);
  EXPECT_EQ(*r.glued.clusters, 1u);
}

TEST(Corollary, RandomFiniteTypePairs) {
  std::mt19937_64 rng(47);
  SeedShape shape;
  shape.finite_type = true;
  for (int i = 0; i < 8; ++i) {
    auto p = random_glueable_pair(rng, shape);
    auto r = verify_corollary(p.left, p.x, p.right, p.y);
    ASSERT_EQ(r.status, CheckStatus::success) << i;
  }
}

TEST(Enumerate, AgreesWithBruteForceClosure) {
  std::mt19937_64 rng(53);
  SeedShape shape;
  shape.finite_type = true;
  for (int i = 0; i < 20; ++i) {
    Seed s = random_seed(rng, shape);
    auto o = oracle_counts(s);
    ASSERT_TRUE(o.has_value());
    auto g = enumerate(s);
    ASSERT_TRUE(g.exhausted());
    ASSERT_EQ(cluster_count(g), o->clusters);
    ASSERT_EQ(kappa(g), o->variables);
  }
}
