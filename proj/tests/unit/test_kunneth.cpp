#include "generators.hpp"
#include "wph/kunneth.hpp"

#include <gtest/gtest.h>

using namespace wph;

namespace {

FgAbelianGroup grp(std::size_t free, std::vector<Integer> torsion = {}) { return {free, std::move(torsion)}; }

WeightedDigraph point(const std::string& id, int w) { return WeightedDigraph({id}, {w}, {}); }

FgAbelianGroup random_group(std::mt19937& rng) {
  std::uniform_int_distribution<int> count(0, 3);
  std::uniform_int_distribution<int> order(0, 12);
  std::vector<Integer> orders;
  for (int k = count(rng); k > 0; --k) orders.emplace_back(order(rng));
  return FgAbelianGroup::from_cyclic_orders(orders);
}

const KunnethDegree& degree(const KunnethReport& r, int d) { return r.degrees[static_cast<std::size_t>(d + 1)]; }

}  // namespace

TEST(Tensor, Examples) {
  EXPECT_EQ(fg_tensor(grp(2), grp(0, {6})), grp(0, {6, 6}));
  EXPECT_EQ(fg_tensor(grp(2, {4}), grp(0, {6})), grp(0, {2, 6, 6}));
  EXPECT_EQ(fg_tensor(grp(3, {5}), grp(0)), grp(0));
  EXPECT_EQ(fg_tensor(grp(2), grp(3)), grp(6));
}

TEST(Tor, Examples) {
  EXPECT_EQ(fg_tor(grp(0, {4}), grp(0, {6})), grp(0, {2}));
  EXPECT_EQ(fg_tor(grp(3), grp(1, {7})), grp(0));
  EXPECT_EQ(fg_tor(grp(0, {2}), grp(0, {2})), grp(0, {2}));
}

TEST(TensorTor, SymmetricAndDistributive) {
  std::mt19937 rng(50);
  for (int trial = 0; trial < 300; ++trial) {
    auto a = random_group(rng), b = random_group(rng), c = random_group(rng);
    ASSERT_EQ(fg_tensor(a, b), fg_tensor(b, a));
    ASSERT_EQ(fg_tor(a, b), fg_tor(b, a));
    auto bc = direct_sum({b, c});
    ASSERT_EQ(fg_tensor(a, bc), direct_sum({fg_tensor(a, b), fg_tensor(a, c)}));
    ASSERT_EQ(fg_tor(a, bc), direct_sum({fg_tor(a, b), fg_tor(a, c)}));
  }
}

TEST(Kunneth, CoprimePoints) {
  auto r = kunneth_check(point("a", 2), point("b", 3), Ring::Integers, 1);
  EXPECT_TRUE(r.pass());
  for (const auto& d : r.degrees) {
    EXPECT_TRUE(d.reduced.mid.trivial());
    EXPECT_TRUE(d.reduced.lhs.total().trivial());
    EXPECT_TRUE(d.reduced.tor.total().trivial());
  }
}

TEST(Kunneth, TorsionOnlyFromTor) {
  auto r = kunneth_check(point("a", 2), point("b", 2), Ring::Integers, 1);
  EXPECT_TRUE(r.pass());
  const auto& d0 = degree(r, 0);
  EXPECT_EQ(d0.reduced.mid, grp(0, {2}));
  EXPECT_TRUE(d0.reduced.lhs.total().trivial());
  EXPECT_EQ(d0.reduced.tor.total(), grp(0, {2}));
  std::vector<GroupTerm> nonzero;
  for (const auto& t : d0.reduced.tor.summands)
    if (!t.group.trivial()) nonzero.push_back(t);
  ASSERT_EQ(nonzero.size(), 1u);
  EXPECT_EQ(nonzero[0].p, -1);
  EXPECT_EQ(nonzero[0].q, 0);
  EXPECT_EQ(degree(r, -1).reduced.mid, grp(0, {2}));
  // Without the augmentation the identity fails on this pair.
  EXPECT_FALSE(d0.truncated.pass);
  EXPECT_TRUE(d0.readings_differ);
}

TEST(Kunneth, UnitPointsOverQ) {
  auto r = kunneth_check(point("a", 1), point("b", 1), Ring::Rationals, 2);
  EXPECT_TRUE(r.pass());
  for (const auto& d : r.degrees) EXPECT_TRUE(d.reduced.mid.trivial());
}

TEST(Kunneth, CollisionsNeedRelabel) {
  EXPECT_THROW(kunneth_check(point("a", 1), point("a", 1), Ring::Integers, 1), NonDisjointVertexSets);
  auto r = kunneth_check(point("a", 1), point("a", 1), Ring::Integers, 1, true);
  EXPECT_TRUE(r.relabeled);
  EXPECT_TRUE(r.pass());
}

TEST(Kunneth, RankEquationOverQ) {
  std::mt19937 rng(51);
  std::uniform_int_distribution<int> size(1, 5);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = testing_support::random_digraph(rng, size(rng), 0.4, 4, "g");
    auto h = testing_support::random_digraph(rng, size(rng), 0.4, 4, "h");
    auto bg = homology_groups<Rational>(g, 3, ComplexKind::Omega, true);
    auto bh = homology_groups<Rational>(h, 3, ComplexKind::Omega, true);
    auto bj = homology_groups<Rational>(join(g, h), 3, ComplexKind::Omega, true);
    for (int r = -1; r <= 3; ++r) {
      std::size_t sum = 0;
      for (int p = -1; r - 1 - p >= -1; ++p)
        sum += bg[static_cast<std::size_t>(p + 1)].free_rank * bh[static_cast<std::size_t>(r - 1 - p + 1)].free_rank;
      ASSERT_EQ(bj[static_cast<std::size_t>(r + 1)].free_rank, sum) << "trial " << trial << " r=" << r;
    }
    ASSERT_TRUE(kunneth_check(g, h, Ring::Rationals, 3).pass());
  }
}

TEST(Kunneth, RandomPairsOverZ) {
  std::mt19937 rng(52);
  std::uniform_int_distribution<int> size(1, 4);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = testing_support::random_digraph(rng, size(rng), 0.5, 4, "g");
    auto h = testing_support::random_digraph(rng, size(rng), 0.5, 4, "h");
    ASSERT_TRUE(kunneth_check(g, h, Ring::Integers, 3).pass()) << "trial " << trial;
  }
}

TEST(JoinChain, IsomorphismAndProductRule) {
  std::mt19937 rng(53);
  std::uniform_int_distribution<int> size(1, 4);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = testing_support::random_digraph(rng, size(rng), 0.5, 5, "g");
    auto h = testing_support::random_digraph(rng, size(rng), 0.5, 5, "h");
    auto rep = join_chain_check(g, h, 3);
    ASSERT_TRUE(rep.pass()) << "trial " << trial;
    for (const auto& d : rep.degrees) {
      ASSERT_EQ(d.tensor_dim, d.omega_dim);
      ASSERT_EQ(d.rank, d.tensor_dim);
    }
  }
}

TEST(PersistentKunneth, PointIntoEdgeAgainstConstantPoint) {
  WeightedDigraph a({"a"}, {1}, {});
  WeightedDigraph ab({"a", "b"}, {1, 1}, {{"a", "b"}});
  WeightedDigraph c({"c"}, {1}, {});
  MorphismSequence sg{{a, ab}, {{a, ab, {{"a", "a"}}}}};
  MorphismSequence sh{{c, c}, {{c, c, {{"c", "c"}}}}};
  auto rep = persistent_kunneth_check(sg, sh, Ring::Integers, 2);
  EXPECT_TRUE(rep.pass());
  EXPECT_EQ(rep.steps.size(), 2u);
  EXPECT_FALSE(rep.naturality.empty());
}

TEST(PersistentKunneth, ConstantSequences) {
  WeightedDigraph c3({"a", "b", "c"}, {2, 2, 4}, {{"a", "b"}, {"b", "c"}, {"c", "a"}});
  WeightedDigraph e({"x", "y"}, {2, 6}, {{"x", "y"}});
  auto rep = persistent_kunneth_check(make_filtration({c3, c3, c3}), make_filtration({e, e, e}), Ring::Integers, 2);
  EXPECT_TRUE(rep.pass());
  for (const auto& n : rep.naturality) EXPECT_TRUE(n.commutes);
}

TEST(PersistentKunneth, SingleStepReducesToCheck) {
  WeightedDigraph g({"a"}, {2}, {});
  WeightedDigraph h({"b"}, {2}, {});
  auto rep = persistent_kunneth_check(make_filtration({g}), make_filtration({h}), Ring::Integers, 1);
  ASSERT_EQ(rep.steps.size(), 1u);
  EXPECT_TRUE(rep.naturality.empty());
  auto direct = kunneth_check(g, h, Ring::Integers, 1);
  for (std::size_t k = 0; k < direct.degrees.size(); ++k)
    EXPECT_EQ(rep.steps[0].degrees[k].reduced.mid, direct.degrees[k].reduced.mid);
}

TEST(PersistentKunneth, LengthMismatch) {
  WeightedDigraph g({"a"}, {1}, {});
  WeightedDigraph h({"b"}, {1}, {});
  EXPECT_THROW(persistent_kunneth_check(make_filtration({g, g}), make_filtration({h}), Ring::Integers, 1),
               MorphismLengthMismatch);
}

TEST(PersistentKunneth, RandomFiltrations) {
  std::mt19937 rng(54);
  for (int trial = 0; trial < 10; ++trial) {
    auto g = testing_support::random_digraph(rng, 3, 0.5, 3, "g");
    auto h = testing_support::random_digraph(rng, 2, 0.5, 3, "h");
    // Drop edges to get the first step of each filtration.
    auto g0 = WeightedDigraph(g.ids(), g.weights(), {});
    auto h0 = WeightedDigraph(h.ids(), h.weights(), {});
    auto rep = persistent_kunneth_check(make_filtration({g0, g}), make_filtration({h0, h}), Ring::Integers, 2);
    ASSERT_TRUE(rep.pass()) << "trial " << trial;
  }
}
