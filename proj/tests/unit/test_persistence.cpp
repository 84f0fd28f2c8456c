#include "generators.hpp"
#include "wph/persistence.hpp"

#include <gtest/gtest.h>

using namespace wph;

namespace {

WeightedDigraph g1(int w0 = 2, int w1 = 4) { return WeightedDigraph({"i0", "i1", "i2"}, {w0, w1, 1}, {{"i0", "i1"}}); }
WeightedDigraph g2(int w0 = 2, int w1 = 4) {
  return WeightedDigraph({"i0", "i1", "i2"}, {w0, w1, 1}, {{"i0", "i1"}, {"i1", "i2"}});
}
WeightedDigraph cyclic_triangle() {
  return WeightedDigraph({"a", "b", "c"}, {1, 1, 1}, {{"a", "b"}, {"b", "c"}, {"c", "a"}});
}

Bar bar(std::size_t birth, std::optional<std::size_t> death, std::size_t mult = 1) { return {birth, death, mult}; }

// Nested random filtration: each step adds a few vertices and edges.
Filtration random_filtration(std::mt19937& rng, int steps, int max_weight) {
  const int n = 6;
  auto full = testing_support::random_digraph(rng, n, 0.45, max_weight);
  std::uniform_int_distribution<int> birth(1, steps);
  std::vector<int> vb(n);
  for (auto& b : vb) b = birth(rng);
  vb[0] = 1;
  std::vector<int> eb;
  for (auto [a, b] : full.edges()) eb.push_back(std::max({vb[a], vb[b], birth(rng)}));
  std::vector<WeightedDigraph> out;
  for (int s = 1; s <= steps; ++s) {
    std::vector<VertexId> ids;
    std::vector<Rational> ws;
    for (VertexIndex i = 0; i < n; ++i)
      if (vb[i] <= s) {
        ids.push_back(full.id(i));
        ws.push_back(full.weight(i));
      }
    std::vector<std::pair<VertexId, VertexId>> es;
    for (std::size_t e = 0; e < full.edges().size(); ++e)
      if (eb[e] <= s) es.emplace_back(full.id(full.edges()[e].first), full.id(full.edges()[e].second));
    out.emplace_back(ids, ws, es);
  }
  return make_filtration(out);
}

}  // namespace

TEST(Filtration, ValidationNamesTheStep) {
  Filtration f{{g2(), g1()}, {{"i0", 2}, {"i1", 4}, {"i2", 1}}};
  auto v = validate_filtration(f, Ring::Integers);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0], "step 2: edge i1->i2 of the previous step is missing");
  EXPECT_THROW(make_filtration({g1(), g2(3)}), InvalidSequence);
  EXPECT_THROW(make_filtration({}), InvalidSequence);
}

TEST(PersistenceModule, ExampleOverZ) {
  auto r = persistence_module(make_filtration({g1(), g2()}), Ring::Integers, 1);
  const auto& d0 = r.degrees[0];
  EXPECT_EQ(d0.groups[0], (FgAbelianGroup{2, {2}}));
  EXPECT_EQ(d0.groups[1], (FgAbelianGroup{1, {4}}));
  // Canonical surjection: image plus the target relations span everything.
  RatMatrix m = d0.maps[0];
  IntMatrix span(m.rows(), 0);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::vector<Integer> c;
    for (std::size_t i = 0; i < m.rows(); ++i) c.push_back(numerator_of(m(i, j)));
    span.append_column(c);
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<Integer> c(m.rows());
    c[i] = d0.target_orders[0][i];
    span.append_column(c);
  }
  EXPECT_TRUE(quotient_group(m.rows(), span).trivial());
}

TEST(PersistenceModule, SingleStep) {
  auto r = persistence_module(make_filtration({g1()}), Ring::Integers, 1);
  EXPECT_EQ(r.steps, 1u);
  EXPECT_TRUE(r.degrees[0].maps.empty());
  EXPECT_EQ(r.degrees[0].groups[0], (FgAbelianGroup{2, {2}}));
}

TEST(PersistenceModule, ConstantSequenceGivesIdentities) {
  auto g = cyclic_triangle();
  MorphismSequence s{{g, g, g}, {}};
  for (int k = 0; k < 2; ++k) s.maps.push_back({g, g, {{"a", "a"}, {"b", "b"}, {"c", "c"}}});
  auto r = persistence_module(s, Ring::Integers, 2);
  for (const auto& d : r.degrees)
    for (const auto& m : d.maps) EXPECT_EQ(m, RatMatrix::identity(m.rows()));
}

TEST(Barcode, ExampleDegreeZero) {
  auto b = barcode(make_filtration({g1(), g2()}), Ring::Rationals, 2);
  EXPECT_EQ(b.at(0), (std::vector<Bar>{bar(1, 2), bar(1, std::nullopt)}));
  EXPECT_TRUE(b.at(1).empty());
  EXPECT_TRUE(b.consistent());
}

TEST(Barcode, TriangleThenCone) {
  auto c3 = cyclic_triangle();
  auto cone = join(c3, WeightedDigraph({"d"}, {1}, {}));
  auto b = barcode(make_filtration({c3, cone}), Ring::Rationals, 2);
  EXPECT_EQ(b.at(1), (std::vector<Bar>{bar(1, 2)}));
  EXPECT_EQ(b.at(0), (std::vector<Bar>{bar(1, std::nullopt)}));
  // The filling chain for the directed cycle.
  Chain fill = Chain::elementary({0, 1, 3}) + Chain::elementary({1, 2, 3}) + Chain::elementary({2, 0, 3});
  EXPECT_EQ(weighted_boundary(fill, cone),
            Chain::elementary({0, 1}) + Chain::elementary({1, 2}) + Chain::elementary({2, 0}));
}

TEST(Barcode, SingleDigraph) {
  auto b = barcode(make_filtration({cyclic_triangle()}), Ring::Rationals, 2);
  EXPECT_EQ(b.at(0), (std::vector<Bar>{bar(1, std::nullopt)}));
  EXPECT_EQ(b.at(1), (std::vector<Bar>{bar(1, std::nullopt)}));
}

TEST(Barcode, RequiresRationals) {
  EXPECT_THROW(barcode(make_filtration({g1()}), Ring::Integers, 1), WrongRing);
}

TEST(Barcode, RandomFiltrationsAreConsistentAndMonotone) {
  std::mt19937 rng(40);
  for (int trial = 0; trial < 25; ++trial) {
    auto f = random_filtration(rng, 4, 5);
    auto b = barcode(f, Ring::Rationals, 2);
    ASSERT_TRUE(b.consistent());
    auto m = persistence_module(f, Ring::Rationals, 2);
    for (const auto& d : m.degrees) {
      std::vector<std::size_t> betti;
      for (const auto& g : d.groups) betti.push_back(g.free_rank);
      auto r = rank_table(betti, d.maps);
      for (std::size_t i = 0; i < betti.size(); ++i)
        for (std::size_t j = i; j + 1 < betti.size(); ++j) {
          ASSERT_GE(r[i][j], r[i][j + 1]);
          if (i + 1 <= j) ASSERT_LE(r[i][j], r[i + 1][j]);
        }
    }
  }
}

TEST(Barcode, FreeRankOverZEqualsBettiOverQ) {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 15; ++trial) {
    auto f = random_filtration(rng, 3, 6);
    auto z = persistence_module(f, Ring::Integers, 2);
    auto q = persistence_module(f, Ring::Rationals, 2);
    for (std::size_t d = 0; d < z.degrees.size(); ++d)
      for (std::size_t n = 0; n < f.steps.size(); ++n)
        ASSERT_EQ(z.degrees[d].groups[n].free_rank, q.degrees[d].groups[n].free_rank);
  }
}

TEST(Barcode, InvariantUnderRelabeling) {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = random_filtration(rng, 3, 4);
    std::vector<WeightedDigraph> steps;
    for (const auto& g : f.steps) steps.push_back(relabel(g, "X."));
    auto a = barcode(f, Ring::Rationals, 2);
    auto b = barcode(make_filtration(steps), Ring::Rationals, 2);
    ASSERT_EQ(a.degrees, b.degrees);
  }
}

TEST(Barcode, InvariantUnderReweighting) {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = random_filtration(rng, 3, 1);
    std::map<VertexId, Rational> alt;
    std::uniform_int_distribution<int> w(1, 9);
    for (const auto& [id, old] : f.global_weights) alt[id] = w(rng);
    auto a = barcode(f, Ring::Rationals, 2);
    auto b = barcode(with_global_weights(f, alt), Ring::Rationals, 2);
    ASSERT_EQ(a.degrees, b.degrees);
  }
}

TEST(WeightSensitivity, FlagsTorsionOnly) {
  auto f = make_filtration({g1()});
  auto rep = weight_sensitivity_report(f, {{"i0", 1}, {"i1", 1}}, 1);
  ASSERT_TRUE(rep.any_difference());
  EXPECT_EQ(rep.entries[0].original, (FgAbelianGroup{2, {2}}));
  EXPECT_EQ(rep.entries[0].alternative, (FgAbelianGroup{2, {}}));
  for (const auto& e : rep.entries) EXPECT_EQ(e.original.free_rank, e.alternative.free_rank);
  EXPECT_FALSE(weight_sensitivity_report(f, {}, 1).any_difference());
  auto coprime = make_filtration({g1(3, 5)});
  EXPECT_FALSE(weight_sensitivity_report(coprime, {{"i0", 1}, {"i1", 1}}, 1).any_difference());
}
