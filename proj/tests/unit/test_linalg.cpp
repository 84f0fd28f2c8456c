#include "wph/abelian_group.hpp"
#include "wph/normal_form.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace wph;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int bound, double density) {
  std::uniform_int_distribution<int> value(-bound, bound);
  std::bernoulli_distribution nonzero(density);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (nonzero(rng)) m(i, j) = value(rng);
  return m;
}

// Fraction-free (Bareiss) elimination; exact division keeps entries bounded.
Integer determinant(IntMatrix m) {
  const std::size_t n = m.rows();
  Integer sign = 1, previous = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      m.swap_rows(p, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / previous;
    previous = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

bool is_unimodular(const IntMatrix& m) { return m.rows() == m.cols() && abs_value(determinant(m)) == 1; }

RatMatrix to_q(const IntMatrix& m) { return convert<Rational>(m); }

}  // namespace

TEST(Determinant, TestHelper) {
  EXPECT_EQ(determinant(IntMatrix{{2, 4}, {6, 8}}), -8);
  EXPECT_EQ(determinant(IntMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 3}}), -3);
  EXPECT_EQ(determinant(IntMatrix{{1, 2}, {2, 4}}), 0);
}

TEST(Hermite, ExampleTwoByTwo) {
  IntMatrix a{{2, 4}, {6, 8}};
  auto h = hermite_normal_form(a);
  EXPECT_EQ(h.H, (IntMatrix{{2, 0}, {0, 4}}));
  EXPECT_EQ(h.U * a, h.H);
  EXPECT_TRUE(is_unimodular(h.U));
}

TEST(Hermite, RankDeficient) {
  IntMatrix a{{1, 2, 3}, {2, 4, 6}};
  auto h = hermite_normal_form(a);
  EXPECT_EQ(h.rank(), 1u);
  EXPECT_EQ(h.U * a, h.H);
}

TEST(Smith, ExampleTwoByTwo) {
  IntMatrix a{{2, 4}, {6, 8}};
  auto s = smith_normal_form(a);
  EXPECT_EQ(s.diagonal(), (std::vector<Integer>{2, 4}));
  EXPECT_EQ(s.U * a * s.V, s.S);
}

TEST(Smith, DiagonalCoprimeEntriesMerge) {
  IntMatrix a{{2, 0}, {0, 3}};
  auto s = smith_normal_form(a);
  EXPECT_EQ(s.diagonal(), (std::vector<Integer>{1, 6}));
}

TEST(Smith, ZeroMatrix) {
  IntMatrix a(3, 2);
  auto s = smith_normal_form(a);
  EXPECT_EQ(s.rank, 0u);
  EXPECT_TRUE(s.S.is_zero());
}

TEST(Smith, RandomRoundTrip) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::size_t> dim(1, 40);
  for (int trial = 0; trial < 40; ++trial) {
    auto rows = dim(rng), cols = dim(rng);
    auto a = random_matrix(rng, rows, cols, 9, trial % 2 ? 0.3 : 0.8);
    auto s = smith_normal_form(a);
    ASSERT_EQ(s.U * a * s.V, s.S);
    ASSERT_TRUE(is_unimodular(s.U));
    ASSERT_TRUE(is_unimodular(s.V));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (i != j) ASSERT_EQ(s.S(i, j), 0);
    auto d = s.diagonal();
    for (std::size_t i = 0; i < d.size(); ++i) {
      ASSERT_GE(d[i], 0);
      if (i < s.rank) ASSERT_GT(d[i], 0);
      else ASSERT_EQ(d[i], 0);
      if (i + 1 < s.rank) ASSERT_EQ(d[i + 1] % d[i], 0);
    }
    ASSERT_EQ(s.rank, rank(to_q(a)));
  }
}

TEST(Smith, InvariantFactorsMatchDiagonal) {
  std::mt19937 rng(13);
  std::uniform_int_distribution<std::size_t> dim(1, 12);
  for (int trial = 0; trial < 60; ++trial) {
    auto a = random_matrix(rng, dim(rng), dim(rng), 6, 0.5);
    auto s = smith_normal_form(a);
    auto d = s.diagonal();
    d.resize(s.rank);
    ASSERT_EQ(invariant_factors(a), d);
  }
}

TEST(Hermite, RandomRoundTrip) {
  std::mt19937 rng(12);
  std::uniform_int_distribution<std::size_t> dim(1, 40);
  for (int trial = 0; trial < 40; ++trial) {
    auto a = random_matrix(rng, dim(rng), dim(rng), 9, 0.5);
    auto h = hermite_normal_form(a);
    ASSERT_EQ(h.U * a, h.H);
    ASSERT_TRUE(is_unimodular(h.U));
    for (std::size_t r = 0; r < h.rank(); ++r) {
      ASSERT_GT(h.H(r, h.pivots[r]), 0);
      if (r) ASSERT_GT(h.pivots[r], h.pivots[r - 1]);
      for (std::size_t above = 0; above < r; ++above) {
        ASSERT_GE(h.H(above, h.pivots[r]), 0);
        ASSERT_LT(h.H(above, h.pivots[r]), h.H(r, h.pivots[r]));
      }
    }
    for (std::size_t r = h.rank(); r < h.H.rows(); ++r)
      for (std::size_t j = 0; j < h.H.cols(); ++j) ASSERT_EQ(h.H(r, j), 0);
  }
}

TEST(Kernel, ExampleRow) {
  IntMatrix a{{2, 3}};
  auto k = kernel_basis(a);
  ASSERT_EQ(k.cols(), 1u);
  auto v = k.column(0);
  EXPECT_TRUE((v == std::vector<Integer>{3, -2}) || (v == std::vector<Integer>{-3, 2}));
}

TEST(Kernel, RandomIsSaturatedLattice) {
  std::mt19937 rng(13);
  std::uniform_int_distribution<std::size_t> dim(1, 25);
  for (int trial = 0; trial < 40; ++trial) {
    auto a = random_matrix(rng, dim(rng), dim(rng), 6, 0.5);
    auto k = kernel_basis(a);
    ASSERT_TRUE((a * k).is_zero());
    ASSERT_EQ(k.cols(), a.cols() - rank(to_q(a)));
    if (k.cols() == 0) continue;
    // Saturated: the invariant factors of the basis are all 1.
    auto s = smith_normal_form(k, false);
    for (std::size_t i = 0; i < s.rank; ++i) ASSERT_EQ(s.S(i, i), 1);
  }
}

TEST(Kernel, RationalMatchesRankNullity) {
  std::mt19937 rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = to_q(random_matrix(rng, 12, 15, 5, 0.4));
    auto k = kernel_basis(a);
    ASSERT_TRUE((a * k).is_zero());
    ASSERT_EQ(k.cols() + rank(a), a.cols());
  }
}

TEST(Span, SolveInSpan) {
  IntMatrix basis{{2, 0}, {0, 3}, {0, 0}};
  auto x = solve_in_span(basis, std::vector<Integer>{4, 9, 0});
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (std::vector<Integer>{2, 3}));
  EXPECT_FALSE(solve_in_span(basis, std::vector<Integer>{1, 0, 0}));
  EXPECT_FALSE(solve_in_span(basis, std::vector<Integer>{0, 0, 1}));
  RatMatrix qbasis = to_q(basis);
  auto y = solve_in_span(qbasis, std::vector<Rational>{1, 1, 0});
  ASSERT_TRUE(y);
  EXPECT_EQ(*y, (std::vector<Rational>{Rational(1, 2), Rational(1, 3)}));
}

TEST(Span, BasisSpansSameLattice) {
  std::mt19937 rng(15);
  for (int trial = 0; trial < 30; ++trial) {
    auto gens = random_matrix(rng, 8, 12, 7, 0.5);
    auto b = span_basis(gens);
    ASSERT_EQ(b.cols(), rank(to_q(gens)));
    for (std::size_t j = 0; j < gens.cols(); ++j) ASSERT_TRUE(solve_in_span(b, gens.column(j)));
    ASSERT_EQ(span_basis(b), b);
  }
}

TEST(Groups, QuotientExamples) {
  EXPECT_EQ(quotient_group(2, IntMatrix{{2}, {0}}), (FgAbelianGroup{1, {2}}));
  EXPECT_EQ(quotient_group(2, IntMatrix{{2, 0}, {0, 4}}), (FgAbelianGroup{0, {2, 4}}));
  EXPECT_EQ(quotient_group(3, IntMatrix(3, 0)), (FgAbelianGroup{3, {}}));
  EXPECT_EQ(quotient_group(2, RatMatrix{{2}, {0}}), (FgAbelianGroup{1, {}}));
}

TEST(Groups, CanonicalForm) {
  auto g = FgAbelianGroup::from_cyclic_orders({0, 2, 3, 1, 4});
  EXPECT_EQ(g.free_rank, 1u);
  EXPECT_EQ(g.torsion, (std::vector<Integer>{2, 12}));
  EXPECT_TRUE(g.is_divisibility_chain());
  EXPECT_EQ(g.to_string(), "Z + Z/2 + Z/12");
  EXPECT_EQ(FgAbelianGroup{}.to_string(), "0");
  EXPECT_EQ(direct_sum({FgAbelianGroup{1, {2}}, FgAbelianGroup{0, {3}}}), (FgAbelianGroup{1, {6}}));
}
