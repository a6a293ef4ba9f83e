#include <gtest/gtest.h>

#include <random>

#include "arithbar/error.hpp"
#include "arithbar/matrix.hpp"
#include "oracles.hpp"

using namespace arithbar;
using arithbar::testing::laplace_determinant;

TEST(Matrix, FromRowsRejectsRaggedInput) {
  const Ring r = Ring::p_adic(3, 4);
  EXPECT_THROW(DvrMatrix::from_rows(r, {{1, 2}, {3}}), Error);
  const DvrMatrix m = DvrMatrix::from_rows(r, {{1, -1}, {0, 9}});
  EXPECT_EQ(m.raw(0, 1), 80u);
  EXPECT_EQ(m.min_valuation(), Valuation::exact(0));
  EXPECT_EQ(DvrMatrix(r, 2, 2).min_valuation(), Valuation::censored(4));
}

TEST(Matrix, ProductTransposeAndApply) {
  const Ring r = Ring::p_adic(5, 3);
  const DvrMatrix a = DvrMatrix::from_rows(r, {{1, 2, 3}, {4, 5, 6}});
  const DvrMatrix b = DvrMatrix::from_rows(r, {{1, 0}, {0, 1}, {1, 1}});
  EXPECT_EQ(a * b, DvrMatrix::from_rows(r, {{4, 5}, {10, 11}}));
  EXPECT_EQ(a.transpose().transpose(), a);
  EXPECT_EQ(a.apply(Vector{1, 1, 1}), (Vector{6, 15}));
  EXPECT_THROW(a * a, Error);
}

TEST(Matrix, DeterminantMatchesCofactorExpansion) {
  std::mt19937_64 rng(11);
  for (const Ring& r : {Ring::p_adic(2, 12), Ring::p_adic(3, 8), Ring::power_series(3, 6), Ring::p_adic(5, 6)}) {
    for (int t = 0; t < 60; ++t) {
      const std::size_t n = 1 + rng() % 5;
      DvrMatrix m(r, n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.set_raw(i, j, r.mul(rng() % r.modulus(), r.pi_power(rng() % 3)));
      EXPECT_EQ(determinant(m), laplace_determinant(m)) << r.name() << "\n" << m;
    }
  }
}

TEST(Matrix, InverseOfUnimodular) {
  std::mt19937_64 rng(5);
  for (const Ring& r : {Ring::p_adic(2, 16), Ring::power_series(5, 4)}) {
    for (int t = 0; t < 30; ++t) {
      const std::size_t n = 1 + rng() % 6;
      const DvrMatrix u = arithbar::testing::random_unimodular(rng, r, n);
      ASSERT_TRUE(is_invertible(u));
      EXPECT_EQ(inverse(u) * u, DvrMatrix::identity(r, n));
      EXPECT_EQ(u * inverse(u), DvrMatrix::identity(r, n));
    }
  }
  const Ring r = Ring::p_adic(3, 4);
  EXPECT_FALSE(is_invertible(DvrMatrix::from_rows(r, {{3, 0}, {0, 1}})));
  EXPECT_THROW(inverse(DvrMatrix::from_rows(r, {{3, 0}, {0, 1}})), Error);
}

TEST(Matrix, ReduceAndLift) {
  const Ring r = Ring::p_adic(2, 8);
  const DvrMatrix m = DvrMatrix::from_rows(r, {{200, 3}, {16, 255}});
  const DvrMatrix small = reduce_mod(m, 4);
  EXPECT_EQ(small, DvrMatrix::from_rows(Ring::p_adic(2, 4), {{8, 3}, {0, 15}}));
  EXPECT_EQ(reduce_mod(lift_to(small, r), 4), small);
  EXPECT_THROW(reduce_mod(m, 9), Error);
}

TEST(Matrix, ResidueRank) {
  const Ring r = Ring::p_adic(3, 4);
  EXPECT_EQ(residue_rank(DvrMatrix::from_rows(r, {{1, 2}, {2, 4}})), 1u);
  EXPECT_EQ(residue_rank(DvrMatrix::from_rows(r, {{3, 0}, {0, 9}})), 0u);
  EXPECT_EQ(residue_rank(DvrMatrix::identity(r, 3)), 3u);
  EXPECT_EQ(residue_rank(std::vector<Vector>{{1, 0}, {0, 1}, {1, 1}}, 2), 2u);
}
