#include <gtest/gtest.h>

#include "oracles.hpp"
#include "toricnef/exact_linalg.hpp"

using namespace toricnef;

namespace {

IntMatrix random_matrix(oracle::IntSource& src, std::size_t r, std::size_t c, long lo = -4, long hi = 4) {
  IntMatrix a(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) a(i, j) = src.next(lo, hi);
  return a;
}

}  // namespace

TEST(Primitive, DividesByGcdAndKeepsSign) {
  EXPECT_EQ(primitive_part({4, -6, 0}), (LatticeVector{2, -3, 0}));
  EXPECT_EQ(primitive_part({-3, 0}), (LatticeVector{-1, 0}));
  EXPECT_TRUE(is_primitive({1, -1, -2}));
  EXPECT_FALSE(is_primitive({2, 0, -2}));
  EXPECT_THROW(primitive_part({0, 0}), PreconditionError);
}

TEST(Primitive, ScalingClearsDenominators) {
  RatVector v{Rational(1, 2), Rational(-1, 3), 0};
  EXPECT_EQ(primitive_scaling(v), (IntVector{3, -2, 0}));
}

TEST(Hermite, KnownExample) {
  auto a = IntMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  auto hf = hermite_normal_form(a);
  EXPECT_EQ(hf.u * a, hf.h);
  EXPECT_EQ(abs_value(determinant(hf.u)), 1);
  EXPECT_EQ(hf.h(1, 0), 0);
  EXPECT_EQ(hf.h(2, 0), 0);
  EXPECT_EQ(hf.h(2, 1), 0);
  EXPECT_EQ(hf.h(0, 0) * hf.h(1, 1) * hf.h(2, 2), 144);
}

TEST(Hermite, RandomMatricesAreUnimodularlyEquivalent) {
  oracle::IntSource src(11);
  for (int trial = 0; trial < 60; ++trial) {
    auto a = random_matrix(src, 1 + trial % 5, 1 + (trial / 5) % 5);
    auto hf = hermite_normal_form(a);
    ASSERT_EQ(hf.u * a, hf.h);
    ASSERT_EQ(abs_value(determinant(hf.u)), 1);
    // Echelon shape: pivot columns strictly increase, pivots positive,
    // entries above a pivot reduced into [0, pivot).
    std::size_t last = 0;
    bool first = true;
    for (std::size_t i = 0; i < hf.h.rows(); ++i) {
      std::size_t c = 0;
      while (c < hf.h.cols() && hf.h(i, c) == 0) ++c;
      if (c == hf.h.cols()) {
        for (std::size_t k = i; k < hf.h.rows(); ++k)
          for (std::size_t j = 0; j < hf.h.cols(); ++j) ASSERT_EQ(hf.h(k, j), 0);
        break;
      }
      ASSERT_TRUE(first || c > last);
      ASSERT_GT(hf.h(i, c), 0);
      for (std::size_t k = 0; k < i; ++k) {
        ASSERT_GE(hf.h(k, c), 0);
        ASSERT_LT(hf.h(k, c), hf.h(i, c));
      }
      last = c;
      first = false;
    }
  }
}

TEST(Smith, KnownExamples) {
  EXPECT_EQ(smith_normal_form(IntMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}})),
            (std::vector<Integer>{2, 6, 12}));
  EXPECT_EQ(smith_normal_form(IntMatrix::from_rows({{1, 0}, {0, 1}, {-1, -1}})), (std::vector<Integer>{1, 1}));
  EXPECT_EQ(smith_normal_form(IntMatrix::from_rows({{1, 1}, {1, -1}})), (std::vector<Integer>{1, 2}));
  EXPECT_TRUE(smith_normal_form(IntMatrix(2, 3)).empty());
}

TEST(Smith, AgreesWithDeterminantalDivisors) {
  oracle::IntSource src(12);
  for (int trial = 0; trial < 80; ++trial) {
    auto a = random_matrix(src, 1 + trial % 4, 1 + (trial / 4) % 4, -6, 6);
    auto snf = smith_normal_form(a);
    ASSERT_EQ(snf, oracle::elementary_divisors(a)) << "trial " << trial;
    for (std::size_t i = 1; i < snf.size(); ++i) ASSERT_EQ(snf[i] % snf[i - 1], 0);
  }
}

TEST(Kernel, LeftKernelOfRayMatrix) {
  // Rays of P^2: one relation v0 + v1 + v2 = 0.
  auto k = integer_kernel(IntMatrix::from_rows({{1, 0}, {0, 1}, {-1, -1}}));
  ASSERT_EQ(k.rows(), 1u);
  EXPECT_EQ(k.row_vector(0), (IntVector{1, 1, 1}));
}

TEST(Kernel, RandomKernelsAreSaturatedBases) {
  oracle::IntSource src(13);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 2 + trial % 5, c = 1 + trial % 3;
    auto a = random_matrix(src, r, c);
    auto k = integer_kernel(a);
    ASSERT_EQ(k.rows(), r - rank(a));
    for (std::size_t i = 0; i < k.rows(); ++i)
      for (std::size_t j = 0; j < c; ++j) {
        Integer s = 0;
        for (std::size_t t = 0; t < r; ++t) s += k(i, t) * a(t, j);
        ASSERT_EQ(s, 0);
      }
    // Saturated: the lattice spanned has no torsion in Z^r / span.
    if (k.rows() > 0) {
      auto snf = smith_normal_form(k);
      ASSERT_EQ(snf.size(), k.rows());
      for (const auto& d : snf) ASSERT_EQ(d, 1);
    }
  }
}

TEST(Determinant, SmallCases) {
  EXPECT_EQ(determinant(IntMatrix::from_rows({{2, 1}, {7, 4}})), 1);
  EXPECT_EQ(determinant(IntMatrix::from_rows({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}})), -1);
  EXPECT_EQ(determinant(IntMatrix::from_rows({{1, 2}, {2, 4}})), 0);
}

TEST(Rational, RankSolveAndKernel) {
  auto a = to_rational(IntMatrix::from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}}));
  EXPECT_EQ(rank(a), 2u);
  auto x = solve(a, {6, 12, 2});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(a * RatMatrix::from_rows({*x}).transposed(), RatMatrix::from_rows({{6}, {12}, {2}}));
  EXPECT_FALSE(solve(a, {1, 0, 0}).has_value());
  auto ker = rational_kernel(a);
  ASSERT_EQ(ker.size(), 1u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(dot(a.row_vector(i), ker[0]), 0);
}

TEST(Feasibility, FindsPointsAndDetectsEmptiness) {
  // x + y >= 3, x - y >= -1, y >= 1: feasible; the point must satisfy all.
  std::vector<LinearConstraint> ineqs{{{1, 1}, 3}, {{1, -1}, -1}, {{0, 1}, 1}};
  auto p = find_feasible_point(2, {}, ineqs);
  ASSERT_TRUE(p.has_value());
  for (const auto& q : ineqs) EXPECT_GE(dot(q.coeffs, *p), q.bound);

  // x >= 1, -x >= 0: empty.
  EXPECT_FALSE(find_feasible_point(1, {}, {{{1}, 1}, {{-1}, 0}}).has_value());

  // Equation x + y + z = 1 with x, y, z >= 1: empty.
  std::vector<LinearConstraint> pos{{{1, 0, 0}, 1}, {{0, 1, 0}, 1}, {{0, 0, 1}, 1}};
  EXPECT_FALSE(find_feasible_point(3, {{{1, 1, 1}, 1}}, pos).has_value());
  auto q = find_feasible_point(3, {{{1, 1, 1}, 3}}, pos);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ((*q)[0] + (*q)[1] + (*q)[2], 3);
}

TEST(StrictPositiveKernel, SmallExamples) {
  auto c = strict_positive_kernel_exists(IntMatrix::from_rows({{1, 0}, {0, 1}, {-1, -1}}));
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(*c, (IntVector{1, 1, 1}));
  EXPECT_FALSE(strict_positive_kernel_exists(IntMatrix::from_rows({{1, 0}, {0, 1}, {1, 1}})).has_value());
  auto d = strict_positive_kernel_exists(IntMatrix::from_rows({{2, 1}, {-1, 0}, {0, -1}}));
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(*d, (IntVector{1, 2, 1}));
}

TEST(StrictPositiveKernel, AgreesWithBruteForceOnRandomRows) {
  oracle::IntSource src(14);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t k = 2 + trial % 3, n = 2 + (trial / 3) % 2;
    std::vector<LatticeVector> rows(k, LatticeVector(n));
    for (auto& r : rows)
      for (auto& x : r) x = src.next(-2, 2);
    auto mine = strict_positive_kernel_exists(IntMatrix::from_rows(rows, n));
    auto brute = oracle::bounded_positive_relation(rows, 6);
    if (brute) {
      ASSERT_TRUE(mine.has_value()) << "trial " << trial;
    }
    if (mine) {
      for (const auto& c : *mine) ASSERT_GT(c, 0);
      for (std::size_t j = 0; j < n; ++j) {
        Integer s = 0;
        for (std::size_t i = 0; i < k; ++i) s += (*mine)[i] * rows[i][j];
        ASSERT_EQ(s, 0);
      }
      ASSERT_EQ(gcd_of(*mine), 1);
    }
  }
}

TEST(Hermite, SmallCases) {
  auto id = IntMatrix::identity(3);
  auto hf = hermite_normal_form(id);
  EXPECT_EQ(hf.h, id);
  EXPECT_EQ(hf.u, id);

  auto a = IntMatrix::from_rows({{2, 4}, {6, 8}});
  auto h2 = hermite_normal_form(a);
  EXPECT_EQ(h2.h(0, 0), 2);
  EXPECT_EQ(h2.u * a, h2.h);
  EXPECT_EQ(abs_value(determinant(h2.u)), 1);

  // Ray matrix of P^3: the nonzero rows of H form a basis of Z^3.
  auto p3 = catalog::projective_space(3).ray_matrix();
  auto h3 = hermite_normal_form(p3);
  EXPECT_EQ(h3.u * p3, h3.h);
  IntMatrix top(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) top(i, j) = h3.h(i, j);
  EXPECT_EQ(abs_value(determinant(top)), 1);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(h3.h(3, j), 0);
  EXPECT_EQ(smith_normal_form(p3), oracle::elementary_divisors(p3));
}

TEST(Smith, DiagonalAndUnimodularCases) {
  EXPECT_EQ(smith_normal_form(IntMatrix::identity(4)), (std::vector<Integer>{1, 1, 1, 1}));
  EXPECT_EQ(smith_normal_form(IntMatrix::from_rows({{2, 0}, {0, 3}})), (std::vector<Integer>{1, 6}));
  EXPECT_EQ(smith_normal_form(IntMatrix::from_rows({{1, 0, 0}, {0, 1, 0}, {-1, -1, -1}})),
            (std::vector<Integer>{1, 1, 1}));
}

TEST(Kernel, FullRankAndRayMatrices) {
  EXPECT_EQ(integer_kernel(IntMatrix::from_rows({{2, 1}, {7, 4}})).rows(), 0u);
  auto k = integer_kernel(catalog::example_8_10().ray_matrix());
  EXPECT_EQ(k.rows(), 5u);
  for (std::size_t i = 0; i < k.rows(); ++i) EXPECT_TRUE(is_primitive(k.row_vector(i)));
}

TEST(Primitive, MoreExamples) {
  EXPECT_EQ(primitive_part({2, 4, 6}), (LatticeVector{1, 2, 3}));
  EXPECT_EQ(primitive_part({1, -1, -2}), (LatticeVector{1, -1, -2}));
  EXPECT_EQ(primitive_part({0, 0, -3}), (LatticeVector{0, 0, -1}));
}

TEST(StrictPositiveKernel, RayExamples) {
  auto opposite = strict_positive_kernel_exists(IntMatrix::from_rows({{0, 0, 1}, {0, 0, -1}}));
  ASSERT_TRUE(opposite.has_value());
  EXPECT_EQ(*opposite, (IntVector{1, 1}));
  EXPECT_FALSE(strict_positive_kernel_exists(IntMatrix::from_rows({{1, 0}, {0, 1}})).has_value());
  auto p3 = strict_positive_kernel_exists(catalog::projective_space(3).ray_matrix());
  ASSERT_TRUE(p3.has_value());
  EXPECT_EQ(*p3, (IntVector{1, 1, 1, 1}));
}
