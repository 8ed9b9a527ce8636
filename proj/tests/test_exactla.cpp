#include "oracle.hpp"

#include <gtest/gtest.h>
#include <hhdu/resolution.hpp>

using namespace hhdu;

TEST(Exactla, RankOfSmallMatrices) {
  EXPECT_EQ(rank(QMatrix::identity(2)), 2u);
  EXPECT_EQ(rank(QMatrix(3, 4)), 0u);
  EXPECT_EQ(rank(QMatrix{{1, 2}, {2, 4}}), 1u);
}

TEST(Exactla, RankOfD2ForTwoThree) {
  const auto hc = assemble_hom_complex(Instance(2, 3, 1, 1));
  EXPECT_EQ(rank(hc->d2_matrix()), 5u);
  EXPECT_EQ(oracle::rank(hc->d2_matrix()), 5u);
}

TEST(Exactla, RankAgreesWithNaiveElimination) {
  std::mt19937 g(7);
  for (int t = 0; t < 200; ++t) {
    const std::size_t r = 1 + g() % 7, c = 1 + g() % 7;
    QMatrix A = oracle::random_matrix(g, r, c);
    // force some dependent rows
    if (r > 2 && t % 3 == 0)
      for (std::size_t j = 0; j < c; ++j) A(r - 1, j) = A(0, j) * 2 - A(1, j);
    EXPECT_EQ(rank(A), oracle::rank(A));
    EXPECT_EQ(rank(A), rank(A.transpose()));
  }
}

TEST(Exactla, KernelBasisIsAnnihilatedAndComplete) {
  std::mt19937 g(11);
  for (int t = 0; t < 100; ++t) {
    const std::size_t r = 1 + g() % 6, c = 1 + g() % 8;
    const QMatrix A = oracle::random_matrix(g, r, c, -1, 1);
    const auto K = kernel_basis(A);
    EXPECT_EQ(K.size() + rank(A), c);
    for (const auto& v : K)
      for (const auto& x : A.apply(v)) EXPECT_EQ(x, 0);
    if (!K.empty()) EXPECT_EQ(rank(QMatrix::from_columns(K, c)), K.size());
  }
}

TEST(Exactla, SolveAndColumnSpace) {
  std::mt19937 g(3);
  for (int t = 0; t < 100; ++t) {
    const QMatrix A = oracle::random_matrix(g, 5, 3);
    std::vector<Rational> x{Rational(g() % 5), Rational(-1, 2), Rational(2, 3)};
    const auto b = A.apply(x);
    const auto s = solve(A, b);
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(A.apply(*s), b);
    EXPECT_TRUE(in_column_space(A, b));
  }
  const QMatrix E{{1, 0}, {0, 0}};
  EXPECT_FALSE(solve(E, {0, 1}).has_value());
  EXPECT_FALSE(in_column_space(E, {0, 1}));
}

TEST(Exactla, InverseTimesMatrixIsIdentity) {
  std::mt19937 g(5);
  for (int t = 0; t < 50; ++t) {
    const QMatrix A = oracle::random_matrix(g, 4, 4);
    if (oracle::det(A) == 0) continue;
    EXPECT_EQ(inverse(A) * A, QMatrix::identity(4));
  }
}

TEST(Exactla, CharPolyOfDiagonal) {
  const QMatrix D{{2, 0}, {0, 3}};
  EXPECT_EQ(char_poly(D), (QPoly{6, -5, 1}));
}

TEST(Exactla, CharPolyMatchesDeterminantAndCayleyHamilton) {
  std::mt19937 g(13);
  for (std::size_t n = 1; n <= 6; ++n)
    for (int t = 0; t < 5; ++t) {
      const QMatrix A = oracle::random_matrix(g, n, n);
      const QPoly p = char_poly(A);
      EXPECT_EQ(p.degree(), static_cast<long>(n));
      EXPECT_TRUE(p(A).is_zero());
      for (int s : {-2, 0, 1, 3}) {
        const QMatrix T = Rational(s) * QMatrix::identity(n) - A;
        EXPECT_EQ(p(Rational(s)), oracle::det(T));
      }
    }
  for (std::size_t n = 7; n <= 8; ++n) {
    const QMatrix A = oracle::random_matrix(g, n, n);
    EXPECT_TRUE(char_poly(A)(A).is_zero());
  }
}

TEST(Exactla, PolynomialGcd) {
  const QPoly x3p1{1, 0, 0, 1};
  const QPoly x5m1 = QPoly::monomial(1, 5) - QPoly{1};
  const QPoly x8m1 = QPoly::monomial(1, 8) - QPoly{1};
  EXPECT_EQ(poly_gcd(x3p1, x5m1), (QPoly{1}));
  EXPECT_EQ(poly_gcd(x3p1, x8m1), (QPoly{1, 1}));
  const QPoly d = poly_gcd(x3p1, QPoly::monomial(1, 6) - QPoly{1});
  EXPECT_EQ(d, x3p1);
  EXPECT_TRUE(QPoly::divmod(x3p1, d).second.is_zero());
  EXPECT_THROW(poly_gcd(QPoly{}, QPoly{}), std::invalid_argument);
}

TEST(Exactla, DivmodReconstructs) {
  const QPoly a{Rational(1, 2), -3, 0, 2, 5};
  const QPoly b{1, 0, 3};
  const auto [q, r] = QPoly::divmod(a, b);
  EXPECT_EQ(q * b + r, a);
  EXPECT_LT(r.degree(), b.degree());
}

TEST(Exactla, ParseRationalIsStrict) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("-2/4"), Rational(-1, 2));
  EXPECT_EQ(parse_rational("+5"), Rational(5));
  for (const char* bad : {"0.5", "1e3", "", "1/0", "a", "1/-2", "/3"}) EXPECT_THROW(parse_rational(bad), std::invalid_argument) << bad;
}
