#include <gtest/gtest.h>

#include <random>

#include "ncfeyn/exact/determinant.hpp"
#include "ncfeyn/exact/interpolate.hpp"

using namespace ncfeyn;

namespace {

// Laplace expansion along the first row.
GaussianRational cofactor_det(const Matrix<GaussianRational>& m) {
  const std::size_t n = m.rows();
  if (n == 0) return GaussianRational(Rational(1));
  GaussianRational sum;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
    for (std::size_t j = 0; j < n; ++j)
      if (j != c) cols.push_back(j);
    GaussianRational term = m(0, c) * cofactor_det(m.select(rows, cols));
    if (c % 2) sum -= term;
    else sum += term;
  }
  return sum;
}

Matrix<GaussianRational> random_matrix(std::mt19937& rng, std::size_t n, bool sparse) {
  std::uniform_int_distribution<int> d(-6, 6);
  Matrix<GaussianRational> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (sparse && d(rng) % 3 != 0) continue;
      m(i, j) = GaussianRational(frac(d(rng), 1 + std::abs(d(rng))), frac(d(rng), 7));
    }
  return m;
}

}  // namespace

TEST(Rational, ParseAndCanonicalForm) {
  EXPECT_EQ(parse_rational("6/4"), frac(3, 2));
  EXPECT_EQ(parse_rational("-2"), Rational(-2));
  EXPECT_EQ(parse_rational("+1/3"), frac(1, 3));
  EXPECT_EQ(frac(2, -4).get_str(), "-1/2");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1.5"), std::invalid_argument);
  EXPECT_THROW(parse_rational("/3"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
}

TEST(GaussianRational, FieldOperations) {
  GaussianRational a(frac(1, 2), Rational(3)), b(Rational(-2), frac(1, 5));
  EXPECT_EQ((a * b) / b, a);
  EXPECT_EQ(a * GaussianRational::i() * GaussianRational::i(), -a);
  EXPECT_EQ(a - a, GaussianRational());
  EXPECT_EQ(pow(GaussianRational::i(), 4), GaussianRational(Rational(1)));
  EXPECT_EQ(pow(frac(2, 3), -2), frac(9, 4));
}

TEST(MultiPoly, ArithmeticAndDegrees) {
  RealPoly t1 = RealPoly::variable(2, 0), t2 = RealPoly::variable(2, 1);
  RealPoly p = t1 * t1 * t2 + t2 * Rational(3) + RealPoly::constant(2, Rational(1));
  EXPECT_EQ(p.degree(), 3);
  EXPECT_EQ(p.min_total_degree(), 0);
  EXPECT_EQ(p.degree_in(0), 2);
  EXPECT_EQ(p.coeff({0, 1}), Rational(3));
  std::vector<Rational> pt{frac(1, 2), Rational(2)};
  EXPECT_EQ(p.evaluate(std::span<const Rational>(pt)), frac(1, 4) * 2 + 6 + 1);
  EXPECT_TRUE((p - p).is_zero());
}

TEST(Determinant, BareissMatchesCofactorExpansion) {
  std::mt19937 rng(1);
  for (std::size_t n = 1; n <= 6; ++n)
    for (int rep = 0; rep < 6; ++rep) {
      auto m = random_matrix(rng, n, rep % 2 == 1);
      EXPECT_EQ(det_exact(m), cofactor_det(m)) << "n=" << n;
      EXPECT_EQ(bareiss_determinant(m, GaussianRational(Rational(1))), cofactor_det(m));
    }
}

TEST(Determinant, SingularAndEmpty) {
  Matrix<GaussianRational> m(3, 3);
  m(0, 0) = GaussianRational(Rational(1));
  m(1, 0) = GaussianRational(Rational(2));
  EXPECT_EQ(det_exact(m), GaussianRational());
  EXPECT_EQ(det_exact(Matrix<GaussianRational>(0, 0)), GaussianRational(Rational(1)));
}

TEST(Determinant, NumericAgreesWithExact) {
  std::mt19937 rng(2);
  auto m = random_matrix(rng, 5, false);
  Matrix<std::complex<double>> d(5, 5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) d(i, j) = m(i, j).to_complex();
  const auto exact = cofactor_det(m).to_complex();
  EXPECT_NEAR(std::abs(det_numeric(d) - exact) / std::abs(exact), 0.0, 1e-12);
}

TEST(Determinant, FractionFreeOverRationalFunctions) {
  // [[t1, 1/t2], [1, t1 t2]] has determinant t1^2 t2 - 1/t2.
  const int L = 2;
  Poly t1 = Poly::variable(L, 0), t2 = Poly::variable(L, 1), one = Poly::constant(L, GaussianRational(Rational(1)));
  Matrix<RatFunc> m(2, 2, RatFunc(L));
  m(0, 0) = RatFunc(t1);
  m(0, 1) = RatFunc(one, t2);
  m(1, 0) = RatFunc(one);
  m(1, 1) = RatFunc(t1 * t2);
  RatFunc expected = RatFunc(t1 * t1 * t2) - RatFunc(one, t2);
  EXPECT_EQ(det_fraction_free(m, L), expected);
}

TEST(Interpolation, RecoversPolynomialWithinBounds) {
  const int L = 3;
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-5, 5);
  Poly p(L);
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 1; ++b)
      for (int c = 0; c <= 2; ++c)
        if (d(rng) > 1) p += Poly::monomial({a, b, c}, GaussianRational(frac(d(rng), 3), frac(d(rng), 2)));
  auto q = interpolate([&](std::span<const Rational> t) { return p.evaluate(t); }, {2, 1, 2});
  EXPECT_EQ(q, p);
}

TEST(Interpolation, DetectsDegreeBoundViolation) {
  auto cube = [](std::span<const Rational> t) { return GaussianRational(Rational(t[0] * t[0] * t[0])); };
  EXPECT_THROW(interpolate(cube, {2}), DegreeBoundExceeded);
}
