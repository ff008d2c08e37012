#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "nyq/polynomial.hpp"
#include "nyq/random_corpus.hpp"
#include "nyq/real_roots.hpp"

namespace nyq {
namespace {

using cd = std::complex<double>;

TEST(PolyEvalComplex, ConstantTermAtOrigin) {
  EXPECT_EQ(poly_eval_complex(Polynomial{1, 2, 5, 4}, cd(0, 0)), cd(1, 0));
}

TEST(PolyEvalComplex, RootOfOnePlusSSquared) {
  const auto v = poly_eval_complex(Polynomial{1, 0, 1}, cd(0, 1));
  EXPECT_NEAR(v.real(), 0.0, 1e-15);
  EXPECT_NEAR(v.imag(), 0.0, 1e-15);
}

TEST(PolyEvalComplex, TermByTermAtJ) {
  // 1 + 2j + 6j^2 + 2j^3 = (1 - 6) + j(2 - 2)
  const auto v = poly_eval_complex(Polynomial{1, 2, 6, 2}, cd(0, 1));
  EXPECT_DOUBLE_EQ(v.real(), -5.0);
  EXPECT_DOUBLE_EQ(v.imag(), 0.0);
}

TEST(Polynomial, ZeroIsEmpty) {
  const Polynomial z = Polynomial{0} + Polynomial{0};
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.degree(), -1);
  EXPECT_EQ(z.size(), 0u);
  EXPECT_TRUE(Polynomial({1, 2, 0, 0}).degree() == 1);
}

TEST(Polynomial, RingOperations) {
  EXPECT_EQ(Polynomial({1, 1}) * Polynomial({1, -1}), Polynomial({1, 0, -1}));
  EXPECT_EQ(poly_scale(Polynomial{1, 2}, Scalar(3)), Polynomial({3, 6}));
  EXPECT_EQ(Polynomial({1, 2}) - Polynomial({1, 2}), Polynomial{});
  EXPECT_EQ(poly_scale(Polynomial{1, 2}, Scalar(0)), Polynomial{});
}

TEST(Polynomial, DivmodAndGcd) {
  const Polynomial a = Polynomial{1, 1} * Polynomial{2, 0, 1};
  const Polynomial b = Polynomial{1, 1} * Polynomial{-3, 1};
  auto [q, r] = poly_divmod(a, Polynomial{1, 1});
  EXPECT_EQ(q, Polynomial({2, 0, 1}));
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(poly_gcd(a, b), Polynomial({1, 1}));
  EXPECT_THROW(poly_divmod(a, Polynomial{}), ZeroDenominator);
}

TEST(ParseScalar, Forms) {
  EXPECT_EQ(parse_scalar("27/16"), Scalar(27, 16));
  EXPECT_EQ(parse_scalar("-6/4"), Scalar(-3, 2));
  EXPECT_EQ(parse_scalar("0.125"), Scalar(1, 8));
  EXPECT_EQ(parse_scalar("2.5e-3"), Scalar(1, 400));
  EXPECT_EQ(parse_scalar("12"), Scalar(12));
  EXPECT_THROW(parse_scalar("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_scalar("abc"), std::invalid_argument);
  EXPECT_THROW(parse_scalar(""), std::invalid_argument);
}

TEST(SeriesDiv, GeometricSeries) {
  const auto s = series_div(Polynomial{1}, Polynomial{1, 1}, 3);
  EXPECT_EQ(s.truncation_order, 3u);
  EXPECT_EQ(s.coeffs, (std::vector<Scalar>{1, -1, 1, -1}));
}

TEST(SeriesDiv, FirstCaseStudy) {
  const auto s = series_div(Polynomial{1, 2, 6, 2}, Polynomial{1, 2, 5, 4}, 3);
  EXPECT_EQ(s.coeffs, (std::vector<Scalar>{1, 0, 1, -4}));
}

TEST(SeriesDiv, SecondCaseStudy) {
  const auto s = series_div(Polynomial{35, 12, 1}, Polynomial{9, 28, 30, 12, 1}, 1);
  EXPECT_EQ(s.coeffs, (std::vector<Scalar>{Scalar(35, 9), Scalar(-872, 81)}));
}

TEST(SeriesDiv, ZeroConstantDenominator) {
  EXPECT_THROW(series_div(Polynomial{1}, Polynomial{0, 1}, 2), ZeroConstantDenominator);
}

TEST(ImagPartPolynomial, Examples) {
  EXPECT_EQ(imag_part_polynomial(Polynomial{1}, Polynomial{1, 1}), Polynomial({-1}));
  const auto q = imag_part_polynomial(Polynomial{1, 2, 6, 2}, Polynomial{1, 2, 5, 4});
  EXPECT_EQ(q.coeff(0), 0);
  // hand expansion: (2-2u)(1-5u) - (1-6u)(2-4u) = 4u - 14u^2
  EXPECT_EQ(q, Polynomial({0, 4, -14}));
  EXPECT_TRUE(imag_part_polynomial(Polynomial{3, 1, 4}, Polynomial{3, 1, 4}).is_zero());
}

// Exactness and the floating evaluation agree: (p q)(z) = p(z) q(z).
TEST(PolyCoreProperty, ProductEvaluatesToProductOfValues) {
  RandomCorpus gen(11);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> coord(-7.0, 7.0);
  std::uniform_int_distribution<int> deg(0, 8);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = gen.polynomial(deg(rng));
    const auto q = gen.polynomial(deg(rng));
    const cd z(coord(rng), coord(rng));
    const auto lhs = poly_eval_complex(p * q, z);
    const auto rhs = poly_eval_complex(p, z) * poly_eval_complex(q, z);
    EXPECT_LE(std::abs(lhs - rhs), 1e-9 * std::max(1.0, std::abs(rhs)));
    EXPECT_EQ(p * q, q * p);
    EXPECT_EQ((p + q) * p, p * p + q * p);
  }
}

// num == den * (truncated series) + O(s^13), checked by exact multiplication.
TEST(PolyCoreProperty, SeriesDivReconstructsNumerator) {
  RandomCorpus gen(12);
  std::uniform_int_distribution<int> deg(0, 8);
  for (int trial = 0; trial < 200; ++trial) {
    const auto num = gen.polynomial(deg(gen.engine()));
    const auto den = gen.polynomial(deg(gen.engine()));
    const auto s = series_div(num, den, 12);
    const auto product = den * Polynomial(s.coeffs);
    for (std::size_t k = 0; k <= 12; ++k) ASSERT_EQ(product.coeff(k), num.coeff(k)) << "k=" << k;
  }
}

// Q(u) vanishes identically iff G(jw) is real at every sampled frequency.
TEST(PolyCoreProperty, ImagPartPolynomialMatchesComplexEvaluation) {
  RandomCorpus gen(13);
  std::uniform_int_distribution<int> deg(0, 6);
  for (int trial = 0; trial < 100; ++trial) {
    const auto num = gen.polynomial(deg(gen.engine()));
    const auto den = gen.polynomial(deg(gen.engine()));
    const auto q = imag_part_polynomial(num, den);
    for (double w : {0.1, 0.7, 1.3, 2.9}) {
      const auto v = poly_eval_complex(num, cd(0, w)) * std::conj(poly_eval_complex(den, cd(0, w)));
      const double expected = w * poly_eval_complex(q, cd(w * w, 0)).real();
      EXPECT_NEAR(v.imag(), expected, 1e-9 * std::max(1.0, std::abs(v)));
    }
  }
  // Even num and den give a real response and a zero polynomial.
  EXPECT_TRUE(imag_part_polynomial(Polynomial{1, 0, 1}, Polynomial{2, 0, 1}).is_zero());
  EXPECT_FALSE(imag_part_polynomial(Polynomial{1, 1}, Polynomial{2, 0, 1}).is_zero());
}

TEST(RealRoots, IsolatesAndRefines) {
  // (u - 1/3)(u - 2)(u + 5) u
  const Polynomial p = Polynomial{Scalar(-1, 3), 1} * Polynomial{-2, 1} * Polynomial{5, 1} * Polynomial{0, 1};
  const auto roots = positive_real_roots(p, Scalar(1, 1000000000));
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_NEAR(roots[0].midpoint(), 1.0 / 3.0, 1e-9);
  EXPECT_NEAR(roots[1].midpoint(), 2.0, 1e-9);
  EXPECT_EQ(roots[0].multiplicity, 1);
}

TEST(RealRoots, ReportsMultiplicity) {
  const Polynomial p = Polynomial{-3, 1} * Polynomial{-3, 1} * Polynomial{1, 0, 1};
  const auto roots = positive_real_roots(p, Scalar(1, 1000000));
  ASSERT_EQ(roots.size(), 1u);
  EXPECT_EQ(roots[0].multiplicity, 2);
  EXPECT_NEAR(roots[0].midpoint(), 3.0, 1e-6);
}

TEST(RealRoots, CloseRootsSeparated) {
  const Polynomial p = Polynomial{Scalar(-1000, 1000), 1} * Polynomial{Scalar(-1001, 1000), 1};
  const auto roots = positive_real_roots(p, parse_scalar("1/1000000000000"));
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_LT(roots[0].hi, roots[1].lo);
}

}  // namespace
}  // namespace nyq
