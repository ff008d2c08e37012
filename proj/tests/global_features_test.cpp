#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "nyq/classifier.hpp"
#include "nyq/global_features.hpp"
#include "nyq/parser.hpp"
#include "nyq/random_corpus.hpp"
#include "nyq/verify.hpp"

namespace nyq {
namespace {

constexpr const char* kCase1 = "(2s^3+6s^2+2s+1)/(4s^3+5s^2+2s+1)";
constexpr const char* kCase2 = "(s^2+12s+35)/(s*(s^4+12s^3+30s^2+28s+9))";

double angle_between(std::complex<double> a, std::complex<double> b) {
  return std::abs(std::arg(a / b)) * 180.0 / std::numbers::pi;
}

TEST(Evaluate, IncludesGainAndOriginPoles) {
  const auto tf = parse_tf("-2/(s*(s+1))");
  const std::complex<double> s(0.0, 0.5);
  const auto expected = -2.0 / (s * (s + 1.0));
  EXPECT_LT(std::abs(evaluate(tf, 0.5) - expected), 1e-14);
}

TEST(RealAxisCrossings, FirstOrderLagHasNone) {
  EXPECT_TRUE(real_axis_crossings(parse_tf("1/(1+s)")).empty());
}

TEST(RealAxisCrossings, FirstCaseStudy) {
  // I(u) = 4u - 14u^2 vanishes at u = 2/7.
  const auto tf = parse_tf(kCase1);
  EXPECT_EQ(crossing_polynomial(tf), Polynomial({0, 4, -14}));
  const auto c = real_axis_crossings(tf);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_NEAR(c[0].omega, std::sqrt(2.0 / 7.0), 1e-12);
  EXPECT_EQ(c[0].multiplicity_hint, 1);
  const auto v = evaluate(tf, c[0].omega);
  EXPECT_LT(std::abs(v.imag()), 1e-9 * std::max(1.0, std::abs(v)));
  EXPECT_NEAR(c[0].real_value, v.real(), 1e-12);
  EXPECT_TRUE(check_crossings(tf).passed);
}

TEST(RealAxisCrossings, SecondCaseStudy) {
  // One pole at the origin: the real part of N conj(D) decides, -(315 - 723u - 79u^2 - u^3).
  const auto tf = parse_tf(kCase2);
  EXPECT_EQ(crossing_polynomial(tf), Polynomial({-315, 723, 79, 1}));
  const auto c = real_axis_crossings(tf);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_LT(c[0].real_value, 0.0);
  const auto v = evaluate(tf, c[0].omega);
  EXPECT_LT(std::abs(v.imag()), 1e-9 * std::max(1.0, std::abs(v)));
  EXPECT_TRUE(check_crossings(tf).passed) << check_crossings(tf).detail;
}

TEST(RealAxisCrossings, DegenerateWhenAlwaysReal) {
  EXPECT_THROW(real_axis_crossings(parse_tf("(1+s^2)/(2+s^2)")), DegenerateOnAxis);
  EXPECT_THROW(real_axis_crossings(parse_tf("1/s^2")), DegenerateOnAxis);
  // 1/s is purely imaginary: no crossing, but not degenerate.
  EXPECT_TRUE(real_axis_crossings(parse_tf("1/s")).empty());
}

TEST(RealAxisCrossings, TangencyReportsEvenMultiplicity) {
  // D(jw) = 1 + jw(1 - w^2)^2, so Im G = -w(1 - u)^2/|D|^2 touches zero at w = 1.
  const auto tf = parse_tf("1/(s^5+2s^3+s+1)");
  const auto c = real_axis_crossings(tf);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].multiplicity_hint, 2);
  EXPECT_NEAR(c[0].omega, 1.0, 1e-9);
  EXPECT_NEAR(c[0].real_value, 1.0, 1e-9);
  EXPECT_TRUE(check_crossings(tf).passed) << check_crossings(tf).detail;
}

TEST(RealAxisCrossings, PolesOnTheAxisAreNotCrossings) {
  // Im of 1/(1+s^2)(s+1) vanishes only through the pole at w = 1.
  const auto tf = parse_tf("1/((s^2+1)*(s+1))");
  EXPECT_TRUE(real_axis_crossings(tf).empty());
  ASSERT_EQ(imaginary_axis_poles(tf).size(), 1u);
  EXPECT_NEAR(imaginary_axis_poles(tf)[0], 1.0, 1e-9);
  EXPECT_TRUE(check_crossings(tf).passed) << check_crossings(tf).detail;
}

TEST(Asymptote, Examples) {
  const auto a = asymptote_abscissa(parse_tf(kCase2));
  ASSERT_TRUE(a.has_value());
  EXPECT_EQ(a->kind, Asymptote::Kind::VerticalLine);
  EXPECT_EQ(a->abscissa, Scalar(-872, 81));
  // Sweep oracle: the real part settles on sigma_a.
  for (double w : {1e-5, 1e-6}) EXPECT_NEAR(evaluate(parse_tf(kCase2), w).real(), -872.0 / 81.0, 1e-3);

  const auto b = asymptote_abscissa(parse_tf("1/(s*(1+s))"));
  ASSERT_TRUE(b.has_value());
  EXPECT_EQ(b->abscissa, -1);
  EXPECT_NEAR(evaluate(parse_tf("1/(s*(1+s))"), 1e-6).real(), -1.0, 1e-6);

  EXPECT_FALSE(asymptote_abscissa(parse_tf(kCase1)).has_value());
  EXPECT_FALSE(asymptote_abscissa(parse_tf("1/s^2")).has_value());
  EXPECT_EQ(asymptote_abscissa(parse_tf("-3/(s*(1+s))"))->abscissa, 3);
}

TEST(TangentVectors, Examples) {
  const auto [s1, e1] = tangent_vectors(parse_tf(kCase1));
  EXPECT_EQ(s1.end, Endpoint::Start);
  EXPECT_LT(angle_between(s1.direction, {-1.0, 0.0}), 1.0);
  EXPECT_LT(angle_between(e1.direction, {0.0, 1.0}), 1.0);
  EXPECT_NEAR(std::abs(s1.direction), 1.0, 1e-9);

  const auto [s2, e2] = tangent_vectors(parse_tf("1/(1+s)"));
  EXPECT_LT(angle_between(s2.direction, {0.0, -1.0}), 1.0);
  EXPECT_NEAR(std::abs(e2.direction), 1.0, 1e-9);
}

TEST(Sweep, ConstantFunction) {
  for (const auto& p : sweep(parse_tf("1/1"), 1e-2, 1e2, 10)) {
    EXPECT_EQ(p.value, std::complex<double>(1.0, 0.0));
    EXPECT_EQ(p.phase_unwrapped, 0.0);
  }
}

TEST(Sweep, FirstCaseStudyEndpoints) {
  const auto pts = sweep(parse_tf(kCase1), 1e-3, 1e3, 50);
  ASSERT_GE(pts.size(), 301u);
  EXPECT_LT(std::abs(pts.front().value - std::complex<double>(1.0, 0.0)), 1e-3);
  EXPECT_LT(std::abs(pts.back().value - std::complex<double>(0.5, 0.0)), 1e-2);
  EXPECT_DOUBLE_EQ(pts.front().omega, 1e-3);
  EXPECT_NEAR(pts.back().omega, 1e3, 1e-9);
  for (std::size_t i = 1; i < pts.size(); ++i) EXPECT_LT(pts[i - 1].omega, pts[i].omega);
}

TEST(Sweep, SecondCaseStudyStartsNearMinusHalfPi) {
  const auto tf = parse_tf(kCase2);
  SweepOptions opt;
  opt.anchor_phase = start_phase(tf);
  const auto pts = sweep(tf, 1e-3, 1e3, 50, opt);
  EXPECT_GT(pts.front().modulus, 1e2);
  EXPECT_NEAR(pts.front().phase_unwrapped, -std::numbers::pi / 2, 1e-2);
  // Relative degree 3 ends at -3 pi/2.
  EXPECT_NEAR(pts.back().phase_unwrapped, -3 * std::numbers::pi / 2, 2e-2);
}

TEST(Sweep, RejectsBadArguments) {
  const auto tf = parse_tf(kCase1);
  EXPECT_THROW(sweep(tf, 0.0, 1.0, 10), std::invalid_argument);
  EXPECT_THROW(sweep(tf, 2.0, 1.0, 10), std::invalid_argument);
  EXPECT_THROW(sweep(tf, 1.0, 2.0, 0), std::invalid_argument);
}

TEST(DefaultRange, ScalesWithCoefficients) {
  EXPECT_DOUBLE_EQ(frequency_scale(parse_tf("1/(1+s)")), 1.0);
  EXPECT_NEAR(frequency_scale(parse_tf("1/(100+s)")), 100.0, 1e-9);
  const auto [lo, hi] = default_omega_range(parse_tf("1/(100+s)"));
  EXPECT_NEAR(lo, 0.1, 1e-12);
  EXPECT_NEAR(hi, 1e5, 1e-6);
}

TEST(GlobalProperty, CrossingCompleteness) {
  RandomCorpus corpus(51, CorpusOptions{.max_degree = 6, .min_origin_poles = -2, .max_origin_poles = 2, .random_gain = true});
  int with_crossings = 0;
  for (int i = 0; i < 100; ++i) {
    const auto tf = corpus.next();
    if (crossing_polynomial(tf).is_zero()) continue;
    const auto r = check_crossings(tf);
    EXPECT_TRUE(r.passed) << tf << ": " << r.detail;
    with_crossings += real_axis_crossings(tf).empty() ? 0 : 1;
  }
  EXPECT_GT(with_crossings, 20);
}

TEST(GlobalProperty, AsymptoteConsistency) {
  RandomCorpus corpus(52, CorpusOptions{.min_origin_poles = 1, .max_origin_poles = 1, .random_gain = true});
  for (int i = 0; i < 50; ++i) {
    const auto tf = corpus.next();
    const auto r = check_asymptote(tf);
    EXPECT_TRUE(r.passed && !r.skipped) << tf << ": " << r.detail;
  }
}

TEST(GlobalProperty, SweepPhaseIsContinuous) {
  RandomCorpus corpus(53, CorpusOptions{.max_degree = 6, .min_origin_poles = -1, .max_origin_poles = 2});
  for (int i = 0; i < 50; ++i) {
    const auto tf = corpus.next();
    const auto [lo, hi] = default_omega_range(tf);
    const auto pts = sweep(tf, lo, hi, 20);
    for (std::size_t k = 1; k < pts.size(); ++k) {
      ASSERT_LT(std::abs(pts[k].phase_unwrapped - pts[k - 1].phase_unwrapped), std::numbers::pi) << tf;
      ASSERT_NEAR(std::remainder(pts[k].phase_unwrapped - std::arg(pts[k].value), 2 * std::numbers::pi), 0.0, 1e-9);
    }
  }
}

TEST(GlobalProperty, SweepEndpointConvergence) {
  RandomCorpus corpus(54, CorpusOptions{.max_degree = 5, .min_origin_poles = -1, .max_origin_poles = 1, .random_gain = true});
  for (int i = 0; i < 100; ++i) {
    const auto tf = corpus.next();
    const double scale = frequency_scale(tf);
    const auto pts = sweep(tf, 1e-6 * scale, 1e6 * scale, 2);
    const auto [start, end] = endpoints(tf);
    auto expect_kind = [&](const EndpointSummary& e, const SweepSample& p) {
      switch (e.modulus_kind) {
        case ModulusKind::Finite:
          EXPECT_NEAR(p.modulus, to_double(*e.modulus), 1e-3 * to_double(*e.modulus)) << tf;
          break;
        case ModulusKind::Zero:
          EXPECT_LT(p.modulus, 1e-3) << tf;
          break;
        case ModulusKind::Infinite:
          EXPECT_GT(p.modulus, 1e3) << tf;
          break;
      }
    };
    expect_kind(start, pts.front());
    expect_kind(end, pts.back());
  }
}

// The tangent at the start lies along the direction predicted by the
// classification when the endpoint is finite.
TEST(GlobalProperty, TangentMatchesClassification) {
  RandomCorpus corpus(55, CorpusOptions{.max_degree = 6, .random_gain = true});
  int compared = 0;
  for (int i = 0; i < 200; ++i) {
    const auto tf = i % 2 == 0 ? corpus.next() : corpus.next_with_vanishing_g1();
    const double scale = frequency_scale(tf);
    TangentOptions opt;
    opt.start_omega = 1e-6 * scale;
    opt.end_omega = 1e6 * scale;
    const auto [start, end] = tangent_vectors(tf, opt);
    const auto ps = predicted_tangent(classify_exit(tf), tf);
    if (ps) {
      EXPECT_LT(angle_between(start.direction, *ps), 5.0) << tf;
      ++compared;
    }
    const auto pe = predicted_tangent(classify_entry(tf), tf);
    if (pe) EXPECT_LT(angle_between(end.direction, *pe), 5.0) << tf << " (end)";
  }
  EXPECT_GT(compared, 150);
}

}  // namespace
}  // namespace nyq
