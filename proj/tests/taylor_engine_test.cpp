#include <gtest/gtest.h>

#include "nyq/parser.hpp"
#include "nyq/random_corpus.hpp"
#include "nyq/taylor.hpp"

namespace nyq {
namespace {

const TransferFunction& case1() {
  static const auto tf = parse_tf("(2s^3+6s^2+2s+1)/(4s^3+5s^2+2s+1)");
  return tf;
}

const TransferFunction& case2() {
  static const auto tf = parse_tf("(s^2+12s+35)/(s*(s^4+12s^3+30s^2+28s+9))");
  return tf;
}

TEST(DeltaIj, Examples) {
  EXPECT_EQ(delta_ij(case1(), 1, 0), 0);
  EXPECT_EQ(delta_ij(case1(), 3, 0), -2);
  EXPECT_EQ(delta_ij(case1(), 2, 1), 2);
  EXPECT_EQ(delta_ij(case1(), 2, 2), 0);
  // Zero extension past the degrees.
  EXPECT_EQ(delta_ij(case1(), 7, 0), 0);
}

TEST(NablaK, Examples) {
  EXPECT_EQ(nabla_k(case1(), 1), 0);
  EXPECT_EQ(nabla_k(case1(), 3), -4);
  EXPECT_EQ(nabla_k(case2(), 1), -872);
  EXPECT_THROW(nabla_k(case1(), 2), OddIndexRequired);
  EXPECT_THROW(nabla_k(case1(), 0), OddIndexRequired);
}

TEST(BPoly, Examples) {
  EXPECT_EQ(b_poly(case1(), 1), -6);
  EXPECT_EQ(b_poly(case1(), 2), 9);
  EXPECT_EQ(b_poly(parse_tf("(s+1)/3"), 1), 0);
  EXPECT_THROW(b_poly(case1(), 0), std::invalid_argument);
}

TEST(GOdd, Examples) {
  EXPECT_EQ(g_odd(case1(), 1), 0);
  EXPECT_EQ(g_odd(case1(), 3), -4);
  EXPECT_EQ(g_odd(parse_tf("1/(1+s)"), 3), -1);
  EXPECT_THROW(g_odd(case1(), 4), OddIndexRequired);
}

TEST(GAll, Examples) {
  EXPECT_EQ(g_all(case1(), 0), 1);
  EXPECT_EQ(g_all(case1(), 2), 1);
  EXPECT_EQ(g_all(case2(), 1), Scalar(-872, 81));
}

// Values frozen from an independent symbolic series expansion.
TEST(TaylorTables, MatchSymbolicExpansion) {
  const std::vector<Scalar> c1{1, 0, 1, -4, 3, 10, -19, -24, 103, -10};
  const auto full = taylor_full(case1(), 9);
  for (std::size_t k = 0; k < c1.size(); ++k) EXPECT_EQ(full.at(k), c1[k]) << k;
  const auto odd = taylor_odd(case1(), 9);
  for (std::size_t k = 1; k < c1.size(); k += 2) EXPECT_EQ(odd.at(k), c1[k]) << k;
  EXPECT_FALSE(odd.g[2].has_value());
  EXPECT_EQ(odd.source, TaylorSource::OddRecursion);
}

TEST(DeltaTauSeries, FirstCaseStudy) {
  const auto s = delta_tau_series(case1());
  EXPECT_EQ(s.at(1), 0);
  EXPECT_EQ(s.at(2), -1);
  EXPECT_EQ(s.at(3), 4);
  EXPECT_EQ(s.first_nonzero_odd, 3u);
  EXPECT_EQ(s.first_nonzero_even, 2u);
  EXPECT_FALSE(s.degenerate_imag);
  EXPECT_FALSE(s.degenerate_modulus);
  EXPECT_EQ(s.order(), default_truncation_order(case1()));
  EXPECT_EQ(s.order(), 7u);
}

TEST(DeltaTauSeries, DualFirstCaseStudy) {
  const auto s = delta_tau_series(dualize(case1()));
  EXPECT_EQ(s.at(1), Scalar(7, 4));
  EXPECT_EQ(s.at(2), Scalar(27, 16));
  EXPECT_EQ(s.first_nonzero_odd, 1u);
  EXPECT_EQ(s.first_nonzero_even, 2u);
}

TEST(DeltaTauSeries, SecondCaseStudyAndDual) {
  const auto s = delta_tau_series(case2());
  EXPECT_EQ(s.at(1), Scalar(-872, 315));
  const auto d = delta_tau_series(dualize(case2()));
  EXPECT_EQ(d.at(1), 0);
  EXPECT_EQ(d.at(2), -5);
  EXPECT_EQ(d.at(3), 88);
  EXPECT_EQ(d.first_nonzero_odd, 3u);
}

TEST(DeltaTauSeries, EvenFunctionIsDegenerate) {
  const auto s = delta_tau_series(parse_tf("(1+s^2)/(2+s^2)"));
  EXPECT_TRUE(s.degenerate_imag);
  EXPECT_FALSE(s.first_nonzero_odd.has_value());
  EXPECT_EQ(s.first_nonzero_even, 2u);
}

TEST(DeltaTauSeries, AllPassHasConstantModulus) {
  const auto s = delta_tau_series(parse_tf("(1-s)/(1+s)"));
  EXPECT_TRUE(s.degenerate_modulus);
  EXPECT_EQ(s.at(2), -2);
}

TEST(DeltaTauViaNabla, Examples) {
  EXPECT_EQ(delta_tau_via_nabla(case1(), 3), 4);
  EXPECT_EQ(delta_tau_via_nabla(case1(), 1), 0);
  EXPECT_EQ(delta_tau_via_nabla(case2(), 1), Scalar(-872, 315));
  EXPECT_THROW(delta_tau_via_nabla(case2(), 3), HypothesisViolated);
  EXPECT_EQ(delta_tau_via_nabla(dualize(case2()), 3), 88);
}

TEST(DeltaTable, AntisymmetryAndEntries) {
  const auto t = delta_table(case1(), 4);
  for (std::size_t i = 0; i <= 4; ++i) {
    EXPECT_EQ(t.delta_ij.at({i, i}), 0);
    for (std::size_t j = 0; j <= 4; ++j) EXPECT_EQ(t.delta_ij.at({i, j}), -t.delta_ij.at({j, i}));
  }
  EXPECT_EQ(t.nabla.at(3), -4);
  EXPECT_EQ(t.bpoly.at(2), 9);
}

class TaylorProperty : public ::testing::Test {
 protected:
  RandomCorpus corpus{31};
};

TEST_F(TaylorProperty, TripleEquivalence) {
  for (int trial = 0; trial < 150; ++trial) {
    const auto tf = corpus.next();
    const auto oracle = taylor_oracle(tf, 12);
    const auto full = taylor_full(tf, 12);
    const auto odd = taylor_odd(tf, 12);
    for (std::size_t k = 0; k <= 12; ++k) {
      ASSERT_EQ(full.at(k), oracle.at(k)) << tf << " k=" << k;
      if (k % 2 == 1) ASSERT_EQ(odd.at(k), oracle.at(k)) << tf << " k=" << k;
    }
  }
}

TEST_F(TaylorProperty, DefinitionAndClosedFormConsistency) {
  for (int trial = 0; trial < 150; ++trial) {
    const auto tf = trial % 2 == 0 ? corpus.next() : corpus.next_with_vanishing_g1();
    const auto s = delta_tau_series(tf, 12);
    for (std::size_t k = 1; k <= 12; ++k)
      ASSERT_EQ(s.at(k) * s.taylor.at(0) * alternating(static_cast<long>(k / 2)), s.taylor.at(k));
    if (s.first_nonzero_odd) {
      const long k = static_cast<long>(*s.first_nonzero_odd);
      ASSERT_EQ(delta_tau_via_nabla(tf, k), s.at(*s.first_nonzero_odd)) << tf;
    }
  }
}

TEST_F(TaylorProperty, DegeneracySoundness) {
  for (int trial = 0; trial < 150; ++trial) {
    const auto tf = corpus.next();
    const auto s = delta_tau_series(tf);
    if (s.degenerate_imag) {
      for (std::size_t k = 1; k <= s.order(); k += 2) ASSERT_EQ(s.at(k), 0);
    } else {
      ASSERT_TRUE(s.first_nonzero_odd.has_value()) << tf;
      ASSERT_LE(*s.first_nonzero_odd, static_cast<std::size_t>(tf.m() + tf.n()));
    }
  }
  // Products of even polynomials are the structural degenerate family.
  RandomCorpus even(32, CorpusOptions{.max_degree = 3});
  for (int trial = 0; trial < 40; ++trial) {
    auto sq = [](const Polynomial& p) {
      std::vector<Scalar> c(2 * p.size());
      for (std::size_t i = 0; i < p.size(); ++i) c[2 * i] = p.coeff(i);
      return Polynomial(std::move(c));
    };
    const TransferFunction tf(sq(even.polynomial(3)), sq(even.polynomial(2)));
    const auto s = delta_tau_series(tf, 12);
    ASSERT_TRUE(s.degenerate_imag);
    for (std::size_t k = 1; k <= 12; k += 2) ASSERT_EQ(s.at(k), 0);
  }
}

TEST_F(TaylorProperty, Antisymmetry) {
  for (int trial = 0; trial < 50; ++trial) {
    const auto tf = corpus.next();
    const auto top = static_cast<std::size_t>(std::max(tf.m(), tf.n()) + 1);
    for (std::size_t i = 0; i <= top; ++i)
      for (std::size_t j = 0; j <= top; ++j) ASSERT_EQ(delta_ij(tf, i, j), -delta_ij(tf, j, i));
  }
}

}  // namespace
}  // namespace nyq
