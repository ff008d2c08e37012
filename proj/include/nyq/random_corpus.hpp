#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "nyq/polynomial.hpp"
#include "nyq/transfer_function.hpp"

namespace nyq {

struct CorpusOptions {
  int max_degree = 8;
  /// Coefficients are p/q with q in [1, max_denominator] and |p/q| <= bound.
  long coefficient_bound = 10;
  long max_denominator = 4;
  int min_origin_poles = 0;
  int max_origin_poles = 0;
  bool random_gain = false;
};

/// Seeded generator of transfer functions with nonzero a0, b0, a_m, b_n.
class RandomCorpus {
 public:
  explicit RandomCorpus(std::uint64_t seed, CorpusOptions opt = {}) : rng_(seed), opt_(opt) {}

  Scalar coefficient(bool nonzero) {
    std::uniform_int_distribution<long> den_dist(1, opt_.max_denominator);
    for (;;) {
      const long q = den_dist(rng_);
      std::uniform_int_distribution<long> num_dist(-opt_.coefficient_bound * q, opt_.coefficient_bound * q);
      Scalar c(num_dist(rng_), q);
      c.canonicalize();
      if (!nonzero || c != 0) return c;
    }
  }

  Polynomial polynomial(int degree) {
    std::vector<Scalar> c(static_cast<std::size_t>(degree) + 1);
    for (int i = 0; i <= degree; ++i) c[static_cast<std::size_t>(i)] = coefficient(i == 0 || i == degree);
    return Polynomial(std::move(c));
  }

  TransferFunction next() {
    std::uniform_int_distribution<int> deg(0, opt_.max_degree);
    std::uniform_int_distribution<int> poles(opt_.min_origin_poles, opt_.max_origin_poles);
    const int h = poles(rng_);
    Scalar gain = opt_.random_gain ? coefficient(true) : Scalar(1);
    auto num = polynomial(deg(rng_));
    auto den = polynomial(deg(rng_));
    return TransferFunction(gain, h, std::move(num), std::move(den));
  }

  /// A transfer function whose first odd Taylor coefficient G1 vanishes,
  /// obtained by choosing a1 = a0 b1 / b0. Degrees are at least 2.
  TransferFunction next_with_vanishing_g1() {
    std::uniform_int_distribution<int> deg(2, std::max(2, opt_.max_degree));
    std::uniform_int_distribution<int> poles(opt_.min_origin_poles, opt_.max_origin_poles);
    const int h = poles(rng_);
    for (;;) {
      auto num = polynomial(deg(rng_));
      auto den = polynomial(deg(rng_));
      std::vector<Scalar> a(num.coeffs().begin(), num.coeffs().end());
      a[1] = a[0] * den.coeff(1) / den.coeff(0);
      Polynomial planted(std::move(a));
      if (planted.degree() != num.degree()) continue;
      return TransferFunction(opt_.random_gain ? coefficient(true) : Scalar(1), h, std::move(planted), std::move(den));
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  CorpusOptions opt_;
};

}  // namespace nyq
