#pragma once

#include <optional>
#include <utility>

#include "nyq/errors.hpp"
#include "nyq/polynomial.hpp"
#include "nyq/scalar.hpp"

namespace nyq {

/// Gbar(s) = K / s^h * N(s) / D(s) with N(0), D(0), and the leading
/// coefficients of N and D all nonzero. Negative h means zeros at the origin.
///
/// Construction normalizes: common powers of s move into h, and a constant
/// numerator or denominator folds into K. Non-monomial common factors of N
/// and D are kept as given.
class TransferFunction {
 public:
  TransferFunction(Scalar gain, int origin_poles, Polynomial num, Polynomial den)
      : gain_(std::move(gain)), origin_poles_(origin_poles), num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw ZeroDenominator();
    if (num_.is_zero() || gain_ == 0) throw ZeroNumerator();
    const auto pn = num_.lowest_power();
    const auto pd = den_.lowest_power();
    num_ = num_.divided_by_s_power(pn);
    den_ = den_.divided_by_s_power(pd);
    origin_poles_ += static_cast<int>(pd) - static_cast<int>(pn);
    if (num_.degree() == 0) {
      gain_ *= num_.coeff(0);
      num_ = Polynomial{Scalar(1)};
    }
    if (den_.degree() == 0) {
      gain_ /= den_.coeff(0);
      den_ = Polynomial{Scalar(1)};
    }
  }

  /// G(s) = N(s)/D(s) with unit gain and no origin poles.
  TransferFunction(Polynomial num, Polynomial den) : TransferFunction(Scalar(1), 0, std::move(num), std::move(den)) {}

  [[nodiscard]] const Scalar& gain() const noexcept { return gain_; }
  [[nodiscard]] int origin_poles() const noexcept { return origin_poles_; }
  [[nodiscard]] const Polynomial& num() const noexcept { return num_; }
  [[nodiscard]] const Polynomial& den() const noexcept { return den_; }
  [[nodiscard]] int m() const noexcept { return num_.degree(); }
  [[nodiscard]] int n() const noexcept { return den_.degree(); }
  [[nodiscard]] int relative_degree() const noexcept { return origin_poles_ + n() - m(); }

  /// a0 / b0
  [[nodiscard]] Scalar g0() const { return num_.coeff(0) / den_.coeff(0); }
  /// a_m / b_n
  [[nodiscard]] Scalar g_inf() const { return num_.leading() / den_.leading(); }

  /// The G(s) factor alone (K = 1, h = 0).
  [[nodiscard]] TransferFunction core() const { return TransferFunction(num_, den_); }

  friend bool operator==(const TransferFunction&, const TransferFunction&) = default;

 private:
  Scalar gain_;
  int origin_poles_;
  Polynomial num_;
  Polynomial den_;
};

/// Substitutes s = 1/s~: Gbar(s) = K s~^r G~(s~) with the coefficient
/// sequences of N and D reversed. The result is again a TransferFunction in
/// s~ whose origin-pole count is -r, so its low-frequency machinery describes
/// the original at s -> infinity. Dualizing twice restores the input.
inline TransferFunction dualize(const TransferFunction& tf) {
  return TransferFunction(tf.gain(), -tf.relative_degree(), tf.num().reversed(), tf.den().reversed());
}

enum class Endpoint { Start, End };

enum class ModulusKind { Zero, Finite, Infinite };

/// Limit point of the Nyquist curve at w -> 0+ (Start) or w -> inf (End).
/// Phases are rational multiples of pi and are not reduced modulo 2.
struct EndpointSummary {
  Endpoint which_end = Endpoint::Start;
  ModulusKind modulus_kind = ModulusKind::Finite;
  std::optional<Scalar> modulus;  // set iff modulus_kind == Finite
  Scalar phase_over_pi;
  Scalar g_value;

  friend bool operator==(const EndpointSummary&, const EndpointSummary&) = default;
};

namespace detail {

inline Scalar arg_over_pi(const Scalar& x) { return x < 0 ? Scalar(1) : Scalar(0); }

inline EndpointSummary make_endpoint(Endpoint which, const TransferFunction& tf, int exponent, const Scalar& g) {
  EndpointSummary e;
  e.which_end = which;
  e.g_value = g;
  e.phase_over_pi = arg_over_pi(tf.gain()) - Scalar(exponent, 2) + arg_over_pi(g);
  e.phase_over_pi.canonicalize();
  // Start diverges for h > 0; End vanishes for r > 0.
  const int s = which == Endpoint::Start ? exponent : -exponent;
  if (s == 0) {
    e.modulus_kind = ModulusKind::Finite;
    e.modulus = Scalar(abs(tf.gain()) * abs(g));
  } else {
    e.modulus_kind = s > 0 ? ModulusKind::Infinite : ModulusKind::Zero;
  }
  return e;
}

}  // namespace detail

inline std::pair<EndpointSummary, EndpointSummary> endpoints(const TransferFunction& tf) {
  return {detail::make_endpoint(Endpoint::Start, tf, tf.origin_poles(), tf.g0()),
          detail::make_endpoint(Endpoint::End, tf, tf.relative_degree(), tf.g_inf())};
}

/// Number of quarter turns, in [0, 4), equal to phase_over_pi * 2 mod 4.
/// Endpoint phases are always multiples of pi/2.
inline int quarter_turns(const Scalar& phase_over_pi) {
  Scalar twice = phase_over_pi * 2;
  mpz_class q = twice.get_num() / twice.get_den();
  long v = q.get_si() % 4;
  return static_cast<int>(v < 0 ? v + 4 : v);
}

}  // namespace nyq
