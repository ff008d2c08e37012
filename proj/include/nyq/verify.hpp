#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "nyq/classifier.hpp"
#include "nyq/global_features.hpp"
#include "nyq/parser.hpp"
#include "nyq/random_corpus.hpp"
#include "nyq/taylor.hpp"

// Oracle checks shared by the `verify` command and the acceptance suite.
// Each check compares an exact result against an independent computation:
// power-series division for the recursions, floating evaluation for the
// sign theorems, sweeps for crossings and the asymptote.

namespace nyq {

struct CheckResult {
  std::string name;
  bool passed = true;
  bool skipped = false;
  std::string detail;
};

struct VerifyOptions {
  std::size_t taylor_order = 12;
  double low_omega = 1e-4;
  double high_omega = 1e4;
  /// Offsets predicted below this magnitude are in floating noise.
  double noise_floor = 1e-12;
  double crossing_lo = 1e-4;
  double crossing_hi = 1e4;
  int crossing_points_per_decade = 200;
  /// Test hook: perturbs the Delta table before the consistency check.
  bool corrupt_delta_table = false;
};

namespace detail {

inline CheckResult fail(CheckResult r, const std::string& why) {
  r.passed = false;
  r.detail = why;
  return r;
}

inline std::complex<double> limit_term(const TransferFunction& tf, double w, Endpoint end) {
  const std::complex<double> jw(0.0, w);
  if (end == Endpoint::Start) return to_double(tf.gain() * tf.g0()) * std::pow(jw, -tf.origin_poles());
  return to_double(tf.gain() * tf.g_inf()) * std::pow(jw, -tf.relative_degree());
}

}  // namespace detail

/// g_all and g_odd against series division, exactly, for k <= order.
inline CheckResult check_taylor_equivalence(const TransferFunction& tf, std::size_t order) {
  CheckResult r{"taylor_equivalence"};
  const auto oracle = taylor_oracle(tf, order);
  const auto full = taylor_full(tf, order);
  const auto odd = taylor_odd(tf, order);
  for (std::size_t k = 0; k <= order; ++k) {
    if (full.at(k) != oracle.at(k)) return detail::fail(r, "g_all differs at k=" + std::to_string(k));
    if (k % 2 == 1 && odd.at(k) != oracle.at(k)) return detail::fail(r, "g_odd differs at k=" + std::to_string(k));
  }
  return r;
}

/// Delta_tau_k G0 (-1)^floor(k/2) = G_k, and the closed form at the first
/// nonzero odd index.
inline CheckResult check_delta_consistency(const TransferFunction& tf, const VerifyOptions& opt = {}) {
  CheckResult r{"delta_consistency"};
  auto s = delta_tau_series(tf, opt.taylor_order);
  if (opt.corrupt_delta_table) s.values[1] += 1;
  const auto oracle = taylor_oracle(tf, opt.taylor_order);
  for (std::size_t k = 1; k <= opt.taylor_order; ++k) {
    if (s.at(k) * oracle.at(0) * alternating(static_cast<long>(k / 2)) != oracle.at(k))
      return detail::fail(r, "Delta_tau differs from the series at k=" + std::to_string(k));
  }
  if (s.first_nonzero_odd && delta_tau_via_nabla(tf, static_cast<long>(*s.first_nonzero_odd)) != s.at(*s.first_nonzero_odd))
    return detail::fail(r, "closed form differs at k=" + std::to_string(*s.first_nonzero_odd));
  return r;
}

/// Closed form of the first nonzero odd Delta parameter; skipped when the
/// series is degenerate.
inline CheckResult check_closed_form(const TransferFunction& tf) {
  CheckResult r{"closed_form"};
  const auto s = delta_tau_series(tf);
  if (!s.first_nonzero_odd) {
    r.skipped = true;
    return r;
  }
  for (std::size_t k = 1; k <= *s.first_nonzero_odd; k += 2) {
    if (delta_tau_via_nabla(tf, static_cast<long>(k)) != s.at(k))
      return detail::fail(r, "mismatch at k=" + std::to_string(k));
  }
  return r;
}

/// Sign of the phase offset arg(Gbar / limit term) at a low and a high
/// frequency against sign(Delta_tau_k) and sign(-Delta~_tau_k).
inline CheckResult check_phase_signs(const TransferFunction& tf, const VerifyOptions& opt = {}) {
  CheckResult r{"phase_sign"};
  int compared = 0;
  auto one = [&](const EndpointBehavior& b, double w, double factor) -> bool {
    if (!b.delta_k) return true;
    const double exponent = b.end == Endpoint::Start ? static_cast<double>(*b.k_odd) : -static_cast<double>(*b.k_odd);
    const double predicted = factor * to_double(*b.delta_k) * std::pow(w, exponent);
    if (std::abs(predicted) < opt.noise_floor) return true;
    ++compared;
    const double measured = std::arg(evaluate(tf, w) / detail::limit_term(tf, w, b.end));
    return (measured > 0) == (predicted > 0);
  };
  if (!one(classify_exit(tf), opt.low_omega, 1.0)) return detail::fail(r, "start phase sign");
  if (!one(classify_entry(tf), opt.high_omega, -1.0)) return detail::fail(r, "end phase sign");
  r.skipped = compared == 0;
  return r;
}

/// Modulus trend against |Gbar / limit term| - 1, only where the even part
/// dominates the modulus deviation (2 k_odd > h_even).
inline CheckResult check_modulus_trend(const TransferFunction& tf, const VerifyOptions& opt = {}) {
  CheckResult r{"modulus_trend"};
  int compared = 0;
  auto one = [&](const EndpointBehavior& b, double w) -> bool {
    if (!b.delta_h || !b.k_odd || b.modulus_borderline || b.degenerate_modulus) return true;
    const double exponent = b.end == Endpoint::Start ? static_cast<double>(*b.h_even) : -static_cast<double>(*b.h_even);
    const double predicted = to_double(*b.delta_h) * std::pow(w, exponent);
    if (std::abs(predicted) < opt.noise_floor) return true;
    ++compared;
    const double measured = std::abs(evaluate(tf, w) / detail::limit_term(tf, w, b.end)) - 1.0;
    const auto expected = predicted > 0 ? ModulusTrend::Increasing : ModulusTrend::Decreasing;
    return (measured > 0) == (predicted > 0) && b.modulus_trend == expected;
  };
  if (!one(classify_exit(tf), opt.low_omega)) return detail::fail(r, "start modulus trend");
  if (!one(classify_entry(tf), opt.high_omega)) return detail::fail(r, "end modulus trend");
  r.skipped = compared == 0;
  return r;
}

inline CheckResult check_duality(const TransferFunction& tf) {
  CheckResult r{"duality"};
  if (!(dualize(dualize(tf)) == tf)) return detail::fail(r, "dualize is not an involution");
  if (!(classify_entry(tf) == as_entry(classify_exit(dualize(tf)))))
    return detail::fail(r, "entry differs from the adjusted exit of the dual");
  return r;
}

/// |Re Gbar(j w) - sigma_a| < 1e-3 max(1, |sigma_a|) at w = 1e-6 for h = 1.
inline CheckResult check_asymptote(const TransferFunction& tf, double omega = 1e-6) {
  CheckResult r{"asymptote"};
  const auto a = asymptote_abscissa(tf);
  if (!a) {
    r.skipped = true;
    return r;
  }
  const double sigma = to_double(a->abscissa);
  const double re = evaluate(tf, omega).real();
  if (std::abs(re - sigma) >= 1e-3 * std::max(1.0, std::abs(sigma))) {
    std::ostringstream os;
    os << "Re Gbar = " << re << ", sigma_a = " << sigma;
    return detail::fail(r, os.str());
  }
  return r;
}

/// Every sign change of Im Gbar on a log grid is bracketed by exactly one
/// reported crossing of odd multiplicity (or by a pole on the imaginary
/// axis, where Im Gbar changes sign through infinity), and every reported crossing is
/// confirmed locally: a sign change across its isolating interval for odd
/// multiplicity, tangency (no change, small |Im|) for even multiplicity.
inline CheckResult check_crossings(const TransferFunction& tf, const VerifyOptions& opt = {}) {
  CheckResult r{"crossings"};
  if (crossing_polynomial(tf).is_zero()) {
    r.skipped = true;
    r.detail = "imaginary part vanishes identically";
    return r;
  }
  const auto crossings = real_axis_crossings(tf);
  const auto poles = imaginary_axis_poles(tf);
  auto im_sign = [&](double w) {
    const double v = evaluate(tf, w).imag();
    return v > 0 ? 1 : v < 0 ? -1 : 0;
  };

  const double decades = std::log10(opt.crossing_hi / opt.crossing_lo);
  const auto steps = static_cast<long>(std::ceil(decades * opt.crossing_points_per_decade));
  double prev_w = 0.0;
  int prev_sign = 0;
  for (long i = 0; i <= steps; ++i) {
    const double w = opt.crossing_lo * std::pow(10.0, decades * static_cast<double>(i) / static_cast<double>(steps));
    const int sg = im_sign(w);
    if (sg == 0) continue;
    if (prev_sign != 0 && sg != prev_sign) {
      int inside = 0;
      for (const auto& c : crossings)
        if (c.multiplicity_hint % 2 == 1 && c.omega >= prev_w && c.omega <= w) ++inside;
      int pole_inside = 0;
      for (double p : poles)
        if (p >= prev_w && p <= w) ++pole_inside;
      if (inside != 1 && !(inside == 0 && pole_inside > 0)) {
        std::ostringstream os;
        os << "sign change in [" << prev_w << ", " << w << "] bracketed by " << inside << " crossings";
        return detail::fail(r, os.str());
      }
    }
    prev_w = w;
    prev_sign = sg;
  }

  for (const auto& c : crossings) {
    const double mag = std::abs(evaluate(tf, c.omega));
    const double im = evaluate(tf, c.omega).imag();
    if (c.multiplicity_hint % 2 == 1) {
      // Just outside the isolating interval.
      const double lo = std::sqrt(to_double(c.interval.lo)) * (1 - 1e-6);
      const double hi = std::sqrt(to_double(c.interval.hi)) * (1 + 1e-6);
      if (im_sign(lo) * im_sign(hi) >= 0) {
        std::ostringstream os;
        os << "no local sign change at w = " << c.omega;
        return detail::fail(r, os.str());
      }
    } else if (std::abs(im) >= 1e-9 * std::max(1.0, mag)) {
      std::ostringstream os;
      os << "tangency not confirmed at w = " << c.omega;
      return detail::fail(r, os.str());
    }
    if (std::abs(im) >= 1e-9 * std::max(1.0, mag)) {
      std::ostringstream os;
      os << "|Im| = " << std::abs(im) << " at reported w = " << c.omega;
      return detail::fail(r, os.str());
    }
  }
  return r;
}

inline std::vector<CheckResult> run_checks(const TransferFunction& tf, const VerifyOptions& opt = {}) {
  return {check_taylor_equivalence(tf, opt.taylor_order),
          check_delta_consistency(tf, opt),
          check_closed_form(tf),
          check_phase_signs(tf, opt),
          check_modulus_trend(tf, opt),
          check_duality(tf),
          check_asymptote(tf),
          check_crossings(tf, opt)};
}

struct TrialFailure {
  std::string tf;
  CheckResult check;
};

/// Runs every check on `trials` transfer functions from a seeded corpus
/// mixing generic draws, planted G1 = 0 draws, and origin poles.
inline std::vector<TrialFailure> random_trials(int trials, std::uint64_t seed, const VerifyOptions& opt = {}) {
  RandomCorpus corpus(seed, CorpusOptions{.max_degree = 6, .min_origin_poles = -1, .max_origin_poles = 2, .random_gain = true});
  std::vector<TrialFailure> failures;
  for (int i = 0; i < trials; ++i) {
    const auto tf = i % 3 == 2 ? corpus.next_with_vanishing_g1() : corpus.next();
    for (auto& c : run_checks(tf, opt))
      if (!c.passed) failures.push_back({format_tf(tf), std::move(c)});
  }
  return failures;
}

}  // namespace nyq
