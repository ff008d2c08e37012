#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "nyq/errors.hpp"
#include "nyq/polynomial.hpp"
#include "nyq/real_roots.hpp"
#include "nyq/transfer_function.hpp"

namespace nyq {

namespace detail {

/// j^n for integer n, exactly.
inline std::complex<double> j_power(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace detail

/// Gbar(jw) in floating point. The origin-pole factor is applied as an exact
/// quarter turn times w^-h.
inline std::complex<double> evaluate(const TransferFunction& tf, double omega) {
  const std::complex<double> s(0.0, omega);
  const auto ratio = poly_eval_complex(tf.num(), s) / poly_eval_complex(tf.den(), s);
  const int h = tf.origin_poles();
  return to_double(tf.gain()) * std::pow(omega, -h) * detail::j_power(-h) * ratio;
}

/// G(jw) of the core factor only.
inline std::complex<double> evaluate_core(const TransferFunction& tf, double omega) {
  const std::complex<double> s(0.0, omega);
  return poly_eval_complex(tf.num(), s) / poly_eval_complex(tf.den(), s);
}

struct AxisCrossing {
  double omega = 0.0;
  double real_value = 0.0;
  int multiplicity_hint = 1;
  /// Isolating interval in u = w^2.
  RootInterval interval;
};

/// Q(u) with sign(Im Gbar(jw)) = sign(Q(w^2)) for every w > 0.
///
/// With N(jw) conj(D(jw)) = R(u) + j w I(u), Gbar(jw) |D|^2 w^h equals
/// K j^-h (R + j w I); the quarter turn j^-h picks which of R and I carries
/// the imaginary part of Gbar.
inline Polynomial crossing_polynomial(const TransferFunction& tf) {
  const int quarter = ((-tf.origin_poles() % 4) + 4) % 4;
  const bool use_real = quarter % 2 == 1;
  const Polynomial base =
      use_real ? real_part_polynomial(tf.num(), tf.den()) : imag_part_polynomial(tf.num(), tf.den());
  // j^0: +K I, j^1: +K R, j^2: -K I, j^3: -K R
  const int orient = quarter < 2 ? 1 : -1;
  return poly_scale(base, Scalar(tf.gain() * orient));
}

/// Positive frequencies of poles on the imaginary axis, where Gbar(jw)
/// diverges and Im Gbar may change sign without crossing the real axis.
inline std::vector<double> imaginary_axis_poles(const TransferFunction& tf, double u_width = 1e-12) {
  std::vector<double> out;
  for (const auto& iv : positive_real_roots(squared_modulus_polynomial(tf.den()), Scalar(u_width)))
    out.push_back(std::sqrt(iv.midpoint()));
  return out;
}

/// Q(u) with the factors shared with |D(jw)|^2 removed. Those roots come
/// from poles on the imaginary axis, not from crossings.
inline Polynomial reduced_crossing_polynomial(const TransferFunction& tf) {
  Polynomial q = crossing_polynomial(tf);
  if (q.is_zero()) return q;
  const Polynomial d2 = squared_modulus_polynomial(tf.den());
  for (;;) {
    const Polynomial g = poly_gcd(q, d2);
    if (g.degree() < 1) return q;
    q = poly_divmod(q, g).first;
  }
}

/// Positive frequencies where Gbar(jw) is real, ascending in w. Roots of the
/// exact crossing polynomial are isolated to u-intervals of width below
/// `u_width` (relative below u = 1).
inline std::vector<AxisCrossing> real_axis_crossings(const TransferFunction& tf, double u_width = 1e-12) {
  const auto q = reduced_crossing_polynomial(tf);
  if (q.is_zero()) throw DegenerateOnAxis();
  std::vector<AxisCrossing> out;
  for (const auto& iv : positive_real_roots(q, Scalar(u_width))) {
    AxisCrossing c;
    c.interval = iv;
    c.omega = std::sqrt(iv.midpoint());
    c.real_value = evaluate(tf, c.omega).real();
    c.multiplicity_hint = iv.multiplicity;
    out.push_back(c);
  }
  return out;
}

struct Asymptote {
  enum class Kind { VerticalLine };
  Kind kind = Kind::VerticalLine;
  Scalar abscissa;

  friend bool operator==(const Asymptote&, const Asymptote&) = default;
};

/// For one pole at the origin, Gbar(jw) = K/(jw) (G0 + G1 jw + O(w^2)), so
/// Re Gbar -> K G1 while Im Gbar diverges. Only h = 1 is handled.
inline std::optional<Asymptote> asymptote_abscissa(const TransferFunction& tf) {
  if (tf.origin_poles() != 1) return std::nullopt;
  const auto series = series_div(tf.num(), tf.den(), 1);
  return Asymptote{Asymptote::Kind::VerticalLine, Scalar(tf.gain() * series.coeffs[1])};
}

struct TangentVector {
  Endpoint end = Endpoint::Start;
  std::complex<double> direction;
};

struct TangentOptions {
  double start_omega = 1e-6;
  double end_omega = 1e6;
  /// Half-width of the central difference relative to omega.
  double relative_step = 0.25;
};

/// dGbar/dw by central differences, normalized, at a low and a high
/// frequency.
inline std::pair<TangentVector, TangentVector> tangent_vectors(const TransferFunction& tf,
                                                               const TangentOptions& opt = {}) {
  auto direction_at = [&](double w) {
    const double step = w * opt.relative_step;
    const auto d = (evaluate(tf, w + step) - evaluate(tf, w - step)) / (2.0 * step);
    const double mag = std::abs(d);
    return mag > 0.0 ? d / mag : std::complex<double>(0.0, 0.0);
  };
  return {TangentVector{Endpoint::Start, direction_at(opt.start_omega)},
          TangentVector{Endpoint::End, direction_at(opt.end_omega)}};
}

struct SweepSample {
  double omega = 0.0;
  std::complex<double> value;
  double modulus = 0.0;
  double phase_unwrapped = 0.0;
};

struct SweepOptions {
  /// Refine between neighbours whose wrapped phase step exceeds this.
  double max_phase_step = std::numbers::pi / 4;
  int max_refinement_depth = 24;
  /// Phase (radians) that the first sample's branch is chosen closest to.
  std::optional<double> anchor_phase;
};

/// Log-spaced evaluation of Gbar(jw) over [omega_min, omega_max] with
/// continuous phase. Extra samples are inserted wherever the phase moves
/// faster than the nominal density can follow (resonances).
inline std::vector<SweepSample> sweep(const TransferFunction& tf, double omega_min, double omega_max,
                                      int points_per_decade, const SweepOptions& opt = {}) {
  if (!(omega_min > 0.0) || !(omega_max > omega_min) || points_per_decade < 1)
    throw std::invalid_argument("sweep requires 0 < omega_min < omega_max and points_per_decade >= 1");
  const double decades = std::log10(omega_max / omega_min);
  const auto intervals = std::max<long>(1, std::lround(std::ceil(decades * points_per_decade - 1e-9)));

  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(intervals) + 1);
  for (long i = 0; i <= intervals; ++i)
    grid.push_back(i == intervals ? omega_max : omega_min * std::pow(10.0, decades * static_cast<double>(i) / static_cast<double>(intervals)));

  auto wrapped_step = [](std::complex<double> a, std::complex<double> b) {
    if (std::abs(a) == 0.0 || std::abs(b) == 0.0) return 0.0;
    return std::arg(b / a);
  };

  std::vector<std::pair<double, std::complex<double>>> pts;
  pts.reserve(grid.size());
  // Recursive refinement between grid points.
  auto refine = [&](auto&& self, double w0, std::complex<double> v0, double w1, std::complex<double> v1,
                    int depth) -> void {
    if (depth >= opt.max_refinement_depth || std::abs(wrapped_step(v0, v1)) <= opt.max_phase_step) {
      pts.emplace_back(w1, v1);
      return;
    }
    const double wm = std::sqrt(w0 * w1);
    const auto vm = evaluate(tf, wm);
    self(self, w0, v0, wm, vm, depth + 1);
    self(self, wm, vm, w1, v1, depth + 1);
  };
  pts.emplace_back(grid[0], evaluate(tf, grid[0]));
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const auto prev = pts.back();
    refine(refine, prev.first, prev.second, grid[i], evaluate(tf, grid[i]), 0);
  }

  std::vector<SweepSample> out;
  out.reserve(pts.size());
  double phase = std::arg(pts[0].second);
  if (opt.anchor_phase) {
    const double two_pi = 2.0 * std::numbers::pi;
    phase += two_pi * std::round((*opt.anchor_phase - phase) / two_pi);
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i > 0) phase += wrapped_step(pts[i - 1].second, pts[i].second);
    out.push_back(SweepSample{pts[i].first, pts[i].second, std::abs(pts[i].second), phase});
  }
  return out;
}

/// Start phase as a float, used to anchor unwrapping.
inline double start_phase(const TransferFunction& tf) {
  return to_double(endpoints(tf).first.phase_over_pi) * std::numbers::pi;
}

/// Geometric mean of the characteristic root scales |a0/am|^(1/m) and
/// |b0/bn|^(1/n); 1 when both polynomials are constant.
inline double frequency_scale(const TransferFunction& tf) {
  double log_sum = 0.0;
  int count = 0;
  auto add = [&](const Polynomial& p) {
    if (p.degree() < 1) return;
    log_sum += std::log(std::abs(to_double(Scalar(p.coeff(0) / p.leading())))) / p.degree();
    ++count;
  };
  add(tf.num());
  add(tf.den());
  return count == 0 ? 1.0 : std::exp(log_sum / count);
}

inline std::pair<double, double> default_omega_range(const TransferFunction& tf) {
  const double scale = frequency_scale(tf);
  return {1e-3 * scale, 1e3 * scale};
}

}  // namespace nyq
