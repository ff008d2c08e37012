#pragma once

#include <complex>
#include <optional>

#include "nyq/taylor.hpp"
#include "nyq/transfer_function.hpp"

namespace nyq {

enum class PhaseSense { Lead, Lag, OnRealAxis };

/// For the Start, Increasing means M0(w) grows as the curve leaves P0. For
/// the End, Increasing means the curve approaches P_inf from above
/// (modulus larger than M_inf) and Decreasing from below.
enum class ModulusTrend { Increasing, Decreasing, Constant, Undetermined, DominatedByOriginPoles };

enum class ApproachAxis { PerpendicularToReal, ParallelToReal, Degenerate };

enum class RotationSense { CounterClockwise, Clockwise, None };

struct EndpointBehavior {
  Endpoint end = Endpoint::Start;
  PhaseSense phase_sense = PhaseSense::OnRealAxis;
  ModulusTrend modulus_trend = ModulusTrend::Undetermined;
  ApproachAxis approach_axis = ApproachAxis::Degenerate;
  /// Curve label 1-4 of the exit (Start) or entry (End) figure family.
  std::optional<int> archetype;
  std::optional<std::size_t> k_odd;
  std::optional<std::size_t> h_even;
  std::optional<Scalar> delta_k;
  std::optional<Scalar> delta_h;
  /// 2*k_odd <= h_even: the imaginary part contributes to the modulus at
  /// the same or lower order than the real part, so the modulus verdict is
  /// the real-part trend rather than a statement about |G|.
  bool modulus_borderline = false;
  bool degenerate_modulus = false;
  /// Figures are drawn for G0 > 0 (Start) or G~0 > 0 (End); when the base
  /// value is negative the archetype reads in the frame rotated by pi.
  bool rotated_frame = false;

  friend bool operator==(const EndpointBehavior&, const EndpointBehavior&) = default;
};

namespace detail {

/// Sign table shared by both figure families:
/// (+,-) -> 1, (-,-) -> 2, (+,+) -> 3, (-,+) -> 4.
inline int archetype_from_signs(int odd_sign, int even_sign) {
  if (even_sign < 0) return odd_sign > 0 ? 1 : 2;
  return odd_sign > 0 ? 3 : 4;
}

/// `phase_sign_factor` is +1 at the Start and -1 at the End, where the
/// phase offset is -Delta~_tau_k / w^k.
inline EndpointBehavior classify_series(Endpoint end, const DeltaTauSeries& s, const Scalar& base_value,
                                        int phase_sign_factor) {
  EndpointBehavior b;
  b.end = end;
  b.rotated_frame = base_value < 0;
  b.degenerate_modulus = s.degenerate_modulus;
  if (!s.degenerate_imag && s.first_nonzero_odd) {
    b.k_odd = s.first_nonzero_odd;
    b.delta_k = s.at(*b.k_odd);
  }
  if (s.first_nonzero_even) {
    b.h_even = s.first_nonzero_even;
    b.delta_h = s.at(*b.h_even);
  }

  if (b.delta_k) {
    b.phase_sense = phase_sign_factor * sgn(*b.delta_k) > 0 ? PhaseSense::Lead : PhaseSense::Lag;
  } else {
    b.phase_sense = PhaseSense::OnRealAxis;
  }

  if (s.degenerate_modulus) {
    b.modulus_trend = ModulusTrend::Constant;
  } else if (b.delta_h) {
    b.modulus_trend = sgn(*b.delta_h) > 0 ? ModulusTrend::Increasing : ModulusTrend::Decreasing;
  } else {
    b.modulus_trend = ModulusTrend::Undetermined;
  }

  if (b.k_odd && b.h_even) {
    // Odd and even indices never coincide.
    b.approach_axis = *b.k_odd < *b.h_even ? ApproachAxis::PerpendicularToReal : ApproachAxis::ParallelToReal;
    b.archetype = archetype_from_signs(phase_sign_factor * sgn(*b.delta_k), sgn(*b.delta_h));
    b.modulus_borderline = 2 * *b.k_odd <= *b.h_even;
  } else if (b.k_odd) {
    b.approach_axis = ApproachAxis::PerpendicularToReal;
  } else {
    b.approach_axis = ApproachAxis::Degenerate;
  }
  return b;
}

}  // namespace detail

/// Behaviour of G(jw) leaving P0 = G0 as w -> 0+.
inline EndpointBehavior classify_exit(const TransferFunction& tf, std::size_t order) {
  const auto g = tf.core();
  return detail::classify_series(Endpoint::Start, delta_tau_series(g, order), g.g0(), +1);
}

inline EndpointBehavior classify_exit(const TransferFunction& tf) {
  return classify_exit(tf, default_truncation_order(tf));
}

/// Behaviour of G(jw) entering P_inf = G_inf as w -> inf, read off the
/// dual coefficients.
inline EndpointBehavior classify_entry(const TransferFunction& tf, std::size_t order) {
  const auto dual = dualize(tf.core()).core();
  return detail::classify_series(Endpoint::End, delta_tau_series(dual, order), dual.g0(), -1);
}

inline EndpointBehavior classify_entry(const TransferFunction& tf) {
  return classify_entry(tf, default_truncation_order(tf));
}

/// Reads an exit classification of dualize(tf) as the entry classification
/// of tf: the phase offset at infinity carries an extra minus sign, which
/// flips the lead/lag verdict and swaps archetypes 1<->2 and 3<->4.
inline EndpointBehavior as_entry(EndpointBehavior b) {
  b.end = Endpoint::End;
  if (b.phase_sense == PhaseSense::Lead) b.phase_sense = PhaseSense::Lag;
  else if (b.phase_sense == PhaseSense::Lag) b.phase_sense = PhaseSense::Lead;
  if (b.archetype) b.archetype = *b.archetype % 2 == 1 ? *b.archetype + 1 : *b.archetype - 1;
  return b;
}

/// Direction of motion: leaving P0 with a lead turns counter-clockwise;
/// entering P_inf with a lead means the phase offset shrinks, i.e. the curve
/// moves clockwise onto the endpoint.
inline RotationSense rotation_sense(const EndpointBehavior& b) {
  if (b.phase_sense == PhaseSense::OnRealAxis) return RotationSense::None;
  const bool lead = b.phase_sense == PhaseSense::Lead;
  if (b.end == Endpoint::Start) return lead ? RotationSense::CounterClockwise : RotationSense::Clockwise;
  return lead ? RotationSense::Clockwise : RotationSense::CounterClockwise;
}

/// Behaviour re-expressed at the endpoints of Gbar = K/s^h G. Lead/lag is
/// invariant under the rigid rotation by arg(K) - h pi/2 (or - r pi/2). When
/// the endpoint modulus is zero or infinite the modulus trend of G says
/// nothing about Gbar and is replaced by DominatedByOriginPoles.
struct LiftedBehavior {
  EndpointBehavior behavior;
  EndpointSummary endpoint;
  RotationSense rotation = RotationSense::None;

  friend bool operator==(const LiftedBehavior&, const LiftedBehavior&) = default;
};

inline LiftedBehavior lift_to_gbar(const EndpointBehavior& b, const TransferFunction& tf) {
  const auto [start, finish] = endpoints(tf);
  LiftedBehavior out{b, b.end == Endpoint::Start ? start : finish, rotation_sense(b)};
  if (out.endpoint.modulus_kind != ModulusKind::Finite) out.behavior.modulus_trend = ModulusTrend::DominatedByOriginPoles;
  return out;
}

/// Unit direction the curve takes near a finite endpoint as w increases,
/// predicted from the classification. Empty when the classification is
/// degenerate or the endpoint is not finite.
inline std::optional<std::complex<double>> predicted_tangent(const EndpointBehavior& b, const TransferFunction& tf) {
  if (!b.archetype) return std::nullopt;
  const int exponent = b.end == Endpoint::Start ? tf.origin_poles() : tf.relative_degree();
  if (exponent != 0) return std::nullopt;
  const Scalar base = tf.gain() * (b.end == Endpoint::Start ? tf.g0() : tf.g_inf());
  const double frame = base > 0 ? 1.0 : -1.0;
  const std::complex<double> j(0.0, 1.0);
  const double sk = sgn(*b.delta_k);
  const double sh = sgn(*b.delta_h);
  if (b.end == Endpoint::Start) {
    // G ~ G0 (1 + Dh w^h + j Dk w^k)
    return b.approach_axis == ApproachAxis::PerpendicularToReal ? frame * j * sk : std::complex<double>(frame * sh);
  }
  // G ~ G~0 (1 + Dh w^-h - j Dk w^-k); d/dw flips the sign of each term.
  return b.approach_axis == ApproachAxis::PerpendicularToReal ? frame * j * sk : std::complex<double>(-frame * sh);
}

}  // namespace nyq
