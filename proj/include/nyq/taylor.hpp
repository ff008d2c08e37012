#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "nyq/errors.hpp"
#include "nyq/polynomial.hpp"
#include "nyq/transfer_function.hpp"

// Taylor machinery of G(s) = N(s)/D(s) at s = 0. Every function here reads
// only the N/D pair of the transfer function; gain and origin poles do not
// enter. Coefficients past the polynomial degrees are treated as zero.

namespace nyq {

/// a_i b_j - a_j b_i
inline Scalar delta_ij(const TransferFunction& tf, std::size_t i, std::size_t j) {
  return tf.num().coeff(i) * tf.den().coeff(j) - tf.num().coeff(j) * tf.den().coeff(i);
}

inline void require_odd(long k) {
  if (k < 1 || k % 2 == 0) throw OddIndexRequired(k);
}

/// sum_{j=0}^{(k-1)/2} (-1)^j Delta_{k-j, j}, for odd k.
inline Scalar nabla_k(const TransferFunction& tf, long k) {
  require_odd(k);
  Scalar acc = 0;
  for (long j = 0; j <= (k - 1) / 2; ++j) {
    acc += alternating(j) * delta_ij(tf, static_cast<std::size_t>(k - j), static_cast<std::size_t>(j));
  }
  return acc;
}

/// b_h^2 + 2 sum_{j=1}^{h} (-1)^j b_{h-j} b_{h+j}, for h >= 1.
inline Scalar b_poly(const TransferFunction& tf, long h) {
  if (h < 1) throw std::invalid_argument("b_poly requires h >= 1");
  const auto& b = tf.den();
  const auto uh = static_cast<std::size_t>(h);
  Scalar acc = b.coeff(uh) * b.coeff(uh);
  for (std::size_t j = 1; j <= uh; ++j) acc += 2 * alternating(static_cast<long>(j)) * b.coeff(uh - j) * b.coeff(uh + j);
  return acc;
}

/// Determinants and the derived nabla / B sequences up to a maximum index.
struct DeltaTable {
  std::map<std::pair<std::size_t, std::size_t>, Scalar> delta_ij;
  std::map<long, Scalar> nabla;  // odd k
  std::map<long, Scalar> bpoly;  // h >= 1
};

inline DeltaTable delta_table(const TransferFunction& tf, std::size_t max_index) {
  DeltaTable t;
  for (std::size_t i = 0; i <= max_index; ++i)
    for (std::size_t j = 0; j <= max_index; ++j) t.delta_ij[{i, j}] = delta_ij(tf, i, j);
  for (long k = 1; k <= static_cast<long>(max_index); k += 2) t.nabla[k] = nabla_k(tf, k);
  for (long h = 1; h <= static_cast<long>(max_index); ++h) t.bpoly[h] = b_poly(tf, h);
  return t;
}

enum class TaylorSource { OddRecursion, FullRecursion, Oracle };

/// G_0..G_N. Tables built by the odd-only recursion leave even entries
/// above 0 empty.
struct TaylorTable {
  std::vector<std::optional<Scalar>> g;
  TaylorSource source = TaylorSource::FullRecursion;
  std::size_t order = 0;

  [[nodiscard]] const Scalar& at(std::size_t k) const { return g.at(k).value(); }
};

/// G_0 = a0/b0, then G_k = (Delta_{k0} - b0 sum_{j=1}^{k-1} G_{k-j} b_j) / b0^2.
inline TaylorTable taylor_full(const TransferFunction& tf, std::size_t order) {
  const Scalar b0 = tf.den().coeff(0);
  const Scalar b0_sq = b0 * b0;
  TaylorTable t;
  t.source = TaylorSource::FullRecursion;
  t.order = order;
  t.g.resize(order + 1);
  std::vector<Scalar> g(order + 1);
  g[0] = tf.g0();
  for (std::size_t k = 1; k <= order; ++k) {
    Scalar sum = 0;
    for (std::size_t j = 1; j + 1 <= k; ++j) sum += g[k - j] * tf.den().coeff(j);
    g[k] = (delta_ij(tf, k, 0) - b0 * sum) / b0_sq;
  }
  for (std::size_t k = 0; k <= order; ++k) t.g[k] = g[k];
  return t;
}

/// Odd G_k = (nabla_k - sum_{h=1}^{(k-1)/2} (-1)^h G_{k-2h} B_h) / b0^2.
inline TaylorTable taylor_odd(const TransferFunction& tf, std::size_t order) {
  const Scalar b0 = tf.den().coeff(0);
  const Scalar b0_sq = b0 * b0;
  TaylorTable t;
  t.source = TaylorSource::OddRecursion;
  t.order = order;
  t.g.resize(order + 1);
  t.g[0] = tf.g0();
  for (std::size_t k = 1; k <= order; k += 2) {
    Scalar sum = 0;
    for (long h = 1; h <= static_cast<long>(k - 1) / 2; ++h)
      sum += alternating(h) * t.at(k - 2 * static_cast<std::size_t>(h)) * b_poly(tf, h);
    t.g[k] = (nabla_k(tf, static_cast<long>(k)) - sum) / b0_sq;
  }
  return t;
}

inline TaylorTable taylor_oracle(const TransferFunction& tf, std::size_t order) {
  auto s = series_div(tf.num(), tf.den(), order);
  TaylorTable t;
  t.source = TaylorSource::Oracle;
  t.order = order;
  t.g.assign(s.coeffs.begin(), s.coeffs.end());
  return t;
}

inline Scalar g_all(const TransferFunction& tf, std::size_t k) { return taylor_full(tf, k).at(k); }

inline Scalar g_odd(const TransferFunction& tf, long k) {
  require_odd(k);
  return taylor_odd(tf, static_cast<std::size_t>(k)).at(static_cast<std::size_t>(k));
}

/// Smallest order that is guaranteed to reach the first nonzero odd and even
/// Delta_tau entries whenever they exist: the imaginary-part polynomial has
/// omega-degree <= m+n and the modulus deviation has u-degree <= 2 max(m,n).
inline std::size_t default_truncation_order(const TransferFunction& tf) {
  const auto m = static_cast<std::size_t>(tf.m());
  const auto n = static_cast<std::size_t>(tf.n());
  return std::max(m + n + 1, 2 * std::max(m, n) + 1);
}

struct DeltaTauSeries {
  /// values[k] for k = 1..N; values[0] is unused and left at zero.
  std::vector<Scalar> values;
  TaylorTable taylor;
  std::optional<std::size_t> first_nonzero_odd;
  std::optional<std::size_t> first_nonzero_even;
  bool degenerate_imag = false;
  bool degenerate_modulus = false;

  [[nodiscard]] std::size_t order() const { return values.empty() ? 0 : values.size() - 1; }
  [[nodiscard]] const Scalar& at(std::size_t k) const { return values.at(k); }
};

/// True iff G(jw) is real for every w.
inline bool imaginary_part_vanishes(const TransferFunction& tf) {
  return imag_part_polynomial(tf.num(), tf.den()).is_zero();
}

/// True iff |G(jw)| = |G0| for every w.
inline bool modulus_is_constant(const TransferFunction& tf) {
  const Scalar a0 = tf.num().coeff(0);
  const Scalar b0 = tf.den().coeff(0);
  return poly_scale(squared_modulus_polynomial(tf.num()), b0 * b0) ==
         poly_scale(squared_modulus_polynomial(tf.den()), a0 * a0);
}

/// Delta_tau_k = (-1)^floor(k/2) G_k / G_0 for k = 1..order.
inline DeltaTauSeries delta_tau_series(const TransferFunction& tf, std::size_t order) {
  DeltaTauSeries s;
  s.taylor = taylor_full(tf, order);
  s.values.assign(order + 1, Scalar(0));
  const Scalar g0 = s.taylor.at(0);
  for (std::size_t k = 1; k <= order; ++k) {
    s.values[k] = alternating(static_cast<long>(k / 2)) * s.taylor.at(k) / g0;
    if (s.values[k] != 0) {
      auto& slot = (k % 2 == 1) ? s.first_nonzero_odd : s.first_nonzero_even;
      if (!slot) slot = k;
    }
  }
  s.degenerate_imag = imaginary_part_vanishes(tf);
  s.degenerate_modulus = modulus_is_constant(tf);
  return s;
}

inline DeltaTauSeries delta_tau_series(const TransferFunction& tf) {
  return delta_tau_series(tf, default_truncation_order(tf));
}

/// (-1)^((k-1)/2) nabla_k / (a0 b0), valid when G_1 = G_3 = ... = G_{k-2} = 0.
inline Scalar delta_tau_via_nabla(const TransferFunction& tf, long k) {
  require_odd(k);
  if (k > 1) {
    const auto table = taylor_full(tf, static_cast<std::size_t>(k - 2));
    for (long i = 1; i <= k - 2; i += 2) {
      if (table.at(static_cast<std::size_t>(i)) != 0)
        throw HypothesisViolated("G_" + std::to_string(i) + " is nonzero; the closed form for index " +
                                 std::to_string(k) + " does not apply");
    }
  }
  return alternating((k - 1) / 2) * nabla_k(tf, k) / (tf.num().coeff(0) * tf.den().coeff(0));
}

}  // namespace nyq
