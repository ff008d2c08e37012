#pragma once

#include <algorithm>
#include <cassert>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "nyq/errors.hpp"
#include "nyq/scalar.hpp"

namespace nyq {

/// Dense polynomial with exact rational coefficients stored in ascending
/// powers: coeffs()[i] multiplies s^i. The highest stored coefficient is
/// always nonzero; the zero polynomial is the empty sequence.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<Scalar> coeffs) : coeffs_(coeffs) { trim(); }
  explicit Polynomial(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(const Scalar& c, std::size_t power) {
    std::vector<Scalar> v(power + 1);
    v[power] = c;
    return Polynomial(std::move(v));
  }

  [[nodiscard]] bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  [[nodiscard]] int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }
  [[nodiscard]] std::span<const Scalar> coeffs() const noexcept { return coeffs_; }

  /// Coefficient of s^i, zero-extended past the degree.
  [[nodiscard]] Scalar coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Scalar(0); }

  [[nodiscard]] const Scalar& leading() const {
    assert(!is_zero());
    return coeffs_.back();
  }

  /// Index of the lowest nonzero coefficient (the multiplicity of the root
  /// at s = 0). Zero for the zero polynomial.
  [[nodiscard]] std::size_t lowest_power() const {
    std::size_t p = 0;
    while (p < coeffs_.size() && coeffs_[p] == 0) ++p;
    return p == coeffs_.size() ? 0 : p;
  }

  /// p(s) / s^p; the dropped coefficients must be zero.
  [[nodiscard]] Polynomial divided_by_s_power(std::size_t p) const {
    if (p >= coeffs_.size()) return {};
    for (std::size_t i = 0; i < p; ++i) assert(coeffs_[i] == 0);
    return Polynomial(std::vector<Scalar>(coeffs_.begin() + static_cast<std::ptrdiff_t>(p), coeffs_.end()));
  }

  [[nodiscard]] Polynomial reversed() const {
    return Polynomial(std::vector<Scalar>(coeffs_.rbegin(), coeffs_.rend()));
  }

  [[nodiscard]] Polynomial derivative() const {
    if (coeffs_.size() < 2) return {};
    std::vector<Scalar> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
    return Polynomial(std::move(d));
  }

  [[nodiscard]] Scalar eval(const Scalar& x) const {
    Scalar acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  [[nodiscard]] int sign_at(const Scalar& x) const { return sgn(eval(x)); }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Scalar> coeffs_;
};

/// Horner evaluation in floating point.
inline std::complex<double> poly_eval_complex(const Polynomial& p, std::complex<double> z) {
  std::complex<double> acc = 0.0;
  auto c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + to_double(*it);
  return acc;
}

inline Polynomial poly_add(const Polynomial& p, const Polynomial& q) {
  std::vector<Scalar> out(std::max(p.size(), q.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = p.coeff(i) + q.coeff(i);
  return Polynomial(std::move(out));
}

inline Polynomial poly_scale(const Polynomial& p, const Scalar& c) {
  std::vector<Scalar> out(p.coeffs().begin(), p.coeffs().end());
  for (auto& x : out) x *= c;
  return Polynomial(std::move(out));
}

inline Polynomial poly_mul(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() || q.is_zero()) return {};
  std::vector<Scalar> out(p.size() + q.size() - 1);
  auto a = p.coeffs();
  auto b = q.coeffs();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return Polynomial(std::move(out));
}

inline Polynomial operator+(const Polynomial& p, const Polynomial& q) { return poly_add(p, q); }
inline Polynomial operator-(const Polynomial& p) { return poly_scale(p, Scalar(-1)); }
inline Polynomial operator-(const Polynomial& p, const Polynomial& q) { return poly_add(p, -q); }
inline Polynomial operator*(const Polynomial& p, const Polynomial& q) { return poly_mul(p, q); }
inline Polynomial operator*(const Scalar& c, const Polynomial& p) { return poly_scale(p, c); }

inline Polynomial poly_pow(const Polynomial& p, unsigned e) {
  Polynomial out{Scalar(1)};
  for (unsigned i = 0; i < e; ++i) out = out * p;
  return out;
}

/// Euclidean division: returns (quotient, remainder) with deg r < deg d.
inline std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& n, const Polynomial& d) {
  if (d.is_zero()) throw ZeroDenominator();
  if (n.degree() < d.degree()) return {Polynomial{}, n};
  std::vector<Scalar> rem(n.coeffs().begin(), n.coeffs().end());
  std::vector<Scalar> quot(static_cast<std::size_t>(n.degree() - d.degree() + 1));
  const Scalar& lead = d.leading();
  const auto dc = d.coeffs();
  for (int i = n.degree() - d.degree(); i >= 0; --i) {
    const auto top = static_cast<std::size_t>(i + d.degree());
    Scalar q = rem[top] / lead;
    quot[static_cast<std::size_t>(i)] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j < dc.size(); ++j) rem[static_cast<std::size_t>(i) + j] -= q * dc[j];
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

/// Divides by the absolute value of the leading coefficient, which keeps the
/// sign pattern of the polynomial intact.
inline Polynomial normalized_leading(const Polynomial& p) {
  if (p.is_zero()) return p;
  Scalar lead = abs(p.leading());
  return poly_scale(p, Scalar(1 / lead));
}

/// Monic greatest common divisor.
inline Polynomial poly_gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    auto r = poly_divmod(a, b).second;
    a = std::move(b);
    b = normalized_leading(r);
  }
  if (a.is_zero()) return a;
  return poly_scale(a, Scalar(1 / a.leading()));
}

/// Truncated power series: coefficients 0..truncation_order. Nothing is
/// implied about coefficients past the truncation order.
struct PowerSeries {
  std::vector<Scalar> coeffs;
  std::size_t truncation_order = 0;

  friend bool operator==(const PowerSeries&, const PowerSeries&) = default;
};

/// Taylor coefficients of num/den at s = 0 by long division of power series.
inline PowerSeries series_div(const Polynomial& num, const Polynomial& den, std::size_t order) {
  if (den.coeff(0) == 0) throw ZeroConstantDenominator();
  const Scalar b0 = den.coeff(0);
  PowerSeries out;
  out.truncation_order = order;
  out.coeffs.resize(order + 1);
  for (std::size_t k = 0; k <= order; ++k) {
    Scalar acc = num.coeff(k);
    const std::size_t upper = std::min<std::size_t>(k, den.size() == 0 ? 0 : den.size() - 1);
    for (std::size_t j = 1; j <= upper; ++j) acc -= den.coeff(j) * out.coeffs[k - j];
    out.coeffs[k] = acc / b0;
  }
  return out;
}

/// Writes p(jw) = even(w^2) + j*w*odd(w^2); these return the two halves as
/// polynomials in u = w^2.
inline Polynomial even_part_in_u(const Polynomial& p) {
  std::vector<Scalar> out((p.size() + 1) / 2);
  for (std::size_t i = 0; 2 * i < p.size(); ++i) out[i] = alternating(static_cast<long>(i)) * p.coeff(2 * i);
  return Polynomial(std::move(out));
}

inline Polynomial odd_part_in_u(const Polynomial& p) {
  std::vector<Scalar> out(p.size() / 2);
  for (std::size_t i = 0; 2 * i + 1 < p.size(); ++i) out[i] = alternating(static_cast<long>(i)) * p.coeff(2 * i + 1);
  return Polynomial(std::move(out));
}

inline const Polynomial& u_polynomial() {
  static const Polynomial u{Scalar(0), Scalar(1)};
  return u;
}

/// Q(u) with Im[num(jw) * conj(den(jw))] = w * Q(w^2).
inline Polynomial imag_part_polynomial(const Polynomial& num, const Polynomial& den) {
  return odd_part_in_u(num) * even_part_in_u(den) - even_part_in_u(num) * odd_part_in_u(den);
}

/// R(u) with Re[num(jw) * conj(den(jw))] = R(w^2).
inline Polynomial real_part_polynomial(const Polynomial& num, const Polynomial& den) {
  return even_part_in_u(num) * even_part_in_u(den) + u_polynomial() * odd_part_in_u(num) * odd_part_in_u(den);
}

/// |p(jw)|^2 as a polynomial in u = w^2.
inline Polynomial squared_modulus_polynomial(const Polynomial& p) {
  const auto e = even_part_in_u(p);
  const auto o = odd_part_in_u(p);
  return e * e + u_polynomial() * o * o;
}

}  // namespace nyq
