#pragma once

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nyq {

/// Exact rational number. gmp keeps it canonical (reduced, positive
/// denominator) as long as every value built from a string is canonicalized.
using Scalar = mpq_class;

inline int sign(const Scalar& x) { return sgn(x); }

inline double to_double(const Scalar& x) { return x.get_d(); }

inline std::string to_string(const Scalar& x) { return x.get_str(); }

/// (-1)^e
inline int alternating(long e) { return (e % 2 == 0) ? 1 : -1; }

/// Parses "12", "-3/4", "0.125", "2.5e-3" into an exact rational.
/// Decimal fractions are scaled by powers of ten, never rounded.
inline Scalar parse_scalar(std::string_view text) {
  auto fail = [&] { throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'"); };
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  std::string digits;
  long exponent = 0;
  bool any_digit = false;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    digits += text[i++];
    any_digit = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      digits += text[i++];
      --exponent;
      any_digit = true;
    }
  }
  if (!any_digit) fail();
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      exp_negative = text[i] == '-';
      ++i;
    }
    std::string exp_digits;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) exp_digits += text[i++];
    if (exp_digits.empty() || exp_digits.size() > 6) fail();
    long e = std::stol(exp_digits);
    exponent += exp_negative ? -e : e;
  }
  mpz_class numerator(digits, 10);
  mpz_class denominator = 1;
  if (i < text.size() && text[i] == '/') {
    if (exponent != 0 || digits.find_first_not_of("0123456789") != std::string::npos) fail();
    ++i;
    std::string den_digits;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) den_digits += text[i++];
    if (den_digits.empty()) fail();
    denominator = mpz_class(den_digits, 10);
    if (denominator == 0) throw std::invalid_argument("zero denominator in rational literal");
  }
  if (i != text.size()) fail();

  mpz_class ten_power;
  mpz_ui_pow_ui(ten_power.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent < 0) denominator *= ten_power;
  else numerator *= ten_power;

  Scalar result(numerator, denominator);
  result.canonicalize();
  return negative ? Scalar(-result) : result;
}

}  // namespace nyq
