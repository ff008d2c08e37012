#pragma once

#include <cctype>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "nyq/errors.hpp"
#include "nyq/polynomial.hpp"
#include "nyq/transfer_function.hpp"

// Text form of transfer functions.
//
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := unary (('*' | '/' | <juxtaposition>) unary)*
//   unary   := ('+'|'-') unary | power
//   power   := primary ['^' ['+'|'-'] integer]
//   primary := number | 's' | '(' expr ')'
//
// Numbers are integers or decimals (optionally with an exponent); p/q is
// ordinary division. Juxtaposition multiplies when the right operand starts
// with 's' or '(' ("2s^2", "3(s+1)", "s(s+2)").
//
// Text is written in descending powers as usual; Polynomial stores ascending
// powers, so "4s^3+5s^2+2s+1" becomes {1, 2, 5, 4}.

namespace nyq {

namespace detail {

/// Intermediate value: gain * num / den. Numeric factors stay in the gain so
/// that "-1/(s+1)" yields K = -1 rather than a negated numerator.
struct RationalValue {
  Scalar gain{1};
  Polynomial num{Scalar(1)};
  Polynomial den{Scalar(1)};
};

class TfParser {
 public:
  explicit TfParser(std::string_view text) : text_(text) {}

  RationalValue parse() {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    auto v = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return v;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[nodiscard]] char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  static RationalValue add(const RationalValue& a, const RationalValue& b) {
    RationalValue out;
    if (a.den == b.den) {
      out.num = poly_scale(a.num, a.gain) + poly_scale(b.num, b.gain);
      out.den = a.den;
    } else {
      out.num = poly_scale(a.num * b.den, a.gain) + poly_scale(b.num * a.den, b.gain);
      out.den = a.den * b.den;
    }
    return out;
  }

  static RationalValue mul(const RationalValue& a, const RationalValue& b) {
    return {a.gain * b.gain, a.num * b.num, a.den * b.den};
  }

  static RationalValue div(const RationalValue& a, const RationalValue& b) {
    if (b.num.is_zero() || b.gain == 0) throw ZeroDenominator();
    return {a.gain / b.gain, a.num * b.den, a.den * b.num};
  }

  static RationalValue negate(RationalValue v) {
    v.gain = -v.gain;
    return v;
  }

  RationalValue expr() {
    RationalValue acc;
    char c = peek();
    if (c == '+' || c == '-') {
      ++pos_;
      acc = term();
      if (c == '-') acc = negate(acc);
    } else {
      acc = term();
    }
    for (;;) {
      c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      auto rhs = term();
      acc = add(acc, c == '-' ? negate(rhs) : rhs);
    }
    return acc;
  }

  RationalValue term() {
    auto acc = unary();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc = mul(acc, unary());
      } else if (c == '/') {
        ++pos_;
        acc = div(acc, unary());
      } else if (c == 's' || c == '(') {
        acc = mul(acc, unary());
      } else {
        break;
      }
    }
    return acc;
  }

  RationalValue unary() {
    const char c = peek();
    if (c == '-' || c == '+') {
      ++pos_;
      auto v = unary();
      return c == '-' ? negate(std::move(v)) : v;
    }
    return power();
  }

  RationalValue power() {
    auto base = primary();
    if (peek() != '^') return base;
    ++pos_;
    bool negative = false;
    char c = peek();
    if (c == '+' || c == '-') {
      negative = c == '-';
      ++pos_;
    }
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected integer exponent", start);
    if (pos_ - start > 3) throw ParseError("exponent too large", start);
    const auto e = static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
    RationalValue out;
    mpz_class gnum = 1, gden = 1;
    mpz_pow_ui(gnum.get_mpz_t(), base.gain.get_num_mpz_t(), e);
    mpz_pow_ui(gden.get_mpz_t(), base.gain.get_den_mpz_t(), e);
    out.gain = Scalar(gnum, gden);
    out.gain.canonicalize();
    out.num = poly_pow(base.num, e);
    out.den = poly_pow(base.den, e);
    if (negative) {
      if (out.num.is_zero() || out.gain == 0) throw ParseError("zero raised to a negative power", start);
      std::swap(out.num, out.den);
      out.gain = 1 / out.gain;
    }
    return out;
  }

  RationalValue primary() {
    const char c = peek();
    const std::size_t at = pos_;
    if (c == 's') {
      ++pos_;
      RationalValue v;
      v.num = Polynomial{Scalar(0), Scalar(1)};
      return v;
    }
    if (c == '(') {
      ++pos_;
      auto v = expr();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t end = pos_;
      while (end < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.')) ++end;
      if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
        std::size_t e = end + 1;
        if (e < text_.size() && (text_[e] == '+' || text_[e] == '-')) ++e;
        if (e < text_.size() && std::isdigit(static_cast<unsigned char>(text_[e]))) {
          end = e;
          while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
        }
      }
      RationalValue v;
      try {
        v.gain = parse_scalar(text_.substr(pos_, end - pos_));
      } catch (const std::invalid_argument&) {
        throw ParseError("malformed number", at);
      }
      pos_ = end;
      return v;
    }
    if (c == '\0') throw ParseError("unexpected end of input", pos_);
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline std::string format_coefficient(const Scalar& c) {
  if (c.get_den() == 1) return c.get_str();
  return "(" + c.get_str() + ")";
}

}  // namespace detail

/// Parses e.g. "(s^2+12s+35)/(s*(s^4+12s^3+30s^2+28s+9))".
inline TransferFunction parse_tf(std::string_view text) {
  auto v = detail::TfParser(text).parse();
  if (v.den.is_zero()) throw ZeroDenominator();
  if (v.num.is_zero() || v.gain == 0) throw ZeroNumerator();
  return TransferFunction(v.gain, 0, v.num, v.den);
}

/// Descending-power text, e.g. "2s^3+6s^2+2s+1".
inline std::string format_polynomial(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    const Scalar c = p.coeff(static_cast<std::size_t>(i));
    if (c == 0) continue;
    const Scalar mag = abs(c);
    if (c < 0) out += "-";
    else if (!out.empty()) out += "+";
    if (i == 0 || mag != 1) out += detail::format_coefficient(mag);
    if (i >= 1) out += "s";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

/// Text that parse_tf maps back to an identical TransferFunction.
inline std::string format_tf(const TransferFunction& tf) {
  std::string gain;
  if (tf.gain() == -1) gain = "-";
  else if (tf.gain() != 1) gain = detail::format_coefficient(tf.gain()) + "*";
  auto with_s_power = [](int h, const std::string& body) {
    if (h == 0) return body;
    return (h == 1 ? std::string("s") : "s^" + std::to_string(h)) + "*" + body;
  };
  const int h = tf.origin_poles();
  std::string num = with_s_power(h < 0 ? -h : 0, "(" + format_polynomial(tf.num()) + ")");
  std::string den = with_s_power(h > 0 ? h : 0, "(" + format_polynomial(tf.den()) + ")");
  if (h > 0) den = "(" + den + ")";
  if (h < 0) num = "(" + num + ")";
  return gain + num + "/" + den;
}

inline std::ostream& operator<<(std::ostream& os, const TransferFunction& tf) { return os << format_tf(tf); }

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << format_polynomial(p); }

}  // namespace nyq
