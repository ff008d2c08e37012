#pragma once

#include <cstddef>
#include <vector>

#include "nyq/polynomial.hpp"

namespace nyq {

/// An isolating interval [lo, hi] holding exactly one distinct root. `exact`
/// means lo == hi is the root itself.
struct RootInterval {
  Scalar lo;
  Scalar hi;
  bool exact = false;
  int multiplicity = 1;

  [[nodiscard]] double midpoint() const { return to_double(Scalar((lo + hi) / 2)); }
};

namespace detail {

inline std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
  std::vector<Polynomial> seq{normalized_leading(p), normalized_leading(p.derivative())};
  while (!seq.back().is_zero() && seq.back().degree() > 0) {
    auto r = poly_divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(normalized_leading(-r));
  }
  if (seq.back().is_zero()) seq.pop_back();
  return seq;
}

inline int sign_variations(const std::vector<int>& signs) {
  int count = 0;
  int prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

inline int variations_at(const std::vector<Polynomial>& seq, const Scalar& x) {
  std::vector<int> signs;
  signs.reserve(seq.size());
  for (const auto& p : seq) signs.push_back(p.sign_at(x));
  return sign_variations(signs);
}

/// Number of distinct roots in (a, b].
inline int sturm_count(const std::vector<Polynomial>& seq, const Scalar& a, const Scalar& b) {
  return variations_at(seq, a) - variations_at(seq, b);
}

inline Polynomial square_free_part(const Polynomial& p) {
  auto g = poly_gcd(p, p.derivative());
  if (g.degree() <= 0) return normalized_leading(p);
  return normalized_leading(poly_divmod(p, g).first);
}

/// Strict upper bound on |root| (Cauchy).
inline Scalar cauchy_bound(const Polynomial& p) {
  Scalar best = 0;
  const Scalar& lead = p.leading();
  for (int i = 0; i < p.degree(); ++i) {
    Scalar r = abs(p.coeff(static_cast<std::size_t>(i)) / lead);
    if (r > best) best = r;
  }
  return best + 1;
}

inline bool has_root_in(const Polynomial& p, const RootInterval& iv) {
  if (p.degree() <= 0) return false;
  if (iv.exact) return p.eval(iv.lo) == 0;
  auto sqf = square_free_part(p);
  auto seq = sturm_sequence(sqf);
  return sturm_count(seq, iv.lo, iv.hi) > 0 || sqf.eval(iv.lo) == 0;
}

inline int multiplicity_in(const Polynomial& p, const RootInterval& iv) {
  auto g = poly_gcd(p, p.derivative());
  if (g.degree() <= 0 || !has_root_in(g, iv)) return 1;
  return 1 + multiplicity_in(g, iv);
}

}  // namespace detail

/// Isolates the distinct roots of p in (0, inf) by Sturm counting and exact
/// bisection. Each non-exact interval is refined until its width is below
/// `width_tolerance * min(1, lo)`, so small roots keep relative accuracy.
inline std::vector<RootInterval> positive_real_roots(const Polynomial& p, const Scalar& width_tolerance) {
  std::vector<RootInterval> roots;
  if (p.degree() <= 0) return roots;
  const Polynomial reduced = p.divided_by_s_power(p.lowest_power());
  if (reduced.degree() <= 0) return roots;
  const Polynomial sqf = detail::square_free_part(reduced);
  const auto seq = detail::sturm_sequence(sqf);

  struct Pending {
    Scalar lo, hi;
    int count;
  };
  const Scalar bound = detail::cauchy_bound(sqf);
  std::vector<Pending> stack{{Scalar(0), bound, detail::sturm_count(seq, Scalar(0), bound)}};

  while (!stack.empty()) {
    Pending cur = stack.back();
    stack.pop_back();
    if (cur.count <= 0) continue;
    if (cur.count == 1) {
      // sqf has a simple root in (lo, hi) and lo, hi are never roots here.
      Scalar lo = cur.lo;
      Scalar hi = cur.hi;
      const int sign_lo = sqf.sign_at(lo);
      RootInterval iv;
      for (;;) {
        const Scalar scale = lo > 0 && lo < 1 ? lo : Scalar(lo > 0 ? 1 : 0);
        if (scale > 0 && hi - lo < width_tolerance * scale) {
          iv = RootInterval{lo, hi, false, 1};
          break;
        }
        Scalar mid = (lo + hi) / 2;
        const int s = sqf.sign_at(mid);
        if (s == 0) {
          iv = RootInterval{mid, mid, true, 1};
          break;
        }
        if (s == sign_lo) lo = mid;
        else hi = mid;
      }
      iv.multiplicity = detail::multiplicity_in(reduced, iv);
      roots.push_back(iv);
      continue;
    }
    Scalar mid = (cur.lo + cur.hi) / 2;
    while (sqf.sign_at(mid) == 0) mid = (cur.lo + mid) / 2;
    const int left = detail::sturm_count(seq, cur.lo, mid);
    stack.push_back({mid, cur.hi, cur.count - left});
    stack.push_back({cur.lo, mid, left});
  }
  std::sort(roots.begin(), roots.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
  return roots;
}

}  // namespace nyq
