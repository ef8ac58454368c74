#pragma once

#include "dnk/real.hpp"
#include <stdexcept>

namespace dnk {

// Rounding-directed enclosure [lo, hi].  Elementary operations round outward;
// the composite special functions (Lambert W, 3F2) enclose via a residual or
// truncation bound around a midpoint evaluation.
struct Interval {
  Real lo, hi;

  Interval() = default;
  Interval(const Real& a, const Real& b) : lo(a), hi(b) {}
  explicit Interval(const Real& a) : lo(a), hi(a) {}
  static Interval exact(const Rat& q, mpfr_prec_t prec);
  static Interval around(const Real& mid, const Real& radius);

  Real mid() const;
  Real rad() const;        // half-width, rounded up
  Real mag() const;        // max |x| over the interval
  bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }
  bool is_finite() const { return lo.is_finite() && hi.is_finite(); }
  bool positive() const { return lo.sign() > 0; }
  bool negative() const { return hi.sign() < 0; }
};

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b); // throws DomainError if b contains 0
Interval operator-(const Interval& a);

Interval iabs(const Interval& a);
Interval isgn(const Interval& a);   // throws DomainError if a straddles 0
Interval iexp(const Interval& a);
Interval ilog(const Interval& a);   // requires a > 0
Interval isin(const Interval& a);
Interval icos(const Interval& a);
Interval iatan(const Interval& a);
// a^(p/q) with the real-root convention for odd q on negative a.
Interval ipow(const Interval& a, const Rat& e);

} // namespace dnk
