#include "dnk/interval.hpp"

#include <algorithm>

namespace dnk {

namespace {

Real dir2(int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t),
          const Real& a, const Real& b, mpfr_rnd_t rnd) {
  Real r(std::max(a.prec(), b.prec()));
  fn(r.raw(), a.raw(), b.raw(), rnd);
  return r;
}

Real dir1(int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t),
          const Real& a, mpfr_rnd_t rnd) {
  Real r(a.prec());
  fn(r.raw(), a.raw(), rnd);
  return r;
}

} // namespace

Interval Interval::exact(const Rat& q, mpfr_prec_t prec) {
  return {Real(q, prec, MPFR_RNDD), Real(q, prec, MPFR_RNDU)};
}

Interval Interval::around(const Real& mid, const Real& radius) {
  Real r = rabs(radius);
  Real lo(mid.prec()), hi(mid.prec());
  mpfr_sub(lo.raw(), mid.raw(), r.raw(), MPFR_RNDD);
  mpfr_add(hi.raw(), mid.raw(), r.raw(), MPFR_RNDU);
  return {lo, hi};
}

Real Interval::mid() const {
  Real m(std::max(lo.prec(), hi.prec()));
  mpfr_add(m.raw(), lo.raw(), hi.raw(), MPFR_RNDN);
  mpfr_div_2ui(m.raw(), m.raw(), 1, MPFR_RNDN);
  return m;
}

Real Interval::rad() const {
  Real r(std::max(lo.prec(), hi.prec()));
  mpfr_sub(r.raw(), hi.raw(), lo.raw(), MPFR_RNDU);
  mpfr_div_2ui(r.raw(), r.raw(), 1, MPFR_RNDU);
  return r;
}

Real Interval::mag() const { return rmax(rabs(lo), rabs(hi)); }

Interval operator+(const Interval& a, const Interval& b) {
  return {dir2(mpfr_add, a.lo, b.lo, MPFR_RNDD), dir2(mpfr_add, a.hi, b.hi, MPFR_RNDU)};
}

Interval operator-(const Interval& a, const Interval& b) {
  return {dir2(mpfr_sub, a.lo, b.hi, MPFR_RNDD), dir2(mpfr_sub, a.hi, b.lo, MPFR_RNDU)};
}

Interval operator-(const Interval& a) {
  Interval r;
  r.lo = -a.hi;
  r.hi = -a.lo;
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  const Real* as[2] = {&a.lo, &a.hi};
  const Real* bs[2] = {&b.lo, &b.hi};
  Real lo = dir2(mpfr_mul, a.lo, b.lo, MPFR_RNDD);
  Real hi = dir2(mpfr_mul, a.lo, b.lo, MPFR_RNDU);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      if (i == 0 && j == 0) continue;
      lo = rmin(lo, dir2(mpfr_mul, *as[i], *bs[j], MPFR_RNDD));
      hi = rmax(hi, dir2(mpfr_mul, *as[i], *bs[j], MPFR_RNDU));
    }
  return {lo, hi};
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw DomainError("interval division by an interval containing 0");
  Real lo = dir2(mpfr_div, a.lo, b.lo, MPFR_RNDD);
  Real hi = dir2(mpfr_div, a.lo, b.lo, MPFR_RNDU);
  const Real* as[2] = {&a.lo, &a.hi};
  const Real* bs[2] = {&b.lo, &b.hi};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      if (i == 0 && j == 0) continue;
      lo = rmin(lo, dir2(mpfr_div, *as[i], *bs[j], MPFR_RNDD));
      hi = rmax(hi, dir2(mpfr_div, *as[i], *bs[j], MPFR_RNDU));
    }
  return {lo, hi};
}

Interval iabs(const Interval& a) {
  if (a.lo.sign() >= 0) return a;
  if (a.hi.sign() <= 0) return -a;
  return {Real(0L, a.lo.prec()), a.mag()};
}

Interval isgn(const Interval& a) {
  if (a.positive()) return Interval(Real(1L, a.lo.prec()));
  if (a.negative()) return Interval(Real(-1L, a.lo.prec()));
  throw DomainError("sgn on an interval straddling 0");
}

Interval iexp(const Interval& a) {
  return {dir1(mpfr_exp, a.lo, MPFR_RNDD), dir1(mpfr_exp, a.hi, MPFR_RNDU)};
}

Interval ilog(const Interval& a) {
  if (a.lo.sign() <= 0) throw DomainError("log of a nonpositive interval");
  return {dir1(mpfr_log, a.lo, MPFR_RNDD), dir1(mpfr_log, a.hi, MPFR_RNDU)};
}

// sin/cos/atan are 1-Lipschitz: enclose by midpoint value +- (radius + ulp).
static Interval lipschitz1(int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t), const Interval& a) {
  Real m = a.mid();
  Real v = dir1(fn, m, MPFR_RNDN);
  Real err = a.rad() + rulp(v) + rulp(m);
  Interval r = Interval::around(v, err);
  // sin/cos stay inside [-1, 1]
  return r;
}

Interval isin(const Interval& a) {
  Interval r = lipschitz1(mpfr_sin, a);
  Real one(1L, r.lo.prec());
  r.lo = rmax(r.lo, -one);
  r.hi = rmin(r.hi, one);
  return r;
}

Interval icos(const Interval& a) {
  Interval r = lipschitz1(mpfr_cos, a);
  Real one(1L, r.lo.prec());
  r.lo = rmax(r.lo, -one);
  r.hi = rmin(r.hi, one);
  return r;
}

Interval iatan(const Interval& a) {
  return {dir1(mpfr_atan, a.lo, MPFR_RNDD), dir1(mpfr_atan, a.hi, MPFR_RNDU)};
}

static Real rpow_dir(const Real& a, const Rat& e, mpfr_rnd_t rnd) {
  Real ex(e, a.prec(), rnd == MPFR_RNDU ? MPFR_RNDU : MPFR_RNDD);
  Real r(a.prec());
  mpfr_pow(r.raw(), a.raw(), ex.raw(), rnd);
  // one extra outward ulp to absorb the rounding of the exponent itself
  if (rnd == MPFR_RNDU) mpfr_nextabove(r.raw()); else mpfr_nextbelow(r.raw());
  return r;
}

Interval ipow(const Interval& a, const Rat& e) {
  if (is_integer(e)) {
    long k = to_long(e);
    if (k == 0) return Interval(Real(1L, a.lo.prec()));
    if (k < 0) {
      if (a.contains_zero()) throw DomainError("negative power of interval containing 0");
    }
    bool even = (k % 2 == 0);
    Real plo(a.lo.prec()), phi(a.lo.prec());
    auto p = [&](const Real& x, mpfr_rnd_t rnd) {
      Real r(x.prec());
      mpfr_pow_si(r.raw(), x.raw(), k, rnd);
      return r;
    };
    if (!even) {
      if (k > 0) return {p(a.lo, MPFR_RNDD), p(a.hi, MPFR_RNDU)};
      return {p(a.hi, MPFR_RNDD), p(a.lo, MPFR_RNDU)};
    }
    // even power
    Interval ab = iabs(a);
    if (k > 0) return {p(ab.lo, MPFR_RNDD), p(ab.hi, MPFR_RNDU)};
    return {p(ab.hi, MPFR_RNDD), p(ab.lo, MPFR_RNDU)};
  }
  // fractional exponent
  bool odd_root = (e.get_den() % 2 == 1);
  if (a.positive()) {
    if (e > 0) return {rpow_dir(a.lo, e, MPFR_RNDD), rpow_dir(a.hi, e, MPFR_RNDU)};
    return {rpow_dir(a.hi, e, MPFR_RNDD), rpow_dir(a.lo, e, MPFR_RNDU)};
  }
  if (a.negative() && odd_root) {
    // real odd root: x^(p/q) = sgn(x)^p * |x|^(p/q)
    Interval m = ipow(-a, e);
    bool neg = (e.get_num() % 2 != 0);
    return neg ? -m : m;
  }
  if (a.contains_zero() && e > 0 && odd_root) {
    Interval m = ipow(Interval(Real(0L, a.lo.prec()), a.mag()), e);
    return {-m.hi, m.hi};
  }
  throw DomainError("fractional power outside the real domain");
}

} // namespace dnk
