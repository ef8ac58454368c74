#pragma once

#include <mpfr.h>
#include <gmpxx.h>
#include <string>
#include <utility>
#include "dnk/rat.hpp"

namespace dnk {

// Thin value-semantics wrapper over mpfr_t.  Precision is carried per value;
// binary operations use the max precision of their operands unless a rounding
// mode/precision is requested explicitly.
class Real {
public:
  static mpfr_prec_t default_prec;

  Real() { mpfr_init2(v_, default_prec); mpfr_set_zero(v_, 1); }
  static Real zero_with_prec(mpfr_prec_t prec) { return Real(0L, prec); }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v_, 2); mpfr_swap(v_, o.v_); }
  Real(double d, mpfr_prec_t prec = 0) { mpfr_init2(v_, prec ? prec : default_prec); mpfr_set_d(v_, d, MPFR_RNDN); }
  Real(long n, mpfr_prec_t prec = 0) { mpfr_init2(v_, prec ? prec : default_prec); mpfr_set_si(v_, n, MPFR_RNDN); }
  Real(int n, mpfr_prec_t prec = 0) { mpfr_init2(v_, prec ? prec : default_prec); mpfr_set_si(v_, n, MPFR_RNDN); }
  // re-precision copy (rounds to nearest when narrowing)
  Real(const Real& o, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set(v_, o.raw(), MPFR_RNDN); }
  Real(const Rat& q, mpfr_prec_t prec = 0, mpfr_rnd_t rnd = MPFR_RNDN) {
    mpfr_init2(v_, prec ? prec : default_prec);
    mpfr_set_q(v_, q.get_mpq_t(), rnd);
  }
  ~Real() { mpfr_clear(v_); }

  Real& operator=(const Real& o) {
    if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    return *this;
  }
  Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string str(int digits = 0) const;

  bool is_nan() const { return mpfr_nan_p(v_); }
  bool is_inf() const { return mpfr_inf_p(v_); }
  bool is_zero() const { return mpfr_zero_p(v_); }
  bool is_finite() const { return mpfr_number_p(v_); }
  int sign() const { return mpfr_sgn(v_); }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_); }
  friend bool operator!=(const Real& a, const Real& b) { return !mpfr_equal_p(a.v_, b.v_); }

private:
  mpfr_t v_;
};

// Arithmetic (round-to-nearest, result precision = max of operands).
Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator-(const Real& a);
Real& operator+=(Real& a, const Real& b);
Real& operator-=(Real& a, const Real& b);
Real& operator*=(Real& a, const Real& b);
Real& operator/=(Real& a, const Real& b);

Real rabs(const Real& a);
Real rsqrt(const Real& a);
Real rcbrt(const Real& a);
Real rexp(const Real& a);
Real rlog(const Real& a);
Real rsin(const Real& a);
Real rcos(const Real& a);
Real ratan(const Real& a);
Real rpow(const Real& a, const Real& b);   // a > 0 general; integer b any sign
Real rpow_si(const Real& a, long e);
Real rmax(const Real& a, const Real& b);
Real rmin(const Real& a, const Real& b);
// 2^e at precision of the default
Real rldexp(double mant, long e);
Real real_from_str(const std::string& s, mpfr_prec_t prec = 0);

// One unit in the last place of a (|a| * 2^(1-prec)); 0 -> tiny.
Real rulp(const Real& a);

} // namespace dnk
