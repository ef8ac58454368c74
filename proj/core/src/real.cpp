#include "dnk/real.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dnk {

mpfr_prec_t Real::default_prec = 256;

Rat rat_pow_int(const Rat& q, long e) {
  if (e == 0) return Rat(1);
  Rat base = q;
  bool neg = e < 0;
  unsigned long n = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  if (neg) {
    if (base == 0) throw std::domain_error("rat_pow_int: 0 to negative power");
    base = 1 / base;
  }
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), n);
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), n);
  Rat r(num, den);
  r.canonicalize();
  return r;
}

static std::optional<mpz_class> int_root_exact(const mpz_class& a, unsigned long k) {
  if (k == 1) return a;
  if (a < 0) {
    if (k % 2 == 0) return std::nullopt;
    auto r = int_root_exact(-a, k);
    if (!r) return std::nullopt;
    return -*r;
  }
  mpz_class r;
  int exact = mpz_root(r.get_mpz_t(), a.get_mpz_t(), k);
  if (!exact) return std::nullopt;
  return r;
}

std::optional<Rat> rat_pow_exact(const Rat& q, const Rat& e) {
  if (is_integer(e)) return rat_pow_int(q, to_long(e));
  if (q == 0) return (e > 0) ? std::optional<Rat>(Rat(0)) : std::nullopt;
  if (q == 1) return Rat(1);
  unsigned long den = e.get_den().get_ui();
  auto rn = int_root_exact(q.get_num(), den);
  if (!rn) return std::nullopt;
  auto rd = int_root_exact(q.get_den(), den);
  if (!rd) return std::nullopt;
  Rat root(*rn, *rd);
  root.canonicalize();
  long num = e.get_num().get_si();
  if (root < 0 && num % 2 == 0) return std::nullopt; // would leave the rationals
  return rat_pow_int(root, num);
}

std::string rat_to_string(const Rat& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

std::size_t rat_hash(const Rat& q) {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](const mpz_class& z) {
    for (size_t i = 0, n = mpz_size(z.get_mpz_t()); i < n; ++i) {
      h ^= mpz_getlimbn(z.get_mpz_t(), i);
      h *= 1099511628211ull;
    }
    h ^= static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 2);
    h *= 1099511628211ull;
  };
  mix(q.get_num());
  mix(q.get_den());
  return h;
}

std::string Real::str(int digits) const {
  if (digits <= 0) digits = static_cast<int>(prec() * 0.3010) - 2;
  if (digits < 5) digits = 5;
  char fmt[32];
  std::snprintf(fmt, sizeof fmt, "%%.%dRg", digits);
  char* s = nullptr;
  if (mpfr_asprintf(&s, fmt, v_) < 0) return "<mpfr-error>";
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

static mpfr_prec_t pmax(const Real& a, const Real& b) {
  return std::max(a.prec(), b.prec());
}

#define DNK_BINOP(opname, fn)                                  \
  Real opname(const Real& a, const Real& b) {                  \
    Real r = Real::zero_with_prec(pmax(a, b));                                        \
    fn(r.raw(), a.raw(), b.raw(), MPFR_RNDN);                  \
    return r;                                                  \
  }

DNK_BINOP(operator+, mpfr_add)
DNK_BINOP(operator-, mpfr_sub)
DNK_BINOP(operator*, mpfr_mul)
DNK_BINOP(operator/, mpfr_div)
#undef DNK_BINOP

Real operator-(const Real& a) {
  Real r = Real::zero_with_prec(a.prec());
  mpfr_neg(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Real& operator+=(Real& a, const Real& b) { a = a + b; return a; }
Real& operator-=(Real& a, const Real& b) { a = a - b; return a; }
Real& operator*=(Real& a, const Real& b) { a = a * b; return a; }
Real& operator/=(Real& a, const Real& b) { a = a / b; return a; }

#define DNK_UNFN(name, fn)                     \
  Real name(const Real& a) {                   \
    Real r = Real::zero_with_prec(a.prec());                          \
    fn(r.raw(), a.raw(), MPFR_RNDN);           \
    return r;                                  \
  }

DNK_UNFN(rabs, mpfr_abs)
DNK_UNFN(rsqrt, mpfr_sqrt)
DNK_UNFN(rcbrt, mpfr_cbrt)
DNK_UNFN(rexp, mpfr_exp)
DNK_UNFN(rlog, mpfr_log)
DNK_UNFN(rsin, mpfr_sin)
DNK_UNFN(rcos, mpfr_cos)
DNK_UNFN(ratan, mpfr_atan)
#undef DNK_UNFN

Real rpow(const Real& a, const Real& b) {
  Real r = Real::zero_with_prec(pmax(a, b));
  mpfr_pow(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

Real rpow_si(const Real& a, long e) {
  Real r = Real::zero_with_prec(a.prec());
  mpfr_pow_si(r.raw(), a.raw(), e, MPFR_RNDN);
  return r;
}

Real rmax(const Real& a, const Real& b) { return (a >= b) ? a : b; }
Real rmin(const Real& a, const Real& b) { return (a <= b) ? a : b; }

Real rldexp(double mant, long e) {
  Real r(mant);
  mpfr_mul_2si(r.raw(), r.raw(), e, MPFR_RNDN);
  return r;
}

Real real_from_str(const std::string& s, mpfr_prec_t prec) {
  Real r = Real::zero_with_prec(prec ? prec : Real::default_prec);
  if (mpfr_set_str(r.raw(), s.c_str(), 10, MPFR_RNDN) != 0)
    throw std::invalid_argument("real_from_str: bad literal '" + s + "'");
  return r;
}

Real rulp(const Real& a) {
  if (a.is_zero() || !a.is_finite()) return rldexp(1.0, -static_cast<long>(a.prec()) * 4);
  Real u = rabs(a);
  mpfr_mul_2si(u.raw(), u.raw(), 1 - static_cast<long>(a.prec()), MPFR_RNDU);
  return u;
}

} // namespace dnk
