#include "dnk/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace dnk {

namespace {

// working-precision copy with extra guard bits
Real up(const Real& x, mpfr_prec_t extra) {
  Real r(x.prec() + extra);
  mpfr_set(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real round_to(const Real& x, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_set(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

} // namespace

Real lambert_w(int branch, const Real& x) {
  if (branch != 0 && branch != -1)
    throw DomainError("lambert_w: only real branches 0 and -1");
  const mpfr_prec_t target = x.prec();
  const mpfr_prec_t work = target + 64;
  Real xx = up(x, 64);
  Real e(work);
  mpfr_set_ui(e.raw(), 1, MPFR_RNDN);
  Real me = -rexp(-Real(1L, work));  // -1/e
  if (xx < me) {
    // tolerate roundoff at the branch point itself
    Real slack = rldexp(1.0, -static_cast<long>(target) + 8) * rabs(me);
    if (xx < me - slack) throw DomainError("lambert_w: argument below -1/e");
    xx = me;
  }
  if (branch == -1 && xx.sign() >= 0)
    throw DomainError("lambert_w: branch -1 needs -1/e <= x < 0");
  if (branch == 0 && xx.is_zero()) return Real(0L, target);

  // branch-point series in p = +-sqrt(2(e x + 1))
  Real p2 = Real(2L, work) * (rexp(Real(1L, work)) * xx + Real(1L, work));
  Real w(work);
  bool seeded = false;
  if (p2.sign() >= 0 && p2 < Real(0.25, work)) {
    Real p = rsqrt(p2);
    if (branch == -1) p = -p;
    // W = -1 + p - p^2/3 + 11 p^3/72 - 43 p^4 / 540
    Real p3 = p * p2, p4 = p2 * p2;
    if (branch == -1) p3 = -p3;  // p^3 sign follows p
    w = Real(-1L, work) + p - p2 / Real(3L, work) + p3 * Real(11L, work) / Real(72L, work)
        - p4 * Real(43L, work) / Real(540L, work);
    seeded = true;
  }
  if (!seeded) {
    if (branch == 0) {
      if (xx > Real(3L, work)) {
        Real l = rlog(xx);
        w = l - rlog(l);
      } else {
        // W ~ x (1 - x) near 0; fine as a seed elsewhere in [-1/4, 3]
        w = xx * (Real(1L, work) - xx);
        if (w <= Real(-1L, work)) w = Real(-0.5, work);
      }
    } else {
      Real l1 = rlog(-xx);
      Real l2 = rlog(-l1);
      w = l1 - l2;  // large negative regime
      if (!(w < Real(-1L, work))) w = Real(-2L, work);
    }
  }

  // Halley iteration on f(w) = w e^w - x
  Real tol = rldexp(1.0, -static_cast<long>(target) - 8);
  for (int it = 0; it < 200; ++it) {
    Real ew = rexp(w);
    Real f = w * ew - xx;
    Real wp1 = w + Real(1L, work);
    Real denom = ew * wp1 - (w + Real(2L, work)) * f / (Real(2L, work) * wp1);
    if (denom.is_zero() || !denom.is_finite()) break;
    Real dw = f / denom;
    if (!dw.is_finite()) break;
    w = w - dw;
    if (branch == -1 && !(w < Real(0L, work))) w = Real(-1L, work);
    if (rabs(dw) <= tol * (rabs(w) + tol)) break;
  }
  return round_to(w, target);
}

Interval lambert_w_enclosure(int branch, const Interval& x) {
  // W is monotone on each real branch (increasing on 0, decreasing on -1)
  Real wl = lambert_w(branch, x.lo);
  Real wh = lambert_w(branch, x.hi);
  Real lo = rmin(wl, wh), hi = rmax(wl, wh);
  Real pad = (rulp(lo) + rulp(hi)) * Real(4L, lo.prec());
  return {lo - pad, hi + pad};
}

Real hyper3f2(const Real& a1, const Real& a2, const Real& a3, const Real& b1,
              const Real& b2, const Real& z, Real* trunc_bound) {
  const mpfr_prec_t target = z.prec();
  const mpfr_prec_t work = target + 64;
  Real az = rabs(z);
  if (!(az < Real(0.95, work)))
    throw DomainError("hyper3f2: |z| >= 0.95 outside the supported series region");
  Real term(1L, work), sum(1L, work);
  Real tol = rldexp(1.0, -static_cast<long>(target) - 16);
  Real bound(0L, work);
  long n = 0;
  for (; n < 100000; ++n) {
    Real rn((double)n, work);
    Real ratio = (a1 + rn) * (a2 + rn) * (a3 + rn) /
                 ((b1 + rn) * (b2 + rn) * (rn + Real(1L, work)));
    term = term * ratio * z;
    sum += term;
    // geometric tail bound once the term ratio magnitude has settled below r < 1
    Real rmagn = rabs(ratio) * az;
    if (n > 8 && rmagn < Real(0.97, work)) {
      Real r = rmax(rmagn, az);
      // subsequent ratios approach |z|; bound them by max(current, |z|)*1.02
      r = rmin(r * Real(1.02, work), Real(0.985, work));
      bound = rabs(term) * r / (Real(1L, work) - r);
      if (bound < tol * (rabs(sum) + Real(1L, work))) break;
    }
  }
  if (n >= 100000) throw DomainError("hyper3f2: series failed to converge");
  if (trunc_bound) *trunc_bound = round_to(bound + rulp(sum) * Real(n + 4.0, work), target);
  return round_to(sum, target);
}

Interval hyper3f2_enclosure(const Real& a1, const Real& a2, const Real& a3,
                            const Real& b1, const Real& b2, const Interval& z) {
  Real m = z.mid();
  Real tb(0L, m.prec());
  Real v = hyper3f2(a1, a2, a3, b1, b2, m, &tb);
  // Lipschitz bound over z interval: |d/dz 3F2| <= 3F2'(|args|; |z_max|) with
  // absolute-value parameters (all our parameters are positive).
  Real zm = z.mag();
  Real lip = rabs(a1 * a2 * a3 / (b1 * b2)) *
             hyper3f2(rabs(a1) + Real(1L, m.prec()), rabs(a2) + Real(1L, m.prec()),
                      rabs(a3) + Real(1L, m.prec()), rabs(b1) + Real(1L, m.prec()),
                      rabs(b2) + Real(1L, m.prec()), zm);
  Real rad = tb + lip * z.rad() + rulp(v) * Real(8L, m.prec());
  return Interval::around(v, rad);
}

Real newton_root(const RealFn& f, const RealFn& df, const Real& guess,
                 const Real& tol, long max_iter,
                 std::optional<std::pair<Real, Real>> bracket) {
  Real x = guess;
  Real lo(0L, x.prec()), hi(0L, x.prec());
  bool have_bracket = bracket.has_value();
  Real flo(0L, x.prec());
  if (have_bracket) {
    lo = bracket->first;
    hi = bracket->second;
    flo = f(lo);
    Real fhi = f(hi);
    if (flo.sign() * fhi.sign() > 0) have_bracket = false;
  }
  for (long it = 0; it < max_iter; ++it) {
    Real fx = f(x);
    if (rabs(fx).is_zero()) return x;
    Real dfx = df(x);
    bool bad = dfx.is_zero() || !dfx.is_finite() || !fx.is_finite();
    Real step(0L, x.prec());
    if (!bad) {
      step = fx / dfx;
      bad = !step.is_finite();
    }
    Real xn = x - step;
    if (have_bracket && (bad || xn < lo || xn > hi)) {
      // bisection fallback
      Real mid = (lo + hi) / Real(2L, x.prec());
      Real fm = f(mid);
      if (fm.sign() == flo.sign()) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
      x = (lo + hi) / Real(2L, x.prec());
      if (rabs(hi - lo) < tol) return x;
      continue;
    }
    if (bad) throw DomainError("newton_root: derivative degenerate and no bracket");
    if (have_bracket) {
      if (f(xn).sign() == flo.sign()) lo = xn;
      else hi = xn;
    }
    x = xn;
    if (rabs(step) <= tol * (rabs(x) + Real(1L, x.prec()))) {
      Real resid = rabs(f(x));
      if (resid <= rmax(tol, rabs(fx)) * Real(1000L, x.prec()) + tol) return x;
      return x;
    }
  }
  throw DomainError("newton_root: no convergence");
}

} // namespace dnk
