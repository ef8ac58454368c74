#include "dnk/numerics.hpp"

#include <stdexcept>

namespace dnk {

namespace {

// Dormand-Prince 5(4) tableau, exact rationals
const Rat A21 = rat(1, 5);
const Rat A31 = rat(3, 40), A32 = rat(9, 40);
const Rat A41 = rat(44, 45), A42 = rat(-56, 15), A43 = rat(32, 9);
const Rat A51 = rat(19372, 6561), A52 = rat(-25360, 2187), A53 = rat(64448, 6561),
          A54 = rat(-212, 729);
const Rat A61 = rat(9017, 3168), A62 = rat(-355, 33), A63 = rat(46732, 5247),
          A64 = rat(49, 176), A65 = rat(-5103, 18656);
const Rat B1 = rat(35, 384), B3 = rat(500, 1113), B4 = rat(125, 192),
          B5 = rat(-2187, 6784), B6 = rat(11, 84);
// embedded 4th-order weights
const Rat E1 = rat(5179, 57600), E3 = rat(7571, 16695), E4 = rat(393, 640),
          E5 = rat(-92097, 339200), E6 = rat(187, 2100), E7 = rat(1, 40);

std::vector<Real> axpyv(const std::vector<Real>& y, const Real& h,
                        std::initializer_list<std::pair<Rat, const std::vector<Real>*>> ks) {
  std::vector<Real> out = y;
  for (auto& [c, k] : ks) {
    Real hc = h * Real(c, h.prec());
    for (size_t i = 0; i < out.size(); ++i) out[i] += hc * (*k)[i];
  }
  return out;
}

} // namespace

std::vector<OdeStepPoint> rk_integrate(const OdeRhs& rhs, const Real& t0,
                                       const std::vector<Real>& y0, const Real& t1,
                                       const Real& tol, long max_steps) {
  mpfr_prec_t prec = t0.prec();
  int dir = (t1 > t0) ? 1 : -1;
  Real t = t0;
  std::vector<Real> y = y0;
  std::vector<OdeStepPoint> traj;
  traj.push_back({t, y});
  Real span = rabs(t1 - t0);
  Real h = span / Real(64L, prec);
  Real hmin = span * rldexp(1.0, -static_cast<long>(prec));
  if (dir < 0) h = -h;
  for (long step = 0; step < max_steps; ++step) {
    if ((dir > 0 && t >= t1) || (dir < 0 && t <= t1)) return traj;
    // do not step past the endpoint
    if (dir > 0 ? (t + h > t1) : (t + h < t1)) h = t1 - t;

    auto k1 = rhs(t, y);
    auto k2 = rhs(t + Real(A21, prec) * h, axpyv(y, h, {{A21, &k1}}));
    auto k3 = rhs(t + Real(rat(3, 10), prec) * h,
                  axpyv(y, h, {{A31, &k1}, {A32, &k2}}));
    auto k4 = rhs(t + Real(rat(4, 5), prec) * h,
                  axpyv(y, h, {{A41, &k1}, {A42, &k2}, {A43, &k3}}));
    auto k5 = rhs(t + Real(rat(8, 9), prec) * h,
                  axpyv(y, h, {{A51, &k1}, {A52, &k2}, {A53, &k3}, {A54, &k4}}));
    auto k6 = rhs(t + h,
                  axpyv(y, h, {{A61, &k1}, {A62, &k2}, {A63, &k3}, {A64, &k4}, {A65, &k5}}));
    auto y5 = axpyv(y, h, {{B1, &k1}, {B3, &k3}, {B4, &k4}, {B5, &k5}, {B6, &k6}});
    auto k7 = rhs(t + h, y5);
    auto y4 = axpyv(y, h, {{E1, &k1}, {E3, &k3}, {E4, &k4}, {E5, &k5}, {E6, &k6}, {E7, &k7}});

    Real err(0L, prec);
    Real scale(0L, prec);
    for (size_t i = 0; i < y.size(); ++i) {
      Real d = rabs(y5[i] - y4[i]);
      err = rmax(err, d);
      scale = rmax(scale, rabs(y5[i]));
      if (!y5[i].is_finite())
        throw DomainError("rk_integrate: non-finite state (singularity?) at t = " + t.str(8));
    }
    Real tol_here = tol * (Real(1L, prec) + scale);
    if (err <= tol_here) {
      t = t + h;
      y = y5;
      traj.push_back({t, y});
    }
    // step control: h *= 0.9 (tol/err)^(1/5), clamped
    Real fac(0.9, prec);
    if (!err.is_zero())
      fac = Real(0.9, prec) * rpow(tol_here / err, Real(0.2, prec));
    fac = rmin(rmax(fac, Real(0.2, prec)), Real(5.0, prec));
    h = h * fac;
    if (rabs(h) < hmin)
      throw DomainError("rk_integrate: step-size underflow near t = " + t.str(8));
  }
  throw DomainError("rk_integrate: max step count exceeded");
}

} // namespace dnk
