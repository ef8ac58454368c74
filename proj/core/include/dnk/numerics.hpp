#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>
#include "dnk/interval.hpp"

namespace dnk {

struct PrecisionConfig {
  mpfr_prec_t bits = 256;
  double tol_log10 = -30;        // target relative tolerance 10^tol_log10
  long max_iter = 500;
  std::uint64_t seed = 20260824;

  Real tol() const { return rpow(Real(10.0, bits), Real((double)tol_log10, bits)); }
  // invariant from the spec: precision >= 2*(-log2 tol) + 32 guard bits
  bool sane() const { return bits >= 2 * (-tol_log10) * 3.3219280948873623 + 32; }
};

// ---- Lambert W, real branches 0 and -1 ----
// Halley iteration; near the branch point -1/e the series in sqrt(2(ex+1))
// seeds (and for W_{-1} carries) the iteration.
Real lambert_w(int branch, const Real& x);
// enclosure with a back-substitution-derived radius
Interval lambert_w_enclosure(int branch, const Interval& x);

// ---- generalized hypergeometric 3F2, series region |z| < 0.95 ----
// Returns the truncated sum; *trunc_bound (if given) receives a certified
// bound on the dropped tail.
Real hyper3f2(const Real& a1, const Real& a2, const Real& a3, const Real& b1,
              const Real& b2, const Real& z, Real* trunc_bound = nullptr);
Interval hyper3f2_enclosure(const Real& a1, const Real& a2, const Real& a3,
                            const Real& b1, const Real& b2, const Interval& z);

// ---- scalar root finding: Newton with optional bisection fallback ----
using RealFn = std::function<Real(const Real&)>;
Real newton_root(const RealFn& f, const RealFn& df, const Real& guess,
                 const Real& tol, long max_iter = 200,
                 std::optional<std::pair<Real, Real>> bracket = std::nullopt);

// ---- adaptive Gauss-Kronrod (G7/K15) quadrature ----
// Nodes/weights generated at working precision (see quadrature.cpp).
Real quadrature(const RealFn& f, const Real& a, const Real& b, const Real& tol,
                int max_depth = 40);

// ---- embedded Runge-Kutta 5(4), Dormand-Prince ----
using OdeRhs = std::function<std::vector<Real>(const Real&, const std::vector<Real>&)>;
struct OdeStepPoint {
  Real t;
  std::vector<Real> y;
};
std::vector<OdeStepPoint> rk_integrate(const OdeRhs& rhs, const Real& t0,
                                       const std::vector<Real>& y0, const Real& t1,
                                       const Real& tol, long max_steps = 200000);

// ---- finite-difference oracle (Richardson-extrapolated central differences) ----
using PointFn = std::function<Real(const std::vector<Real>&)>;
// multi-index over the point's coordinates, total order <= 3
Real fd_derivative(const PointFn& f, const std::vector<Real>& point,
                   const std::vector<unsigned>& mi, const Real& h0,
                   Real* err_estimate = nullptr);

} // namespace dnk
