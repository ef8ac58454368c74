#include "dnk/numerics.hpp"

namespace dnk {

namespace {

// iterated central-difference evaluation of the mixed partial `mi` at `point`
// with per-axis step h
Real stencil(const PointFn& f, std::vector<Real> point,
             std::vector<unsigned> mi, const Real& h) {
  for (size_t i = 0; i < mi.size(); ++i) {
    if (mi[i] == 0) continue;
    mi[i] -= 1;
    std::vector<Real> pp = point, pm = point;
    pp[i] += h;
    pm[i] -= h;
    Real fp = stencil(f, pp, mi, h);
    Real fm = stencil(f, pm, mi, h);
    return (fp - fm) / (Real(2L, h.prec()) * h);
  }
  return f(point);
}

} // namespace

Real fd_derivative(const PointFn& f, const std::vector<Real>& point,
                   const std::vector<unsigned>& mi, const Real& h0,
                   Real* err_estimate) {
  mpfr_prec_t prec = h0.prec();
  // Richardson extrapolation on the h^2 error expansion of central differences
  const int levels = 5;
  std::vector<std::vector<Real>> R(levels);
  Real h = h0;
  Real best(0L, prec), err(0L, prec);
  bool have_err = false;
  for (int k = 0; k < levels; ++k) {
    R[k].resize(k + 1, Real(0L, prec));
    R[k][0] = stencil(f, point, mi, h);
    Real p4(4L, prec);
    Real fac = p4;
    for (int j = 1; j <= k; ++j) {
      R[k][j] = (fac * R[k][j - 1] - R[k - 1][j - 1]) / (fac - Real(1L, prec));
      fac = fac * p4;
    }
    if (k > 0) {
      Real d = rabs(R[k][k] - R[k - 1][k - 1]);
      if (!have_err || d < err) {
        err = d;
        best = R[k][k];
        have_err = true;
      }
    }
    h = h / Real(2L, prec);
  }
  if (err_estimate) *err_estimate = err;
  return best;
}

} // namespace dnk
