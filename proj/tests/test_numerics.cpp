#include "doctest.h"

#include "dnk/calculus.hpp"
#include "dnk/eval.hpp"
#include "dnk/numerics.hpp"
#include "dnk/parse.hpp"

#include <random>

using namespace dnk;

namespace {

Real pow2(long e, mpfr_prec_t prec) { return rpow_si(Real(2, prec), e); }

// Independent oracle for Lambert W: bisection on w*e^w - x at elevated
// precision.  Deliberately shares no code with the Halley implementation.
Real lambert_oracle(int branch, const Real& x, mpfr_prec_t prec) {
  mpfr_prec_t p2 = prec + 64;
  auto g = [&](const Real& w) { return w * rexp(w) - Real(x, p2); };
  Real lo(0, p2), hi(0, p2);
  if (branch == 0) {
    lo = Real(-1, p2);
    hi = Real(1, p2);
    while (g(hi) < Real(0, p2)) hi = hi * Real(2, p2);
  } else {
    hi = Real(-1, p2);
    lo = Real(-2, p2);
    while (g(lo) < Real(0, p2)) lo = lo * Real(2, p2);  // g -> 0^- as w -> -inf
  }
  for (int i = 0; i < (int)p2 + 8; ++i) {
    Real mid = (lo + hi) * Real(0.5, p2);
    Real gm = g(mid);
    bool left = (branch == 0) ? (gm < Real(0, p2)) : (gm > Real(0, p2));
    if (left) lo = mid; else hi = mid;
  }
  return Real((lo + hi) * Real(0.5, p2), prec);
}

} // namespace

TEST_CASE("lambert W matches bisection oracle to a few ulp") {
  mpfr_prec_t prec = 200;
  std::vector<double> xs0 = {-0.36, -0.2, -0.05, 0.5, 1.0, 3.0, 10.0, 1e6};
  for (double xd : xs0) {
    Real x(xd, prec);
    Real w = lambert_w(0, x);
    Real ref = lambert_oracle(0, x, prec);
    CHECK(rabs(w - ref) <= Real(4, prec) * rulp(ref));
  }
  std::vector<double> xsm1 = {-0.367, -0.3, -0.2, -0.1, -0.01, -1e-6};
  for (double xd : xsm1) {
    Real x(xd, prec);
    Real w = lambert_w(-1, x);
    Real ref = lambert_oracle(-1, x, prec);
    CHECK(rabs(w - ref) <= Real(4, prec) * rulp(ref));
  }
  // W(0) = 0 exactly
  CHECK(lambert_w(0, Real(0, prec)).is_zero());
  // frozen reference value (from the oracle): W0(1)
  Real w1 = lambert_w(0, Real(1, prec));
  Real ref = real_from_str("0.56714329040978387299996866221035554975381578718651", prec);
  CHECK(rabs(w1 - ref) < pow2(-160, prec));
  // branch point exactness: W(-1/e) = -1 for both branches
  Real bp = Real(-1, prec) / rexp(Real(1, prec));
  CHECK(rabs(lambert_w(0, bp) + Real(1, prec)) < pow2(-90, prec));
  CHECK(rabs(lambert_w(-1, bp) + Real(1, prec)) < pow2(-90, prec));
  // defining identity holds as an enclosure
  Interval xi = Interval::around(Real(2.5, prec), pow2(-150, prec));
  Interval wi = lambert_w_enclosure(0, xi);
  Interval resid = wi * iexp(wi) - xi;
  CHECK(resid.contains_zero());
}

TEST_CASE("hyper3f2 dual evaluation") {
  mpfr_prec_t prec = 200;
  // Oracle: accumulate terms from explicit Pochhammer products, not the
  // running-ratio recurrence the implementation uses.
  auto oracle = [&](double a1, double a2, double a3, double b1, double b2,
                    double z) {
    Real sum(0, prec + 64), zr(z, prec + 64);
    for (int n = 0; n < 700; ++n) {
      Real term(1, prec + 64);
      for (int k = 0; k < n; ++k) {
        term = term * (Real(a1, prec + 64) + Real(k, prec + 64)) *
               (Real(a2, prec + 64) + Real(k, prec + 64)) *
               (Real(a3, prec + 64) + Real(k, prec + 64)) /
               ((Real(b1, prec + 64) + Real(k, prec + 64)) *
                (Real(b2, prec + 64) + Real(k, prec + 64)) *
                (Real(1, prec + 64) + Real(k, prec + 64)));
        term = term * zr;
      }
      sum = sum + term;
      if (n > 10 && rabs(term) < pow2(-(long)prec - 32, prec + 64)) break;
    }
    return Real(sum, prec);
  };
  struct Case { double a1, a2, a3, b1, b2, z; };
  std::vector<Case> cases = {
      {1, 4.0 / 3, 5.0 / 3, 13.0 / 6, 11.0 / 6, 0.5},
      {1, 4.0 / 3, 5.0 / 3, 13.0 / 6, 11.0 / 6, -0.7},
      {0.5, 0.25, 2.0, 1.5, 3.0, 0.6},
      {1, 1, 1, 2, 2, -0.3},
  };
  for (auto& c : cases) {
    Real tail;
    Real v = hyper3f2(Real(c.a1, prec), Real(c.a2, prec), Real(c.a3, prec),
                      Real(c.b1, prec), Real(c.b2, prec), Real(c.z, prec), &tail);
    Real ref = oracle(c.a1, c.a2, c.a3, c.b1, c.b2, c.z);
    CHECK(rabs(v - ref) < (rabs(ref) + Real(1, prec)) * pow2(-150, prec) + tail);
    CHECK(tail < pow2(-120, prec));
  }
  CHECK_THROWS(hyper3f2(Real(1, prec), Real(1, prec), Real(1, prec),
                        Real(2, prec), Real(2, prec), Real(0.99, prec)));
}

TEST_CASE("quadrature on known integrals") {
  mpfr_prec_t prec = 200;
  Real tol = pow2(-120, prec);
  // smooth: int_0^1 x^2 = 1/3 (exact for G7 already)
  Real v = quadrature([](const Real& x) { return x * x; }, Real(0, prec),
                      Real(1, prec), tol);
  CHECK(rabs(v - Real(rat(1, 3), prec)) < tol * Real(8, prec));
  // oscillatory-ish: int_0^2 exp(-x) = 1 - e^-2
  Real v2 = quadrature([](const Real& x) { return rexp(-x); }, Real(0, prec),
                       Real(2, prec), tol);
  CHECK(rabs(v2 - (Real(1, prec) - rexp(Real(-2, prec)))) < tol * Real(16, prec));
  // integrable endpoint singularity: int_0^1 x^(-1/2) = 2 (greedy refinement)
  Real v3 = quadrature([](const Real& x) { return Real(1, x.prec()) / rsqrt(x); },
                       Real(0, prec), Real(1, prec), Real(1e-25, prec));
  CHECK(rabs(v3 - Real(2, prec)) < Real(1e-22, prec));
  // divergent integrand is reported, not silently mis-summed
  CHECK_THROWS(quadrature([](const Real& x) { return Real(1, x.prec()) / x; },
                          Real(0, prec), Real(1, prec), Real(1e-10, prec)));
}

TEST_CASE("rk_integrate order and accuracy") {
  mpfr_prec_t prec = 128;
  // y' = y, y(0)=1 -> y(1) = e
  auto traj = rk_integrate(
      [](const Real& /*t*/, const std::vector<Real>& y) {
        return std::vector<Real>{y[0]};
      },
      Real(0, prec), {Real(1, prec)}, Real(1, prec), Real(1e-20, prec));
  REQUIRE(!traj.empty());
  Real yend = traj.back().y[0];
  CHECK(rabs(yend - rexp(Real(1, prec))) < Real(1e-17, prec));
  // 2D: harmonic oscillator over one period stays on the circle
  auto traj2 = rk_integrate(
      [](const Real&, const std::vector<Real>& y) {
        return std::vector<Real>{y[1], -y[0]};
      },
      Real(0, prec), {Real(1, prec), Real(0, prec)}, Real(6, prec),
      Real(1e-18, prec));
  auto& last = traj2.back();
  Real r2 = last.y[0] * last.y[0] + last.y[1] * last.y[1];
  CHECK(rabs(r2 - Real(1, prec)) < Real(1e-15, prec));
}

TEST_CASE("finite differences agree with symbolic derivatives") {
  Workspace ws = default_workspace();
  mpfr_prec_t prec = 256;
  EP e = parse("exp(x*y) * sin(x) + x^3*y^2");
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.3, 1.2);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<Real> pt{Real(U(rng), prec), Real(U(rng), prec)};
    auto f = [&](const std::vector<Real>& p) {
      EvalEnv env;
      env.prec = prec;
      env.set("x", p[0]);
      env.set("y", p[1]);
      return eval_mid(e, env);
    };
    std::vector<std::vector<unsigned>> mis = {{1, 0}, {0, 1}, {2, 0}, {1, 1}, {2, 1}};
    for (auto& mi : mis) {
      EP d = e;
      for (unsigned k = 0; k < mi[0]; ++k) d = differentiate(d, "x", ws);
      for (unsigned k = 0; k < mi[1]; ++k) d = differentiate(d, "y", ws);
      EvalEnv env;
      env.prec = prec;
      env.set("x", pt[0]);
      env.set("y", pt[1]);
      Real sym = eval_mid(d, env);
      Real err;
      Real fd = fd_derivative(f, pt, mi, Real(1.0 / 64, prec), &err);
      CHECK(rabs(fd - sym) < rmax(err * Real(16, prec), Real(1e-25, prec)));
      CHECK(rabs(fd - sym) < Real(1e-20, prec));
    }
  }
}

TEST_CASE("newton_root") {
  mpfr_prec_t prec = 200;
  // cube root of 2
  Real r = newton_root([&](const Real& x) { return x * x * x - Real(2, prec); },
                       [&](const Real& x) { return Real(3, prec) * x * x; },
                       Real(1.0, prec), pow2(-150, prec));
  CHECK(rabs(r * r * r - Real(2, prec)) < pow2(-140, prec));
  // bracket fallback survives a bad guess
  Real r2 = newton_root(
      [&](const Real& x) { return ratan(x) - Real(0.5, prec); },
      [&](const Real& x) { return Real(1, prec) / (Real(1, prec) + x * x); },
      Real(100.0, prec), pow2(-150, prec),
      200, std::make_pair(Real(0, prec), Real(2, prec)));
  CHECK(rabs(ratan(r2) - Real(0.5, prec)) < pow2(-140, prec));
}
