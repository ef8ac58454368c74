#include "dnk/numerics.hpp"
#include "dnk/rat.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace dnk {

namespace {

// ---- exact Legendre P7 and the Stieltjes polynomial E8 over Q ----

// P7(x) = (429 x^7 - 693 x^5 + 315 x^3 - 35 x)/16
const long P7_NUM[8] = {0, -35, 0, 315, 0, -693, 0, 429};
const long P7_DEN = 16;

// coefficients c_0..c_8 of E8 with c_8 = 1, satisfying
// \int_{-1}^{1} E8(x) P7(x) x^k dx = 0, k = 0..7
std::vector<Rat> stieltjes_e8_coeffs() {
  auto moment = [](long m) -> Rat {  // \int_{-1}^1 x^m dx
    if (m % 2) return Rat(0);
    return rat(2, m + 1);
  };
  // A[k][j] = \int P7(x) x^j x^k dx ; rhs[k] = -\int P7(x) x^8 x^k dx
  std::vector<std::vector<Rat>> A(8, std::vector<Rat>(8));
  std::vector<Rat> rhs(8);
  for (long k = 0; k < 8; ++k) {
    for (long j = 0; j < 8; ++j) {
      Rat s = 0;
      for (long i = 0; i < 8; ++i)
        if (P7_NUM[i]) s += rat(P7_NUM[i], P7_DEN) * moment(i + j + k);
      A[k][j] = s;
    }
    Rat s = 0;
    for (long i = 0; i < 8; ++i)
      if (P7_NUM[i]) s += rat(P7_NUM[i], P7_DEN) * moment(i + 8 + k);
    rhs[k] = -s;
  }
  // exact Gaussian elimination
  for (int col = 0; col < 8; ++col) {
    int piv = -1;
    for (int r = col; r < 8; ++r)
      if (A[r][col] != 0) { piv = r; break; }
    if (piv < 0) throw std::logic_error("stieltjes system singular");
    std::swap(A[col], A[piv]);
    std::swap(rhs[col], rhs[piv]);
    for (int r = 0; r < 8; ++r) {
      if (r == col || A[r][col] == 0) continue;
      Rat f = A[r][col] / A[col][col];
      for (int c = col; c < 8; ++c) A[r][c] -= f * A[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<Rat> c(9);
  for (int i = 0; i < 8; ++i) c[i] = rhs[i] / A[i][i];
  c[8] = 1;
  return c;
}

Real poly_eval(const std::vector<Real>& coeffs, const Real& x) {
  Real r(0L, x.prec());
  for (size_t i = coeffs.size(); i-- > 0;) r = r * x + coeffs[i];
  return r;
}

struct GKRule {
  std::vector<Real> nodes;     // 15 Kronrod nodes on (-1,1), ascending
  std::vector<Real> wk;        // Kronrod weights
  std::vector<Real> wg;        // Gauss weights at the 7 Gauss nodes (indices 1,3,..,13)
};

Real newton_poly_root(const std::vector<Real>& c, const std::vector<Real>& dc,
                      Real lo, Real hi, mpfr_prec_t prec) {
  Real flo = poly_eval(c, lo);
  Real x = (lo + hi) / Real(2L, prec);
  for (int it = 0; it < 300; ++it) {
    Real fx = poly_eval(c, x);
    Real dfx = poly_eval(dc, x);
    Real xn(prec);
    bool ok = !dfx.is_zero();
    if (ok) {
      xn = x - fx / dfx;
      ok = xn.is_finite() && xn > lo && xn < hi;
    }
    if (!ok) {
      if (fx.sign() == flo.sign()) { lo = x; flo = fx; }
      else hi = x;
      xn = (lo + hi) / Real(2L, prec);
    } else {
      if (fx.sign() == flo.sign()) { lo = x; flo = fx; }
      else hi = x;
    }
    if (rabs(xn - x) <= rulp(x) * Real(4L, prec)) { x = xn; break; }
    x = xn;
  }
  return x;
}

GKRule build_rule(mpfr_prec_t prec) {
  const mpfr_prec_t work = prec + 64;
  // real coefficient vectors
  std::vector<Real> p7(8, Real(0L, work)), dp7(7, Real(0L, work));
  for (int i = 0; i < 8; ++i) p7[i] = Real(rat(P7_NUM[i], P7_DEN), work);
  for (int i = 1; i < 8; ++i) dp7[i - 1] = Real((double)i, work) * p7[i];
  auto e8q = stieltjes_e8_coeffs();
  std::vector<Real> e8(9, Real(0L, work)), de8(8, Real(0L, work));
  for (int i = 0; i < 9; ++i) e8[i] = Real(e8q[i], work);
  for (int i = 1; i < 9; ++i) de8[i - 1] = Real((double)i, work) * e8[i];

  // Gauss nodes: roots of P7, from Chebyshev-style brackets
  std::vector<Real> gauss;
  {
    std::vector<double> approx = {-0.9491079123, -0.7415311856, -0.4058451514, 0.0,
                                  0.4058451514, 0.7415311856, 0.9491079123};
    for (double a : approx) {
      Real lo(a - 0.05, work), hi(a + 0.05, work);
      gauss.push_back(newton_poly_root(p7, dp7, lo, hi, work));
    }
  }
  // Stieltjes nodes interlace with the Gauss nodes and +-1
  std::vector<Real> stielt;
  {
    std::vector<Real> fence;
    fence.push_back(Real(-1L, work));
    for (auto& g : gauss) fence.push_back(g);
    fence.push_back(Real(1L, work));
    for (size_t i = 0; i + 1 < fence.size(); ++i)
      stielt.push_back(newton_poly_root(e8, de8, fence[i], fence[i + 1], work));
  }
  GKRule rule;
  // merge ascending: s0 g0 s1 g1 ... g6 s7
  for (size_t i = 0; i < 7; ++i) {
    rule.nodes.push_back(stielt[i]);
    rule.nodes.push_back(gauss[i]);
  }
  rule.nodes.push_back(stielt[7]);

  // Gauss weights: w = 2/((1-x^2) P7'(x)^2)
  for (auto& g : gauss) {
    Real d = poly_eval(dp7, g);
    rule.wg.push_back(Real(2L, work) / ((Real(1L, work) - g * g) * d * d));
  }
  // Kronrod weights from the moment-exactness linear system (k = 0..14)
  {
    const int n = 15;
    std::vector<std::vector<Real>> A(n, std::vector<Real>(n, Real(0L, work)));
    std::vector<Real> rhs(n, Real(0L, work));
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) A[k][j] = rpow_si(rule.nodes[j], k);
      rhs[k] = (k % 2 == 0) ? Real(rat(2, k + 1), work) : Real(0L, work);
    }
    for (int col = 0; col < n; ++col) {
      int piv = col;
      for (int r = col + 1; r < n; ++r)
        if (rabs(A[r][col]) > rabs(A[piv][col])) piv = r;
      std::swap(A[col], A[piv]);
      std::swap(rhs[col], rhs[piv]);
      for (int r = 0; r < n; ++r) {
        if (r == col) continue;
        Real f = A[r][col] / A[col][col];
        for (int c2 = col; c2 < n; ++c2) A[r][c2] -= f * A[col][c2];
        rhs[r] -= f * rhs[col];
      }
    }
    for (int i = 0; i < n; ++i) rule.wk.push_back(rhs[i] / A[i][i]);
  }
  return rule;
}

const GKRule& rule_for(mpfr_prec_t prec) {
  static std::map<mpfr_prec_t, GKRule> cache;
  auto it = cache.find(prec);
  if (it != cache.end()) return it->second;
  return cache.emplace(prec, build_rule(prec)).first->second;
}

struct Segment {
  Real a, b, value, error;
};

Segment eval_segment(const RealFn& f, const Real& a, const Real& b, const GKRule& r) {
  mpfr_prec_t prec = a.prec();
  Real half = (b - a) / Real(2L, prec);
  Real mid = (a + b) / Real(2L, prec);
  Real sk(0L, prec), sg(0L, prec);
  for (size_t i = 0; i < 15; ++i) {
    Real xi = mid + half * r.nodes[i];
    Real fx = f(xi);
    if (!fx.is_finite()) throw DomainError("quadrature: non-finite integrand value");
    sk += r.wk[i] * fx;
    if (i % 2 == 1) sg += r.wg[i / 2] * fx;
  }
  Segment s{a, b, sk * half, rabs((sk - sg) * half)};
  return s;
}

} // namespace

Real quadrature(const RealFn& f, const Real& a, const Real& b, const Real& tol,
                int max_depth) {
  mpfr_prec_t prec = std::max(a.prec(), b.prec());
  const GKRule& r = rule_for(prec);
  // Greedy global refinement: always split the segment with the largest error
  // bound until the summed bound fits the budget.  Integrable endpoint
  // singularities converge because their local error shrinks geometrically as
  // the offending segment narrows; truly divergent integrands exhaust the
  // split budget without progress and are reported.
  std::vector<Segment> segs{eval_segment(f, a, b, r)};
  long splits = 0, limit = 50L * std::max(max_depth, 1);
  auto total_error = [&] {
    Real e(0L, prec);
    for (auto& s : segs) e += s.error;
    return e;
  };
  while (total_error() > tol && splits < limit) {
    size_t worst = 0;
    for (size_t i = 1; i < segs.size(); ++i)
      if (segs[i].error > segs[worst].error) worst = i;
    Segment w = segs[worst];
    Real mid = (w.a + w.b) / Real(2L, prec);
    if (!(w.a < mid && mid < w.b)) break;  // interval exhausted at this precision
    segs[worst] = eval_segment(f, w.a, mid, r);
    segs.push_back(eval_segment(f, mid, w.b, r));
    ++splits;
  }
  Real err = total_error();
  if (err > tol * Real(1000L, prec)) {
    size_t worst = 0;
    for (size_t i = 1; i < segs.size(); ++i)
      if (segs[i].error > segs[worst].error) worst = i;
    throw DomainError("quadrature: singularity suspected near [" +
                      segs[worst].a.str(8) + ", " + segs[worst].b.str(8) + "]");
  }
  Real total(0L, prec);
  for (auto& s : segs) total += s.value;
  return total;
}

} // namespace dnk
