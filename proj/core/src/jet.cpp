#include "dnk/jet.hpp"

#include <algorithm>
#include <stdexcept>
#include "dnk/calculus.hpp"
#include "dnk/parse.hpp"

namespace dnk {

const EP& VectorField::component(const std::string& coord) const {
  for (size_t i = 0; i < coords.size(); ++i)
    if (coords[i] == coord) return comp[i];
  throw std::out_of_range("vector field has no coordinate " + coord);
}

EP VectorField::apply(const EP& f, const Workspace& ws) const {
  std::vector<EP> terms;
  for (size_t i = 0; i < coords.size(); ++i) {
    EP d = differentiate(f, coords[i], ws);
    if (d->is_num(0)) continue;
    terms.push_back(comp[i] * d);
  }
  return sum(std::move(terms));
}

VectorField vf_zero(const std::vector<std::string>& coords) {
  VectorField v;
  v.coords = coords;
  v.comp.assign(coords.size(), zero());
  return v;
}

static void check_same(const VectorField& a, const VectorField& b) {
  if (a.coords != b.coords)
    throw std::invalid_argument("vector fields live on different coordinate spaces");
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  check_same(a, b);
  VectorField r = a;
  for (size_t i = 0; i < r.comp.size(); ++i) r.comp[i] = r.comp[i] + b.comp[i];
  return r;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  check_same(a, b);
  VectorField r = a;
  for (size_t i = 0; i < r.comp.size(); ++i) r.comp[i] = r.comp[i] - b.comp[i];
  return r;
}

VectorField operator*(const EP& c, const VectorField& a) {
  VectorField r = a;
  for (auto& e : r.comp) e = c * e;
  return r;
}

VectorField operator-(const VectorField& a) { return num(-1) * a; }

VectorField commutator(const VectorField& x, const VectorField& y,
                       const Workspace& ws) {
  check_same(x, y);
  VectorField r = vf_zero(x.coords);
  for (size_t i = 0; i < r.comp.size(); ++i)
    r.comp[i] = x.apply(y.comp[i], ws) - y.apply(x.comp[i], ws);
  return r;
}

bool vf_is_zero(const VectorField& a, const Workspace& ws) {
  for (auto& e : a.comp)
    if (is_zero(e, ws) != Verdict::ProvedZero) return false;
  return true;
}

bool vf_equal(const VectorField& a, const VectorField& b, const Workspace& ws) {
  if (a.coords != b.coords) return false;
  return vf_is_zero(a - b, ws);
}

ProlongedField prolong(const VectorField& x, int order, const JetContext& ctx,
                       const Workspace& ws) {
  if (order < 0 || order > 3)
    throw std::invalid_argument("prolongation order must be between 0 and 3");
  ProlongedField p;
  p.base = x;
  // phi^{J,i} = D_i phi^J - sum_j D_i(xi^j) w_{J,j}
  size_t ni = ctx.indeps.size();
  for (auto& dep : ctx.deps) {
    std::map<std::vector<unsigned>, EP> level;
    level[std::vector<unsigned>(ni, 0)] = x.component(dep);
    for (int ord = 1; ord <= order; ++ord) {
      std::map<std::vector<unsigned>, EP> next;
      for (auto& [J, phiJ] : level) {
        for (size_t i = 0; i < ni; ++i) {
          std::vector<unsigned> Ji = J;
          Ji[i] += 1;
          if (next.count(Ji)) continue;  // path-independent; compute once
          EP v = total_derivative(phiJ, i, ctx.indeps, ctx.deps, ws);
          for (size_t j = 0; j < ni; ++j) {
            EP dxi = total_derivative(x.component(ctx.indeps[j]), i, ctx.indeps,
                                      ctx.deps, ws);
            if (dxi->is_num(0)) continue;
            std::vector<unsigned> Jj = J;
            Jj[j] += 1;
            v = v - dxi * var(jet_name(dep, Jj, ctx.indeps));
          }
          next[Ji] = v;
        }
      }
      for (auto& [J, phiJ] : next) p.phi[jet_name(dep, J, ctx.indeps)] = phiJ;
      level = std::move(next);
    }
  }
  return p;
}

EP apply_prolonged(const ProlongedField& px, const EP& f, const JetContext& ctx,
                   const Workspace& ws) {
  std::vector<EP> terms;
  EP base = px.base.apply(f, ws);  // covers base coordinates incl. the deps
  if (!base->is_num(0)) terms.push_back(base);
  for (auto& [jet, coeff] : px.phi) {
    EP d = differentiate(f, jet, ws);
    if (d->is_num(0)) continue;
    terms.push_back(coeff * d);
  }
  return sum(std::move(terms));
}

namespace {

bool dominates(const std::vector<unsigned>& mi, const std::vector<unsigned>& lead) {
  for (size_t i = 0; i < mi.size(); ++i)
    if (mi[i] < lead[i]) return false;
  return true;
}

} // namespace

EP reduce_modulo(const EP& e, const std::vector<JetRelation>& rels,
                 const JetContext& ctx, const Workspace& ws) {
  EP cur = e;
  for (int pass = 0; pass < 16; ++pass) {
    std::vector<std::string> names;
    collect_vars(cur, names);
    Subst s;
    for (auto& n : names) {
      for (auto& rel : rels) {
        std::vector<unsigned> mi;
        if (!parse_jet(n, rel.dep, ctx.indeps, mi)) continue;
        if (!dominates(mi, rel.lead)) continue;
        EP d = rel.rhs;
        for (size_t i = 0; i < mi.size(); ++i)
          for (unsigned k = rel.lead[i]; k < mi[i]; ++k)
            d = total_derivative(d, i, ctx.indeps, ctx.deps, ws);
        s.vars[n] = d;
        break;
      }
    }
    if (s.vars.empty()) return cur;
    cur = substitute(cur, s, ws);
  }
  throw std::runtime_error("reduce_modulo: rewriting did not reach a fixed point");
}

JetContext nizhnik_context() { return JetContext{{"t", "x", "y"}, {"u"}}; }
JetContext lax_context() { return JetContext{{"t", "x", "y"}, {"u", "v"}}; }

EP nizhnik_residual() {
  static const EP r =
      parse("u_txy - u_xxx*u_xy - u_xx*u_xxy - u_xyy*u_yy - u_xy*u_yyy");
  return r;
}

std::vector<EP> lax_residuals() {
  static const EP r1 = parse(
      "v_t - 1/3*(v_x^3 - u_xy^3/v_x^3) - u_xx*v_x + u_xy*u_yy/v_x");
  static const EP r2 = parse("v_y + u_xy/v_x");
  return {r1, r2};
}

Verdict invariance_residual(const VectorField& x, const Workspace& ws) {
  if (x.coords.size() == 4) {
    JetContext ctx = nizhnik_context();
    ProlongedField px = prolong(x, 3, ctx, ws);
    EP r = apply_prolonged(px, nizhnik_residual(), ctx, ws);
    JetRelation rel{"u", {1, 1, 1},
                    parse("u_xxx*u_xy + u_xx*u_xxy + u_xyy*u_yy + u_xy*u_yyy")};
    r = reduce_modulo(r, {rel}, ctx, ws);
    return is_zero(r, ws);
  }
  if (x.coords.size() == 5) {
    JetContext ctx = lax_context();
    ProlongedField px = prolong(x, 2, ctx, ws);
    std::vector<JetRelation> rels = {
        {"v", {1, 0, 0},
         parse("1/3*(v_x^3 - u_xy^3/v_x^3) + u_xx*v_x - u_xy*u_yy/v_x")},
        {"v", {0, 0, 1}, parse("-u_xy/v_x")},
        {"u", {1, 1, 1},
         parse("u_xxx*u_xy + u_xx*u_xxy + u_xyy*u_yy + u_xy*u_yyy")},
    };
    Verdict worst = Verdict::ProvedZero;
    for (auto& res : lax_residuals()) {
      EP r = apply_prolonged(px, res, ctx, ws);
      r = reduce_modulo(r, rels, ctx, ws);
      Verdict v = is_zero(r, ws);
      if (v == Verdict::ProvedNonzero) return v;
      if (v == Verdict::Unknown) worst = Verdict::Unknown;
      else if (v == Verdict::ProbablyZero && worst == Verdict::ProvedZero)
        worst = v;
    }
    return worst;
  }
  throw std::invalid_argument("invariance test expects 4 or 5 base coordinates");
}

} // namespace dnk
