#include "dnk/group.hpp"

#include <random>
#include <stdexcept>
#include "dnk/calculus.hpp"
#include "dnk/eval.hpp"
#include "dnk/poly.hpp"

namespace dnk {

const char* tr_kind_name(TrKind k) {
  switch (k) {
    case TrKind::Dt: return "Dt";
    case TrKind::Ds: return "Ds";
    case TrKind::Px: return "Px";
    case TrKind::Py: return "Py";
    case TrKind::Rx: return "Rx";
    case TrKind::Ry: return "Ry";
    case TrKind::Z: return "Z";
    case TrKind::J: return "J";
    case TrKind::Pv: return "Pv";
    case TrKind::Iv: return "Iv";
    case TrKind::Identity: return "Identity";
    case TrKind::Composite: return "Composite";
  }
  return "?";
}

namespace {

std::vector<std::string> space_coords(bool lax) {
  return lax ? std::vector<std::string>{"t", "x", "y", "u", "v"}
             : std::vector<std::string>{"t", "x", "y", "u"};
}

// rational power with exact folding for rational bases; the real odd-root
// convention sgn(q)|q|^{1/3} is used for cube roots of negative rationals
EP pow_ep(const EP& e, const Rat& r) {
  if (e->is_num()) {
    Rat q = e->num;
    if (q < 0 && r.get_den() == 1 && r.get_num() % 2 != 0) {
      // odd integer power of a negative rational
      if (auto p = rat_pow_exact(-q, r)) return num(-*p);
    }
    if (q >= 0) {
      if (auto p = rat_pow_exact(q, r)) return num(*p);
    }
  }
  return pw(e, r);
}

EP cbrt_ep(const EP& e) {
  if (e->is_num() && e->num < 0) return -cbrt_ep(num(-e->num));
  if (e->is_num()) {
    if (auto p = rat_pow_exact(e->num, rat(1, 3))) return num(*p);
  }
  return pw(e, rat(1, 3));
}

} // namespace

PointTransformation identity_transformation(bool lax) {
  PointTransformation p;
  p.kind = TrKind::Identity;
  p.lax = lax;
  p.coords = space_coords(lax);
  for (auto& c : p.coords) p.comp.push_back(var(c));
  return p;
}

PointTransformation elementary(TrKind k, EP param, bool lax, const Workspace& ws) {
  PointTransformation p = identity_transformation(lax);
  p.kind = k;
  p.param = param;
  EP t = var("t"), x = var("x"), y = var("y"), u = var("u"), v = var("v");
  bool functional = !(k == TrKind::J || k == TrKind::Iv || k == TrKind::Identity);
  if (functional && !param)
    throw std::invalid_argument(std::string(tr_kind_name(k)) +
                                " needs a parameter");
  if (!functional && param)
    throw std::invalid_argument(std::string(tr_kind_name(k)) +
                                " takes no parameter");
  switch (k) {
    case TrKind::Identity:
      break;
    case TrKind::Dt: {
      EP Tt = canonicalize(differentiate(param, "t", ws), ws);
      if (Tt->is_num(0))
        throw std::invalid_argument("Dt needs a parameter with T_t != 0");
      EP Ttt = canonicalize(differentiate(Tt, "t", ws), ws);
      EP cb = cbrt_ep(Tt);
      p.comp[0] = param;
      p.comp[1] = cb * x;
      p.comp[2] = cb * y;
      p.comp[3] = u - rat(1, 18) * ((Ttt / Tt) *
                                    (pw(x, rat(3)) + pw(y, rat(3))));
      break;
    }
    case TrKind::Ds: {
      if (param->is_num(0))
        throw std::invalid_argument("Ds needs a nonzero constant");
      p.comp[1] = param * x;
      p.comp[2] = param * y;
      p.comp[3] = pow_ep(param, rat(3)) * u;
      if (lax) {
        if (param->is_num() && param->num < 0)
          throw std::invalid_argument(
              "Ds with C < 0 has no extension to the Lax space");
        p.comp[4] = pow_ep(param, rat(3, 2)) * v;
      }
      break;
    }
    case TrKind::Px: {
      EP Xt = differentiate(param, "t", ws);
      p.comp[1] = x + param;
      p.comp[3] = u - rat(1, 6) * (Xt * (num(3) * pw(x, rat(2)) +
                                         num(3) * param * x +
                                         pw(param, rat(2))));
      break;
    }
    case TrKind::Py: {
      EP Yt = differentiate(param, "t", ws);
      p.comp[2] = y + param;
      p.comp[3] = u - rat(1, 6) * (Yt * (num(3) * pw(y, rat(2)) +
                                         num(3) * param * y +
                                         pw(param, rat(2))));
      break;
    }
    case TrKind::Rx:
      p.comp[3] = u + param * x;
      break;
    case TrKind::Ry:
      p.comp[3] = u + param * y;
      break;
    case TrKind::Z:
      p.comp[3] = u + param;
      break;
    case TrKind::J:
      p.comp[1] = y;
      p.comp[2] = x;
      break;
    case TrKind::Pv:
      if (!lax) throw std::invalid_argument("Pv lives on the extended space");
      p.comp[4] = v + param;
      break;
    case TrKind::Iv:
      if (!lax) throw std::invalid_argument("Iv lives on the extended space");
      p.comp[4] = -v;
      break;
    case TrKind::Composite:
      throw std::invalid_argument("composite is not an elementary kind");
  }
  return p;
}

PointTransformation compose(const PointTransformation& a,
                            const PointTransformation& b, const Workspace& ws) {
  if (a.lax != b.lax)
    throw std::invalid_argument("composition across different spaces");
  PointTransformation p;
  p.kind = TrKind::Composite;
  p.lax = a.lax;
  p.coords = a.coords;
  Subst s;
  for (size_t i = 0; i < b.coords.size(); ++i) s.vars[b.coords[i]] = b.comp[i];
  for (auto& c : a.comp) p.comp.push_back(canonicalize(substitute(c, s, ws), ws));
  auto push_factors = [&](const PointTransformation& q) {
    if (q.kind == TrKind::Composite)
      p.factors.insert(p.factors.end(), q.factors.begin(), q.factors.end());
    else if (q.kind != TrKind::Identity)
      p.factors.push_back(q);
  };
  push_factors(a);
  push_factors(b);
  return p;
}

PointTransformation inverse(const PointTransformation& p, Workspace& ws) {
  switch (p.kind) {
    case TrKind::Identity:
    case TrKind::J:
    case TrKind::Iv:
      return p;
    case TrKind::Ds:
      return elementary(TrKind::Ds, pow_ep(p.param, rat(-1)), p.lax, ws);
    case TrKind::Px:
    case TrKind::Py:
    case TrKind::Rx:
    case TrKind::Ry:
    case TrKind::Z:
    case TrKind::Pv:
      return elementary(p.kind, -p.param, p.lax, ws);
    case TrKind::Dt: {
      EP Tt = canonicalize(differentiate(p.param, "t", ws), ws);
      EP Ttt = canonicalize(differentiate(Tt, "t", ws), ws);
      if (Ttt->is_num(0)) {
        // affine T = a t + b inverts to (t - b)/a
        EP b = canonicalize(p.param - Tt * var("t"), ws);
        return elementary(TrKind::Dt, (var("t") - b) / Tt, p.lax, ws);
      }
      if (p.param->kind != Kind::Atom || p.param->kids.size() != 1 ||
          !equal(p.param->kids[0], var("t")))
        throw std::invalid_argument(
            "Dt inversion needs an affine parameter or a plain atom T(t)");
      bool derived = false;
      for (auto d : p.param->dmi) derived = derived || d;
      if (derived)
        throw std::invalid_argument("Dt inversion of a derivative atom");
      std::string hat = p.param->name + "_hat";
      AtomDef def;
      def.arity = 1;
      def.deriv = {pw(atom(p.param->name, {atom(hat, {var("$1")})}, {1}), rat(-1))};
      ws.define_atom(hat, std::move(def));
      ws.declare_inverse_pair(p.param->name, hat);
      return elementary(TrKind::Dt, atom(hat, {var("t")}), p.lax, ws);
    }
    case TrKind::Composite: {
      PointTransformation out = identity_transformation(p.lax);
      for (auto it = p.factors.rbegin(); it != p.factors.rend(); ++it)
        out = compose(out, inverse(*it, ws), ws);
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

bool pt_equal(const PointTransformation& a, const PointTransformation& b,
              const Workspace& ws) {
  if (a.coords != b.coords) return false;
  for (size_t i = 0; i < a.comp.size(); ++i)
    if (is_zero(a.comp[i] - b.comp[i], ws) != Verdict::ProvedZero) return false;
  return true;
}

namespace {

std::vector<std::vector<unsigned>> multi_indices_of_level(int level) {
  std::vector<std::vector<unsigned>> out;
  for (unsigned a = 0; a <= (unsigned)level; ++a)
    for (unsigned b = 0; a + b <= (unsigned)level; ++b)
      out.push_back({a, b, (unsigned)level - a - b});
  return out;
}

} // namespace

std::map<std::string, EP> transformed_jets(const PointTransformation& p,
                                           int uord, int vord,
                                           const Workspace& ws) {
  bool lax = p.coords.size() == 5;
  JetContext ctx = lax ? lax_context() : nizhnik_context();
  const auto& ind = ctx.indeps;

  EP J[3][3];
  for (int a = 0; a < 3; ++a)
    for (int j = 0; j < 3; ++j)
      J[a][j] = canonicalize(total_derivative(p.comp[a], j, ind, ctx.deps, ws), ws);
  EP det = canonicalize(J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
                        J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
                        J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]), ws);
  if (det->is_num(0))
    throw std::invalid_argument("degenerate base-coordinate change");
  // Jinv[i][j] = cofactor(j,i)/det
  EP Jinv[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      // cyclic minors carry the cofactor sign already
      Jinv[i][j] = canonicalize(
          (J[r0][c0] * J[r1][c1] - J[r0][c1] * J[r1][c0]) / det, ws);
    }

  std::map<std::string, EP> out;
  auto chain = [&](const std::string& dep, int ord, const EP& base) {
    std::map<std::vector<unsigned>, EP> vals;
    vals[{0, 0, 0}] = canonicalize(base, ws);
    for (int level = 1; level <= ord; ++level)
      for (auto& mi : multi_indices_of_level(level)) {
        size_t a = 0;
        while (mi[a] == 0) ++a;
        auto parent = mi;
        parent[a] -= 1;
        std::vector<EP> terms;
        for (int j = 0; j < 3; ++j)
          terms.push_back(Jinv[j][a] *
                          total_derivative(vals.at(parent), j, ind, ctx.deps, ws));
        vals[mi] = canonicalize(sum(std::move(terms)), ws);
      }
    for (auto& [mi, val] : vals) out[jet_name(dep, mi, ind)] = val;
  };
  chain("u", uord, p.comp[3]);
  if (lax) chain("v", vord, p.comp[4]);
  return out;
}

namespace {

int verdict_rank(Verdict v) {
  switch (v) {
    case Verdict::ProvedZero: return 0;
    case Verdict::ProbablyZero: return 1;
    case Verdict::Unknown: return 2;
    case Verdict::ProvedNonzero: return 3;
  }
  return 3;
}

Verdict worse(Verdict a, Verdict b) {
  return verdict_rank(a) >= verdict_rank(b) ? a : b;
}

} // namespace

Verdict is_symmetry(const PointTransformation& p, const Workspace& ws) {
  if (p.coords.size() == 4) {
    auto tj = transformed_jets(p, 3, 0, ws);
    Subst s;
    for (auto& [k, v] : tj) s.vars[k] = v;
    EP res = substitute(nizhnik_residual(), s, ws);
    EP mult, rest;
    affine_split(res, var("u_txy"), ws, mult, rest);
    // residual = u_txy - rhs, so a symmetry means rest == -mult * rhs
    EP rhs = canonicalize(var("u_txy") - nizhnik_residual(), ws);
    Verdict vz = is_zero(rest + mult * rhs, ws);
    Verdict vm = is_zero(mult, ws);
    if (vz == Verdict::ProvedNonzero) return Verdict::ProvedNonzero;
    if (vm == Verdict::ProvedZero) return Verdict::Unknown;  // degenerate
    if (vz == Verdict::ProvedZero && vm == Verdict::ProvedNonzero)
      return Verdict::ProvedZero;
    if (vz == Verdict::ProvedZero || vz == Verdict::ProbablyZero)
      return Verdict::ProbablyZero;
    return Verdict::Unknown;
  }
  // extended space: both transformed residuals must vanish modulo the system
  auto tj = transformed_jets(p, 2, 1, ws);
  Subst s;
  for (auto& [k, v] : tj) s.vars[k] = v;
  auto lres = lax_residuals();
  std::vector<JetRelation> rels = {
      {"v", {1, 0, 0}, canonicalize(var("v_t") - lres[0], ws)},
      {"v", {0, 0, 1}, canonicalize(var("v_y") - lres[1], ws)},
      {"u", {1, 1, 1}, canonicalize(var("u_txy") - nizhnik_residual(), ws)}};
  JetContext ctx = lax_context();
  Verdict worst = Verdict::ProvedZero;
  for (auto& r : lres) {
    EP e = reduce_modulo(substitute(r, s, ws), rels, ctx, ws);
    worst = worse(worst, is_zero(e, ws));
  }
  return worst;
}

VectorField pushforward(const PointTransformation& p, const VectorField& x,
                        Workspace& ws) {
  if (x.coords != p.coords)
    throw std::invalid_argument("pushforward across different spaces");
  PointTransformation inv = inverse(p, ws);
  Subst s;
  for (size_t i = 0; i < p.coords.size(); ++i) s.vars[p.coords[i]] = inv.comp[i];
  VectorField out;
  out.coords = p.coords;
  for (auto& c : p.comp)
    out.comp.push_back(canonicalize(substitute(x.apply(c, ws), s, ws), ws));
  return out;
}

EP map_solution(const PointTransformation& p, const EP& f, Workspace& ws) {
  for (int i = 0; i < 3; ++i)
    if (contains_var(p.comp[i], "u") || contains_var(p.comp[i], "v"))
      throw std::invalid_argument("base coordinates must not involve u, v");
  Subst su;
  su.vars["u"] = f;
  EP ut = substitute(p.comp[3], su, ws);
  PointTransformation inv = inverse(p, ws);
  Subst s;
  for (int i = 0; i < 3; ++i) s.vars[p.coords[i]] = inv.comp[i];
  return canonicalize(substitute(ut, s, ws), ws);
}

bool jacobian_nonvanishing(const PointTransformation& p, int samples,
                           std::uint64_t seed, const Workspace& ws) {
  EP J[3][3];
  for (int a = 0; a < 3; ++a)
    for (int j = 0; j < 3; ++j)
      J[a][j] = differentiate(p.comp[a], std::vector<std::string>{"t", "x", "y"}[j], ws);
  EP det = canonicalize(J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
                        J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
                        J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]), ws);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> c(-5, 5);
  std::uniform_int_distribution<long> cnz(1, 5);
  mpfr_prec_t prec = 128;
  int good = 0;
  for (int attempt = 0; attempt < 8 * samples && good < samples; ++attempt) {
    Subst inst;
    std::vector<std::string> atoms;
    collect_atoms(det, atoms);
    for (auto& a : atoms) {
      if (ws.atom_def(a)) continue;
      // keep the first derivative away from zero so Dt-style parameters
      // stay invertible at the sample point
      inst.fns[a] = FnDef{{"$1"},
                          sum({num(c(rng)), num(cnz(rng)) * var("$1"),
                               num(c(rng)) * pw(var("$1"), rat(2))})};
    }
    EP d;
    try {
      d = canonicalize(substitute(det, inst, ws), ws);
    } catch (const std::exception&) {
      continue;
    }
    EvalEnv env;
    env.prec = prec;
    std::vector<std::string> vars;
    collect_vars(d, vars);
    for (auto& v : vars) {
      long k = c(rng);
      if (k == 0) k = cnz(rng);
      env.set(v, rat(k * 2 + 1, 7));
    }
    try {
      Real val = eval_mid(d, env);
      if (!(rabs(val) > rpow_si(Real(2, prec), -80))) return false;
      ++good;
    } catch (const std::exception&) {
      continue;  // fractional power hit a negative sample; redraw
    }
  }
  return good == samples;
}

} // namespace dnk
