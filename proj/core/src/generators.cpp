#include "dnk/generators.hpp"

#include <stdexcept>
#include "dnk/calculus.hpp"

namespace dnk {

const char* gen_kind_name(GenKind k) {
  switch (k) {
    case GenKind::Dt: return "Dt";
    case GenKind::Ds: return "Ds";
    case GenKind::Px: return "Px";
    case GenKind::Py: return "Py";
    case GenKind::Rx: return "Rx";
    case GenKind::Ry: return "Ry";
    case GenKind::Z: return "Z";
    case GenKind::DsBar: return "DsBar";
    case GenKind::PvBar: return "PvBar";
  }
  return "?";
}

EP fn_of_t(const std::string& name) { return atom(name, {var("t")}); }

VectorField generator(GenKind kind, const EP& param, bool lax,
                      const Workspace& ws) {
  bool functional = kind == GenKind::Dt || kind == GenKind::Px ||
                    kind == GenKind::Py || kind == GenKind::Rx ||
                    kind == GenKind::Ry || kind == GenKind::Z;
  if (functional && !param)
    throw std::invalid_argument(std::string(gen_kind_name(kind)) +
                                " needs a functional parameter of t");
  if (!functional && param)
    throw std::invalid_argument(std::string(gen_kind_name(kind)) +
                                " takes no parameter");
  if ((kind == GenKind::DsBar || kind == GenKind::PvBar) && !lax)
    throw std::invalid_argument(std::string(gen_kind_name(kind)) +
                                " lives on the extended (Lax) space");

  std::vector<std::string> coords{"t", "x", "y", "u"};
  if (lax) coords.push_back("v");
  VectorField g = vf_zero(coords);
  EP x = var("x"), y = var("y");

  switch (kind) {
    case GenKind::Dt: {
      EP pt = differentiate(param, "t", ws);
      EP ptt = differentiate(pt, "t", ws);
      g.comp[0] = param;
      g.comp[1] = rat(1, 3) * (pt * x);
      g.comp[2] = rat(1, 3) * (pt * y);
      g.comp[3] = rat(-1, 18) * (ptt * (pw(x, rat(3)) + pw(y, rat(3))));
      break;
    }
    case GenKind::Ds:
      g.comp[1] = x;
      g.comp[2] = y;
      g.comp[3] = num(3) * var("u");
      break;
    case GenKind::DsBar:
      g.comp[1] = x;
      g.comp[2] = y;
      g.comp[3] = num(3) * var("u");
      g.comp[4] = rat(3, 2) * var("v");
      break;
    case GenKind::Px:
      g.comp[1] = param;
      g.comp[3] = rat(-1, 2) * (differentiate(param, "t", ws) * pw(x, rat(2)));
      break;
    case GenKind::Py:
      g.comp[2] = param;
      g.comp[3] = rat(-1, 2) * (differentiate(param, "t", ws) * pw(y, rat(2)));
      break;
    case GenKind::Rx:
      g.comp[3] = param * x;
      break;
    case GenKind::Ry:
      g.comp[3] = param * y;
      break;
    case GenKind::Z:
      g.comp[3] = param;
      break;
    case GenKind::PvBar:
      g.comp[4] = one();
      break;
  }
  return g;
}

TableReport verify_commutation_table(const Workspace& ws) {
  TableReport rep;
  for (int laxi = 0; laxi < 2; ++laxi) {
    bool lax = laxi == 1;
    std::string bar = lax ? "bar " : "";
    EP t1 = fn_of_t("tau1"), t2 = fn_of_t("tau2");
    EP c1 = fn_of_t("chi1"), c2 = fn_of_t("chi2");
    EP r1 = fn_of_t("rho1"), r2 = fn_of_t("rho2");
    EP a1 = fn_of_t("alpha1"), a2 = fn_of_t("alpha2");
    EP b1 = fn_of_t("beta1"), b2 = fn_of_t("beta2");
    EP s1 = fn_of_t("sigma1"), s2 = fn_of_t("sigma2");
    auto D = [&](const EP& f) { return differentiate(f, "t", ws); };
    auto gen = [&](GenKind k, const EP& p = EP{}) { return generator(k, p, lax, ws); };

    // basis instances; two independent parameters per functional kind so that
    // the "same-kind" relations are exercised with distinct functions
    struct Inst {
      GenKind kind;
      EP p;
      VectorField f;
    };
    std::vector<Inst> basis = {
        {GenKind::Dt, t1, gen(GenKind::Dt, t1)}, {GenKind::Dt, t2, gen(GenKind::Dt, t2)},
        {GenKind::Ds, EP{}, gen(GenKind::Ds)},
        {GenKind::Px, c1, gen(GenKind::Px, c1)}, {GenKind::Px, c2, gen(GenKind::Px, c2)},
        {GenKind::Py, r1, gen(GenKind::Py, r1)}, {GenKind::Py, r2, gen(GenKind::Py, r2)},
        {GenKind::Rx, a1, gen(GenKind::Rx, a1)}, {GenKind::Rx, a2, gen(GenKind::Rx, a2)},
        {GenKind::Ry, b1, gen(GenKind::Ry, b1)}, {GenKind::Ry, b2, gen(GenKind::Ry, b2)},
        {GenKind::Z, s1, gen(GenKind::Z, s1)},   {GenKind::Z, s2, gen(GenKind::Z, s2)},
    };
    if (lax) basis.push_back({GenKind::PvBar, EP{}, gen(GenKind::PvBar)});
    if (lax) basis[2] = {GenKind::DsBar, EP{}, gen(GenKind::DsBar)};

    // expected bracket for an ordered pair; zero field when unlisted
    auto expected = [&](const Inst& A, const Inst& B) -> VectorField {
      GenKind ka = A.kind, kb = B.kind;
      const EP &pa = A.p, &pb = B.p;
      bool swapped = false;
      GenKind k1 = ka, k2 = kb;
      EP p1 = pa, p2 = pb;
      auto rank = [](GenKind k) {
        switch (k) {
          case GenKind::Dt: return 0;
          case GenKind::Ds: case GenKind::DsBar: return 1;
          case GenKind::Px: return 2;
          case GenKind::Py: return 3;
          case GenKind::Rx: return 4;
          case GenKind::Ry: return 5;
          case GenKind::Z: return 6;
          case GenKind::PvBar: return 7;
        }
        return 8;
      };
      if (rank(k1) > rank(k2)) {
        std::swap(k1, k2);
        std::swap(p1, p2);
        swapped = true;
      }
      VectorField r = vf_zero(A.f.coords);
      if (k1 == GenKind::Dt && k2 == GenKind::Dt)
        r = gen(GenKind::Dt, p1 * D(p2) - D(p1) * p2);
      else if (k1 == GenKind::Dt && k2 == GenKind::Px)
        r = gen(GenKind::Px, p1 * D(p2) - rat(1, 3) * (D(p1) * p2));
      else if (k1 == GenKind::Dt && k2 == GenKind::Py)
        r = gen(GenKind::Py, p1 * D(p2) - rat(1, 3) * (D(p1) * p2));
      else if (k1 == GenKind::Dt && k2 == GenKind::Rx)
        r = gen(GenKind::Rx, p1 * D(p2) + rat(1, 3) * (D(p1) * p2));
      else if (k1 == GenKind::Dt && k2 == GenKind::Ry)
        r = gen(GenKind::Ry, p1 * D(p2) + rat(1, 3) * (D(p1) * p2));
      else if (k1 == GenKind::Dt && k2 == GenKind::Z)
        r = gen(GenKind::Z, p1 * D(p2));
      else if (k1 == GenKind::Ds || k1 == GenKind::DsBar) {
        if (k2 == GenKind::Px) r = -gen(GenKind::Px, p2);
        else if (k2 == GenKind::Py) r = -gen(GenKind::Py, p2);
        else if (k2 == GenKind::Rx) r = num(-2) * gen(GenKind::Rx, p2);
        else if (k2 == GenKind::Ry) r = num(-2) * gen(GenKind::Ry, p2);
        else if (k2 == GenKind::Z) r = num(-3) * gen(GenKind::Z, p2);
        else if (k2 == GenKind::PvBar) r = num(-3, 2) * gen(GenKind::PvBar);
      } else if (k1 == GenKind::Px && k2 == GenKind::Px)
        r = -gen(GenKind::Rx, p1 * D(p2) - D(p1) * p2);
      else if (k1 == GenKind::Py && k2 == GenKind::Py)
        r = -gen(GenKind::Ry, p1 * D(p2) - D(p1) * p2);
      else if (k1 == GenKind::Px && k2 == GenKind::Rx)
        r = gen(GenKind::Z, p1 * p2);
      else if (k1 == GenKind::Py && k2 == GenKind::Ry)
        r = gen(GenKind::Z, p1 * p2);
      return swapped ? -r : r;
    };

    for (size_t i = 0; i < basis.size(); ++i)
      for (size_t j = 0; j < basis.size(); ++j) {
        if (i == j) continue;
        VectorField got = commutator(basis[i].f, basis[j].f, ws);
        VectorField want = expected(basis[i], basis[j]);
        bool pass = vf_equal(got, want, ws);
        rep.add(bar + std::string("[") + gen_kind_name(basis[i].kind) + "," +
                    gen_kind_name(basis[j].kind) + "] (#" + std::to_string(i) +
                    ",#" + std::to_string(j) + ")",
                pass);
      }
  }
  return rep;
}

} // namespace dnk
