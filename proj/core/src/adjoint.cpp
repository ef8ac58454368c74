#include "dnk/group.hpp"

#include "dnk/calculus.hpp"
#include "dnk/parse.hpp"

namespace dnk {

// Verification of the adjoint actions of the elementary point transformations
// on the spanning vector fields of the symmetry algebra.  All non-identity
// actions are checked against their closed forms, plus a sample of the pairs
// on which the action is the identity.
TableReport verify_adjoint_table() {
  Workspace ws = default_workspace();
  TableReport rep;

  PointTransformation DtT = elementary(TrKind::Dt, fn_of_t("T"), false, ws);
  PointTransformation DsC = elementary(TrKind::Ds, var("C"), false, ws);
  PointTransformation PxX = elementary(TrKind::Px, fn_of_t("X0"), false, ws);
  PointTransformation PyY = elementary(TrKind::Py, fn_of_t("Y0"), false, ws);
  PointTransformation RxW = elementary(TrKind::Rx, fn_of_t("W1"), false, ws);
  PointTransformation RyW = elementary(TrKind::Ry, fn_of_t("W2"), false, ws);
  PointTransformation ZW = elementary(TrKind::Z, fn_of_t("W0"), false, ws);
  PointTransformation Jp = elementary(TrKind::J, EP{}, false, ws);

  // registers the inverse atom T_hat (with T_hat' = 1/T'(T_hat)) in ws
  inverse(DtT, ws);
  EP That = atom("T_hat", {var("t")});
  EP dThat = differentiate(That, "t", ws);

  auto check = [&](const std::string& desc, const PointTransformation& phi,
                   const VectorField& x, const VectorField& expect) {
    rep.add(desc, vf_equal(pushforward(phi, x, ws), expect, ws));
  };
  auto gen = [&](GenKind k, const EP& param = EP{}) {
    return generator(k, param, false, ws);
  };
  auto of_That = [&](const std::string& f) { return atom(f, {That}); };

  EP tau = fn_of_t("tau"), chi = fn_of_t("chi"), rho = fn_of_t("rho");
  EP alpha = fn_of_t("alpha"), beta = fn_of_t("beta"), sigma = fn_of_t("sigma");
  EP C = var("C");

  // --- reparameterization of time ---
  check("Dt_*(T) Dt(tau)", DtT, gen(GenKind::Dt, tau),
        gen(GenKind::Dt, pw(dThat, rat(-1)) * of_That("tau")));
  check("Dt_*(T) Px(chi)", DtT, gen(GenKind::Px, chi),
        gen(GenKind::Px, pw(dThat, rat(-1, 3)) * of_That("chi")));
  check("Dt_*(T) Py(rho)", DtT, gen(GenKind::Py, rho),
        gen(GenKind::Py, pw(dThat, rat(-1, 3)) * of_That("rho")));
  check("Dt_*(T) Rx(alpha)", DtT, gen(GenKind::Rx, alpha),
        gen(GenKind::Rx, pw(dThat, rat(1, 3)) * of_That("alpha")));
  check("Dt_*(T) Ry(beta)", DtT, gen(GenKind::Ry, beta),
        gen(GenKind::Ry, pw(dThat, rat(1, 3)) * of_That("beta")));
  check("Dt_*(T) Z(sigma)", DtT, gen(GenKind::Z, sigma),
        gen(GenKind::Z, of_That("sigma")));
  check("Dt_*(T) Ds = Ds", DtT, gen(GenKind::Ds), gen(GenKind::Ds));

  // --- scalings ---
  check("Ds_*(C) Px(chi)", DsC, gen(GenKind::Px, chi), gen(GenKind::Px, C * chi));
  check("Ds_*(C) Py(rho)", DsC, gen(GenKind::Py, rho), gen(GenKind::Py, C * rho));
  check("Ds_*(C) Rx(alpha)", DsC, gen(GenKind::Rx, alpha),
        gen(GenKind::Rx, pw(C, rat(2)) * alpha));
  check("Ds_*(C) Ry(beta)", DsC, gen(GenKind::Ry, beta),
        gen(GenKind::Ry, pw(C, rat(2)) * beta));
  check("Ds_*(C) Z(sigma)", DsC, gen(GenKind::Z, sigma),
        gen(GenKind::Z, pw(C, rat(3)) * sigma));
  check("Ds_*(C) Dt(tau) = Dt(tau)", DsC, gen(GenKind::Dt, tau),
        gen(GenKind::Dt, tau));
  check("Ds_*(C) Ds = Ds", DsC, gen(GenKind::Ds), gen(GenKind::Ds));

  // --- shears acting on time reparameterizations ---
  check("Px_*(X0) Dt(tau)", PxX, gen(GenKind::Dt, tau),
        gen(GenKind::Dt, tau) +
            gen(GenKind::Px,
                parse("tau(t)*X0'(t) - 1/3*tau'(t)*X0(t)")) +
            num(1, 2) *
                gen(GenKind::Rx,
                    parse("X0(t)*(tau'(t)*X0'(t) + tau(t)*X0''(t))"
                          " - 1/3*tau''(t)*X0(t)^2 - tau(t)*X0'(t)^2")) -
            num(1, 6) *
                gen(GenKind::Z,
                    parse("X0(t)^2*(tau'(t)*X0'(t) + tau(t)*X0''(t))"
                          " - 1/3*tau''(t)*X0(t)^3 - tau(t)*X0(t)*X0'(t)^2")));
  check("Py_*(Y0) Dt(tau)", PyY, gen(GenKind::Dt, tau),
        gen(GenKind::Dt, tau) +
            gen(GenKind::Py,
                parse("tau(t)*Y0'(t) - 1/3*tau'(t)*Y0(t)")) +
            num(1, 2) *
                gen(GenKind::Ry,
                    parse("Y0(t)*(tau'(t)*Y0'(t) + tau(t)*Y0''(t))"
                          " - 1/3*tau''(t)*Y0(t)^2 - tau(t)*Y0'(t)^2")) -
            num(1, 6) *
                gen(GenKind::Z,
                    parse("Y0(t)^2*(tau'(t)*Y0'(t) + tau(t)*Y0''(t))"
                          " - 1/3*tau''(t)*Y0(t)^3 - tau(t)*Y0(t)*Y0'(t)^2")));
  check("Rx_*(W1) Dt(tau)", RxW, gen(GenKind::Dt, tau),
        gen(GenKind::Dt, tau) +
            gen(GenKind::Rx, parse("tau(t)*W1'(t) + 1/3*tau'(t)*W1(t)")));
  check("Ry_*(W2) Dt(tau)", RyW, gen(GenKind::Dt, tau),
        gen(GenKind::Dt, tau) +
            gen(GenKind::Ry, parse("tau(t)*W2'(t) + 1/3*tau'(t)*W2(t)")));
  check("Z_*(W0) Dt(tau)", ZW, gen(GenKind::Dt, tau),
        gen(GenKind::Dt, tau) + gen(GenKind::Z, parse("tau(t)*W0'(t)")));

  // --- everything acting on the scaling field ---
  check("Px_*(X0) Ds", PxX, gen(GenKind::Ds),
        gen(GenKind::Ds) - gen(GenKind::Px, fn_of_t("X0")));
  check("Py_*(Y0) Ds", PyY, gen(GenKind::Ds),
        gen(GenKind::Ds) - gen(GenKind::Py, fn_of_t("Y0")));
  check("Rx_*(W1) Ds", RxW, gen(GenKind::Ds),
        gen(GenKind::Ds) - num(2) * gen(GenKind::Rx, fn_of_t("W1")));
  check("Ry_*(W2) Ds", RyW, gen(GenKind::Ds),
        gen(GenKind::Ds) - num(2) * gen(GenKind::Ry, fn_of_t("W2")));
  check("Z_*(W0) Ds", ZW, gen(GenKind::Ds),
        gen(GenKind::Ds) - num(3) * gen(GenKind::Z, fn_of_t("W0")));

  // --- shears and shifts among themselves ---
  check("Px_*(X0) Px(chi)", PxX, gen(GenKind::Px, chi),
        gen(GenKind::Px, chi) +
            gen(GenKind::Rx, parse("chi'(t)*X0(t) - chi(t)*X0'(t)")) -
            num(1, 2) *
                gen(GenKind::Z,
                    parse("chi'(t)*X0(t)^2 - chi(t)*X0(t)*X0'(t)")));
  check("Px_*(X0) Rx(alpha)", PxX, gen(GenKind::Rx, alpha),
        gen(GenKind::Rx, alpha) - gen(GenKind::Z, parse("alpha(t)*X0(t)")));
  check("Rx_*(W1) Px(chi)", RxW, gen(GenKind::Px, chi),
        gen(GenKind::Px, chi) + gen(GenKind::Z, parse("chi(t)*W1(t)")));
  check("Py_*(Y0) Py(rho)", PyY, gen(GenKind::Py, rho),
        gen(GenKind::Py, rho) +
            gen(GenKind::Ry, parse("rho'(t)*Y0(t) - rho(t)*Y0'(t)")) -
            num(1, 2) *
                gen(GenKind::Z,
                    parse("rho'(t)*Y0(t)^2 - rho(t)*Y0'(t)*Y0(t)")));
  check("Py_*(Y0) Ry(beta)", PyY, gen(GenKind::Ry, beta),
        gen(GenKind::Ry, beta) - gen(GenKind::Z, parse("beta(t)*Y0(t)")));
  check("Ry_*(W2) Py(rho)", RyW, gen(GenKind::Py, rho),
        gen(GenKind::Py, rho) + gen(GenKind::Z, parse("rho(t)*W2(t)")));

  // --- the x <-> y permutation ---
  check("J_* Px(chi)", Jp, gen(GenKind::Px, chi), gen(GenKind::Py, chi));
  check("J_* Py(rho)", Jp, gen(GenKind::Py, rho), gen(GenKind::Px, rho));
  check("J_* Rx(alpha)", Jp, gen(GenKind::Rx, alpha), gen(GenKind::Ry, alpha));
  check("J_* Ry(beta)", Jp, gen(GenKind::Ry, beta), gen(GenKind::Rx, beta));
  check("J_* Dt(tau) = Dt(tau)", Jp, gen(GenKind::Dt, tau),
        gen(GenKind::Dt, tau));
  check("J_* Ds = Ds", Jp, gen(GenKind::Ds), gen(GenKind::Ds));
  check("J_* Z(sigma) = Z(sigma)", Jp, gen(GenKind::Z, sigma),
        gen(GenKind::Z, sigma));

  return rep;
}

} // namespace dnk
