#include "doctest.h"

#include "dnk/calculus.hpp"
#include "dnk/group.hpp"
#include "dnk/parse.hpp"
#include "dnk/poly.hpp"

#include <random>

using namespace dnk;

TEST_CASE("elementary transformation components") {
  Workspace ws = default_workspace();
  PointTransformation j = elementary(TrKind::J);
  CHECK(equal(j.comp[0], var("t")));
  CHECK(equal(j.comp[1], var("y")));
  CHECK(equal(j.comp[2], var("x")));
  CHECK(equal(j.comp[3], var("u")));

  // Ds(-1) alternates the signs of (x, y, u)
  PointTransformation is = elementary(TrKind::Ds, num(-1));
  CHECK(is_zero(is.comp[1] + var("x"), ws) == Verdict::ProvedZero);
  CHECK(is_zero(is.comp[2] + var("y"), ws) == Verdict::ProvedZero);
  CHECK(is_zero(is.comp[3] + var("u"), ws) == Verdict::ProvedZero);

  PointTransformation px = elementary(TrKind::Px, fn_of_t("X0"));
  EP expect = parse("u - 1/6*X0'(t)*(3*x^2 + 3*X0(t)*x + X0(t)^2)");
  CHECK(is_zero(px.comp[3] - expect, ws) == Verdict::ProvedZero);

  CHECK_THROWS(elementary(TrKind::Ds, num(0)));
  CHECK_THROWS(elementary(TrKind::Dt, num(5)));     // constant T
  CHECK_THROWS(elementary(TrKind::Pv, num(1)));     // needs the extended space
  CHECK_THROWS(elementary(TrKind::Ds, num(-2), true));  // no lax extension
}

TEST_CASE("composition and inversion") {
  Workspace ws = default_workspace();
  PointTransformation j = elementary(TrKind::J);
  CHECK(pt_equal(compose(j, j, ws), identity_transformation(), ws));

  PointTransformation d1 = elementary(TrKind::Ds, num(2));
  PointTransformation d2 = elementary(TrKind::Ds, num(3));
  CHECK(pt_equal(compose(d1, d2, ws), elementary(TrKind::Ds, num(6)), ws));

  PointTransformation px = elementary(TrKind::Px, fn_of_t("X0"));
  CHECK(pt_equal(compose(px, inverse(px, ws), ws), identity_transformation(), ws));

  // affine time reparameterization inverts exactly
  PointTransformation dt = elementary(TrKind::Dt, parse("2*t + 1"), false, ws);
  CHECK(pt_equal(compose(dt, inverse(dt, ws), ws), identity_transformation(), ws));

  // non-affine inversion goes through the inverse atom T_hat
  PointTransformation dtT = elementary(TrKind::Dt, fn_of_t("T"), false, ws);
  PointTransformation invT = inverse(dtT, ws);
  CHECK(pt_equal(compose(dtT, invT, ws), identity_transformation(), ws));
  CHECK(pt_equal(compose(invT, dtT, ws), identity_transformation(), ws));
}

TEST_CASE("general transformation decomposes into elementary factors") {
  Workspace ws = default_workspace();
  EP C = var("C");
  EP Tt = parse("T'(t)");

  PointTransformation direct;
  direct.coords = {"t", "x", "y", "u"};
  direct.comp = {
      parse("T(t)"),
      canonicalize(C * pw(Tt, rat(1, 3)) * var("x") + fn_of_t("X0"), ws),
      canonicalize(C * pw(Tt, rat(1, 3)) * var("y") + fn_of_t("Y0"), ws),
      canonicalize(
          parse("C^3*u - C^3*T''(t)/(18*T'(t))*(x^3 + y^3)"
                " - C^2/(2*T'(t)^(1/3))*(X0'(t)*x^2 + Y0'(t)*y^2)"
                " + W1(t)*x + W2(t)*y + W0(t)"),
          ws)};

  EP X0 = fn_of_t("X0"), Y0 = fn_of_t("Y0");
  EP Xe = X0 / (C * pw(Tt, rat(1, 3)));
  EP Ye = Y0 / (C * pw(Tt, rat(1, 3)));
  EP W0e = parse("W0(t)/C^3 + (X0'(t)*X0(t)^2 + Y0'(t)*Y0(t)^2)/(6*C^3*T'(t))");
  EP W1e = parse("W1(t)/C^3 + X0'(t)*X0(t)/(2*C^2*T'(t)^(2/3))");
  EP W2e = parse("W2(t)/C^3 + Y0'(t)*Y0(t)/(2*C^2*T'(t)^(2/3))");

  PointTransformation phi = elementary(TrKind::Dt, fn_of_t("T"), false, ws);
  for (auto& f : {elementary(TrKind::Ds, C, false, ws),
                  elementary(TrKind::Px, Xe, false, ws),
                  elementary(TrKind::Py, Ye, false, ws),
                  elementary(TrKind::Rx, W1e, false, ws),
                  elementary(TrKind::Ry, W2e, false, ws),
                  elementary(TrKind::Z, W0e, false, ws)})
    phi = compose(phi, f, ws);

  CHECK(pt_equal(phi, direct, ws));
}

TEST_CASE("symmetry test on the equation") {
  Workspace ws = default_workspace();
  CHECK(is_symmetry(elementary(TrKind::Dt, fn_of_t("T"), false, ws), ws) ==
        Verdict::ProvedZero);
  CHECK(is_symmetry(elementary(TrKind::Ds, var("C"), false, ws), ws) ==
        Verdict::ProvedZero);
  CHECK(is_symmetry(elementary(TrKind::Px, fn_of_t("X0"), false, ws), ws) ==
        Verdict::ProvedZero);
  CHECK(is_symmetry(elementary(TrKind::Py, fn_of_t("Y0"), false, ws), ws) ==
        Verdict::ProvedZero);
  CHECK(is_symmetry(elementary(TrKind::Rx, fn_of_t("W1"), false, ws), ws) ==
        Verdict::ProvedZero);
  CHECK(is_symmetry(elementary(TrKind::Ry, fn_of_t("W2"), false, ws), ws) ==
        Verdict::ProvedZero);
  CHECK(is_symmetry(elementary(TrKind::Z, fn_of_t("W0"), false, ws), ws) ==
        Verdict::ProvedZero);
  CHECK(is_symmetry(elementary(TrKind::J, EP{}, false, ws), ws) ==
        Verdict::ProvedZero);

  // x-shift without its u-correction is not a symmetry
  PointTransformation bad = identity_transformation();
  bad.comp[1] = var("x") + var("t");
  CHECK(is_symmetry(bad, ws) == Verdict::ProvedNonzero);
}

TEST_CASE("symmetry test on the Lax system") {
  Workspace ws = default_workspace();
  CHECK(is_symmetry(elementary(TrKind::Iv, EP{}, true, ws), ws) ==
        Verdict::ProvedZero);
  CHECK(is_symmetry(elementary(TrKind::Pv, var("B"), true, ws), ws) ==
        Verdict::ProvedZero);
  CHECK(is_symmetry(elementary(TrKind::J, EP{}, true, ws), ws) ==
        Verdict::ProvedZero);
  CHECK(is_symmetry(elementary(TrKind::Px, fn_of_t("X0"), true, ws), ws) ==
        Verdict::ProvedZero);
  CHECK(is_symmetry(elementary(TrKind::Ds, num(4), true, ws), ws) ==
        Verdict::ProvedZero);
  // sign change of u alone breaks the Lax pair
  PointTransformation bad = identity_transformation(true);
  bad.comp[3] = -var("u");
  CHECK(is_symmetry(bad, ws) == Verdict::ProvedNonzero);
}

TEST_CASE("discrete involutions are exact and commute") {
  Workspace ws = default_workspace();
  PointTransformation J2 = elementary(TrKind::J);
  PointTransformation Ii = elementary(TrKind::Dt, -var("t"), false, ws);
  PointTransformation Is = elementary(TrKind::Ds, num(-1));

  // Ii alternates the signs of (t,x,y) exactly (odd real cube root of -1)
  CHECK(equal(Ii.comp[0], -var("t")));
  CHECK(is_zero(Ii.comp[1] + var("x"), ws) == Verdict::ProvedZero);
  CHECK(is_zero(Ii.comp[3] - var("u"), ws) == Verdict::ProvedZero);

  for (auto& p : {J2, Ii, Is})
    CHECK(pt_equal(compose(p, p, ws), identity_transformation(), ws));
  auto commutes = [&](const PointTransformation& a, const PointTransformation& b) {
    return pt_equal(compose(a, b, ws), compose(b, a, ws), ws);
  };
  CHECK(commutes(J2, Ii));
  CHECK(commutes(J2, Is));
  CHECK(commutes(Ii, Is));

  // extended space: J-bar, Ii-bar, Iv commute and square to the identity
  PointTransformation Jb = elementary(TrKind::J, EP{}, true, ws);
  PointTransformation Iib = elementary(TrKind::Dt, -var("t"), true, ws);
  PointTransformation Ivb = elementary(TrKind::Iv, EP{}, true, ws);
  for (auto& p : {Jb, Iib, Ivb})
    CHECK(pt_equal(compose(p, p, ws), identity_transformation(true), ws));
  CHECK(pt_equal(compose(Jb, Ivb, ws), compose(Ivb, Jb, ws), ws));
  CHECK(pt_equal(compose(Iib, Ivb, ws), compose(Ivb, Iib, ws), ws));
}

TEST_CASE("adjoint action table") {
  TableReport rep = verify_adjoint_table();
  for (auto& c : rep.checks) {
    INFO(c.description);
    CHECK(c.ok);
  }
  CHECK(rep.ok);
}

TEST_CASE("pushforward identities") {
  Workspace ws = default_workspace();
  VectorField X = generator(GenKind::Dt, fn_of_t("tau")) +
                  generator(GenKind::Rx, fn_of_t("alpha"));
  CHECK(vf_equal(pushforward(identity_transformation(), X, ws), X, ws));

  // homomorphism and functoriality on random polynomial data
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> kind(0, 6);
  std::uniform_int_distribution<long> c(-3, 3);
  auto rand_param = [&]() {
    return sum({num(c(rng)), num(c(rng)) * var("t"),
                num(c(rng)) * pw(var("t"), rat(2))});
  };
  auto rand_gen = [&]() {
    GenKind k = static_cast<GenKind>(kind(rng));
    return generator(k, k == GenKind::Ds ? EP{} : rand_param());
  };
  std::vector<PointTransformation> phis = {
      elementary(TrKind::Px, var("t") * var("t"), false, ws),
      elementary(TrKind::Ds, num(3), false, ws),
      elementary(TrKind::Ry, var("t"), false, ws),
      elementary(TrKind::J, EP{}, false, ws),
      elementary(TrKind::Dt, num(2) * var("t") + num(1), false, ws)};
  for (int i = 0; i < 6; ++i) {
    const PointTransformation& phi = phis[i % phis.size()];
    VectorField X1 = rand_gen(), Y1 = rand_gen();
    CHECK(vf_equal(pushforward(phi, commutator(X1, Y1, ws), ws),
                   commutator(pushforward(phi, X1, ws),
                              pushforward(phi, Y1, ws), ws),
                   ws));
  }
  PointTransformation a = phis[0], b = phis[2];
  VectorField X2 = generator(GenKind::Dt, var("t"));
  CHECK(vf_equal(pushforward(compose(a, b, ws), X2, ws),
                 pushforward(a, pushforward(b, X2, ws), ws), ws));
}

TEST_CASE("mapping explicit solutions") {
  Workspace ws = default_workspace();
  EP f = atom("f", {var("y") - var("x")});
  EP got = map_solution(elementary(TrKind::J), f, ws);
  CHECK(is_zero(got - atom("f", {var("x") - var("y")}), ws) == Verdict::ProvedZero);

  EP w = map_solution(elementary(TrKind::Z, fn_of_t("W0")), zero(), ws);
  CHECK(is_zero(w - fn_of_t("W0"), ws) == Verdict::ProvedZero);

  EP xy = var("x") * var("y");
  EP g = map_solution(elementary(TrKind::Ds, num(2)), xy, ws);
  CHECK(is_zero(g - num(2) * xy, ws) == Verdict::ProvedZero);
  // residual stays zero on the mapped solution
  EP res = substitute_jets(nizhnik_residual(), "u", g, {"t", "x", "y"}, ws);
  CHECK(is_zero(res, ws) == Verdict::ProvedZero);
}

TEST_CASE("jacobian sampling") {
  Workspace ws = default_workspace();
  CHECK(jacobian_nonvanishing(elementary(TrKind::Dt, fn_of_t("T"), false, ws)));
  CHECK(jacobian_nonvanishing(elementary(TrKind::Ds, num(2))));
  PointTransformation degenerate = identity_transformation();
  degenerate.comp[2] = var("x");
  CHECK(!jacobian_nonvanishing(degenerate));
}
