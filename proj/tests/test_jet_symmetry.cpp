#include "doctest.h"

#include "dnk/generators.hpp"
#include "dnk/jet.hpp"
#include "dnk/parse.hpp"

#include <random>

using namespace dnk;


TEST_CASE("commutator basics") {
  Workspace ws = default_workspace();
  VectorField dt1 = generator(GenKind::Dt, one());
  VectorField dtt = generator(GenKind::Dt, var("t"));
  CHECK(vf_equal(commutator(dt1, dtt, ws), dt1, ws));

  VectorField ds = generator(GenKind::Ds);
  VectorField z = generator(GenKind::Z, fn_of_t("sigma"));
  CHECK(vf_equal(commutator(ds, z, ws), num(-3) * z, ws));
  CHECK(vf_is_zero(commutator(ds, ds, ws), ws));
  // counterexample from outside the span stays nonzero
  VectorField px_t2 = generator(GenKind::Px, var("t") * var("t"));
  VectorField got = commutator(dt1, px_t2, ws);
  CHECK(vf_equal(got, generator(GenKind::Px, num(2) * var("t")), ws));
}

TEST_CASE("prolongation coefficients") {
  Workspace ws = default_workspace();
  JetContext ctx = nizhnik_context();

  VectorField ddt = vf_zero({"t", "x", "y", "u"});
  ddt.comp[0] = one();
  ProlongedField p = prolong(ddt, 3, ctx, ws);
  for (auto& [jet, coeff] : p.phi) CHECK(coeff->is_num(0));

  ProlongedField ps = prolong(generator(GenKind::Ds), 2, ctx, ws);
  // scaling weight of u_xx is 3 - 2 = 1
  CHECK(is_zero(ps.phi.at("u_xx") - var("u_xx"), ws) == Verdict::ProvedZero);
  CHECK(is_zero(ps.phi.at("u_t") - num(3) * var("u_t"), ws) == Verdict::ProvedZero);

  ProlongedField pz = prolong(generator(GenKind::Z, fn_of_t("sigma")), 1, ctx, ws);
  CHECK(is_zero(pz.phi.at("u_t") - parse("sigma'(t)"), ws) == Verdict::ProvedZero);
  CHECK(pz.phi.at("u_x")->is_num(0));
}

TEST_CASE("invariance of the equation under the generator family") {
  Workspace ws = default_workspace();
  CHECK(invariance_residual(generator(GenKind::Dt, fn_of_t("tau")), ws) ==
        Verdict::ProvedZero);
  CHECK(invariance_residual(generator(GenKind::Ds), ws) == Verdict::ProvedZero);
  CHECK(invariance_residual(generator(GenKind::Px, fn_of_t("chi")), ws) ==
        Verdict::ProvedZero);
  CHECK(invariance_residual(generator(GenKind::Rx, one()), ws) ==
        Verdict::ProvedZero);
  CHECK(invariance_residual(generator(GenKind::Z, fn_of_t("sigma")), ws) ==
        Verdict::ProvedZero);
  // t d/dx is not a symmetry
  VectorField bad = vf_zero({"t", "x", "y", "u"});
  bad.comp[1] = var("t");
  CHECK(invariance_residual(bad, ws) == Verdict::ProvedNonzero);
  // the x-translation without its u-correction is not one either
  VectorField bad2 = vf_zero({"t", "x", "y", "u"});
  bad2.comp[1] = var("t") * var("t");
  CHECK(invariance_residual(bad2, ws) == Verdict::ProvedNonzero);
}

TEST_CASE("invariance of the Lax system under the extended family") {
  Workspace ws = default_workspace();
  CHECK(invariance_residual(generator(GenKind::PvBar, EP{}, true), ws) ==
        Verdict::ProvedZero);
  CHECK(invariance_residual(generator(GenKind::DsBar, EP{}, true), ws) ==
        Verdict::ProvedZero);
  CHECK(invariance_residual(generator(GenKind::Dt, fn_of_t("tau"), true), ws) ==
        Verdict::ProvedZero);
  CHECK(invariance_residual(generator(GenKind::Py, fn_of_t("rho"), true), ws) ==
        Verdict::ProvedZero);
  // plain scaling without the v-weight fails on the Lax system
  CHECK(invariance_residual(generator(GenKind::Ds, EP{}, true), ws) ==
        Verdict::ProvedNonzero);
}

TEST_CASE("commutation table verification") {
  TableReport rep = verify_commutation_table();
  for (auto& c : rep.checks) {
    INFO(c.description);
    CHECK(c.ok);
  }
  CHECK(rep.ok);
}

TEST_CASE("Jacobi identity on random generator triples") {
  Workspace ws = default_workspace();
  std::mt19937_64 rng(20260824);
  std::uniform_int_distribution<int> kind(0, 6);
  std::uniform_int_distribution<long> c(-4, 4);
  auto rand_param = [&]() {
    return sum({num(c(rng)), num(c(rng)) * var("t"),
                num(c(rng)) * pw(var("t"), rat(2)),
                num(c(rng)) * pw(var("t"), rat(3))});
  };
  auto rand_field = [&]() {
    GenKind k = static_cast<GenKind>(kind(rng));
    bool functional = k != GenKind::Ds;
    return generator(k, functional ? rand_param() : EP{});
  };
  for (int i = 0; i < 10; ++i) {
    VectorField X = rand_field(), Y = rand_field(), Z = rand_field();
    VectorField jac = commutator(commutator(X, Y, ws), Z, ws) +
                      commutator(commutator(Y, Z, ws), X, ws) +
                      commutator(commutator(Z, X, ws), Y, ws);
    CHECK(vf_is_zero(jac, ws));
    // antisymmetry + bilinearity spot check
    CHECK(vf_is_zero(commutator(X, Y, ws) + commutator(Y, X, ws), ws));
  }
}
