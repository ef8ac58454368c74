#pragma once

#include "dnk/generators.hpp"
#include "dnk/jet.hpp"

namespace dnk {

// Elementary point transformations of the equation's pseudogroup (and, with
// `lax`, of the extended pseudogroup acting on (t,x,y,u,v)):
//   Dt(T):  (T, T_t^{1/3} x, T_t^{1/3} y, u - T_tt/(18 T_t) (x^3+y^3))
//   Ds(C):  (t, Cx, Cy, C^3 u)           [extended: v -> C^{3/2} v, C > 0]
//   Px(X0): (t, x+X0, y, u - X0_t(3x^2+3X0 x+X0^2)/6),  Py likewise in y
//   Rx(W1): u -> u + W1 x,  Ry(W2): u -> u + W2 y,  Z(W0): u -> u + W0
//   J:      (t, y, x, u)
//   Pv(B):  v -> v + B   and   Iv: v -> -v   (extended space only)
enum class TrKind { Dt, Ds, Px, Py, Rx, Ry, Z, J, Pv, Iv, Identity, Composite };

const char* tr_kind_name(TrKind k);

struct PointTransformation {
  std::vector<std::string> coords;  // t,x,y,u[,v]
  std::vector<EP> comp;             // images of the coords
  TrKind kind = TrKind::Composite;
  EP param;                         // for parameterized elementary kinds
  bool lax = false;
  // elementary factors in application order (first applied last), kept so
  // composite transformations stay invertible
  std::vector<PointTransformation> factors;
};

PointTransformation identity_transformation(bool lax = false);

// Exact components per the family above; throws on a vanishing Dt/Ds
// parameter, on Pv/Iv without `lax`, and on a lax Ds with negative constant C.
PointTransformation elementary(TrKind k, EP param = EP{}, bool lax = false,
                               const Workspace& ws = default_workspace());

// A after B (apply B first); components canonicalized.
PointTransformation compose(const PointTransformation& a,
                            const PointTransformation& b,
                            const Workspace& ws = default_workspace());

// Inverse of an elementary transformation or a composite of them.  Inverting
// Dt(T) with non-affine T introduces an opaque inverse atom "T_hat" into `ws`
// (derivative rule T_hat' = 1/T'(T_hat) and the rewrite T_hat(T(t)) -> t).
PointTransformation inverse(const PointTransformation& p, Workspace& ws);

// Componentwise canonical equality.
bool pt_equal(const PointTransformation& a, const PointTransformation& b,
              const Workspace& ws = default_workspace());

// Transformed jet variables through order `uord` in u (and `vord` in v on the
// extended space): jet name -> expression in the original jet coordinates,
// computed by inverting the total-derivative Jacobian of the base coordinates.
std::map<std::string, EP> transformed_jets(const PointTransformation& p,
                                           int uord, int vord,
                                           const Workspace& ws = default_workspace());

// Substitute the transformed jets into the equation (resp. the Lax system).
// On (t,x,y,u): ProvedZero iff the transformed residual equals a nonvanishing
// multiplier times the original residual (the residual is affine in u_txy).
// On (t,x,y,u,v): the transformed residuals must vanish modulo the system.
Verdict is_symmetry(const PointTransformation& p,
                    const Workspace& ws = default_workspace());

// Push a vector field forward: (p_* X)^i = (X p^i) evaluated at p^{-1}.
VectorField pushforward(const PointTransformation& p, const VectorField& x,
                        Workspace& ws);

// Map an explicit solution u = f(t,x,y) to its image under p (extended
// transformations also need no v: the base coordinates do not involve u, v).
EP map_solution(const PointTransformation& p, const EP& f, Workspace& ws);

// Every displayed adjoint-action relation of the elementary transformations
// on the spanning vector fields, verified componentwise.
TableReport verify_adjoint_table();

// Numeric spot check that the base-coordinate Jacobian does not vanish at
// random sample points (functional parameters instantiated randomly).
bool jacobian_nonvanishing(const PointTransformation& p, int samples = 5,
                           std::uint64_t seed = 20260824,
                           const Workspace& ws = default_workspace());

} // namespace dnk
