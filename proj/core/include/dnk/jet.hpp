#pragma once

#include <map>
#include <string>
#include <vector>
#include "dnk/expr.hpp"
#include "dnk/workspace.hpp"
#include "dnk/zero.hpp"

namespace dnk {

// Independent/dependent split of the base coordinates for jet computations.
struct JetContext {
  std::vector<std::string> indeps;
  std::vector<std::string> deps;

  std::vector<std::string> coords() const {
    std::vector<std::string> c = indeps;
    c.insert(c.end(), deps.begin(), deps.end());
    return c;
  }
};

// Point vector field: one coefficient expression per base coordinate.
// Coefficients may involve opaque atoms of t (functional parameters).
struct VectorField {
  std::vector<std::string> coords;
  std::vector<EP> comp;

  const EP& component(const std::string& coord) const;
  // X(f) = sum_i comp[i] * d f / d coords[i]
  EP apply(const EP& f, const Workspace& ws) const;
};

VectorField vf_zero(const std::vector<std::string>& coords);
VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(const EP& c, const VectorField& a);
VectorField operator-(const VectorField& a);

// Lie bracket [X, Y]^i = X(Y^i) - Y(X^i).
VectorField commutator(const VectorField& x, const VectorField& y,
                       const Workspace& ws = default_workspace());

// Componentwise canonical equality (every difference ProvedZero).
bool vf_equal(const VectorField& a, const VectorField& b,
              const Workspace& ws = default_workspace());
bool vf_is_zero(const VectorField& a, const Workspace& ws = default_workspace());

// Prolongation to jet variables: phi[w_J] for every dependent w and
// multi-index 1 <= |J| <= order, via phi^{J,i} = D_i phi^J - sum_j D_i(xi^j) w_{J,j}.
struct ProlongedField {
  VectorField base;
  std::map<std::string, EP> phi;  // jet variable name -> induced coefficient
};

ProlongedField prolong(const VectorField& x, int order, const JetContext& ctx,
                       const Workspace& ws = default_workspace());

// Apply the prolonged field to an expression on jet space:
// sum_i xi^i d/dx^i + sum_w phi^w d/dw + sum phi^{w_J} d/dw_J.
EP apply_prolonged(const ProlongedField& px, const EP& f, const JetContext& ctx,
                   const Workspace& ws = default_workspace());

// One "solved-form" jet relation w_{lead} = rhs (rhs in lower/other jets).
struct JetRelation {
  std::string dep;
  std::vector<unsigned> lead;  // multi-index of the solved derivative
  EP rhs;
};

// Rewrite every jet variable whose multi-index dominates a relation's leading
// index by the corresponding total derivative of the relation's right-hand
// side, iterating to a fixed point.
EP reduce_modulo(const EP& e, const std::vector<JetRelation>& rels,
                 const JetContext& ctx, const Workspace& ws = default_workspace());

// Third-order jet residual of the dispersionless Nizhnik equation
// u_txy = (u_xx u_xy)_x + (u_xy u_yy)_y, as (lhs - rhs).
EP nizhnik_residual();
// Residuals of its nonlinear Lax system
// v_t = (v_x^3 - u_xy^3/v_x^3)/3 + u_xx v_x - u_xy u_yy / v_x,  v_y = -u_xy/v_x.
std::vector<EP> lax_residuals();

JetContext nizhnik_context();       // (t,x,y | u)
JetContext lax_context();           // (t,x,y | u,v)

// Lie invariance test: prolong X, apply to the residual(s), substitute the
// solved jets (u_txy, resp. v_t and v_y), and run the zero test.  A field on
// (t,x,y,u) is tested against the equation, one on (t,x,y,u,v) against the
// Lax system (worst verdict over the two residuals).
Verdict invariance_residual(const VectorField& x,
                            const Workspace& ws = default_workspace());

} // namespace dnk
