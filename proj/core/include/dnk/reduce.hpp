#pragma once

#include <optional>
#include "dnk/calculus.hpp"
#include "dnk/jet.hpp"
#include "dnk/subalgebra.hpp"

namespace dnk {

// Invariant-solution ansatz: the unknown enters the solution template only
// through the invariant variables, u = template(t,x,y, w(z1,z2)) with the
// occurrence of w written as the atom w(z1expr, z2expr).  The section
// expresses some of the base coordinates through the invariant names so that
// the substituted residual can be rewritten on (aux coords, invariants, jets).
struct LaxAnsatz {
  std::string id;
  std::vector<std::string> const_params;
  std::string v_unknown;            // q or psi
  EP v_template;                    // contains atom(v_unknown, inv exprs)
  EP u_template;                    // optional override of the base template
  std::vector<EP> targets;          // displayed reduced system rows (jet vars)
  std::string elim;                 // jet variable solved from the second row
                                    // before matching the first (the display
                                    // may mix the rows)
  Subst fix;                        // base-parameter values this variant needs
};

struct Ansatz {
  std::string id;
  std::string subalgebra;           // id in the subalgebra manifest
  std::vector<std::string> fn_params;
  std::vector<std::string> const_params;
  std::vector<ParamConstraint> constraints;
  std::vector<std::string> inv_names;   // {"z1","z2"} or {"om"}
  std::vector<EP> inv_exprs;            // invariants as expressions in (t,x,y)
  std::string unknown;                  // w or phi
  EP u_template;                        // contains atom(unknown, inv exprs)
  Subst section;                        // partial map on {t,x,y}
  EP target;                            // displayed reduced equation (= 0)
  std::vector<VectorField> basis;       // the subalgebra actually reduced by
  std::vector<LaxAnsatz> lax;

  std::vector<std::string> aux_coords() const;  // {t,x,y} minus section keys
  JetContext reduced_context() const { return {inv_names, {unknown}}; }
};

// `atoms`, when given, receives the defined-atom declarations of the manifest
// (antiderivative invariants); pass the same workspace to the operations below.
std::vector<Ansatz> load_ansatzes(const std::string& path,
                                  Workspace* atoms = nullptr);
const Ansatz& ansatz_by_id(const std::vector<Ansatz>& list, const std::string& id);
const LaxAnsatz& lax_by_id(const Ansatz& a, const std::string& id);

// Substitute parameter values/functions into every expression of a copy.
Ansatz instantiate_ansatz(const Ansatz& a, const Subst& s,
                          const Workspace& ws = default_workspace());

struct ReducedEquation {
  std::string id;
  std::vector<std::string> inv_names;
  std::string unknown;
  EP equation;     // the verified display (jet polynomial over the invariants)
  EP multiplier;   // substituted residual = multiplier * equation
  Verdict match = Verdict::Unknown;
  std::string note;  // failure diagnostics (leftover coordinates etc.)
};

// Substitute the template into the equation's residual, rewrite on
// (aux, invariants, jets of the unknown); proportionality to the target with
// a jet-independent, nonvanishing multiplier is certified by a
// cross-multiplication identity at a random jet draw.
ReducedEquation reduce_pde(const Ansatz& a,
                           const Workspace& ws = default_workspace());

struct ReducedSystem {
  std::string id;
  std::vector<ReducedEquation> equations;
  bool matched() const;
};

// Same for the two equations of the Lax system (their residuals are rational
// in v_x; numerator and denominator are matched together).
ReducedSystem reduce_lax(const Ansatz& a, const LaxAnsatz& ext,
                         const Workspace& ws = default_workspace());

struct CompatibilityReport {
  Verdict verdict = Verdict::Unknown;
  EP factor;                    // cross-derivative difference = factor * residual
  double max_residual_log10 = 0;  // numeric sampling statistic (log10)
  bool perturbation_ok = false;   // off-shell residual tracks factor * violation
};

// D_y(rhs of v_t) - D_t(rhs of v_y) with v-derivatives eliminated modulo the
// Lax system factors through the equation's residual.
CompatibilityReport lax_compatibility(const Workspace& ws = default_workspace());

struct DegeneracySplit {
  EP M, N;             // equation = M * (third-order jet) + N
  bool m_depends_on_second = false;  // M_{phi_omom} != 0
  bool nondegenerate = false;        // the displayed constraint block holds
};

// Split a third-order reduced ODE as M*phi_omomom + N and evaluate the
// degeneracy conditions on (M, N).
DegeneracySplit degeneracy_split(const ReducedEquation& r,
                                 const Workspace& ws = default_workspace());

// sigma lists the images of (invariants..., unknown) as expressions in those
// same coordinates; verifies that the transformed equation is a nonvanishing
// multiple of the original (multiplier independent of the jets).
Verdict verify_reduced_symmetry(const ReducedEquation& r,
                                const std::vector<EP>& sigma,
                                const Workspace& ws = default_workspace());

struct InducedField {
  VectorField field;     // on (invariants..., unknown)
  bool projectable = false;
  std::string note;
};

// Project a normalizer element X onto the reduced coordinates of the ansatz:
// the invariant components are X(z_k) re-expressed through the invariants and
// the unknown component is (eta|_{u=U} - xi^j dU/dx^j)/U_w.
InducedField induced_field(const VectorField& x, const Ansatz& a,
                           const Workspace& ws = default_workspace());

// Lie invariance of a field on the reduced jet space: prolong to order 3,
// apply to the equation, and reduce modulo the equation solved for a
// third-order jet with generically nonvanishing coefficient.
Verdict reduced_invariance(const VectorField& y, const ReducedEquation& r,
                           const Workspace& ws = default_workspace());

} // namespace dnk
