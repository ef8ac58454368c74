#pragma once

#include <optional>
#include "dnk/generators.hpp"
#include "dnk/sexpr.hpp"

namespace dnk {

// Constraint on a subalgebra family parameter, used when drawing numeric or
// polynomial instantiations.
struct ParamConstraint {
  enum class Kind { Nonzero, NonzeroDeriv, NonzeroDeriv2, ValueSet, Range };
  Kind kind = Kind::Nonzero;
  std::string param;
  std::vector<Rat> values;  // ValueSet members, or {lo, hi} for Range
};

struct SubalgebraSpec {
  std::string id;
  std::vector<std::string> fn_params;     // opaque functions of t
  std::vector<std::string> const_params;  // real constants
  std::vector<ParamConstraint> constraints;
  std::vector<VectorField> basis;
  bool lax = false;
};

// Interpret a linear combination of generator terms, e.g.
// "Dt(t) + lambda*Ds" or "Px(1) + Py(rho(t))"; the names Ds, DsBar, Pv refer
// to the parameterless generators.
VectorField interpret_field(const EP& e, bool lax,
                            const Workspace& ws = default_workspace());

// Load subalgebra records from an s-expression manifest file.
std::vector<SubalgebraSpec> load_subalgebras(const std::string& path);
SubalgebraSpec subalgebra_from_sexpr(const SNode& n);

struct ClosureReport {
  bool closed = true;
  // structure constants: bracket [basis_i, basis_j] = sum_k coeff[i][j][k] * basis_k
  std::vector<std::vector<std::vector<Rat>>> coeff;
  std::string failure;  // offending bracket when not closed
};

// Expand every pairwise bracket in the basis with rational structure
// constants (exact linear solve over the monomial expansion), then verify the
// expansion symbolically with parameters opaque.
ClosureReport subalgebra_closure(const SubalgebraSpec& s,
                                 const Workspace& ws = default_workspace());

struct RankReport {
  int rank_txy = 0;    // generic rank of the coefficient matrix over (t,x,y)
  int rank_all = 0;    // ... over all base coordinates
  bool appropriate = false;  // both equal dim(S)
};

// Generic-point ranks, evaluated at `draws` random instantiations honoring
// the declared constraints; the generic rank is the maximum over draws.
RankReport reduction_rank(const SubalgebraSpec& s, int draws = 5,
                          std::uint64_t seed = 20260824,
                          const Workspace& ws = default_workspace());

} // namespace dnk
