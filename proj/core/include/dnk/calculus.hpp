#pragma once

#include <map>
#include <string>
#include <vector>
#include "dnk/expr.hpp"
#include "dnk/workspace.hpp"

namespace dnk {

// Exact partial derivative with respect to the variable named v.  Distinct
// variables are independent (jet chain rules live in total_derivative).
// Opaque atoms gain incremented derivative indices via the chain rule;
// defined atoms (Workspace::define_atom) have their derivatives rewritten.
EP differentiate(const EP& e, const std::string& v,
                 const Workspace& ws = default_workspace());

// repeated/mixed derivative: one entry per variable with multiplicity
EP differentiate(const EP& e, const std::vector<std::string>& vars,
                 const Workspace& ws = default_workspace());

struct FnDef {
  std::vector<std::string> params;
  EP body;
};

struct Subst {
  std::map<std::string, EP> vars;    // variable name -> replacement
  std::map<std::string, FnDef> fns;  // atom name -> definition (derivatives
                                     // computed from the body on demand)
};

// Simultaneous substitution.
EP substitute(const EP& e, const Subst& s,
              const Workspace& ws = default_workspace());

// --- jet variable naming ---
// A jet of dependent "u" over independents (t,x,y) with multi-index (1,0,2)
// is the variable "u_tyy"; multi-index all zero is "u" itself.
std::string jet_name(const std::string& base, const std::vector<unsigned>& mi,
                     const std::vector<std::string>& indeps);
// Inverse of jet_name: true if `name` is base or a jet of base; fills mi.
bool parse_jet(const std::string& name, const std::string& base,
               const std::vector<std::string>& indeps, std::vector<unsigned>& mi);

// Total derivative D_i on jet space: d/d(indeps[i]) treating each dependent
// in `deps` and its jet variables as functions of the independents.
EP total_derivative(const EP& e, size_t i,
                    const std::vector<std::string>& indeps,
                    const std::vector<std::string>& deps,
                    const Workspace& ws = default_workspace());

// Replace every jet variable of `dep` (including "dep" itself) by the
// corresponding derivative of `expr` (an expression in the independents).
EP substitute_jets(const EP& e, const std::string& dep, const EP& expr,
                   const std::vector<std::string>& indeps,
                   const Workspace& ws = default_workspace());

} // namespace dnk
