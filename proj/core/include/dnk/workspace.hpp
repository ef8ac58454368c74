#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>
#include "dnk/expr.hpp"

namespace dnk {

enum class Role : unsigned char {
  Independent, Dependent, Jet, ParameterFunction, ParameterConstant, Invariant, Unknown
};

struct VarInfo {
  Role role = Role::Unknown;
  // for jets: the dependent's name and the multi-index over the declared
  // independents, e.g. u_{txy} -> base "u", mi {1,1,1}
  std::string base;
  std::vector<unsigned> mi;
};

enum class SignAssumption : unsigned char { None, Positive, Negative };

// A defined atom has its first derivatives rewritten to expressions in other
// atoms, so repeated differentiation never creates derivative indices on it.
// The rule for direction i is a template in formal parameters $1..$n.
struct AtomDef {
  size_t arity = 0;
  std::vector<EP> deriv;  // deriv[i]: template for d/d(arg_i), in vars $1..$n
};

// Read-mostly symbol table shared by the calculus and canonicalizer.
class Workspace {
public:
  void declare(const std::string& name, Role role);
  void declare_jet(const std::string& name, const std::string& base,
                   std::vector<unsigned> mi);
  const VarInfo* lookup(const std::string& name) const;

  void assume(const std::string& var, SignAssumption s);
  SignAssumption assumption(const EP& e) const;  // for Var nodes (by name); None otherwise

  // defined atoms (e.g. the inverse atom of T, implicitly defined unknowns)
  void define_atom(const std::string& name, AtomDef def);
  const AtomDef* atom_def(const std::string& name) const;

  // inverse pair: g(f(x)) -> x and f(g(x)) -> x during canonicalization
  void declare_inverse_pair(const std::string& f, const std::string& g);
  bool are_inverse(const std::string& outer, const std::string& inner) const;

  std::size_t node_cap = 1000000;

private:
  std::map<std::string, VarInfo> vars_;
  std::map<std::string, SignAssumption> signs_;
  std::map<std::string, AtomDef> atom_defs_;
  std::vector<std::pair<std::string, std::string>> inverses_;
};

// Default workspace with t, x, y, u, v declared (used when no workspace is passed).
const Workspace& default_workspace();

} // namespace dnk
