#include "dnk/workspace.hpp"

namespace dnk {

void Workspace::declare(const std::string& name, Role role) {
  vars_[name].role = role;
}

void Workspace::declare_jet(const std::string& name, const std::string& base,
                            std::vector<unsigned> mi) {
  VarInfo& vi = vars_[name];
  vi.role = Role::Jet;
  vi.base = base;
  vi.mi = std::move(mi);
}

const VarInfo* Workspace::lookup(const std::string& name) const {
  auto it = vars_.find(name);
  return it == vars_.end() ? nullptr : &it->second;
}

void Workspace::assume(const std::string& var, SignAssumption s) {
  signs_[var] = s;
}

SignAssumption Workspace::assumption(const EP& e) const {
  if (e->kind != Kind::Var) return SignAssumption::None;
  auto it = signs_.find(e->name);
  return it == signs_.end() ? SignAssumption::None : it->second;
}

void Workspace::define_atom(const std::string& name, AtomDef def) {
  atom_defs_[name] = std::move(def);
}

const AtomDef* Workspace::atom_def(const std::string& name) const {
  auto it = atom_defs_.find(name);
  return it == atom_defs_.end() ? nullptr : &it->second;
}

void Workspace::declare_inverse_pair(const std::string& f, const std::string& g) {
  inverses_.emplace_back(f, g);
}

bool Workspace::are_inverse(const std::string& outer, const std::string& inner) const {
  for (auto& [f, g] : inverses_)
    if ((outer == f && inner == g) || (outer == g && inner == f)) return true;
  return false;
}

const Workspace& default_workspace() {
  static const Workspace ws = [] {
    Workspace w;
    w.declare("t", Role::Independent);
    w.declare("x", Role::Independent);
    w.declare("y", Role::Independent);
    w.declare("u", Role::Dependent);
    w.declare("v", Role::Dependent);
    return w;
  }();
  return ws;
}

} // namespace dnk
