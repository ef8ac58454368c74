#pragma once

#include "dnk/jet.hpp"

namespace dnk {

// The generator family of the symmetry algebra of the equation (kinds without
// the trailing Bar) and of its Lax system (pass lax=true, adding the v slot;
// DsBar/PvBar are the two genuinely new kinds of the extended algebra).
enum class GenKind { Dt, Ds, Px, Py, Rx, Ry, Z, DsBar, PvBar };

const char* gen_kind_name(GenKind k);

// `param` is an expression in t for the functional kinds (Dt, Px, Py, Rx, Ry,
// Z); it must be absent (null) for Ds, DsBar, PvBar.
VectorField generator(GenKind kind, const EP& param = EP{}, bool lax = false,
                      const Workspace& ws = default_workspace());

// Convenience: an opaque functional parameter, e.g. fn_of_t("tau") = tau(t).
EP fn_of_t(const std::string& name);

struct TableCheck {
  std::string description;
  bool ok = false;
};

struct TableReport {
  std::vector<TableCheck> checks;
  bool ok = true;

  void add(std::string desc, bool pass) {
    ok = ok && pass;
    checks.push_back({std::move(desc), pass});
  }
};

// Verify every commutation relation of the symmetry algebra (and of the
// extended algebra of the Lax system) and that all remaining generator pairs
// commute.  Functional parameters are held opaque.
TableReport verify_commutation_table(const Workspace& ws = default_workspace());

} // namespace dnk
