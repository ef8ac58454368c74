#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>
#include "dnk/eval.hpp"
#include "dnk/numerics.hpp"
#include "dnk/reduce.hpp"

namespace dnk {

// ---------------------------------------------------------------------------
// Solution catalog: a machine-readable registry of exact solution families of
// the equation u_txy = (u_xx u_xy)_x + (u_xy u_yy)_y, each with a
// verification strategy, parameter draws, and a sampling domain.
// ---------------------------------------------------------------------------

enum class SolKind { Explicit, Parametric, Implicit, Quadrature, Family };
enum class VerifyMode { Symbolic, Numeric, Both };

const char* sol_kind_name(SolKind k);
const char* verify_mode_name(VerifyMode m);

// Auxiliary function entering a payload, with a numeric evaluation strategy.
// Both species are registered as defined atoms (Workspace::define_atom), so
// symbolic differentiation closes over explicit expressions and only the
// atom's own value ever needs a numeric hook:
//   - Antiderivative: value(x) = base-point integral of `integrand`;
//     d(atom)/dx rewrites to integrand(x).
//   - Implicit: value(args) = the root of relation(var; args) = 0 inside
//     [bracket_lo, bracket_hi]; derivatives by implicit differentiation,
//     d(atom)/d(arg_i) = -relation_{arg_i}/relation_{var} at var = atom(args).
struct AuxFunction {
  enum class Def { Antiderivative, Implicit };
  Def def = Def::Implicit;
  std::string atom;               // registered defined-atom name
  std::vector<std::string> args;  // argument coordinate names
  std::string var = "s";          // Implicit: the solved-for variable
  EP integrand;                   // Antiderivative: expression in `var`
  Rat base = 0;                   // Antiderivative: base point
  EP relation;                    // Implicit: expression in `var` and args
  Rat bracket_lo = 0, bracket_hi = 1;
};

// One concrete parameter draw of a record: payload with all parameters bound
// (auxiliary atoms registered in the catalog workspace).  For fully symbolic
// family checks the record-level generic payload is used instead.
struct SolutionInstance {
  EP u;                       // expression in (t,x,y) and auxiliary atoms
  EP v;                       // optional partner of the auxiliary system
  std::vector<AuxFunction> aux;
  std::string note;           // human-readable draw description
};

// Payload living on a reduced auxiliary linear system instead of (t,x,y):
// the instance's `u` is the reduced unknown phi(om) and `v` is phi's partner
// derivative psi_om(om); the rows verified are the referenced displayed
// system with the recorded parameter values substituted.
struct ReducedPairRef {
  std::string ansatz;    // id in the ansatz manifest
  std::string variant;   // lax variant id on that ansatz
  Subst fix;             // parameter values of the variant
};

struct SolutionRecord {
  std::string id;
  SolKind kind = SolKind::Explicit;
  VerifyMode mode = VerifyMode::Numeric;
  std::string section;                 // origin tag used by filters
  std::vector<std::string> const_params;
  std::vector<std::string> fn_params;  // arbitrary-function slots (arity 1-2)
  std::vector<ParamConstraint> constraints;
  std::map<std::string, std::pair<Rat, Rat>> box;  // sampling box
  double tol_log10 = -25;              // numeric pass threshold (normalized)
  mpfr_prec_t bits = 256;              // working precision override
  bool expect_fail = false;            // deliberately wrong fixture
  bool lax = false;                    // verify the auxiliary system instead
  EP omega;                            // optional reporting coordinate (an
                                       // expression in the box variables)
  std::optional<ReducedPairRef> reduced_pair;
  EP generic_u;                        // payload with parameters opaque (may
                                       // be empty when draws carry payloads)
  EP generic_v;
  std::vector<SolutionInstance> instances;
};

struct Catalog {
  std::vector<SolutionRecord> records;
  Workspace ws;                  // symbols + defined atoms of all instances
  std::vector<Ansatz> ansatzes;  // referenced by reduced-pair records
};

// Load the catalog manifest; `ansatz_path` supplies the reduced systems that
// reduced-pair records reference.  Pool functions for unbound
// arbitrary-function slots are generated deterministically from `seed`
// (polynomials of degree <= 3, scaled sin, scaled exp, rational coefficients).
Catalog load_catalog(const std::string& catalog_path,
                     const std::string& ansatz_path,
                     std::uint64_t seed = 20260824);

const SolutionRecord& record_by_id(const Catalog& c, const std::string& id);

// Stable-ordered manifest slice.  Supported filter keys: "id", "kind",
// "section", "mode", "lax" ("true"/"false").  Throws on an unknown key.
std::vector<const SolutionRecord*> list_solutions(
    const Catalog& c, const std::map<std::string, std::string>& filter = {});

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

// One numeric sample, kept when VerifyOptions::record_samples is set (CSV
// residual-by-sample dumps).
struct SampleRow {
  int draw = 0;
  int index = 0;
  std::map<std::string, double> coords;
  double omega = 0;          // value of the record's reporting coordinate
  bool has_omega = false;
  double residual_log10 = -1e9;
};

struct VerificationReport {
  std::string id;
  VerifyMode mode = VerifyMode::Numeric;
  Verdict verdict = Verdict::Unknown;
  bool passed = false;                // for expect_fail records: "failed as
                                      // intended" counts as passed
  double max_residual_log10 = -1e9;   // over all numeric samples
  double mean_residual_log10 = -1e9;
  int samples = 0;                    // numeric samples actually evaluated
  std::uint64_t seed = 0;
  double wall_ms = 0;
  std::string note;
  std::vector<SampleRow> rows;        // only when requested
};

struct VerifyOptions {
  PrecisionConfig prec;
  int samples_per_draw = 100;
  double fd_check_fraction = 0.1;  // share of samples cross-checked with
                                   // finite differences
  bool record_samples = false;
  int jobs = 1;                    // worker threads in verify_all
};

// Substitute the record's payload(s) into the equation (or the auxiliary
// system) and certify the residual: symbolic mode needs ProvedZero, numeric
// mode needs the normalized residual below the record tolerance at every
// sample of every draw.  Deterministic for a fixed seed.
VerificationReport verify(const Catalog& c, const SolutionRecord& r,
                          const VerifyOptions& opt = {});

// Both equations of the auxiliary system (full (u,v) payloads or a reduced
// (phi, psi) pair against its displayed reduced system).
VerificationReport verify_lax_solution(const Catalog& c,
                                       const SolutionRecord& r,
                                       const VerifyOptions& opt = {});

// Verify every record (dispatching lax records appropriately), merged
// deterministically by id order.
std::vector<VerificationReport> verify_all(const Catalog& c,
                                           const VerifyOptions& opt = {});

// The first integral of the twice-lowered logarithmic-weight reduced ODE:
//   (2w(w^3-1)p + 3w^3-1) p_w + 2w(w^3-1)p^3 + (13w^3-3)p^2 + 22pw^2 + 10w = 0
// with invariant
//   (w(w^3-1)^2 p^2 + (3w^3-1)(w^3-1)p + w^2(2w^3-5))^3
//     / ((2w(w^3-1)p + 5w^3+1)^4 (wp+1)^2).
// Checks (i) the total w-derivative vanishes modulo the ODE (ProvedZero) and
// (ii) numeric drift along Runge-Kutta trajectories stays below 1e-6.
VerificationReport verify_first_integral(const PrecisionConfig& cfg = {});

// Multiplicative separation u = phi(t,x) psi(t,y): re-derives the constraint
// system on the t-dependent coefficients from the cross-derivative
// compatibility of the two characteristic ODE systems, then verifies the
// four solution families from the catalog (section tag "10").
VerificationReport verify_separation(const Catalog& c,
                                     const VerifyOptions& opt = {});

// ---------------------------------------------------------------------------
// Numeric point evaluation of instances
// ---------------------------------------------------------------------------

// Atom hooks for an instance's auxiliary functions (Newton / quadrature
// mediated), shared across evaluations; safe to reuse within one thread.
std::map<std::string, AtomEval> make_aux_hooks(const SolutionInstance& inst,
                                               const Workspace& ws,
                                               const PrecisionConfig& cfg);

// Callable u(t,x,y) (or any payload expression) at a point, for
// finite-difference cross-checks and external sampling.
PointFn make_point_fn(EP payload, const std::vector<std::string>& coords,
                      const SolutionInstance& inst, const Workspace& ws,
                      const PrecisionConfig& cfg);

} // namespace dnk
