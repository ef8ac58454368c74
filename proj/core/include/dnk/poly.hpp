#pragma once

#include <functional>
#include <map>
#include "dnk/expr.hpp"
#include "dnk/workspace.hpp"

namespace dnk {

// Canonical form machinery: expressions are expanded into a polynomial
// (map monomial -> rational coefficient) whose monomial "bases" are
// canonicalized non-decomposable subexpressions (variables, atoms, heads,
// unexpandable powers) with exact rational exponents.

struct ExprLess {
  bool operator()(const EP& a, const EP& b) const { return cmp(a, b) < 0; }
};

using Mono = std::map<EP, Rat, ExprLess>;  // base -> exponent (no zeros)

struct MonoLess {
  bool operator()(const Mono& a, const Mono& b) const;
};

using Poly = std::map<Mono, Rat, MonoLess>;  // monomial -> coefficient (no zeros)

void poly_add(Poly& into, const Poly& p, const Rat& scale = Rat(1));
Poly poly_mul(const Poly& a, const Poly& b, const Workspace& ws);
Poly poly_pow_int(const Poly& p, long n, const Workspace& ws);

// Expand e into a Poly. Throws SizeLimit if ws.node_cap is exceeded,
// std::domain_error on 0^negative.
Poly expand(const EP& e, const Workspace& ws);

// Deterministic reconstruction of an Expr from a Poly (the canonical form).
EP rebuild(const Poly& p);

EP canonicalize(const EP& e, const Workspace& ws = default_workspace());

// Multiply through by positive powers of every base that occurs with a
// negative exponent (generically nonzero), then re-expand. Zero-ness of the
// expression is preserved generically; used by the layered zero test.
Poly clear_denominators(const Poly& p, const Workspace& ws);

// Extract gcd-content with sign normalization: p = content * result, where the
// first coefficient (in monomial order) of result is positive.
Rat extract_content(Poly& p);

// Split each monomial into the sub-monomial of bases selected by `pick` and
// the rest; returns map selected-part -> polynomial of rests.
std::map<Mono, Poly, MonoLess> split_by(
    const Poly& p, const std::function<bool(const EP&)>& pick);

// Coefficient of a first-power base (e.g. a jet variable) in e, and the
// remainder: e = coeff * base + rest, requiring e affine in base.
// Throws if e is not affine in base.
void affine_split(const EP& e, const EP& base, const Workspace& ws,
                  EP& coeff, EP& rest);

} // namespace dnk
