#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>
#include "dnk/expr.hpp"
#include "dnk/interval.hpp"

namespace dnk {

// Atom evaluator: receives argument enclosures and the derivative multi-index.
using AtomEval =
    std::function<Interval(const std::vector<Interval>&, const std::vector<unsigned>&)>;

struct EvalEnv {
  std::map<std::string, Interval> vars;
  std::map<std::string, AtomEval> atoms;
  mpfr_prec_t prec = 256;

  void set(const std::string& v, const Real& x) { vars[v] = Interval(x); }
  void set(const std::string& v, const Rat& q) { vars[v] = Interval::exact(q, prec); }
};

// Interval evaluation with outward rounding; throws DomainError on branch-cut
// or singular input, std::out_of_range on unbound symbols.
Interval eval(const EP& e, const EvalEnv& env);

// Convenience: midpoint of the enclosure.
Real eval_mid(const EP& e, const EvalEnv& env);

} // namespace dnk
