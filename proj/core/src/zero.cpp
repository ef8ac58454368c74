#include "dnk/zero.hpp"

#include <random>
#include "dnk/calculus.hpp"
#include "dnk/eval.hpp"
#include "dnk/poly.hpp"

namespace dnk {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::ProvedZero: return "ProvedZero";
    case Verdict::ProvedNonzero: return "ProvedNonzero";
    case Verdict::ProbablyZero: return "ProbablyZero";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

Rat random_rat(std::mt19937_64& rng, bool avoid_zero = true) {
  std::uniform_int_distribution<long> numd(-64, 64);
  long n = numd(rng);
  if (avoid_zero) {
    while (n > -8 && n < 8) n = numd(rng);
  }
  return rat(n, 32);
}

struct AtomSig {
  size_t arity;
};

void collect_atom_sigs(const EP& e, std::map<std::string, AtomSig>& out) {
  if (e->kind == Kind::Atom) out[e->name] = {e->kids.size()};
  for (auto& k : e->kids) collect_atom_sigs(k, out);
}

// random polynomial of total degree <= 3 in `arity` formal parameters
EP random_poly(size_t arity, std::mt19937_64& rng) {
  std::vector<EP> params;
  for (size_t i = 0; i < arity; ++i) params.push_back(var("#" + std::to_string(i + 1)));
  std::vector<EP> terms;
  terms.push_back(num(random_rat(rng, false)));
  // all monomials of degree 1..3 (arity <= 3 in practice)
  std::function<void(size_t, unsigned, EP)> rec = [&](size_t i, unsigned deg, EP m) {
    if (i == arity) {
      if (deg > 0) terms.push_back(num(random_rat(rng, false)) * m);
      return;
    }
    for (unsigned d = 0; deg + d <= 3; ++d) {
      EP mm = m;
      for (unsigned j = 0; j < d; ++j) mm = mm * params[i];
      rec(i + 1, deg + d, mm);
    }
  };
  rec(0, 0, one());
  return sum(std::move(terms));
}

} // namespace

Verdict is_zero(const EP& e, const Workspace& ws, const ZeroOptions& opt) {
  bool canonical_ok = true;
  try {
    Poly p = expand(e, ws);
    if (p.empty()) return Verdict::ProvedZero;
    Poly cleared = clear_denominators(p, ws);
    if (cleared.empty()) return Verdict::ProvedZero;
  } catch (const SizeLimit&) {
    canonical_ok = false;  // graceful numeric degradation
  } catch (const std::domain_error&) {
    canonical_ok = false;
  }
  (void)canonical_ok;
  if (!opt.numeric_fallback) return Verdict::Unknown;

  std::map<std::string, AtomSig> sigs;
  collect_atom_sigs(e, sigs);
  for (auto& [name, sig] : sigs)
    if (ws.atom_def(name))
      return Verdict::Unknown;  // implicitly-defined atoms cannot be sampled freely

  std::vector<std::string> vars_free;
  collect_vars(e, vars_free);

  std::mt19937_64 rng(opt.seed ^ (e->h * 0x9e3779b97f4a7c15ull));
  Real thr = rpow(Real(10.0, opt.bits), Real((double)opt.threshold_log10, opt.bits));

  int zeroish = 0, valid = 0;
  for (int attempt = 0; attempt < opt.max_attempts && valid < opt.min_samples;
       ++attempt) {
    Subst s;
    for (auto& [name, sig] : sigs)
      s.fns[name] = FnDef{[&] {
                            std::vector<std::string> ps;
                            for (size_t i = 0; i < sig.arity; ++i)
                              ps.push_back("#" + std::to_string(i + 1));
                            return ps;
                          }(),
                          random_poly(sig.arity, rng)};
    EvalEnv env;
    env.prec = opt.bits;
    for (auto& v : vars_free) env.set(v, random_rat(rng));
    try {
      EP inst = sigs.empty() ? e : substitute(e, s, ws);
      Interval val = eval(inst, env);
      // scale: sum of term magnitudes of the (instantiated) top-level sum
      Real scale(1L, opt.bits);
      if (inst->kind == Kind::Sum) {
        for (auto& k : inst->kids) scale += eval(k, env).mag();
      } else {
        scale += val.mag();
      }
      Real cut = thr * scale;
      if (val.mag() < cut) {
        ++zeroish;
        ++valid;
        continue;
      }
      if (!val.contains_zero() &&
          rmin(rabs(val.lo), rabs(val.hi)) > cut &&
          val.rad() < rabs(val.mid()))
        return Verdict::ProvedNonzero;
      ++valid;  // inconclusive (wide enclosure) still counts as a visit
    } catch (const DomainError&) {
      continue;
    } catch (const std::out_of_range&) {
      return Verdict::Unknown;  // unbound symbol: cannot sample
    }
  }
  if (zeroish >= opt.min_samples) return Verdict::ProbablyZero;
  return Verdict::Unknown;
}

} // namespace dnk
