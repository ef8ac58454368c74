#include "dnk/calculus.hpp"

#include <algorithm>
#include <stdexcept>

namespace dnk {

namespace {

bool all_zero(const std::vector<unsigned>& v) {
  for (auto d : v)
    if (d) return false;
  return true;
}

// derivative of an atom node in arg direction i (the atom itself, not the
// outer chain-rule factor)
EP atom_dir_derivative(const EP& a, size_t i, const Workspace& ws) {
  const AtomDef* def = ws.atom_def(a->name);
  if (def && i < def->deriv.size() && def->deriv[i]) {
    // Rewrite d_i via the rule.  Existing indices (allowed only in rule-free
    // directions) commute past it: d_j^k d_i a = d_j^k(rule), computed by
    // differentiating the template with respect to its formal parameters.
    EP body = def->deriv[i];
    for (size_t j = 0; j < a->dmi.size(); ++j) {
      if (!a->dmi[j]) continue;
      if (j < def->deriv.size() && def->deriv[j])
        throw std::logic_error("defined atom carries an index in a ruled direction: " +
                               a->name);
      for (unsigned k = 0; k < a->dmi[j]; ++k)
        body = differentiate(body, "$" + std::to_string(j + 1), ws);
    }
    Subst s;
    for (size_t j = 0; j < a->kids.size(); ++j)
      s.vars["$" + std::to_string(j + 1)] = a->kids[j];
    return substitute(body, s, ws);
  }
  std::vector<unsigned> dmi = a->dmi;
  dmi[i] += 1;
  return atom(a->name, a->kids, std::move(dmi));
}

} // namespace

EP differentiate(const EP& e, const std::string& v, const Workspace& ws) {
  switch (e->kind) {
    case Kind::Num:
      return zero();
    case Kind::Var:
      return e->name == v ? one() : zero();
    case Kind::Sum: {
      std::vector<EP> terms;
      for (auto& k : e->kids) terms.push_back(differentiate(k, v, ws));
      return sum(std::move(terms));
    }
    case Kind::Prod: {
      std::vector<EP> terms;
      for (size_t i = 0; i < e->kids.size(); ++i) {
        EP d = differentiate(e->kids[i], v, ws);
        if (d->is_num(0)) continue;
        std::vector<EP> fac;
        for (size_t j = 0; j < e->kids.size(); ++j)
          fac.push_back(j == i ? d : e->kids[j]);
        terms.push_back(prod(std::move(fac)));
      }
      return sum(std::move(terms));
    }
    case Kind::Pow: {
      EP d = differentiate(e->kids[0], v, ws);
      if (d->is_num(0)) return zero();
      return prod({num(e->num), pw(e->kids[0], e->num - 1), d});
    }
    case Kind::Atom: {
      std::vector<EP> terms;
      for (size_t i = 0; i < e->kids.size(); ++i) {
        EP d = differentiate(e->kids[i], v, ws);
        if (d->is_num(0)) continue;
        terms.push_back(prod({d, atom_dir_derivative(e, i, ws)}));
      }
      return sum(std::move(terms));
    }
    case Kind::Head: {
      const EP& a = e->kids[0];
      switch (e->head) {
        case HeadFn::Exp: {
          EP d = differentiate(a, v, ws);
          if (d->is_num(0)) return zero();
          return prod({d, e});
        }
        case HeadFn::Ln: {
          EP d = differentiate(a, v, ws);
          if (d->is_num(0)) return zero();
          return d / a;
        }
        case HeadFn::Abs: {
          EP d = differentiate(a, v, ws);
          if (d->is_num(0)) return zero();
          return prod({d, happ(HeadFn::Sgn, {a})});
        }
        case HeadFn::Sgn:
          return zero();  // away from the excluded locus arg = 0
        case HeadFn::Sin: {
          EP d = differentiate(a, v, ws);
          if (d->is_num(0)) return zero();
          return prod({d, happ(HeadFn::Cos, {a})});
        }
        case HeadFn::Cos: {
          EP d = differentiate(a, v, ws);
          if (d->is_num(0)) return zero();
          return prod({num(-1), d, happ(HeadFn::Sin, {a})});
        }
        case HeadFn::Arctan: {
          EP d = differentiate(a, v, ws);
          if (d->is_num(0)) return zero();
          return d / (one() + pw(a, rat(2)));
        }
        case HeadFn::LambertW0:
        case HeadFn::LambertWm1: {
          // W'(x) = W(x) / (x (1 + W(x)))
          EP d = differentiate(a, v, ws);
          if (d->is_num(0)) return zero();
          return prod({d, e}) / prod({a, one() + e});
        }
        case HeadFn::Hyper3F2: {
          for (size_t i = 0; i < 5; ++i)
            if (!differentiate(e->kids[i], v, ws)->is_num(0))
              throw std::logic_error(
                  "hyper3f2: differentiation through parameter slots is unsupported");
          EP dz = differentiate(e->kids[5], v, ws);
          if (dz->is_num(0)) return zero();
          // d/dz 3F2(a;b;z) = (a1 a2 a3)/(b1 b2) 3F2(a+1; b+1; z)
          EP up = happ(HeadFn::Hyper3F2,
                       {e->kids[0] + one(), e->kids[1] + one(), e->kids[2] + one(),
                        e->kids[3] + one(), e->kids[4] + one(), e->kids[5]});
          EP fac = prod({e->kids[0], e->kids[1], e->kids[2]}) /
                   prod({e->kids[3], e->kids[4]});
          return prod({dz, fac, up});
        }
      }
      return zero();
    }
  }
  return zero();
}

EP differentiate(const EP& e, const std::vector<std::string>& vars,
                 const Workspace& ws) {
  EP r = e;
  for (auto& v : vars) r = differentiate(r, v, ws);
  return r;
}

EP substitute(const EP& e, const Subst& s, const Workspace& ws) {
  switch (e->kind) {
    case Kind::Num:
      return e;
    case Kind::Var: {
      auto it = s.vars.find(e->name);
      return it == s.vars.end() ? e : it->second;
    }
    case Kind::Sum: {
      std::vector<EP> kids;
      for (auto& k : e->kids) kids.push_back(substitute(k, s, ws));
      return sum(std::move(kids));
    }
    case Kind::Prod: {
      std::vector<EP> kids;
      for (auto& k : e->kids) kids.push_back(substitute(k, s, ws));
      return prod(std::move(kids));
    }
    case Kind::Pow:
      return pw(substitute(e->kids[0], s, ws), e->num);
    case Kind::Atom: {
      std::vector<EP> args;
      for (auto& k : e->kids) args.push_back(substitute(k, s, ws));
      auto it = s.fns.find(e->name);
      if (it == s.fns.end()) return atom(e->name, std::move(args), e->dmi);
      const FnDef& def = it->second;
      if (def.params.size() != e->kids.size())
        throw std::invalid_argument("substitute: arity mismatch binding " + e->name);
      EP body = def.body;
      for (size_t i = 0; i < def.params.size(); ++i)
        for (unsigned d = 0; d < e->dmi[i]; ++d)
          body = differentiate(body, def.params[i], ws);
      Subst inner;
      for (size_t i = 0; i < def.params.size(); ++i)
        inner.vars[def.params[i]] = args[i];
      return substitute(body, inner, ws);
    }
    case Kind::Head: {
      std::vector<EP> args;
      for (auto& k : e->kids) args.push_back(substitute(k, s, ws));
      return happ(e->head, std::move(args));
    }
  }
  return e;
}

std::string jet_name(const std::string& base, const std::vector<unsigned>& mi,
                     const std::vector<std::string>& indeps) {
  bool nz = false;
  for (auto d : mi)
    if (d) nz = true;
  if (!nz) return base;
  std::string s = base + "_";
  for (size_t i = 0; i < mi.size(); ++i)
    for (unsigned j = 0; j < mi[i]; ++j) s += indeps[i];
  return s;
}

bool parse_jet(const std::string& name, const std::string& base,
               const std::vector<std::string>& indeps, std::vector<unsigned>& mi) {
  mi.assign(indeps.size(), 0);
  if (name == base) return true;
  if (name.size() <= base.size() + 1) return false;
  if (name.compare(0, base.size(), base) != 0 || name[base.size()] != '_') return false;
  size_t pos = base.size() + 1;
  size_t last = 0;
  while (pos < name.size()) {
    bool matched = false;
    // longest-match over independents, requiring sorted suffix order
    for (size_t i = 0; i < indeps.size(); ++i) {
      const std::string& nm = indeps[i];
      if (name.compare(pos, nm.size(), nm) == 0) {
        // prefer the longest matching independent name
        size_t best = i;
        for (size_t j = i + 1; j < indeps.size(); ++j)
          if (indeps[j].size() > indeps[best].size() &&
              name.compare(pos, indeps[j].size(), indeps[j]) == 0)
            best = j;
        if (best < last) return false;  // out of canonical order
        mi[best] += 1;
        last = best;
        pos += indeps[best].size();
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

EP total_derivative(const EP& e, size_t i,
                    const std::vector<std::string>& indeps,
                    const std::vector<std::string>& deps, const Workspace& ws) {
  std::vector<EP> terms;
  terms.push_back(differentiate(e, indeps[i], ws));
  std::vector<std::string> names;
  collect_vars(e, names);
  for (auto& n : names) {
    for (auto& dep : deps) {
      std::vector<unsigned> mi;
      if (!parse_jet(n, dep, indeps, mi)) continue;
      EP de = differentiate(e, n, ws);
      if (de->is_num(0)) break;
      mi[i] += 1;
      terms.push_back(prod({var(jet_name(dep, mi, indeps)), de}));
      break;
    }
  }
  return sum(std::move(terms));
}

EP substitute_jets(const EP& e, const std::string& dep, const EP& expr,
                   const std::vector<std::string>& indeps, const Workspace& ws) {
  std::vector<std::string> names;
  collect_vars(e, names);
  Subst s;
  for (auto& n : names) {
    std::vector<unsigned> mi;
    if (!parse_jet(n, dep, indeps, mi)) continue;
    EP d = expr;
    for (size_t i = 0; i < indeps.size(); ++i)
      for (unsigned j = 0; j < mi[i]; ++j) d = differentiate(d, indeps[i], ws);
    s.vars[n] = d;
  }
  return substitute(e, s, ws);
}

} // namespace dnk
