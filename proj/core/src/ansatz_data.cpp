#include "dnk/reduce.hpp"

#include <fstream>
#include <stdexcept>
#include "dnk/parse.hpp"
#include "dnk/poly.hpp"
#include "dnk/sexpr.hpp"

namespace dnk {

namespace {

// Reduced equation of the cubic scaling ansatz u = x^3 w(t, y/x).  The
// residual only factors after regrouping through the two second-order
// combinations below, so the display is assembled from them instead of being
// typeset as a flat polynomial.
EP cubic_scaling_target(const Workspace& ws) {
  std::vector<std::string> zs = {"z1", "z2"};
  std::vector<std::string> deps = {"w"};
  EP z2 = var("z2");
  EP w = var("w"), w2 = var("w_z2"), w22 = var("w_z2z2");
  EP A = z2 * w22 - num(2) * w2;
  EP B = pw(z2, rat(2)) * w22 - num(4) * z2 * w2 + num(6) * w;
  auto D = [&](const EP& e, size_t i) {
    return total_derivative(e, i, zs, deps, ws);
  };
  return canonicalize(
      D(A, 0) - D(A * w22, 1) + z2 * D(A * B, 1) - num(2) * (A * B), ws);
}

EP named_target(const std::string& name, const Workspace& ws) {
  if (name == "@cubic-scaling") return cubic_scaling_target(ws);
  throw std::invalid_argument("unknown assembled target: " + name);
}

// parse `text` and replace the placeholder variable by the unknown evaluated
// on the invariants
EP with_unknown(const std::string& text, const std::string& placeholder,
                const std::string& unknown, const std::vector<EP>& inv_exprs,
                const Workspace& ws) {
  Subst s;
  s.vars[placeholder] = atom(unknown, inv_exprs);
  return substitute(parse(text), s, ws);
}

std::vector<ParamConstraint> read_constraints(const SNode& n) {
  std::vector<ParamConstraint> out;
  const SNode* f = n.find("constraints");
  if (!f) return out;
  for (size_t i = 1; i < f->kids.size(); ++i) {
    const SNode& c = f->kids[i];
    ParamConstraint pc;
    const std::string& tag = c.at(0).tok;
    pc.param = c.at(1).tok;
    if (tag == "nonzero") {
      pc.kind = ParamConstraint::Kind::Nonzero;
    } else if (tag == "in") {
      pc.kind = ParamConstraint::Kind::ValueSet;
      for (size_t j = 2; j < c.kids.size(); ++j)
        pc.values.push_back(Rat(c.kids[j].tok));
    } else if (tag == "range") {
      pc.kind = ParamConstraint::Kind::Range;
      pc.values = {Rat(c.at(2).tok), Rat(c.at(3).tok)};
    } else {
      throw std::invalid_argument("unknown ansatz constraint: " + tag);
    }
    out.push_back(pc);
  }
  return out;
}

void read_names(const SNode& n, const std::string& key,
                std::vector<std::string>& out) {
  if (const SNode* f = n.find(key))
    for (size_t i = 1; i < f->kids.size(); ++i) out.push_back(f->kids[i].tok);
}

Subst read_fix(const SNode& n, const Workspace& ws) {
  Subst s;
  if (const SNode* f = n.find("fix"))
    for (size_t i = 1; i < f->kids.size(); ++i)
      s.vars[f->kids[i].at(0).tok] = canonicalize(parse(f->kids[i].at(1).tok), ws);
  return s;
}

LaxAnsatz lax_from_sexpr(const SNode& n, const Ansatz& a, const Workspace& ws) {
  LaxAnsatz l;
  l.id = n.str("id");
  read_names(n, "consts", l.const_params);
  l.v_unknown = n.str("vunknown");
  l.v_template = with_unknown(n.str("vtemplate"), "Q", l.v_unknown,
                              a.inv_exprs, ws);
  if (const SNode* u = n.find("utemplate"))
    l.u_template = with_unknown(u->at(1).tok, "W", a.unknown, a.inv_exprs, ws);
  if (const SNode* e = n.find("elim")) l.elim = e->at(1).tok;
  l.fix = read_fix(n, ws);
  const SNode& t = n.field("targets");
  for (size_t i = 1; i < t.kids.size(); ++i)
    l.targets.push_back(canonicalize(parse(t.kids[i].tok), ws));
  return l;
}

Ansatz ansatz_from_sexpr(const SNode& n, const Workspace& ws) {
  Ansatz a;
  a.id = n.str("id");
  read_names(n, "fns", a.fn_params);
  read_names(n, "consts", a.const_params);
  a.constraints = read_constraints(n);
  const SNode& inv = n.field("invariants");
  for (size_t i = 1; i < inv.kids.size(); ++i) {
    a.inv_names.push_back(inv.kids[i].at(0).tok);
    a.inv_exprs.push_back(canonicalize(parse(inv.kids[i].at(1).tok), ws));
  }
  a.unknown = n.str("unknown");
  a.u_template =
      with_unknown(n.str("template"), "W", a.unknown, a.inv_exprs, ws);
  const SNode& sec = n.field("section");
  for (size_t i = 1; i < sec.kids.size(); ++i)
    a.section.vars[sec.kids[i].at(0).tok] =
        canonicalize(parse(sec.kids[i].at(1).tok), ws);
  std::string tt = n.str("target");
  a.target = tt.size() && tt[0] == '@' ? named_target(tt, ws)
                                       : canonicalize(parse(tt), ws);
  const SNode& b = n.field("basis");
  for (size_t i = 1; i < b.kids.size(); ++i)
    a.basis.push_back(interpret_field(parse(b.kids[i].tok), false, ws));
  for (const SNode& k : n.kids)
    if (k.is_list && k.kids.size() && k.at(0).tok == "lax")
      a.lax.push_back(lax_from_sexpr(k, a, ws));
  return a;
}

} // namespace

std::vector<Ansatz> load_ansatzes(const std::string& path, Workspace* atoms) {
  std::vector<SNode> tops = sexpr_load(path);
  Workspace local = default_workspace();
  for (const SNode& n : tops) {
    if (!n.is_list || n.kids.empty() || n.at(0).tok != "defatom") continue;
    AtomDef d;
    d.arity = std::stoul(n.at(2).tok);
    for (size_t i = 3; i < n.kids.size(); ++i)
      d.deriv.push_back(parse(n.kids[i].tok));
    local.define_atom(n.at(1).tok, d);
    if (atoms) atoms->define_atom(n.at(1).tok, d);
  }
  std::vector<Ansatz> out;
  for (const SNode& n : tops)
    if (n.is_list && n.kids.size() && n.at(0).tok == "ansatz")
      out.push_back(ansatz_from_sexpr(n, local));
  return out;
}

const Ansatz& ansatz_by_id(const std::vector<Ansatz>& list,
                           const std::string& id) {
  for (const Ansatz& a : list)
    if (a.id == id) return a;
  throw std::out_of_range("no ansatz with id " + id);
}

const LaxAnsatz& lax_by_id(const Ansatz& a, const std::string& id) {
  for (const LaxAnsatz& l : a.lax)
    if (l.id == id) return l;
  throw std::out_of_range("no lax variant " + id + " on ansatz " + a.id);
}

std::vector<std::string> Ansatz::aux_coords() const {
  std::vector<std::string> out;
  for (const char* c : {"t", "x", "y"})
    if (!section.vars.count(c)) out.push_back(c);
  return out;
}

Ansatz instantiate_ansatz(const Ansatz& a, const Subst& s, const Workspace& ws) {
  Ansatz b = a;
  auto sub = [&](EP& e) {
    if (e) e = canonicalize(substitute(e, s, ws), ws);
  };
  for (EP& e : b.inv_exprs) sub(e);
  sub(b.u_template);
  sub(b.target);
  for (auto& [k, v] : b.section.vars) sub(v);
  for (VectorField& f : b.basis)
    for (EP& c : f.comp) sub(c);
  for (LaxAnsatz& l : b.lax) {
    sub(l.v_template);
    sub(l.u_template);
    for (EP& t : l.targets) sub(t);
  }
  auto drop = [&](std::vector<std::string>& names) {
    std::erase_if(names, [&](const std::string& p) {
      return s.vars.count(p) || s.fns.count(p);
    });
  };
  drop(b.fn_params);
  drop(b.const_params);
  std::erase_if(b.constraints, [&](const ParamConstraint& c) {
    return s.vars.count(c.param) || s.fns.count(c.param);
  });
  return b;
}

} // namespace dnk
