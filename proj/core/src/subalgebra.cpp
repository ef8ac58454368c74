#include "dnk/subalgebra.hpp"

#include <random>
#include <stdexcept>
#include "dnk/calculus.hpp"
#include "dnk/eval.hpp"
#include "dnk/parse.hpp"
#include "dnk/poly.hpp"

namespace dnk {

namespace {

std::optional<GenKind> gen_by_name(const std::string& n) {
  if (n == "Dt") return GenKind::Dt;
  if (n == "Ds") return GenKind::Ds;
  if (n == "Px") return GenKind::Px;
  if (n == "Py") return GenKind::Py;
  if (n == "Rx") return GenKind::Rx;
  if (n == "Ry") return GenKind::Ry;
  if (n == "Z") return GenKind::Z;
  if (n == "DsBar") return GenKind::DsBar;
  if (n == "Pv") return GenKind::PvBar;
  return std::nullopt;
}

bool is_parameterless(GenKind k) {
  return k == GenKind::Ds || k == GenKind::DsBar || k == GenKind::PvBar;
}

} // namespace

VectorField interpret_field(const EP& e, bool lax, const Workspace& ws) {
  switch (e->kind) {
    case Kind::Sum: {
      VectorField acc =
          vf_zero(lax ? std::vector<std::string>{"t", "x", "y", "u", "v"}
                      : std::vector<std::string>{"t", "x", "y", "u"});
      for (auto& k : e->kids) acc = acc + interpret_field(k, lax, ws);
      return acc;
    }
    case Kind::Prod: {
      EP coeff = one();
      VectorField f;
      bool found = false;
      for (auto& k : e->kids) {
        bool is_gen = (k->kind == Kind::Atom || k->kind == Kind::Var) &&
                      gen_by_name(k->name).has_value();
        if (is_gen) {
          if (found)
            throw std::invalid_argument("product of two generator terms");
          f = interpret_field(k, lax, ws);
          found = true;
        } else {
          coeff = coeff * k;
        }
      }
      if (!found)
        throw std::invalid_argument("no generator factor in term: " + to_string(e));
      return coeff * f;
    }
    case Kind::Var: {
      auto k = gen_by_name(e->name);
      if (k && is_parameterless(*k)) return generator(*k, EP{}, lax, ws);
      break;
    }
    case Kind::Atom: {
      auto k = gen_by_name(e->name);
      if (k && !is_parameterless(*k)) {
        if (e->kids.size() != 1)
          throw std::invalid_argument("generator takes one parameter: " + e->name);
        return generator(*k, e->kids[0], lax, ws);
      }
      break;
    }
    default:
      break;
  }
  throw std::invalid_argument("cannot interpret generator term: " + to_string(e));
}

SubalgebraSpec subalgebra_from_sexpr(const SNode& n) {
  SubalgebraSpec s;
  s.id = n.str("id");
  s.lax = n.num_field("lax", 0) != 0;
  if (const SNode* f = n.find("fns"))
    for (size_t i = 1; i < f->kids.size(); ++i) s.fn_params.push_back(f->kids[i].tok);
  if (const SNode* f = n.find("consts"))
    for (size_t i = 1; i < f->kids.size(); ++i)
      s.const_params.push_back(f->kids[i].tok);
  if (const SNode* f = n.find("constraints")) {
    for (size_t i = 1; i < f->kids.size(); ++i) {
      const SNode& c = f->kids[i];
      ParamConstraint pc;
      const std::string& tag = c.at(0).tok;
      pc.param = c.at(1).tok;
      if (tag == "nonzero") pc.kind = ParamConstraint::Kind::Nonzero;
      else if (tag == "nonzero-deriv") pc.kind = ParamConstraint::Kind::NonzeroDeriv;
      else if (tag == "nonzero-deriv2") pc.kind = ParamConstraint::Kind::NonzeroDeriv2;
      else if (tag == "in") {
        pc.kind = ParamConstraint::Kind::ValueSet;
        for (size_t j = 2; j < c.kids.size(); ++j)
          pc.values.push_back(Rat(c.kids[j].tok));
      } else if (tag == "range") {
        pc.kind = ParamConstraint::Kind::Range;
        pc.values = {Rat(c.at(2).tok), Rat(c.at(3).tok)};
      } else {
        throw std::invalid_argument("unknown constraint: " + tag);
      }
      s.constraints.push_back(pc);
    }
  }
  const SNode& b = n.field("basis");
  for (size_t i = 1; i < b.kids.size(); ++i)
    s.basis.push_back(interpret_field(parse(b.kids[i].tok), s.lax));
  return s;
}

std::vector<SubalgebraSpec> load_subalgebras(const std::string& path) {
  std::vector<SubalgebraSpec> out;
  for (auto& n : sexpr_load(path)) out.push_back(subalgebra_from_sexpr(n));
  return out;
}

namespace {

// Exact linear solve for target = sum_k c_k * fields[k] over the monomial
// expansion of every component.  Returns nullopt when inconsistent.
std::optional<std::vector<Rat>> solve_in_span(const VectorField& target,
                                              const std::vector<VectorField>& fields,
                                              const Workspace& ws) {
  size_t n = fields.size();
  // rows: per (component, monomial); columns: c_k, rhs
  std::map<std::pair<size_t, Mono>, std::vector<Rat>,
           std::function<bool(const std::pair<size_t, Mono>&,
                              const std::pair<size_t, Mono>&)>>
      rows([](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return MonoLess{}(a.second, b.second);
      });
  auto touch = [&](size_t comp, const Mono& m) -> std::vector<Rat>& {
    auto it = rows.find({comp, m});
    if (it == rows.end())
      it = rows.emplace(std::make_pair(comp, m), std::vector<Rat>(n + 1, Rat(0)))
               .first;
    return it->second;
  };
  for (size_t c = 0; c < target.comp.size(); ++c) {
    for (auto& [m, q] : expand(target.comp[c], ws)) touch(c, m)[n] = q;
    for (size_t k = 0; k < n; ++k)
      for (auto& [m, q] : expand(fields[k].comp[c], ws)) touch(c, m)[k] = q;
  }
  // Gaussian elimination on the (rows x n) system
  std::vector<std::vector<Rat>> eqs;
  eqs.reserve(rows.size());
  for (auto& [key, r] : rows) eqs.push_back(r);
  std::vector<Rat> sol(n, Rat(0));
  std::vector<long> pivot_col;
  size_t row = 0;
  for (size_t col = 0; col < n && row < eqs.size(); ++col) {
    size_t p = row;
    while (p < eqs.size() && eqs[p][col] == 0) ++p;
    if (p == eqs.size()) continue;
    std::swap(eqs[row], eqs[p]);
    Rat inv = eqs[row][col];
    for (auto& v : eqs[row]) v /= inv;
    for (size_t r2 = 0; r2 < eqs.size(); ++r2) {
      if (r2 == row || eqs[r2][col] == 0) continue;
      Rat f = eqs[r2][col];
      for (size_t c2 = 0; c2 <= n; ++c2) eqs[r2][c2] -= f * eqs[row][c2];
    }
    pivot_col.push_back((long)col);
    ++row;
  }
  for (size_t r2 = row; r2 < eqs.size(); ++r2)
    if (eqs[r2][n] != 0) return std::nullopt;  // inconsistent
  for (size_t i = 0; i < pivot_col.size(); ++i) sol[pivot_col[i]] = eqs[i][n];
  return sol;
}

} // namespace

ClosureReport subalgebra_closure(const SubalgebraSpec& s, const Workspace& ws) {
  ClosureReport rep;
  size_t n = s.basis.size();
  rep.coeff.assign(n, std::vector<std::vector<Rat>>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (i == j) {
        rep.coeff[i][j].assign(n, Rat(0));
        continue;
      }
      VectorField b = commutator(s.basis[i], s.basis[j], ws);
      auto c = solve_in_span(b, s.basis, ws);
      bool ok = false;
      if (c) {
        // confirm symbolically (the solve is already exact, but guard against
        // an accidental monomial-keying collision)
        VectorField probe = b;
        for (size_t k = 0; k < n; ++k) probe = probe - num(c->at(k)) * s.basis[k];
        ok = vf_is_zero(probe, ws);
      }
      if (!ok) {
        rep.closed = false;
        rep.failure = "[basis " + std::to_string(i) + ", basis " +
                      std::to_string(j) + "] leaves the span";
        rep.coeff[i][j].assign(n, Rat(0));
        continue;
      }
      rep.coeff[i][j] = *c;
    }
  return rep;
}

namespace {

EP random_fn_poly(std::mt19937_64& rng, bool nonzero_d2) {
  std::uniform_int_distribution<long> c(-5, 5);
  long c0 = c(rng), c1 = c(rng), c2 = c(rng), c3 = c(rng);
  if (nonzero_d2) {
    while (c2 == 0 && c3 == 0) { c2 = c(rng); c3 = c(rng); }
  }
  if (c0 == 0 && c1 == 0 && c2 == 0 && c3 == 0) c0 = 1;
  return sum({num(c0), num(c1) * var("t"), num(c2) * pw(var("t"), rat(2)),
              num(c3) * pw(var("t"), rat(3))});
}

} // namespace

RankReport reduction_rank(const SubalgebraSpec& s, int draws, std::uint64_t seed,
                          const Workspace& ws) {
  RankReport rep;
  size_t dim = s.basis.size();
  size_t ncoords = s.basis.empty() ? 0 : s.basis[0].coords.size();
  std::mt19937_64 rng(seed ^ std::hash<std::string>{}(s.id));
  std::uniform_int_distribution<long> cd(-6, 6);
  mpfr_prec_t prec = 192;

  auto constraint_for = [&](const std::string& p) -> const ParamConstraint* {
    for (auto& c : s.constraints)
      if (c.param == p) return &c;
    return nullptr;
  };

  for (int d = 0; d < draws; ++d) {
    Subst inst;
    EvalEnv env;
    env.prec = prec;
    for (auto& f : s.fn_params) {
      const ParamConstraint* c = constraint_for(f);
      bool d2 = c && (c->kind == ParamConstraint::Kind::NonzeroDeriv2);
      inst.fns[f] = FnDef{{"$1"}, substitute(random_fn_poly(rng, d2),
                                             [&] {
                                               Subst t2p;
                                               t2p.vars["t"] = var("$1");
                                               return t2p;
                                             }(),
                                             ws)};
    }
    for (auto& p : s.const_params) {
      const ParamConstraint* c = constraint_for(p);
      Rat v = rat(cd(rng), 3);
      if (c) {
        if (c->kind == ParamConstraint::Kind::ValueSet) {
          std::uniform_int_distribution<size_t> pick(0, c->values.size() - 1);
          v = c->values[pick(rng)];
        } else if (c->kind == ParamConstraint::Kind::Range) {
          // random rational in [lo, hi]
          std::uniform_int_distribution<long> k(0, 12);
          v = c->values[0] + (c->values[1] - c->values[0]) * rat(k(rng), 12);
          if (v == 0) v = c->values[1];
        } else if (c->kind == ParamConstraint::Kind::Nonzero) {
          while (v == 0) v = rat(cd(rng), 3);
        }
      }
      env.set(p, v);
    }
    // random base point; t away from small integers to dodge zeros of params
    env.set("t", rat(cd(rng) * 6 + 1, 5));
    env.set("x", rat(cd(rng) * 4 + 3, 7));
    env.set("y", rat(cd(rng) * 4 - 3, 7));
    env.set("u", rat(cd(rng), 2));
    env.set("v", rat(cd(rng), 2));

    // numeric coefficient matrix
    std::vector<std::vector<Real>> M(dim, std::vector<Real>(ncoords, Real(0, prec)));
    for (size_t i = 0; i < dim; ++i)
      for (size_t j = 0; j < ncoords; ++j) {
        EP comp = inst.fns.empty() ? s.basis[i].comp[j]
                                   : substitute(s.basis[i].comp[j], inst, ws);
        M[i][j] = eval_mid(comp, env);
      }
    auto rank_of = [&](size_t cols) {
      std::vector<std::vector<Real>> A = M;
      Real tiny = rpow_si(Real(2, prec), -100);
      int r = 0;
      for (size_t col = 0; col < cols && (size_t)r < dim; ++col) {
        size_t p = r;
        for (size_t i2 = r + 1; i2 < dim; ++i2)
          if (rabs(A[i2][col]) > rabs(A[p][col])) p = i2;
        if (rabs(A[p][col]) < tiny) continue;
        std::swap(A[r], A[p]);
        for (size_t i2 = 0; i2 < dim; ++i2) {
          if (i2 == (size_t)r) continue;
          Real f = A[i2][col] / A[r][col];
          for (size_t c2 = col; c2 < cols; ++c2) A[i2][c2] -= f * A[r][c2];
        }
        ++r;
      }
      return r;
    };
    rep.rank_txy = std::max(rep.rank_txy, rank_of(3));
    rep.rank_all = std::max(rep.rank_all, rank_of(ncoords));
  }
  rep.appropriate =
      rep.rank_txy == (int)dim && rep.rank_all == (int)dim;
  return rep;
}

} // namespace dnk
