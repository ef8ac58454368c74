#include "dnk/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace dnk {

bool MonoLess::operator()(const Mono& a, const Mono& b) const {
  auto ia = a.begin(), ib = b.begin();
  for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
    int c = cmp(ia->first, ib->first);
    if (c) return c < 0;
    if (ia->second != ib->second) return ia->second < ib->second;
  }
  return ia == a.end() && ib != b.end();
}

namespace {

using FMap = std::map<EP, Rat, ExprLess>;

Poly mono_make(FMap factors, Rat coeff, const Workspace& ws);

void cap_check(size_t n, const Workspace& ws) {
  if (n > ws.node_cap)
    throw SizeLimit("canonicalize: expression size cap exceeded");
}

// numeric coefficient and remaining factor of a canonical product
std::pair<Rat, EP> split_coeff(const EP& e) {
  if (e->kind == Kind::Num) return {e->num, one()};
  if (e->kind == Kind::Prod && e->kids[0]->kind == Kind::Num) {
    std::vector<EP> rest(e->kids.begin() + 1, e->kids.end());
    return {e->kids[0]->num, prod(std::move(rest))};
  }
  return {Rat(1), e};
}

int sign_of_leading(const EP& e) {
  if (e->kind == Kind::Sum) return sign_of_leading(e->kids[0]);
  Rat c = split_coeff(e).first;
  return sgn(c);
}

bool all_zero(const std::vector<unsigned>& v) {
  for (auto d : v)
    if (d) return false;
  return true;
}

// sign knowledge for abs/sgn simplification
enum class SK { Unknown, Positive, Negative };

SK sign_known(const EP& e, const Workspace& ws) {
  switch (e->kind) {
    case Kind::Num:
      return e->num > 0 ? SK::Positive : (e->num < 0 ? SK::Negative : SK::Unknown);
    case Kind::Var: {
      auto a = ws.assumption(e);
      if (a == SignAssumption::Positive) return SK::Positive;
      if (a == SignAssumption::Negative) return SK::Negative;
      return SK::Unknown;
    }
    case Kind::Pow:
      if (is_integer(e->num) && to_long(e->num) % 2 == 0) return SK::Positive;
      if (sign_known(e->kids[0], ws) == SK::Positive) return SK::Positive;
      return SK::Unknown;
    case Kind::Prod: {
      int s = 1;
      for (auto& k : e->kids) {
        SK sk = sign_known(k, ws);
        if (sk == SK::Unknown) return SK::Unknown;
        if (sk == SK::Negative) s = -s;
      }
      return s > 0 ? SK::Positive : SK::Negative;
    }
    case Kind::Head:
      if (e->head == HeadFn::Exp || e->head == HeadFn::Abs) return SK::Positive;
      return SK::Unknown;
    default:
      return SK::Unknown;
  }
}

Poly poly_one() {
  Poly p;
  p[Mono{}] = 1;
  return p;
}

Poly poly_const(const Rat& c) {
  Poly p;
  if (c != 0) p[Mono{}] = c;
  return p;
}

// Fold a numeric base raised to exponent e into (rational multiplier, leftover
// factors). Handles negative bases with odd root denominators by the real-root
// convention.
void fold_numeric_pow(const Rat& base, const Rat& e, Rat& coeff, FMap& leftovers) {
  if (base == 0) {
    if (e <= 0) throw std::domain_error("0 raised to a nonpositive power");
    coeff = 0;
    return;
  }
  auto exact = rat_pow_exact(base, e);
  if (exact) {
    coeff *= *exact;
    return;
  }
  // split off the integer part of the exponent
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), e.get_num().get_mpz_t(), e.get_den().get_mpz_t());
  Rat n(fl), f = e - n;
  coeff *= rat_pow_int(base, n.get_num().get_si());
  Rat b = base;
  if (b < 0) {
    if (f.get_den() % 2 == 1) {
      if (f.get_num() % 2 != 0) coeff = -coeff;
      b = -b;
    } else {
      leftovers[num(b)] += f;  // outside the real domain; kept symbolic
      return;
    }
  }
  auto exact2 = rat_pow_exact(b, f);
  if (exact2) coeff *= *exact2;
  else leftovers[num(b)] += f;
}

struct AbsSgnGroup {
  Rat abs_exp = 0;
  Rat sgn_exp = 0;
};

Poly mono_make(FMap factors, Rat coeff, const Workspace& ws) {
  if (coeff == 0) return {};
  FMap plain;
  std::vector<Poly> mults;
  Poly exp_arg;  // accumulated argument of a merged exp factor
  std::map<EP, AbsSgnGroup, ExprLess> absgroups;

  for (auto& [base, e] : factors) {
    if (e == 0) continue;
    if (base->kind == Kind::Num) {
      fold_numeric_pow(base->num, e, coeff, plain);
      if (coeff == 0) return {};
      continue;
    }
    if (base->kind == Kind::Head && base->head == HeadFn::Exp) {
      poly_add(exp_arg, expand(base->kids[0], ws), e);
      continue;
    }
    if (base->kind == Kind::Head &&
        (base->head == HeadFn::Abs || base->head == HeadFn::Sgn)) {
      auto& g = absgroups[base->kids[0]];
      if (base->head == HeadFn::Abs) g.abs_exp += e;
      else g.sgn_exp += e;
      continue;
    }
    plain[base] += e;
    if (plain[base] == 0) plain.erase(base);
  }

  if (!exp_arg.empty()) plain[happ(HeadFn::Exp, {rebuild(exp_arg)})] += 1;

  for (auto& [arg, g] : absgroups) {
    SK sk = sign_known(arg, ws);
    Rat ae = g.abs_exp, se = g.sgn_exp;
    if (sk == SK::Positive) {
      if (ae != 0) mults.push_back(expand(pw(arg, ae), ws));
      continue;  // sgn == 1
    }
    if (sk == SK::Negative) {
      if (is_integer(se) && to_long(se) % 2 != 0) coeff = -coeff;
      if (ae != 0) mults.push_back(expand(pw(prod({num(-1), arg}), ae), ws));
      continue;
    }
    // unknown sign
    if (is_integer(se)) {
      long s = to_long(se) % 2;
      if (s < 0) s += 2;
      se = s;
    }
    if (se == 1 && ae != 0) {
      // |a|^p * sgn(a) = a * |a|^(p-1)
      mults.push_back(expand(arg, ws));
      ae -= 1;
      se = 0;
    }
    // peel the largest even integer part out of the abs exponent: |a|^(2k+r) = a^(2k) |a|^r
    mpz_class half;
    mpz_fdiv_q(half.get_mpz_t(), ae.get_num().get_mpz_t(), ae.get_den().get_mpz_t());
    // floor(ae) -> largest even integer <= floor(ae)
    long fl = half.get_si();
    long even = fl - (((fl % 2) + 2) % 2);
    if (even != 0) {
      mults.push_back(expand(pw(arg, rat(even)), ws));
      ae -= even;
    }
    if (ae != 0) plain[happ(HeadFn::Abs, {arg})] += ae;
    if (se != 0) plain[happ(HeadFn::Sgn, {arg})] += se;
  }

  // sin^(2k) -> (1 - cos^2)^k, and expand positive integer powers of sums
  for (auto it = plain.begin(); it != plain.end();) {
    const EP& base = it->first;
    Rat e = it->second;
    bool rewritten = false;
    if (base->kind == Kind::Head && base->head == HeadFn::Sin && is_integer(e) &&
        e >= 2) {
      long k = to_long(e) / 2, r = to_long(e) % 2;
      EP c2 = one() - pw(happ(HeadFn::Cos, {base->kids[0]}), rat(2));
      mults.push_back(poly_pow_int(expand(c2, ws), k, ws));
      if (r) {
        // keep a single sin factor; reinsert after erase
        EP b = base;
        it = plain.erase(it);
        plain[b] += 1;
        rewritten = true;
      } else {
        it = plain.erase(it);
        rewritten = true;
      }
    } else if (base->kind == Kind::Sum && is_integer(e) && e >= 1) {
      mults.push_back(poly_pow_int(expand(base, ws), to_long(e), ws));
      it = plain.erase(it);
      rewritten = true;
    }
    if (!rewritten) ++it;
  }

  Poly result;
  Mono m;
  for (auto& [b, e] : plain)
    if (e != 0) m[b] = e;
  result[std::move(m)] = coeff;
  for (auto& mp : mults) result = poly_mul(result, mp, ws);
  return result;
}

} // namespace

void poly_add(Poly& into, const Poly& p, const Rat& scale) {
  if (scale == 0) return;
  for (auto& [m, c] : p) {
    Rat& tgt = into[m];
    tgt += c * scale;
    if (tgt == 0) into.erase(m);
  }
}

Poly poly_mul(const Poly& a, const Poly& b, const Workspace& ws) {
  Poly out;
  cap_check(a.size() * b.size(), ws);
  for (auto& [ma, ca] : a)
    for (auto& [mb, cb] : b) {
      FMap f(ma.begin(), ma.end());
      for (auto& [base, e] : mb) {
        f[base] += e;
        if (f[base] == 0) f.erase(base);
      }
      poly_add(out, mono_make(std::move(f), ca * cb, ws));
      cap_check(out.size(), ws);
    }
  return out;
}

Poly poly_pow_int(const Poly& p, long n, const Workspace& ws) {
  if (n == 0) return poly_one();
  if (n < 0) {
    // handled by the caller (expand) via base atomization for multi-term p
    if (p.size() == 1) {
      auto& [m, c] = *p.begin();
      FMap f;
      for (auto& [b, e] : m) f[b] = e * n;
      Rat cc = rat_pow_int(c, n);
      return mono_make(std::move(f), cc, ws);
    }
    throw std::logic_error("poly_pow_int: negative power of multi-term polynomial");
  }
  Poly acc = poly_one(), base = p;
  unsigned long k = static_cast<unsigned long>(n);
  while (k) {
    if (k & 1) acc = poly_mul(acc, base, ws);
    k >>= 1;
    if (k) base = poly_mul(base, base, ws);
  }
  return acc;
}

Poly expand(const EP& e, const Workspace& ws) {
  switch (e->kind) {
    case Kind::Num:
      return poly_const(e->num);
    case Kind::Var: {
      FMap f;
      f[e] = 1;
      return mono_make(std::move(f), Rat(1), ws);
    }
    case Kind::Sum: {
      Poly out;
      for (auto& k : e->kids) poly_add(out, expand(k, ws));
      cap_check(out.size(), ws);
      return out;
    }
    case Kind::Prod: {
      Poly out = poly_one();
      for (auto& k : e->kids) out = poly_mul(out, expand(k, ws), ws);
      return out;
    }
    case Kind::Pow: {
      Poly pb = expand(e->kids[0], ws);
      const Rat& q = e->num;
      if (pb.empty()) {
        if (q > 0) return {};
        throw std::domain_error("0 raised to a nonpositive power");
      }
      if (pb.size() == 1) {
        auto& [m, c] = *pb.begin();
        FMap f;
        for (auto& [b, ee] : m) {
          Rat ne;
          bool distribute = is_integer(q) || ee == 1 ||
                            sign_known(b, ws) == SK::Positive ||
                            (b->kind == Kind::Head &&
                             (b->head == HeadFn::Exp || b->head == HeadFn::Abs));
          if (distribute) {
            f[pw(b, Rat(1))] += ee * q;  // pw(b,1)==b
          } else {
            f[pw(b, ee)] += q;  // keep nested power opaque
          }
        }
        FMap f2;
        for (auto& [b, ee] : f)
          if (ee != 0) f2[b] = ee;
        Rat coeff(1);
        // c^q via the numeric folder
        FMap tmp;
        fold_numeric_pow(c, q, coeff, tmp);
        for (auto& [b, ee] : tmp) f2[b] += ee;
        return mono_make(std::move(f2), coeff, ws);
      }
      if (is_integer(q) && q > 0) return poly_pow_int(pb, to_long(q), ws);
      // multi-term base with negative or fractional exponent: atomize
      Poly pcopy = pb;
      Rat content = extract_content(pcopy);
      EP base = rebuild(pcopy);
      FMap f;
      f[base] = q;
      Rat coeff(1);
      FMap tmp;
      fold_numeric_pow(content, q, coeff, tmp);
      for (auto& [b, ee] : tmp) f[b] += ee;
      return mono_make(std::move(f), coeff, ws);
    }
    case Kind::Atom: {
      std::vector<EP> args;
      args.reserve(e->kids.size());
      for (auto& k : e->kids) args.push_back(canonicalize(k, ws));
      if (all_zero(e->dmi) && args.size() == 1 && args[0]->kind == Kind::Atom &&
          all_zero(args[0]->dmi) && args[0]->kids.size() == 1 &&
          ws.are_inverse(e->name, args[0]->name)) {
        return expand(args[0]->kids[0], ws);
      }
      FMap f;
      f[atom(e->name, std::move(args), e->dmi)] = 1;
      return mono_make(std::move(f), Rat(1), ws);
    }
    case Kind::Head: {
      std::vector<EP> args;
      args.reserve(e->kids.size());
      for (auto& k : e->kids) args.push_back(canonicalize(k, ws));
      const EP& a0 = args.empty() ? one() : args[0];
      switch (e->head) {
        case HeadFn::Exp:
          if (a0->is_num(0)) return poly_one();
          if (a0->kind == Kind::Head && a0->head == HeadFn::Ln)
            return expand(a0->kids[0], ws);
          break;
        case HeadFn::Ln:
          if (a0->is_num(1)) return {};
          if (a0->kind == Kind::Head && a0->head == HeadFn::Exp)
            return expand(a0->kids[0], ws);
          break;
        case HeadFn::Abs: {
          auto [c, rest] = split_coeff(a0);
          if (rest->is_num(1)) return poly_const(abs(c));
          if (c != 1)
            return poly_mul(poly_const(abs(c)),
                            expand(happ(HeadFn::Abs, {rest}), ws), ws);
          SK sk = sign_known(a0, ws);
          if (sk == SK::Positive) return expand(a0, ws);
          if (sk == SK::Negative) return expand(prod({num(-1), a0}), ws);
          if (a0->kind == Kind::Head && a0->head == HeadFn::Abs)
            return expand(a0, ws);
          break;
        }
        case HeadFn::Sgn: {
          auto [c, rest] = split_coeff(a0);
          if (rest->is_num(1)) return poly_const(c > 0 ? 1 : (c < 0 ? -1 : 0));
          if (c < 0)
            return poly_mul(poly_const(Rat(-1)),
                            expand(happ(HeadFn::Sgn, {rest}), ws), ws);
          if (c != 1) return expand(happ(HeadFn::Sgn, {rest}), ws);
          SK sk = sign_known(a0, ws);
          if (sk == SK::Positive) return poly_one();
          if (sk == SK::Negative) return poly_const(Rat(-1));
          break;
        }
        case HeadFn::Sin:
        case HeadFn::Arctan: {
          if (a0->is_num(0)) return {};
          if (sign_of_leading(a0) < 0)
            return poly_mul(poly_const(Rat(-1)),
                            expand(happ(e->head, {canonicalize(prod({num(-1), a0}), ws)}), ws),
                            ws);
          break;
        }
        case HeadFn::Cos: {
          if (a0->is_num(0)) return poly_one();
          if (sign_of_leading(a0) < 0)
            return expand(happ(HeadFn::Cos, {canonicalize(prod({num(-1), a0}), ws)}), ws);
          break;
        }
        case HeadFn::Hyper3F2:
          if (args.size() == 6 && args[5]->is_num(0)) return poly_one();
          break;
        case HeadFn::LambertW0:
          if (a0->is_num(0)) return {};
          break;
        default:
          break;
      }
      FMap f;
      f[happ(e->head, std::move(args))] = 1;
      return mono_make(std::move(f), Rat(1), ws);
    }
  }
  return {};
}

EP rebuild(const Poly& p) {
  if (p.empty()) return zero();
  std::vector<EP> terms;
  terms.reserve(p.size());
  for (auto& [m, c] : p) {
    std::vector<EP> factors;
    if (c != 1 || m.empty()) factors.push_back(num(c));
    for (auto& [b, e] : m) factors.push_back(pw(b, e));
    terms.push_back(prod(std::move(factors)));
  }
  return sum(std::move(terms));
}

EP canonicalize(const EP& e, const Workspace& ws) { return rebuild(expand(e, ws)); }

Poly clear_denominators(const Poly& p, const Workspace& ws) {
  // most negative exponent per base
  FMap worst;
  for (auto& [m, c] : p)
    for (auto& [b, e] : m)
      if (e < 0) {
        Rat& w = worst[b];
        if (e < w) w = e;
      }
  if (worst.empty()) return p;
  Poly out;
  for (auto& [m, c] : p) {
    FMap f(m.begin(), m.end());
    for (auto& [b, w] : worst) f[b] += -w;
    poly_add(out, mono_make(std::move(f), c, ws));
  }
  // clearing can leave positive integer powers of sum-bases: re-expand once
  return expand(rebuild(out), ws);
}

Rat extract_content(Poly& p) {
  if (p.empty()) return Rat(0);
  mpz_class gnum = 0, gden = 1;
  for (auto& [m, c] : p) {
    mpz_gcd(gnum.get_mpz_t(), gnum.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(gden.get_mpz_t(), gden.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Rat content(gnum, gden);
  content.canonicalize();
  if (content == 0) return Rat(0);
  if (p.begin()->second < 0) content = -content;
  Poly out;
  for (auto& [m, c] : p) out[m] = c / content;
  p = std::move(out);
  return content;
}

std::map<Mono, Poly, MonoLess> split_by(
    const Poly& p, const std::function<bool(const EP&)>& pick) {
  std::map<Mono, Poly, MonoLess> out;
  for (auto& [m, c] : p) {
    Mono sel, rest;
    for (auto& [b, e] : m) {
      if (pick(b)) sel[b] = e;
      else rest[b] = e;
    }
    out[sel][rest] += c;
    if (out[sel][rest] == 0) out[sel].erase(rest);
  }
  return out;
}

void affine_split(const EP& e, const EP& base, const Workspace& ws,
                  EP& coeff, EP& rest) {
  Poly p = expand(e, ws);
  Poly pc, pr;
  for (auto& [m, c] : p) {
    auto it = m.find(base);
    if (it == m.end()) {
      pr[m] += c;
      continue;
    }
    if (it->second != 1)
      throw std::runtime_error("affine_split: expression not affine in " + to_string(base));
    Mono rem = m;
    rem.erase(base);
    pc[rem] += c;
  }
  coeff = rebuild(pc);
  rest = rebuild(pr);
}

} // namespace dnk
