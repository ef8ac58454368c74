#include "dnk/expr.hpp"

#include <algorithm>
#include <sstream>

namespace dnk {

const char* head_name(HeadFn h) {
  switch (h) {
    case HeadFn::Exp: return "exp";
    case HeadFn::Ln: return "ln";
    case HeadFn::Abs: return "abs";
    case HeadFn::Sgn: return "sgn";
    case HeadFn::Sin: return "sin";
    case HeadFn::Cos: return "cos";
    case HeadFn::Arctan: return "arctan";
    case HeadFn::LambertW0: return "lambertW0";
    case HeadFn::LambertWm1: return "lambertWm1";
    case HeadFn::Hyper3F2: return "hyper3f2";
  }
  return "?";
}

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

std::size_t compute_hash(const Expr& e) {
  std::size_t h = static_cast<std::size_t>(e.kind) * 1099511628211ull;
  if (e.kind == Kind::Num || e.kind == Kind::Pow) h = mix(h, rat_hash(e.num));
  h = mix(h, std::hash<std::string>{}(e.name));
  h = mix(h, static_cast<std::size_t>(e.head));
  for (auto d : e.dmi) h = mix(h, d + 1);
  for (auto& k : e.kids) h = mix(h, k->h);
  return h;
}

EP make(Expr&& e) {
  e.h = compute_hash(e);
  return std::make_shared<const Expr>(std::move(e));
}

const EP kZero = [] { Expr e; e.kind = Kind::Num; e.num = 0; return make(std::move(e)); }();
const EP kOne = [] { Expr e; e.kind = Kind::Num; e.num = 1; return make(std::move(e)); }();

} // namespace

EP zero() { return kZero; }
EP one() { return kOne; }

EP num(const Rat& q) {
  if (q == 0) return kZero;
  if (q == 1) return kOne;
  Expr e;
  e.kind = Kind::Num;
  e.num = q;
  return make(std::move(e));
}

EP num(long n, long d) { return num(rat(n, d)); }

EP var(const std::string& name) {
  Expr e;
  e.kind = Kind::Var;
  e.name = name;
  return make(std::move(e));
}

EP sum(std::vector<EP> terms) {
  std::vector<EP> flat;
  Rat c = 0;
  for (auto& t : terms) {
    if (!t) throw std::invalid_argument("sum: null child");
    if (t->kind == Kind::Num) { c += t->num; continue; }
    if (t->kind == Kind::Sum) {
      for (auto& k : t->kids) {
        if (k->kind == Kind::Num) c += k->num;
        else flat.push_back(k);
      }
      continue;
    }
    flat.push_back(t);
  }
  if (c != 0) flat.push_back(num(c));
  if (flat.empty()) return kZero;
  if (flat.size() == 1) return flat[0];
  Expr e;
  e.kind = Kind::Sum;
  e.kids = std::move(flat);
  return make(std::move(e));
}

EP prod(std::vector<EP> factors) {
  std::vector<EP> flat;
  Rat c = 1;
  for (auto& f : factors) {
    if (!f) throw std::invalid_argument("prod: null child");
    if (f->kind == Kind::Num) {
      c *= f->num;
      continue;
    }
    if (f->kind == Kind::Prod) {
      for (auto& k : f->kids) {
        if (k->kind == Kind::Num) c *= k->num;
        else flat.push_back(k);
      }
      continue;
    }
    flat.push_back(f);
  }
  if (c == 0) return kZero;
  if (flat.empty()) return num(c);
  if (c != 1) flat.insert(flat.begin(), num(c));
  if (flat.size() == 1) return flat[0];
  Expr e;
  e.kind = Kind::Prod;
  e.kids = std::move(flat);
  return make(std::move(e));
}

EP pw(EP base, const Rat& e) {
  if (!base) throw std::invalid_argument("pw: null base");
  if (e == 0) return kOne;
  if (e == 1) return base;
  if (base->kind == Kind::Num) {
    auto folded = rat_pow_exact(base->num, e);
    if (folded) return num(*folded);
    // fractional powers follow the real odd-root convention
    // sgn(q)|q|^(p/r) for odd r, so signs and reciprocals split off exactly
    if (base->num < 0 && e.get_den() % 2 != 0) {
      EP mag = pw(num(-base->num), e);
      return e.get_num() % 2 != 0 ? prod({num(-1), mag}) : mag;
    }
    if (base->num > 0 && base->num.get_den() != 1)
      return prod({pw(num(Rat(base->num.get_num())), e),
                   pw(num(Rat(base->num.get_den())), -e)});
  }
  if (base->kind == Kind::Pow &&
      (is_integer(e) ||
       (is_integer(base->num) && base->num.get_num() % 2 != 0))) {
    // (b^a)^k = b^(a k) for integer k, and for odd integer a under the real
    // odd-root convention
    return pw(base->kids[0], base->num * e);
  }
  Expr x;
  x.kind = Kind::Pow;
  x.num = e;
  x.kids.push_back(std::move(base));
  return make(std::move(x));
}

EP atom(const std::string& name, std::vector<EP> args, std::vector<unsigned> dmi) {
  if (dmi.empty()) dmi.assign(args.size(), 0);
  if (dmi.size() != args.size())
    throw std::invalid_argument("atom: derivative multi-index arity mismatch for " + name);
  Expr e;
  e.kind = Kind::Atom;
  e.name = name;
  e.kids = std::move(args);
  e.dmi = std::move(dmi);
  return make(std::move(e));
}

EP happ(HeadFn h, std::vector<EP> args) {
  Expr e;
  e.kind = Kind::Head;
  e.head = h;
  e.kids = std::move(args);
  return make(std::move(e));
}

EP operator+(const EP& a, const EP& b) { return sum({a, b}); }
EP operator-(const EP& a, const EP& b) { return sum({a, prod({num(-1), b})}); }
EP operator*(const EP& a, const EP& b) { return prod({a, b}); }
EP operator/(const EP& a, const EP& b) { return prod({a, pw(b, rat(-1))}); }
EP operator-(const EP& a) { return prod({num(-1), a}); }
EP operator*(const Rat& c, const EP& a) { return prod({num(c), a}); }

static int kind_rank(Kind k) {
  switch (k) {
    case Kind::Num: return 0;
    case Kind::Var: return 1;
    case Kind::Pow: return 2;
    case Kind::Sum: return 3;
    case Kind::Prod: return 4;
    case Kind::Atom: return 5;
    case Kind::Head: return 6;
  }
  return 7;
}

int cmp(const EP& a, const EP& b) {
  if (a.get() == b.get()) return 0;
  int ra = kind_rank(a->kind), rb = kind_rank(b->kind);
  if (ra != rb) return ra < rb ? -1 : 1;
  switch (a->kind) {
    case Kind::Num:
      return ::cmp(a->num, b->num) < 0 ? -1 : (a->num == b->num ? 0 : 1);
    case Kind::Var:
      return a->name.compare(b->name) < 0 ? -1 : (a->name == b->name ? 0 : 1);
    case Kind::Pow: {
      int c = cmp(a->kids[0], b->kids[0]);
      if (c) return c;
      if (a->num == b->num) return 0;
      return ::cmp(a->num, b->num) < 0 ? -1 : 1;
    }
    case Kind::Sum:
    case Kind::Prod: {
      size_t n = std::min(a->kids.size(), b->kids.size());
      for (size_t i = 0; i < n; ++i) {
        int c = cmp(a->kids[i], b->kids[i]);
        if (c) return c;
      }
      if (a->kids.size() != b->kids.size())
        return a->kids.size() < b->kids.size() ? -1 : 1;
      return 0;
    }
    case Kind::Atom: {
      int c = a->name.compare(b->name);
      if (c) return c < 0 ? -1 : 1;
      if (a->dmi != b->dmi) return a->dmi < b->dmi ? -1 : 1;
      size_t n = std::min(a->kids.size(), b->kids.size());
      for (size_t i = 0; i < n; ++i) {
        int cc = cmp(a->kids[i], b->kids[i]);
        if (cc) return cc;
      }
      if (a->kids.size() != b->kids.size())
        return a->kids.size() < b->kids.size() ? -1 : 1;
      return 0;
    }
    case Kind::Head: {
      if (a->head != b->head) return a->head < b->head ? -1 : 1;
      size_t n = std::min(a->kids.size(), b->kids.size());
      for (size_t i = 0; i < n; ++i) {
        int c = cmp(a->kids[i], b->kids[i]);
        if (c) return c;
      }
      if (a->kids.size() != b->kids.size())
        return a->kids.size() < b->kids.size() ? -1 : 1;
      return 0;
    }
  }
  return 0;
}

bool equal(const EP& a, const EP& b) {
  if (a.get() == b.get()) return true;
  if (a->h != b->h) return false;
  return cmp(a, b) == 0;
}

std::size_t count_nodes(const EP& e) {
  std::size_t n = 1;
  for (auto& k : e->kids) n += count_nodes(k);
  return n;
}

// ---------- printing ----------

namespace {

// precedence: sum 1, prod 2, unary minus 2, pow 3, primary 4
void print_rec(std::ostringstream& os, const EP& e, int parent_prec);

void print_num(std::ostringstream& os, const Rat& q, int parent_prec) {
  bool neg = q < 0;
  bool frac = !is_integer(q);
  int myprec = neg ? 2 : (frac ? 2 : 4);
  bool paren = myprec < parent_prec || (frac && parent_prec >= 3) || (neg && parent_prec >= 2);
  if (paren) os << '(';
  os << rat_to_string(q);
  if (paren) os << ')';
}

void print_rec(std::ostringstream& os, const EP& e, int parent_prec) {
  switch (e->kind) {
    case Kind::Num:
      print_num(os, e->num, parent_prec);
      return;
    case Kind::Var:
      os << e->name;
      return;
    case Kind::Sum: {
      if (parent_prec > 1) os << '(';
      bool first = true;
      for (auto& k : e->kids) {
        // pull a leading minus out of numeric terms / products
        bool neg = false;
        EP t = k;
        if (k->kind == Kind::Num && k->num < 0) {
          neg = true;
          t = num(-k->num);
        } else if (k->kind == Kind::Prod && k->kids[0]->kind == Kind::Num &&
                   k->kids[0]->num < 0) {
          neg = true;
          std::vector<EP> rest(k->kids.begin(), k->kids.end());
          rest[0] = num(-rest[0]->num);
          t = prod(std::move(rest));
        }
        if (first) {
          if (neg) os << '-';
        } else {
          os << (neg ? " - " : " + ");
        }
        print_rec(os, t, 2);
        first = false;
      }
      if (parent_prec > 1) os << ')';
      return;
    }
    case Kind::Prod: {
      if (parent_prec > 2) os << '(';
      bool first = true;
      for (auto& k : e->kids) {
        if (!first) os << '*';
        print_rec(os, k, 3);
        first = false;
      }
      if (parent_prec > 2) os << ')';
      return;
    }
    case Kind::Pow: {
      if (parent_prec > 3) os << '(';
      print_rec(os, e->kids[0], 4);
      os << '^';
      print_num(os, e->num, 4);
      if (parent_prec > 3) os << ')';
      return;
    }
    case Kind::Atom: {
      os << e->name;
      bool any_d = false;
      for (auto d : e->dmi)
        if (d) any_d = true;
      if (any_d) {
        if (e->dmi.size() == 1 && e->dmi[0] <= 3) {
          for (unsigned i = 0; i < e->dmi[0]; ++i) os << '\'';
        } else {
          os << "_{";
          for (size_t i = 0; i < e->dmi.size(); ++i)
            for (unsigned j = 0; j < e->dmi[i]; ++j) os << (i + 1);
          os << '}';
        }
      }
      os << '(';
      for (size_t i = 0; i < e->kids.size(); ++i) {
        if (i) os << ", ";
        print_rec(os, e->kids[i], 1);
      }
      os << ')';
      return;
    }
    case Kind::Head: {
      os << head_name(e->head) << '(';
      for (size_t i = 0; i < e->kids.size(); ++i) {
        if (i) os << ", ";
        print_rec(os, e->kids[i], 1);
      }
      os << ')';
      return;
    }
  }
}

} // namespace

std::string to_string(const EP& e) {
  std::ostringstream os;
  print_rec(os, e, 1);
  return os.str();
}

void collect_vars(const EP& e, std::vector<std::string>& out) {
  if (e->kind == Kind::Var) {
    if (std::find(out.begin(), out.end(), e->name) == out.end()) out.push_back(e->name);
  }
  for (auto& k : e->kids) collect_vars(k, out);
}

void collect_atoms(const EP& e, std::vector<std::string>& out) {
  if (e->kind == Kind::Atom) {
    if (std::find(out.begin(), out.end(), e->name) == out.end()) out.push_back(e->name);
  }
  for (auto& k : e->kids) collect_atoms(k, out);
}

bool contains_var(const EP& e, const std::string& name) {
  if (e->kind == Kind::Var && e->name == name) return true;
  for (auto& k : e->kids)
    if (contains_var(k, name)) return true;
  return false;
}

bool contains_atom(const EP& e, const std::string& name) {
  if (e->kind == Kind::Atom && e->name == name) return true;
  for (auto& k : e->kids)
    if (contains_atom(k, name)) return true;
  return false;
}

} // namespace dnk
