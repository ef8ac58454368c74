#pragma once

#include <memory>
#include <string>
#include <vector>
#include <stdexcept>
#include "dnk/rat.hpp"

namespace dnk {

// Immutable expression tree over exact rationals.
//
// Node kinds: rational constants, variables, flattened sums/products, powers
// with exact rational exponents, opaque function atoms with derivative
// multi-indices (f, f', w_{122}, ...), and transcendental heads.
// `sqrt` from the surface grammar is normalized to Pow(base, 1/2).

enum class Kind : unsigned char { Num, Var, Sum, Prod, Pow, Atom, Head };

enum class HeadFn : unsigned char {
  Exp, Ln, Abs, Sgn, Sin, Cos, Arctan, LambertW0, LambertWm1, Hyper3F2
};

const char* head_name(HeadFn h);

struct Expr;
using EP = std::shared_ptr<const Expr>;

struct Expr {
  Kind kind;
  Rat num;                    // Num value; Pow exponent
  std::string name;           // Var / Atom name
  std::vector<EP> kids;       // Sum/Prod terms, Pow base (kids[0]), Atom/Head args
  std::vector<unsigned> dmi;  // Atom derivative multi-index (size == kids.size())
  HeadFn head = HeadFn::Exp;
  std::size_t h = 0;          // structural hash

  bool is_num() const { return kind == Kind::Num; }
  bool is_num(long v) const { return kind == Kind::Num && num == v; }
};

struct SizeLimit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- constructors (light normalization: flattening, constant folding) ---
EP num(const Rat& q);
EP num(long n, long d = 1);
EP var(const std::string& name);
EP sum(std::vector<EP> terms);
EP prod(std::vector<EP> factors);
EP pw(EP base, const Rat& e);
EP atom(const std::string& name, std::vector<EP> args,
        std::vector<unsigned> dmi = {});
EP happ(HeadFn h, std::vector<EP> args);

// Common pre-made nodes
EP zero();
EP one();

// --- operators ---
EP operator+(const EP& a, const EP& b);
EP operator-(const EP& a, const EP& b);
EP operator*(const EP& a, const EP& b);
EP operator/(const EP& a, const EP& b);
EP operator-(const EP& a);
EP operator*(const Rat& c, const EP& a);

// --- structural order & equality ---
// Total order: Num < Var < Pow < Sum < Prod < Atom < Head, then recursive
// lexicographic. This is the fixed node order used in canonical forms.
int cmp(const EP& a, const EP& b);
bool equal(const EP& a, const EP& b);

std::size_t count_nodes(const EP& e);

// Infix pretty-printer; parse(print(e)) == e for canonical e.
std::string to_string(const EP& e);

// Collect free variable names / atom names appearing in e.
void collect_vars(const EP& e, std::vector<std::string>& out);
void collect_atoms(const EP& e, std::vector<std::string>& out);
bool contains_var(const EP& e, const std::string& name);
bool contains_atom(const EP& e, const std::string& name);

} // namespace dnk
