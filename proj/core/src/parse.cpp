#include "dnk/parse.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <vector>

namespace dnk {

namespace {

const std::map<std::string, HeadFn>& head_table() {
  static const std::map<std::string, HeadFn> t = {
      {"exp", HeadFn::Exp},          {"ln", HeadFn::Ln},
      {"abs", HeadFn::Abs},          {"sgn", HeadFn::Sgn},
      {"sin", HeadFn::Sin},          {"cos", HeadFn::Cos},
      {"arctan", HeadFn::Arctan},    {"lambertW0", HeadFn::LambertW0},
      {"lambertWm1", HeadFn::LambertWm1}, {"hyper3f2", HeadFn::Hyper3F2},
  };
  return t;
}

class Parser {
public:
  explicit Parser(const std::string& s) : s_(s) {}

  EP run() {
    EP e = expr_bp(0);
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("trailing input", pos_);
    return e;
  }

private:
  const std::string& s_;
  size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool eat(char c) {
    if (peek() == c) { ++pos_; return true; }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
  }

  // Pratt-style binding powers: + - (10), * / (20), unary - (25), ^ (30)
  EP expr_bp(int min_bp) {
    EP lhs = parse_prefix();
    for (;;) {
      char c = peek();
      int bp;
      if (c == '+' || c == '-') bp = 10;
      else if (c == '*' || c == '/') bp = 20;
      else if (c == '^') bp = 30;
      else break;
      if (bp < min_bp) break;
      ++pos_;
      if (c == '^') {
        Rat e = parse_exponent();
        lhs = pw(lhs, e);
        continue;
      }
      EP rhs = expr_bp(bp + 1);
      switch (c) {
        case '+': lhs = lhs + rhs; break;
        case '-': lhs = lhs - rhs; break;
        case '*': lhs = lhs * rhs; break;
        case '/': lhs = lhs / rhs; break;
      }
    }
    return lhs;
  }

  EP parse_prefix() {
    char c = peek();
    if (c == '-') { ++pos_; return -expr_bp(25); }
    if (c == '+') { ++pos_; return expr_bp(25); }
    if (c == '(') {
      ++pos_;
      EP e = expr_bp(0);
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return num(parse_number());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '#' || c == '$')
      return parse_symbol();
    throw ParseError("unexpected character", pos_);
  }

  Rat parse_number() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected number", pos_);
    return Rat(s_.substr(start, pos_ - start));
  }

  // exponent after '^': integer, or (p/q) possibly signed
  Rat parse_exponent() {
    if (eat('(')) {
      bool neg = eat('-');
      Rat n = parse_number();
      Rat d(1);
      if (eat('/')) d = parse_number();
      expect(')');
      Rat r = n / d;
      return neg ? -r : r;
    }
    bool neg = eat('-');
    Rat n = parse_number();
    return neg ? -n : n;
  }

  EP parse_symbol() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '#' ||
            s_[pos_] == '$'))
      ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    // optional subscript: _suffix or _{suffix}
    std::string subscript;
    bool braced = false;
    if (pos_ < s_.size() && s_[pos_] == '_') {
      size_t save = pos_;
      ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '{') {
        braced = true;
        ++pos_;
        size_t sub = pos_;
        while (pos_ < s_.size() && s_[pos_] != '}') ++pos_;
        if (pos_ == s_.size()) throw ParseError("unterminated subscript", save);
        subscript = s_.substr(sub, pos_ - sub);
        ++pos_;
      } else {
        size_t sub = pos_;
        while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_])))
          ++pos_;
        subscript = s_.substr(sub, pos_ - sub);
        if (subscript.empty()) { pos_ = save; }
      }
    }
    // primes
    unsigned primes = 0;
    while (pos_ < s_.size() && s_[pos_] == '\'') { ++primes; ++pos_; }

    if (peek() == '(') {
      ++pos_;
      std::vector<EP> args;
      if (peek() != ')') {
        args.push_back(expr_bp(0));
        while (eat(',')) args.push_back(expr_bp(0));
      }
      expect(')');
      if (subscript.empty() && primes == 0) {
        auto it = head_table().find(name);
        if (it != head_table().end()) return happ(it->second, std::move(args));
        if (name == "sqrt") {
          if (args.size() != 1) throw ParseError("sqrt takes one argument", pos_);
          return pw(args[0], rat(1, 2));
        }
      }
      // atom with derivative indices
      std::vector<unsigned> dmi(args.size(), 0);
      if (primes) {
        if (args.size() != 1) throw ParseError("prime derivative needs unary atom", pos_);
        dmi[0] = primes;
      }
      for (char dc : subscript) {
        if (!std::isdigit(static_cast<unsigned char>(dc)))
          throw ParseError("atom subscript must list argument positions", pos_);
        unsigned idx = static_cast<unsigned>(dc - '0');
        if (idx < 1 || idx > args.size())
          throw ParseError("derivative index out of range", pos_);
        dmi[idx - 1] += 1;
      }
      return atom(name, std::move(args), std::move(dmi));
    }
    if (primes) throw ParseError("prime requires a function application", pos_);
    if (!subscript.empty()) name += "_" + subscript;
    (void)braced;
    return var(name);
  }
};

} // namespace

EP parse(const std::string& text) { return Parser(text).run(); }

} // namespace dnk
