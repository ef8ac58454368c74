#include "dnk/eval.hpp"
#include "dnk/numerics.hpp"

#include <stdexcept>

namespace dnk {

Interval eval(const EP& e, const EvalEnv& env) {
  switch (e->kind) {
    case Kind::Num:
      return Interval::exact(e->num, env.prec);
    case Kind::Var: {
      auto it = env.vars.find(e->name);
      if (it == env.vars.end())
        throw std::out_of_range("eval: unbound variable " + e->name);
      return it->second;
    }
    case Kind::Sum: {
      Interval acc = Interval::exact(Rat(0), env.prec);
      for (auto& k : e->kids) acc = acc + eval(k, env);
      return acc;
    }
    case Kind::Prod: {
      Interval acc = Interval::exact(Rat(1), env.prec);
      for (auto& k : e->kids) acc = acc * eval(k, env);
      return acc;
    }
    case Kind::Pow:
      return ipow(eval(e->kids[0], env), e->num);
    case Kind::Atom: {
      auto it = env.atoms.find(e->name);
      if (it == env.atoms.end())
        throw std::out_of_range("eval: unbound atom " + e->name);
      std::vector<Interval> args;
      args.reserve(e->kids.size());
      for (auto& k : e->kids) args.push_back(eval(k, env));
      return it->second(args, e->dmi);
    }
    case Kind::Head: {
      std::vector<Interval> args;
      args.reserve(e->kids.size());
      for (auto& k : e->kids) args.push_back(eval(k, env));
      const Interval& a = args[0];
      switch (e->head) {
        case HeadFn::Exp: return iexp(a);
        case HeadFn::Ln: return ilog(a);
        case HeadFn::Abs: return iabs(a);
        case HeadFn::Sgn: return isgn(a);
        case HeadFn::Sin: return isin(a);
        case HeadFn::Cos: return icos(a);
        case HeadFn::Arctan: return iatan(a);
        case HeadFn::LambertW0: return lambert_w_enclosure(0, a);
        case HeadFn::LambertWm1: return lambert_w_enclosure(-1, a);
        case HeadFn::Hyper3F2:
          if (args.size() != 6)
            throw std::invalid_argument("hyper3f2 head needs 6 arguments");
          return hyper3f2_enclosure(args[0].mid(), args[1].mid(), args[2].mid(),
                                    args[3].mid(), args[4].mid(), args[5]);
      }
      throw std::logic_error("eval: unhandled head");
    }
  }
  throw std::logic_error("eval: unhandled node kind");
}

Real eval_mid(const EP& e, const EvalEnv& env) { return eval(e, env).mid(); }

} // namespace dnk
