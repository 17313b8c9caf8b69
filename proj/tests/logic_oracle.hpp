#pragma once

// Naive two-valued satisfaction over a finite domain, written directly from
// the recursive definition. Used to cross-check the compiled evaluator.

#include <map>
#include <string>

#include "qoag/formula.hpp"
#include "qoag/qo.hpp"
#include "qoag/window.hpp"

namespace qt {

using namespace qoag;

inline Element naive_term(const Group& g, const Term& t, const std::map<std::string, Element>& env) {
  Element r = g.zero();
  for (const auto& [v, k] : t.coefficients()) {
    Element x = env.at(v);
    long long n = k < 0 ? -k : k;
    for (long long i = 0; i < n; ++i) r = k < 0 ? g.sub(r, x) : g.add(r, x);
  }
  return r;
}

inline bool naive_sat(const GroupSpec& G, const std::vector<Element>& domain, const Formula& f,
                      std::map<std::string, Element>& env) {
  const Group& g = G.group();
  switch (f->op) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Le: return G.leq(naive_term(g, f->a, env), naive_term(g, f->b, env));
    case Op::Eq0: return g.is_zero(naive_term(g, f->a, env));
    case Op::Not: return !naive_sat(G, domain, f->kids[0], env);
    case Op::And:
      for (const auto& k : f->kids)
        if (!naive_sat(G, domain, k, env)) return false;
      return true;
    case Op::Or:
      for (const auto& k : f->kids)
        if (naive_sat(G, domain, k, env)) return true;
      return false;
    case Op::Exists:
    case Op::ForAll: {
      bool ex = f->op == Op::Exists;
      auto saved = env.count(f->var) ? std::optional<Element>(env[f->var]) : std::nullopt;
      bool result = !ex;
      for (const auto& e : domain) {
        env[f->var] = e;
        if (naive_sat(G, domain, f->kids[0], env) == ex) {
          result = ex;
          break;
        }
      }
      if (saved) env[f->var] = *saved;
      else env.erase(f->var);
      return result;
    }
  }
  return false;
}

}  // namespace qt
