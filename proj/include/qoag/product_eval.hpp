#pragma once

#include <map>
#include <set>
#include <string>

#include "qoag/eval.hpp"
#include "qoag/qe.hpp"
#include "qoag/translate.hpp"

namespace qoag {

inline bool is_divisible_ordered(const GroupSpec& G) {
  if (G.group().dimension() == 0) return false;
  for (const auto& f : G.group().factors())
    if (f.kind != FactorKind::rational) return false;
  return std::holds_alternative<LexQo>(G.qo());
}

// o ⊛ H with o divisible ordered and H finite: formulas are decided exactly.
inline bool is_exact_product(const GroupSpec& G) {
  const auto* p = std::get_if<ProductQo>(&G.qo());
  return p && is_divisible_ordered(*p->ordered) && p->valued->group().is_finite();
}

namespace pe_detail {

using HEnv = std::map<std::string, Element>;

inline Element h_value(const Group& H, const Term& t, const HEnv& env) {
  Element r = H.zero();
  for (const auto& [v, k] : t.coefficients()) {
    auto it = env.find(v);
    if (it == env.end()) throw Error(ErrorKind::unbound_variable, "variable " + v + " has no value");
    r = H.add(r, H.scale(it->second, Scalar(k)));
  }
  return r;
}

// And/Or with constants folded and repeated children dropped.
inline Formula fold(Op op, std::vector<Formula> kids) {
  Op unit = op == Op::And ? Op::True : Op::False, zero = op == Op::And ? Op::False : Op::True;
  std::vector<Formula> k;
  std::set<std::string> seen;
  for (auto& c : kids) {
    if (c->op == unit) continue;
    if (c->op == zero) return c;
    if (seen.insert(to_string(c)).second) k.push_back(std::move(c));
  }
  return op == Op::And ? f_and(std::move(k)) : f_or(std::move(k));
}

inline Formula expand(const GroupSpec& Hs, const Formula& f, HEnv& env) {
  const Group& H = Hs.group();
  switch (f->op) {
    case Op::True:
    case Op::False: return f;
    case Op::Eq0: return H.is_zero(h_value(H, f->a, env)) ? f : f_false();
    case Op::Le: {
      Element p = h_value(H, f->a, env), q = h_value(H, f->b, env);
      bool pz = H.is_zero(p), qz = H.is_zero(q);
      if (pz && qz) return f;
      if (!qz) return Hs.leq(p, q) ? f_true() : f_false();
      return f_false();
    }
    case Op::Exists:
    case Op::ForAll: {
      std::vector<Formula> parts;
      auto saved = env.find(f->var) == env.end() ? std::optional<Element>() : std::optional<Element>(env[f->var]);
      for (const auto& h : enumerate(H, Window{1})) {
        env[f->var] = h;
        Formula body = expand(Hs, f->kids[0], env);
        bool constant = body->op == Op::True || body->op == Op::False;
        parts.push_back(constant ? body : mk({f->op, {}, {}, {body}, f->var}));
      }
      if (saved) env[f->var] = *saved;
      else env.erase(f->var);
      return fold(f->op == Op::Exists ? Op::Or : Op::And, std::move(parts));
    }
    case Op::Not: {
      Formula k = expand(Hs, f->kids[0], env);
      if (k->op == Op::True) return f_false();
      if (k->op == Op::False) return f_true();
      return f_not(k);
    }
    default: {
      std::vector<Formula> k;
      for (const auto& c : f->kids) k.push_back(expand(Hs, c, env));
      return fold(f->op, std::move(k));
    }
  }
}

}  // namespace pe_detail

// Replaces the valued coordinates of every variable by concrete values of the
// finite valued part, leaving a formula about the ordered part only.
inline Formula expand_valued(const GroupSpec& H, const Formula& f, const std::map<std::string, Element>& h_assignment) {
  pe_detail::HEnv env(h_assignment.begin(), h_assignment.end());
  return pe_detail::expand(H, f, env);
}

// Exact truth of f(assignment) in o ⊛ H (divisible o, finite H).
inline Truth3 eval_exact_product(const GroupSpec& G, const Formula& f, const Assignment& a) {
  const auto& p = std::get<ProductQo>(G.qo());
  std::size_t k = p.ordered->group().dimension(), m = p.valued->group().dimension();
  Assignment ao;
  std::map<std::string, Element> ah;
  for (const auto& [v, e] : a) {
    G.group().validate(e);
    ao[v] = slice(e, 0, k);
    ah[v] = slice(e, k, m);
  }
  Formula reduced = qe_doag(expand_valued(*p.valued, f, ah));
  return Evaluator(*p.ordered, Window{1})(reduced, ao);
}

// Exact truth via the pair decomposition: some i with o |= QE(φi°) and H |= φiv.
inline std::optional<Truth3> eval_pairs_product(const GroupSpec& G, const Formula& f, const Assignment& a,
                                                std::size_t budget) {
  const auto& p = std::get<ProductQo>(G.qo());
  FvOptions o;
  o.strip_double_negation = true;
  o.dedup = true;
  auto n = fv_count(f, o);
  if (!n || *n > budget) return std::nullopt;
  auto pairs = fv_decompose(f, o);
  std::size_t k = p.ordered->group().dimension(), m = p.valued->group().dimension();
  Assignment ao, av;
  for (const auto& [v, e] : a) {
    ao[v] = slice(e, 0, k);
    av[v] = slice(e, k, m);
  }
  Evaluator eo(*p.ordered, Window{1}), ev(*p.valued, Window{1});
  for (const auto& [fo, fv] : pairs.pairs) {
    if (ev(fv, av) != Truth3::True) continue;
    if (eo(qe_doag(fo), ao) == Truth3::True) return Truth3::True;
  }
  return Truth3::False;
}

}  // namespace qoag
