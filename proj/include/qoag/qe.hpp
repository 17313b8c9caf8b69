#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "qoag/formula.hpp"

namespace qoag {

// Quantifier elimination for divisible ordered abelian groups (nontrivial).
// Works on disjunctive normal form with linear constraints t > 0, t >= 0,
// t = 0 and eliminates each variable Fourier-Motzkin style.
namespace qe_detail {

enum class Rel { gt, ge, eq };

struct Con {
  Term t;
  Rel rel;
  bool operator==(const Con&) const = default;
  auto operator<=>(const Con& o) const {
    if (auto c = t <=> o.t; c != 0) return c;
    return rel <=> o.rel;
  }
};

using Conj = std::vector<Con>;
using Dnf = std::vector<Conj>;

// Divide by the gcd of the coefficients and fix the sign of equations so
// syntactically different but equal constraints coincide.
inline Con normalize(Con c) {
  long long g = 0;
  for (const auto& [v, k] : c.t.coefficients()) g = std::gcd(g, k < 0 ? -k : k);
  if (g > 1) {
    Term r;
    for (const auto& [v, k] : c.t.coefficients()) r = r + Term::var(v, k / g);
    c.t = r;
  }
  if (c.rel == Rel::eq && !c.t.is_zero() && c.t.coefficients().begin()->second < 0) c.t = -c.t;
  return c;
}

// Constant constraint truth, or nullopt when it mentions variables.
inline std::optional<bool> constant(const Con& c) {
  if (!c.t.is_zero()) return std::nullopt;
  return c.rel != Rel::gt;
}

inline Dnf dnf_and(const Dnf& a, const Dnf& b) {
  Dnf out;
  for (const auto& x : a)
    for (const auto& y : b) {
      Conj z = x;
      for (const auto& c : y)
        if (std::find(z.begin(), z.end(), c) == z.end()) z.push_back(c);
      out.push_back(std::move(z));
    }
  return out;
}

// t > 0 and -t > 0, or t > 0 with -t >= 0, or t > 0 with t = 0.
inline bool clash(const Con& a, const Con& b) {
  if (a.rel == Rel::gt && b.rel != Rel::eq && b.t == -a.t) return true;
  if (a.rel == Rel::gt && b.rel == Rel::eq && (b.t == a.t || b.t == -a.t)) return true;
  return false;
}

// Drops constant constraints, sorts each conjunction, removes contradictory
// conjunctions and conjunctions implied by (supersets of) others.
inline Dnf simplify(const Dnf& d) {
  Dnf out;
  for (const auto& conj : d) {
    Conj k;
    bool dead = false;
    for (const auto& c0 : conj) {
      Con c = normalize(c0);
      if (auto v = constant(c)) {
        if (!*v) dead = true;
        continue;
      }
      k.push_back(c);
    }
    if (dead) continue;
    if (k.empty()) return Dnf{Conj{}};  // true
    std::sort(k.begin(), k.end());
    k.erase(std::unique(k.begin(), k.end()), k.end());
    for (std::size_t i = 0; i < k.size() && !dead; ++i)
      for (std::size_t j = 0; j < k.size() && !dead; ++j) dead = clash(k[i], k[j]);
    if (!dead) out.push_back(std::move(k));
  }
  std::sort(out.begin(), out.end(), [](const Conj& a, const Conj& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  Dnf kept;
  for (auto& c : out) {
    bool subsumed = false;
    for (const auto& s : kept)
      if (std::includes(c.begin(), c.end(), s.begin(), s.end())) {
        subsumed = true;
        break;
      }
    if (!subsumed) kept.push_back(std::move(c));
  }
  return kept;
}

// DNF of a quantifier-free formula, negation pushed to atoms.
inline Dnf to_dnf(const Formula& f, bool positive) {
  switch (f->op) {
    case Op::True: return positive ? Dnf{Conj{}} : Dnf{};
    case Op::False: return positive ? Dnf{} : Dnf{Conj{}};
    case Op::Le:  // a <= b  iff b - a >= 0; negation a - b > 0
      if (positive) return {{Con{f->b - f->a, Rel::ge}}};
      return {{Con{f->a - f->b, Rel::gt}}};
    case Op::Eq0:
      if (positive) return {{Con{f->a, Rel::eq}}};
      return {{Con{f->a, Rel::gt}}, {Con{-f->a, Rel::gt}}};
    case Op::Not: return to_dnf(f->kids[0], !positive);
    case Op::And:
    case Op::Or: {
      bool conj = (f->op == Op::And) == positive;
      if (conj) {
        Dnf acc{Conj{}};
        for (const auto& k : f->kids) acc = simplify(dnf_and(acc, to_dnf(k, positive)));
        return acc;
      }
      Dnf acc;
      for (const auto& k : f->kids) {
        Dnf d = to_dnf(k, positive);
        acc.insert(acc.end(), d.begin(), d.end());
      }
      return simplify(acc);
    }
    default: throw Error(ErrorKind::not_order_fragment, "quantifier inside a matrix handed to DNF");
  }
}

// EX x. conj  ->  DNF without x.
inline Dnf eliminate(const Conj& conj, const std::string& x) {
  // Equation in x: substitute x = -s/a after scaling everything by |a|.
  for (const auto& e : conj) {
    long long a = e.t.coef(x);
    if (e.rel != Rel::eq || a == 0) continue;
    Term s = e.t.without(x);
    long long sa = a < 0 ? -1 : 1, aa = a < 0 ? -a : a;
    Conj out;
    for (const auto& c : conj) {
      if (&c == &e) continue;
      long long b = c.t.coef(x);
      if (b == 0) {
        out.push_back(c);
        continue;
      }
      // |a|(b x + r) = -sign(a) b s + |a| r
      Term r = c.t.without(x);
      out.push_back(Con{s.scaled(checked_mul(-sa, b)) + r.scaled(aa), c.rel});
    }
    return simplify({out});
  }
  std::vector<const Con*> lower, upper;
  Conj rest;
  for (const auto& c : conj) {
    long long b = c.t.coef(x);
    if (b > 0) lower.push_back(&c);
    else if (b < 0) upper.push_back(&c);
    else rest.push_back(c);
  }
  // One-sided bounds are satisfiable in a divisible group without endpoints.
  for (const Con* l : lower)
    for (const Con* u : upper) {
      long long b = l->t.coef(x), bu = -u->t.coef(x);
      Term r = l->t.without(x), ru = u->t.without(x);
      // x >= -r/b and x <= ru/bu  ->  b*ru + bu*r >= 0, strict if either is
      Rel rel = (l->rel == Rel::gt || u->rel == Rel::gt) ? Rel::gt : Rel::ge;
      rest.push_back(Con{ru.scaled(b) + r.scaled(bu), rel});
    }
  return simplify({rest});
}

inline Dnf qe_dnf(const Formula& f);

inline Formula from_dnf(const Dnf& d) {
  std::vector<Formula> ors;
  for (const auto& conj : d) {
    std::vector<Formula> ands;
    for (const auto& c : conj) {
      // t = P - N with P, N positive combinations.
      Term P, N;
      for (const auto& [v, k] : c.t.coefficients()) {
        if (k > 0) P = P + Term::var(v, k);
        else N = N + Term::var(v, -k);
      }
      switch (c.rel) {
        case Rel::eq: ands.push_back(f_eq0(c.t)); break;
        case Rel::ge: ands.push_back(f_le(N, P)); break;
        case Rel::gt: ands.push_back(f_lt(N, P)); break;
      }
    }
    ors.push_back(f_and(std::move(ands)));
  }
  return f_or(std::move(ors));
}

// Eliminates every quantifier, innermost first, returning a DNF.
inline Dnf qe_dnf(const Formula& f) {
  switch (f->op) {
    case Op::Exists: {
      Dnf body = qe_dnf(f->kids[0]);
      Dnf out;
      for (const auto& conj : body) {
        Dnf e = eliminate(conj, f->var);
        out.insert(out.end(), e.begin(), e.end());
      }
      return simplify(out);
    }
    case Op::ForAll: return qe_dnf(f_not(f_exists(f->var, f_not(f->kids[0]))));
    case Op::Not:
      if (quantifier_rank(f->kids[0]) > 0) return to_dnf(from_dnf(qe_dnf(f->kids[0])), false);
      return to_dnf(f, true);
    case Op::And:
    case Op::Or: {
      bool any_q = false;
      for (const auto& k : f->kids) any_q = any_q || quantifier_rank(k) > 0;
      if (!any_q) return to_dnf(f, true);
      std::vector<Formula> ks;
      for (const auto& k : f->kids) ks.push_back(from_dnf(qe_dnf(k)));
      return to_dnf(f->op == Op::And ? f_and(ks) : f_or(ks), true);
    }
    default: return to_dnf(f, true);
  }
}

}  // namespace qe_detail

inline Formula qe_doag(const Formula& f) { return qe_detail::from_dnf(qe_detail::qe_dnf(f)); }

}  // namespace qoag
