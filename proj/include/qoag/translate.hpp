#pragma once

#include <cstdlib>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qoag/formula.hpp"
#include "qoag/scalar.hpp"

namespace qoag {

// ---- prenex form ----------------------------------------------------------

namespace prenex_detail {

inline Formula rectify(const Formula& f, std::set<std::string>& used, std::set<std::string>& bound_seen) {
  switch (f->op) {
    case Op::Exists:
    case Op::ForAll: {
      std::string v = f->var;
      Formula body = f->kids[0];
      if (bound_seen.count(v)) {
        std::string nv = fresh_var(used);
        body = rename_free(body, v, nv);
        v = nv;
      }
      used.insert(v);
      bound_seen.insert(v);
      return mk({f->op, {}, {}, {rectify(body, used, bound_seen)}, v});
    }
    case Op::Not:
    case Op::And:
    case Op::Or: {
      std::vector<Formula> k;
      for (const auto& c : f->kids) k.push_back(rectify(c, used, bound_seen));
      return mk({f->op, {}, {}, std::move(k), {}});
    }
    default: return f;
  }
}

using Prefix = std::vector<std::pair<Op, std::string>>;

inline std::pair<Prefix, Formula> pull(const Formula& f) {
  switch (f->op) {
    case Op::Exists:
    case Op::ForAll: {
      auto [p, m] = pull(f->kids[0]);
      p.insert(p.begin(), {f->op, f->var});
      return {p, m};
    }
    case Op::Not: {
      auto [p, m] = pull(f->kids[0]);
      for (auto& q : p) q.first = q.first == Op::Exists ? Op::ForAll : Op::Exists;
      return {p, f_not(m)};
    }
    case Op::And:
    case Op::Or: {
      Prefix p;
      std::vector<Formula> ms;
      for (const auto& k : f->kids) {
        auto [kp, km] = pull(k);
        p.insert(p.end(), kp.begin(), kp.end());
        ms.push_back(km);
      }
      return {p, mk({f->op, {}, {}, std::move(ms), {}})};
    }
    default: return {{}, f};
  }
}

}  // namespace prenex_detail

// Bound variables are first made distinct from each other and from the free
// variables, so pulling quantifiers out cannot capture.
inline std::pair<prenex_detail::Prefix, Formula> prenex_parts(const Formula& f) {
  std::set<std::string> used;
  collect_all_vars(f, used);
  std::set<std::string> seen = free_vars(f);
  return prenex_detail::pull(prenex_detail::rectify(f, used, seen));
}

inline Formula prenex(const Formula& f) {
  auto [p, m] = prenex_parts(f);
  for (auto it = p.rbegin(); it != p.rend(); ++it)
    m = it->first == Op::Exists ? f_exists(it->second, m) : f_forall(it->second, m);
  return m;
}

// φ -> φ° : prenex form with every quantifier bounded by "y in Go".
inline Formula relativize_o(const Formula& f) {
  auto [p, m] = prenex_parts(f);
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    Term y = Term::var(it->second);
    if (it->first == Op::Exists) m = f_exists(it->second, f_and({f_in_go(y), m}));
    else m = f_forall(it->second, f_or({f_not(f_in_go(y)), m}));
  }
  return m;
}

// φ -> φ^v by induction on φ.
inline Formula translate_v(const Formula& f) {
  switch (f->op) {
    case Op::True:
    case Op::False: return f;
    case Op::Eq0: return f_in_go(f->a);
    case Op::Le:
      return f_or({f_and({f_in_go(f->a), f_in_go(f->b)}), f_and({f_not(f_in_go(f->b)), f})});
    case Op::Exists:
    case Op::ForAll: return mk({f->op, {}, {}, {translate_v(f->kids[0])}, f->var});
    default: {
      std::vector<Formula> k;
      for (const auto& c : f->kids) k.push_back(translate_v(c));
      return mk({f->op, {}, {}, std::move(k), {}});
    }
  }
}

// ---- ordered-part / valued-part pairs -------------------------------------

struct FvOptions {
  std::size_t cap = std::size_t{1} << 20;
  // Conjunction as the pairwise product (n = k*l). Off: rewrite f & g as
  // !(!f | !g) and use the negation rule.
  bool and_as_product = true;
  // Strip !! before recursing (the count law is then stated on the
  // normalized formula).
  bool strip_double_negation = false;
  bool dedup = false;

  static FvOptions from_env() {
    FvOptions o;
    if (const char* s = std::getenv("QOAG_PAIR_CAP")) {
      try {
        o.cap = static_cast<std::size_t>(std::stoull(s));
      } catch (const std::exception&) {
        throw Error(ErrorKind::invalid_spec, std::string("QOAG_PAIR_CAP is not a number: ") + s);
      }
    }
    return o;
  }
};

using FvPair = std::pair<Formula, Formula>;  // (ordered side, valued side)

struct FvPairs {
  BigInt n = 0;              // count per the inductive construction
  bool count_overflow = false;  // n too large to write down
  bool materialized = false;
  std::vector<FvPair> pairs;
  std::vector<std::string> warnings;
};

namespace fv_detail {

// Rewrites applied before each rule so the count and the construction see
// the same formula.
inline Formula step(const Formula& f, const FvOptions& o) {
  if (o.strip_double_negation)
    if (f->op == Op::Not && f->kids[0]->op == Op::Not) return step(f->kids[0]->kids[0], o);
  if (f->op == Op::ForAll) {
    Formula body = f->kids[0];
    Formula nb = (o.strip_double_negation && body->op == Op::Not) ? body->kids[0] : f_not(body);
    return f_not(f_exists(f->var, nb));
  }
  if (f->op == Op::And && !o.and_as_product) {
    std::vector<Formula> n;
    for (const auto& k : f->kids) n.push_back(f_not(k));
    return f_not(f_or(std::move(n)));
  }
  return f;
}

// Counts in bits-limited big integers; nullopt once 2^n gets absurd.
constexpr std::size_t kMaxExponent = std::size_t{1} << 22;

inline std::optional<BigInt> count(const Formula& f0, const FvOptions& o) {
  Formula f = step(f0, o);
  switch (f->op) {
    case Op::True:
    case Op::False:
    case Op::Eq0: return BigInt(1);
    case Op::Le: return BigInt(2);
    case Op::Exists: return count(f->kids[0], o);
    case Op::Or: {
      BigInt s = 0;
      for (const auto& k : f->kids) {
        auto c = count(k, o);
        if (!c) return std::nullopt;
        s += *c;
      }
      return s;
    }
    case Op::And: {
      BigInt p = 1;
      for (const auto& k : f->kids) {
        auto c = count(k, o);
        if (!c) return std::nullopt;
        p *= *c;
      }
      return p;
    }
    case Op::Not: {
      auto c = count(f->kids[0], o);
      if (!c || *c > kMaxExponent) return std::nullopt;
      BigInt r = 1;
      r <<= static_cast<unsigned>(static_cast<std::size_t>(*c));
      return r;
    }
    default: return std::nullopt;
  }
}

inline std::vector<FvPair> build(const Formula& f0, const FvOptions& o) {
  Formula f = step(f0, o);
  switch (f->op) {
    case Op::True:
    case Op::False:
    case Op::Eq0: return {{f, f}};
    case Op::Le: {
      const Term& P = f->a;
      const Term& Q = f->b;
      return {{f_eq0(Term()), f_and({f_not(f_eq0(Q)), f})}, {f, f_and({f_eq0(Q), f_eq0(P)})}};
    }
    case Op::Exists: {
      std::vector<FvPair> out;
      for (auto& [a, b] : build(f->kids[0], o)) out.emplace_back(f_exists(f->var, a), f_exists(f->var, b));
      return out;
    }
    case Op::Or: {
      std::vector<FvPair> out;
      for (const auto& k : f->kids) {
        auto p = build(k, o);
        out.insert(out.end(), p.begin(), p.end());
      }
      return out;
    }
    case Op::And: {
      std::vector<FvPair> acc{{nullptr, nullptr}};
      for (const auto& k : f->kids) {
        auto p = build(k, o);
        std::vector<FvPair> next;
        for (const auto& [a, b] : acc)
          for (const auto& [c, d] : p)
            next.emplace_back(a ? f_and({a, c}) : c, b ? f_and({b, d}) : d);
        acc = std::move(next);
      }
      return acc;
    }
    case Op::Not: {
      auto sub = build(f->kids[0], o);
      std::size_t k = sub.size();
      std::vector<FvPair> out;
      out.reserve(std::size_t{1} << k);
      for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        std::vector<Formula> a, b;
        for (std::size_t i = 0; i < k; ++i) {
          if (mask >> i & 1) a.push_back(f_not(sub[i].first));
          else b.push_back(f_not(sub[i].second));
        }
        out.emplace_back(f_and(std::move(a)), f_and(std::move(b)));
      }
      return out;
    }
    default: throw Error(ErrorKind::unsupported_spec, "unexpected node in pair construction");
  }
}

}  // namespace fv_detail

inline std::optional<BigInt> fv_count(const Formula& f, const FvOptions& o = {}) { return fv_detail::count(f, o); }

// Pairs (φi°, φiv) with G |= φ(g) iff some i has G° |= φi°(g_o), H |= φiv(g_v)
// for G = G° ⊛ H. Beyond the cap only the count is returned.
inline FvPairs fv_decompose(const Formula& f, const FvOptions& o = FvOptions::from_env()) {
  FvPairs r;
  auto n = fv_count(f, o);
  if (!n) {
    r.count_overflow = true;
    r.warnings.push_back("pair count is astronomically large; pairs not materialized");
    std::cerr << "warning: " << r.warnings.back() << "\n";
    return r;
  }
  r.n = *n;
  if (r.n > o.cap) {
    r.warnings.push_back("pair count " + r.n.str() + " exceeds cap " + std::to_string(o.cap) +
                         "; pairs not materialized");
    std::cerr << "warning: " << r.warnings.back() << "\n";
    return r;
  }
  r.pairs = fv_detail::build(f, o);
  r.materialized = true;
  if (o.dedup) {
    std::set<std::string> seen;
    std::vector<FvPair> kept;
    for (auto& p : r.pairs)
      if (seen.insert(to_string(p.first) + "\x1f" + to_string(p.second)).second) kept.push_back(std::move(p));
    r.pairs = std::move(kept);
  }
  return r;
}

}  // namespace qoag
