#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "qoag/error.hpp"

namespace qoag {

inline long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::unsupported_spec, "term coefficient overflow");
  return r;
}
inline long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::unsupported_spec, "term coefficient overflow");
  return r;
}

// Integer linear combination of variables; zero coefficients are never stored.
class Term {
 public:
  Term() = default;
  static Term var(const std::string& v, long long c = 1) {
    Term t;
    if (c != 0) t.c_[v] = c;
    return t;
  }

  const std::map<std::string, long long>& coefficients() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  long long coef(const std::string& v) const {
    auto it = c_.find(v);
    return it == c_.end() ? 0 : it->second;
  }
  bool mentions(const std::string& v) const { return c_.count(v) > 0; }

  Term operator+(const Term& o) const {
    Term r = *this;
    for (const auto& [v, k] : o.c_) r.add(v, k);
    return r;
  }
  Term operator-() const { return scaled(-1); }
  Term operator-(const Term& o) const { return *this + (-o); }
  Term scaled(long long k) const {
    Term r;
    if (k == 0) return r;
    for (const auto& [v, c] : c_) r.c_[v] = checked_mul(c, k);
    return r;
  }
  // The term with v removed.
  Term without(const std::string& v) const {
    Term r = *this;
    r.c_.erase(v);
    return r;
  }
  // Replace variable v by the term s.
  Term substitute(const std::string& v, const Term& s) const {
    long long k = coef(v);
    if (k == 0) return *this;
    return without(v) + s.scaled(k);
  }
  Term renamed(const std::string& from, const std::string& to) const { return substitute(from, Term::var(to)); }

  bool operator==(const Term&) const = default;
  auto operator<=>(const Term&) const = default;

  std::string str() const {
    if (c_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [v, k] : c_) {
      long long a = k < 0 ? -k : k;
      if (first) s += k < 0 ? "-" : "";
      else s += k < 0 ? " - " : " + ";
      if (a != 1) s += std::to_string(a);
      s += v;
      first = false;
    }
    return s;
  }

 private:
  std::map<std::string, long long> c_;
  void add(const std::string& v, long long k) {
    long long n = checked_add(coef(v), k);
    if (n == 0) c_.erase(v);
    else c_[v] = n;
  }
};

enum class Op { True, False, Le, Eq0, Not, And, Or, Exists, ForAll };

struct Node;
using Formula = std::shared_ptr<const Node>;

// Le: a <~ b. Eq0: a = 0. And/Or are n-ary (n >= 2 from the parser).
struct Node {
  Op op;
  Term a, b;
  std::vector<Formula> kids;
  std::string var;
};

inline Formula mk(Node n) { return std::make_shared<const Node>(std::move(n)); }
inline Formula f_true() { return mk({Op::True, {}, {}, {}, {}}); }
inline Formula f_false() { return mk({Op::False, {}, {}, {}, {}}); }
inline Formula f_le(Term a, Term b) { return mk({Op::Le, std::move(a), std::move(b), {}, {}}); }
inline Formula f_eq0(Term a) { return mk({Op::Eq0, std::move(a), {}, {}, {}}); }
inline Formula f_not(Formula f) { return mk({Op::Not, {}, {}, {std::move(f)}, {}}); }
inline Formula f_and(std::vector<Formula> k) {
  if (k.size() == 1) return k[0];
  if (k.empty()) return f_true();
  return mk({Op::And, {}, {}, std::move(k), {}});
}
inline Formula f_or(std::vector<Formula> k) {
  if (k.size() == 1) return k[0];
  if (k.empty()) return f_false();
  return mk({Op::Or, {}, {}, std::move(k), {}});
}
inline Formula f_exists(std::string v, Formula body) { return mk({Op::Exists, {}, {}, {std::move(body)}, std::move(v)}); }
inline Formula f_forall(std::string v, Formula body) { return mk({Op::ForAll, {}, {}, {std::move(body)}, std::move(v)}); }

// Derived predicates.
inline Formula f_lt(Term a, Term b) { return f_not(f_le(std::move(b), std::move(a))); }  // a << b
inline Formula f_equiv(const Term& a, const Term& b) { return f_and({f_le(a, b), f_le(b, a)}); }
inline Formula f_eq(const Term& a, const Term& b) { return f_eq0(a - b); }
inline Formula f_in_go(const Term& t) { return f_or({f_eq0(t), f_not(f_equiv(-t, t))}); }

inline bool is_quantifier(Op op) { return op == Op::Exists || op == Op::ForAll; }
inline bool is_atom(Op op) { return op == Op::Le || op == Op::Eq0 || op == Op::True || op == Op::False; }

inline bool equal(const Formula& f, const Formula& g) {
  if (f == g) return true;
  if (f->op != g->op || f->a != g->a || f->b != g->b || f->var != g->var || f->kids.size() != g->kids.size())
    return false;
  for (std::size_t i = 0; i < f->kids.size(); ++i)
    if (!equal(f->kids[i], g->kids[i])) return false;
  return true;
}

// ---- printing -------------------------------------------------------------

namespace fmt_detail {
inline int prec(Op op) {
  switch (op) {
    case Op::Or: return 1;
    case Op::And: return 2;
    case Op::Not: return 3;
    case Op::Exists:
    case Op::ForAll: return 0;
    default: return 4;
  }
}
}  // namespace fmt_detail

inline std::string to_string(const Formula& f);

namespace fmt_detail {
inline std::string child(const Formula& k, int need) {
  std::string s = to_string(k);
  if (prec(k->op) < need || is_quantifier(k->op)) return "(" + s + ")";
  return s;
}
}  // namespace fmt_detail

inline std::string to_string(const Formula& f) {
  using namespace fmt_detail;
  switch (f->op) {
    case Op::True: return "true";
    case Op::False: return "false";
    case Op::Le: return f->a.str() + " <~ " + f->b.str();
    case Op::Eq0: return f->a.str() + " = 0";
    case Op::Not: {
      const auto& k = f->kids[0];
      if (k->op == Op::Not || k->op == Op::True || k->op == Op::False) return "!" + to_string(k);
      return "!(" + to_string(k) + ")";
    }
    case Op::And:
    case Op::Or: {
      std::string s;
      for (std::size_t i = 0; i < f->kids.size(); ++i) {
        if (i) s += f->op == Op::And ? " & " : " | ";
        s += child(f->kids[i], prec(f->op) + 1);
      }
      return s;
    }
    case Op::Exists: return "EX " + f->var + ". " + to_string(f->kids[0]);
    case Op::ForAll: return "ALL " + f->var + ". " + to_string(f->kids[0]);
  }
  return "?";
}

// ---- variables ------------------------------------------------------------

inline void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  auto term = [&](const Term& t) {
    for (const auto& [v, k] : t.coefficients())
      if (!bound.count(v)) out.insert(v);
  };
  switch (f->op) {
    case Op::Le: term(f->a); term(f->b); return;
    case Op::Eq0: term(f->a); return;
    case Op::Exists:
    case Op::ForAll: {
      bool was = bound.count(f->var) > 0;
      bound.insert(f->var);
      collect_free(f->kids[0], bound, out);
      if (!was) bound.erase(f->var);
      return;
    }
    default:
      for (const auto& k : f->kids) collect_free(k, bound, out);
  }
}

inline std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

inline void collect_all_vars(const Formula& f, std::set<std::string>& out) {
  for (const auto& [v, k] : f->a.coefficients()) out.insert(v);
  for (const auto& [v, k] : f->b.coefficients()) out.insert(v);
  if (is_quantifier(f->op)) out.insert(f->var);
  for (const auto& k : f->kids) collect_all_vars(k, out);
}

inline std::string fresh_var(const std::set<std::string>& used, const std::string& stem = "y") {
  for (int i = 1;; ++i) {
    std::string v = stem + std::to_string(i);
    if (!used.count(v)) return v;
  }
}

inline int quantifier_rank(const Formula& f) {
  int r = 0;
  for (const auto& k : f->kids) r = std::max(r, quantifier_rank(k));
  return r + (is_quantifier(f->op) ? 1 : 0);
}

inline std::size_t formula_size(const Formula& f) {
  std::size_t n = 1;
  for (const auto& k : f->kids) n += formula_size(k);
  return n;
}

// Capture-avoiding substitution of the free variable v by term s.
inline Formula substitute(const Formula& f, const std::string& v, const Term& s) {
  switch (f->op) {
    case Op::True:
    case Op::False: return f;
    case Op::Le: return f_le(f->a.substitute(v, s), f->b.substitute(v, s));
    case Op::Eq0: return f_eq0(f->a.substitute(v, s));
    case Op::Exists:
    case Op::ForAll: {
      if (f->var == v) return f;
      Formula body = f->kids[0];
      std::string bv = f->var;
      if (s.mentions(bv)) {
        std::set<std::string> used;
        collect_all_vars(f, used);
        for (const auto& [x, k] : s.coefficients()) used.insert(x);
        used.insert(v);
        std::string nb = fresh_var(used);
        body = substitute(body, bv, Term::var(nb));
        bv = nb;
      }
      Node n{f->op, {}, {}, {substitute(body, v, s)}, bv};
      return mk(std::move(n));
    }
    default: {
      std::vector<Formula> k;
      for (const auto& c : f->kids) k.push_back(substitute(c, v, s));
      return mk({f->op, {}, {}, std::move(k), {}});
    }
  }
}

inline Formula rename_free(const Formula& f, const std::string& from, const std::string& to) {
  return substitute(f, from, Term::var(to));
}

}  // namespace qoag
