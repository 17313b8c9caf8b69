#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qoag/formula.hpp"
#include "qoag/qo.hpp"
#include "qoag/window.hpp"

namespace qoag {

enum class Truth3 { False, True, Unknown };

inline const char* truth_name(Truth3 t) {
  switch (t) {
    case Truth3::False: return "False";
    case Truth3::True: return "True";
    case Truth3::Unknown: return "Unknown";
  }
  return "?";
}
inline Truth3 truth_of(bool b) { return b ? Truth3::True : Truth3::False; }
inline Truth3 t_not(Truth3 t) {
  return t == Truth3::True ? Truth3::False : t == Truth3::False ? Truth3::True : Truth3::Unknown;
}

using Assignment = std::map<std::string, Element>;

struct EvalOptions {
  // Quantifiers whose body pins the variable by an equation a*x + t = 0
  // (a conjunct under EX, a negated disjunct under ALL) range over the exact
  // solution set instead of the window.
  bool solve_equations = false;
};

// Evaluates formulas over one GroupSpec. Quantifiers range over the whole
// group when it is finite and over the window otherwise.
class Evaluator {
 public:
  Evaluator(const GroupSpec& G, const Window& w, EvalOptions opt = {})
      : G_(G), g_(G.group()), opt_(opt), domain_(enumerate(G.group(), w)), exhaustive_(G.group().is_finite()) {}

  Truth3 operator()(const Formula& f, const Assignment& a = {}) {
    Compiled c = compile(f, a);
    return run(c, c.root);
  }

  const std::vector<Element>& domain() const { return domain_; }
  bool exhaustive() const { return exhaustive_; }

 private:
  struct Lin {
    std::vector<std::pair<int, long long>> t;  // (slot, coefficient)
  };
  struct CNode {
    Op op;
    Lin a, b;
    std::vector<int> kids;
    int slot = -1;
    // solve_equations: index of the pinning equation among kids (or -2 for
    // the body itself), and the slot coefficient.
    int pin = -1;
  };
  struct Compiled {
    std::vector<CNode> nodes;
    std::vector<Element> env;
    int root = 0;
  };

  const GroupSpec& G_;
  const Group& g_;
  EvalOptions opt_;
  std::vector<Element> domain_;
  bool exhaustive_;

  Compiled compile(const Formula& f, const Assignment& a) {
    Compiled c;
    std::map<std::string, std::vector<int>> scope;
    for (const auto& [v, e] : a) {
      if (e.size() != g_.dimension())
        throw Error(ErrorKind::coordinate_mismatch, "value of " + v + " does not belong to " + g_.str());
      scope[v].push_back(static_cast<int>(c.env.size()));
      c.env.push_back(g_.make(e));
    }
    c.root = build(f, c, scope);
    return c;
  }

  Lin lin(const Term& t, std::map<std::string, std::vector<int>>& scope) {
    Lin l;
    for (const auto& [v, k] : t.coefficients()) {
      auto it = scope.find(v);
      if (it == scope.end() || it->second.empty())
        throw Error(ErrorKind::unbound_variable, "variable " + v + " has no value");
      l.t.emplace_back(it->second.back(), k);
    }
    return l;
  }

  int build(const Formula& f, Compiled& c, std::map<std::string, std::vector<int>>& scope) {
    CNode n;
    n.op = f->op;
    switch (f->op) {
      case Op::Le:
        n.a = lin(f->a, scope);
        n.b = lin(f->b, scope);
        break;
      case Op::Eq0: n.a = lin(f->a, scope); break;
      case Op::Exists:
      case Op::ForAll: {
        n.slot = static_cast<int>(c.env.size());
        c.env.push_back(g_.zero());
        scope[f->var].push_back(n.slot);
        n.kids.push_back(build(f->kids[0], c, scope));
        scope[f->var].pop_back();
        if (opt_.solve_equations) n.pin = find_pin(c, n);
        break;
      }
      default:
        for (const auto& k : f->kids) n.kids.push_back(build(k, c, scope));
    }
    c.nodes.push_back(std::move(n));
    return static_cast<int>(c.nodes.size()) - 1;
  }

  static long long slot_coef(const Lin& l, int slot) {
    for (const auto& [s, k] : l.t)
      if (s == slot) return k;
    return 0;
  }

  // An equation in the bound slot: for EX, the body itself or one of its
  // conjuncts; for ALL, a negated equation as the body's disjunct.
  int find_pin(const Compiled& c, const CNode& q) {
    const CNode& body = c.nodes[q.kids[0]];
    auto eq_node = [&](int idx) -> bool {
      const CNode& e = c.nodes[idx];
      if (q.op == Op::Exists) return e.op == Op::Eq0 && slot_coef(e.a, q.slot) != 0;
      if (e.op != Op::Not) return false;
      const CNode& in = c.nodes[e.kids[0]];
      return in.op == Op::Eq0 && slot_coef(in.a, q.slot) != 0;
    };
    if (eq_node(q.kids[0])) return -2;
    Op joint = q.op == Op::Exists ? Op::And : Op::Or;
    if (body.op == joint)
      for (std::size_t i = 0; i < body.kids.size(); ++i)
        if (eq_node(body.kids[i])) return static_cast<int>(i);
    return -1;
  }

  Element value(const Lin& l, const Compiled& c) const {
    Element r = g_.zero();
    for (const auto& [s, k] : l.t) r = g_.add(r, k == 1 ? c.env[s] : g_.scale(c.env[s], Scalar(k)));
    return r;
  }

  // All x with a*x = rhs, coordinate-wise.
  std::vector<Element> solve(long long a, const Element& rhs) const {
    std::vector<std::vector<Scalar>> per(g_.dimension());
    for (std::size_t i = 0; i < g_.dimension(); ++i) {
      const Factor& f = g_.factor(i);
      switch (f.kind) {
        case FactorKind::rational: per[i].push_back(rhs[i] / Scalar(a)); break;
        case FactorKind::integer: {
          Scalar x = rhs[i] / Scalar(a);
          if (x.is_integer()) per[i].push_back(x);
          break;
        }
        case FactorKind::cyclic:
          for (long long y = 0; y < f.order; ++y)
            if ((Scalar(a) * Scalar(y) - rhs[i]).mod(f.order).is_zero()) per[i].push_back(Scalar(y));
          break;
      }
      if (per[i].empty()) return {};
    }
    std::vector<Element> out{Element{}};
    for (const auto& vals : per) {
      std::vector<Element> next;
      for (const auto& e : out)
        for (const auto& v : vals) {
          Element x = e;
          x.push_back(v);
          next.push_back(std::move(x));
        }
      out = std::move(next);
    }
    return out;
  }

  Truth3 run(Compiled& c, int idx) {
    const CNode& n = c.nodes[idx];
    switch (n.op) {
      case Op::True: return Truth3::True;
      case Op::False: return Truth3::False;
      case Op::Le: return truth_of(G_.compare_unchecked(value(n.a, c), value(n.b, c)) != Cmp::above);
      case Op::Eq0: return truth_of(g_.is_zero(value(n.a, c)));
      case Op::Not: return t_not(run(c, n.kids[0]));
      case Op::And: {
        Truth3 r = Truth3::True;
        for (int k : n.kids) {
          Truth3 t = run(c, k);
          if (t == Truth3::False) return t;
          if (t == Truth3::Unknown) r = t;
        }
        return r;
      }
      case Op::Or: {
        Truth3 r = Truth3::False;
        for (int k : n.kids) {
          Truth3 t = run(c, k);
          if (t == Truth3::True) return t;
          if (t == Truth3::Unknown) r = t;
        }
        return r;
      }
      case Op::Exists:
      case Op::ForAll: {
        bool ex = n.op == Op::Exists;
        Truth3 hit = ex ? Truth3::True : Truth3::False;
        bool unknown = false;
        auto visit = [&](const Element& e) {
          c.env[n.slot] = e;
          Truth3 t = run(c, n.kids[0]);
          if (t == Truth3::Unknown) unknown = true;
          return t == hit;
        };
        if (n.pin != -1) {
          const CNode& body = c.nodes[n.kids[0]];
          int eqi = n.pin == -2 ? n.kids[0] : body.kids[static_cast<std::size_t>(n.pin)];
          const CNode& eq = ex ? c.nodes[eqi] : c.nodes[c.nodes[eqi].kids[0]];
          long long a = slot_coef(eq.a, n.slot);
          Lin rest;
          for (const auto& p : eq.a.t)
            if (p.first != n.slot) rest.t.push_back(p);
          Element rhs = g_.neg(value(rest, c));
          for (const auto& x : solve(a, rhs))
            if (visit(x)) return hit;
          return unknown ? Truth3::Unknown : t_not(hit);
        }
        for (const auto& e : domain_)
          if (visit(e)) return hit;
        if (unknown || !exhaustive_) return Truth3::Unknown;
        return t_not(hit);
      }
    }
    return Truth3::Unknown;
  }
};

inline Truth3 eval(const GroupSpec& G, const Formula& f, const Assignment& a, const Window& w, EvalOptions opt = {}) {
  return Evaluator(G, w, opt)(f, a);
}

}  // namespace qoag
