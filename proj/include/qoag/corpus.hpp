#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "qoag/product_eval.hpp"

namespace qoag {

// ---- random formulas --------------------------------------------------------

struct FormulaGen {
  int max_rank = 2;
  int free_vars = 3;        // x1..xk may occur free
  int max_depth = 3;        // connective depth
  long long max_coef = 2;
  bool order_only = false;  // no "in Go" / "~" shaped atoms (they are still order-expressible)
  std::string free_stem = "x";

  Formula operator()(std::mt19937_64& rng) const {
    std::vector<std::string> scope;
    for (int i = 1; i <= free_vars; ++i) scope.push_back(free_stem + std::to_string(i));
    int bound = 0;
    return gen(rng, max_depth, max_rank, scope, bound);
  }

 private:
  static long long pick(std::mt19937_64& rng, long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng);
  }

  Term term(std::mt19937_64& rng, const std::vector<std::string>& scope, bool nonzero) const {
    for (;;) {
      Term t;
      for (const auto& v : scope)
        if (pick(rng, 0, 2) > 0) t = t + Term::var(v, pick(rng, -max_coef, max_coef));
      if (!nonzero || !t.is_zero() || scope.empty()) return t;
    }
  }

  Formula atom(std::mt19937_64& rng, const std::vector<std::string>& scope) const {
    // Prefer the most recently bound variables so quantifiers are not vacuous.
    std::vector<std::string> sc = scope;
    if (sc.size() > 3) sc.erase(sc.begin(), sc.end() - 3);
    switch (pick(rng, 0, order_only ? 2 : 4)) {
      case 0: return f_eq0(term(rng, sc, true));
      case 1:
      case 2: return f_le(term(rng, sc, false), term(rng, sc, false));
      case 3: return f_equiv(term(rng, sc, true), term(rng, sc, false));
      default: return f_in_go(term(rng, sc, true));
    }
  }

  Formula gen(std::mt19937_64& rng, int depth, int rank, std::vector<std::string>& scope, int& bound) const {
    if (depth <= 0 || pick(rng, 0, 3) == 0) return atom(rng, scope);
    int choice = static_cast<int>(pick(rng, 0, rank > 0 ? 4 : 2));
    switch (choice) {
      case 0: return f_not(gen(rng, depth - 1, rank, scope, bound));
      case 1: return f_and({gen(rng, depth - 1, rank, scope, bound), gen(rng, depth - 1, rank, scope, bound)});
      case 2: return f_or({gen(rng, depth - 1, rank, scope, bound), gen(rng, depth - 1, rank, scope, bound)});
      default: {
        std::string v = "y" + std::to_string(++bound);
        scope.push_back(v);
        Formula body = gen(rng, depth - 1, rank - 1, scope, bound);
        scope.pop_back();
        return choice == 3 ? f_exists(v, body) : f_forall(v, body);
      }
    }
  }
};

// ---- sentence corpus -------------------------------------------------------

// Sentences of quantifier rank <= k: every quantifier prefix over y1..yj
// (j <= k) with a single literal matrix, plus a seeded sample of two-literal
// conjunctions and disjunctions. Atoms use coefficients in {-1,0,1} and the
// torsion probes n*y1 = 0 for n in {2,3,4,5}.
struct CorpusOptions {
  int rank = 2;
  std::size_t two_literal_sample = 200;
  std::uint64_t seed = 1;
};

inline std::vector<Formula> sentence_corpus(const CorpusOptions& o) {
  std::vector<Formula> out;
  std::mt19937_64 rng(o.seed);
  for (int j = 1; j <= o.rank; ++j) {
    std::vector<std::string> vars;
    for (int i = 1; i <= j; ++i) vars.push_back("y" + std::to_string(i));
    // terms with coefficients in {-1,0,1}, innermost variable present
    std::vector<Term> terms;
    std::size_t total = 1;
    for (int i = 0; i < j; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      Term t;
      std::size_t c = code;
      for (int i = 0; i < j; ++i, c /= 3) t = t + Term::var(vars[static_cast<std::size_t>(i)], static_cast<long long>(c % 3) - 1);
      terms.push_back(t);
    }
    std::vector<Formula> atoms;
    for (const auto& t : terms)
      if (!t.is_zero() && t.coefficients().begin()->second > 0) atoms.push_back(f_eq0(t));
    for (long long n = 2; n <= 5; ++n) atoms.push_back(f_eq0(Term::var(vars.back(), n)));
    for (const auto& a : terms)
      for (const auto& b : terms)
        if (a != b && (a.mentions(vars.back()) || b.mentions(vars.back()))) atoms.push_back(f_le(a, b));
    std::vector<Formula> lits;
    for (const auto& a : atoms) {
      lits.push_back(a);
      lits.push_back(f_not(a));
    }
    std::vector<Formula> matrices = lits;
    for (std::size_t s = 0; s < o.two_literal_sample; ++s) {
      const auto& a = lits[rng() % lits.size()];
      const auto& b = lits[rng() % lits.size()];
      matrices.push_back(rng() % 2 ? f_and({a, b}) : f_or({a, b}));
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << j); ++mask)
      for (const auto& m : matrices) {
        Formula f = m;
        for (int i = j - 1; i >= 0; --i)
          f = (mask >> i & 1) ? f_forall(vars[static_cast<std::size_t>(i)], f) : f_exists(vars[static_cast<std::size_t>(i)], f);
        out.push_back(f);
      }
  }
  return out;
}

// ---- deciding sentences -----------------------------------------------------

struct Decision {
  Truth3 verdict = Truth3::Unknown;
  std::string method;  // "exhaustive", "qe", "pairs+qe", "expansion+qe", "window"
};

// Decides a sentence: finite groups exhaustively; divisible ordered groups by
// quantifier elimination; divisible ordered part ⊛
// finite valued part exactly, through the pair decomposition when it is
// small and by expanding the valued coordinates otherwise; anything else on
// the window with equations solved exactly.
inline Decision decide_sentence(const GroupSpec& G, const Formula& s, const Window& w,
                                std::size_t pair_budget = 4096) {
  if (!free_vars(s).empty()) throw Error(ErrorKind::unbound_variable, "decide_sentence needs a sentence");
  if (G.group().is_finite()) return {Evaluator(G, w)(s), "exhaustive"};
  if (is_divisible_ordered(G)) return {Evaluator(G, Window{1})(qe_doag(s)), "qe"};
  if (is_exact_product(G)) {
    if (auto t = eval_pairs_product(G, s, {}, pair_budget)) return {*t, "pairs+qe"};
    return {eval_exact_product(G, s, {}), "expansion+qe"};
  }
  EvalOptions eo;
  eo.solve_equations = true;
  return {Evaluator(G, w, eo)(s), "window"};
}

struct EquivReport {
  int rank = 0;
  std::size_t sentences = 0;
  std::vector<std::string> distinguishing;  // sentence: verdict1 / verdict2
  std::vector<std::string> unknowns;        // at least one side Unknown
  std::string method1, method2;
  bool indistinguishable() const { return distinguishing.empty(); }
  std::string verdict() const {
    if (!distinguishing.empty()) return "distinguished";
    return "indistinguishable at rank " + std::to_string(rank) + " (corpus of " + std::to_string(sentences) +
           " sentences" + (unknowns.empty() ? "" : ", " + std::to_string(unknowns.size()) + " undecided") + ")";
  }
};

inline EquivReport equiv_rank_k(const GroupSpec& G1, const GroupSpec& G2, int k, const std::vector<Formula>& extra,
                                const Window& w, const CorpusOptions& co = {}) {
  CorpusOptions c = co;
  c.rank = k;
  std::vector<Formula> corpus = sentence_corpus(c);
  for (const auto& e : extra) {
    if (!free_vars(e).empty()) throw Error(ErrorKind::unbound_variable, "corpus sentence has free variables: " + to_string(e));
    corpus.push_back(e);
  }
  EquivReport r;
  r.rank = k;
  r.sentences = corpus.size();
  for (const auto& s : corpus) {
    Decision a = decide_sentence(G1, s, w), b = decide_sentence(G2, s, w);
    r.method1 = a.method;
    r.method2 = b.method;
    std::string line = to_string(s) + " : " + truth_name(a.verdict) + " / " + truth_name(b.verdict);
    if (a.verdict == Truth3::Unknown || b.verdict == Truth3::Unknown) r.unknowns.push_back(line);
    else if (a.verdict != b.verdict) r.distinguishing.push_back(line);
  }
  return r;
}

}  // namespace qoag
