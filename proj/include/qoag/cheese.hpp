#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qoag/corpus.hpp"
#include "qoag/crel.hpp"

namespace qoag {

// ---- subsets of an ordered group described by breakpoints -------------------

// points[0] < ... < points[n-1]; at[i] is membership of points[i]; gaps[i]
// is membership of the open stretch below points[i] (gaps[n] above the last).
struct IntervalSet {
  std::vector<Element> points;
  std::vector<bool> at;
  std::vector<bool> gaps{false};

  static IntervalSet all() { return {{}, {}, {true}}; }
  static IntervalSet none() { return {}; }

  bool is_all() const { return points.empty() && gaps[0]; }
  bool is_empty() const { return points.empty() && !gaps[0]; }

  bool contains(const GroupSpec& O, const Element& x) const {
    std::size_t lo = 0, hi = points.size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (O.less(points[mid], x)) lo = mid + 1;
      else hi = mid;
    }
    if (lo < points.size() && points[lo] == x) return at[lo];
    return gaps[lo];
  }

  // Drop breakpoints that change nothing.
  void canonicalize() {
    IntervalSet r;
    r.gaps.clear();
    r.gaps.push_back(gaps[0]);
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (at[i] == r.gaps.back() && at[i] == gaps[i + 1]) continue;
      r.points.push_back(points[i]);
      r.at.push_back(at[i]);
      r.gaps.push_back(gaps[i + 1]);
    }
    *this = std::move(r);
  }

  bool operator==(const IntervalSet&) const = default;

  std::string str() const {
    if (is_all()) return "(-inf, inf)";
    std::string s;
    bool open_run = gaps[0];
    std::string start = "(-inf";
    auto emit = [&](const std::string& end) {
      if (!s.empty()) s += " u ";
      s += start + ", " + end;
    };
    for (std::size_t i = 0; i < points.size(); ++i) {
      std::string p = to_string(points[i]);
      if (open_run) {
        if (!at[i]) {
          emit(p + ")");
          open_run = false;
        } else if (!gaps[i + 1]) {
          emit(p + "]");
          open_run = false;
        }
      } else {
        if (at[i] && !gaps[i + 1]) {
          if (!s.empty()) s += " u ";
          s += "{" + p + "}";
        } else if (at[i]) {
          start = "[" + p;
          open_run = true;
        } else if (gaps[i + 1]) {
          start = "(" + p;
          open_run = true;
        }
      }
    }
    if (open_run) emit("inf)");
    return s.empty() ? "{}" : s;
  }
};

template <class F>
IntervalSet combine(const GroupSpec& O, const IntervalSet& a, const IntervalSet& b, F op) {
  std::vector<Element> pts = a.points;
  pts.insert(pts.end(), b.points.begin(), b.points.end());
  std::sort(pts.begin(), pts.end(), [&](const Element& x, const Element& y) { return O.less(x, y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  // gap index of a set for the stretch just above p: number of its points <= p
  auto gap_above = [&](const IntervalSet& s, std::size_t& cursor, const Element& p) {
    while (cursor < s.points.size() && !O.less(p, s.points[cursor])) ++cursor;
    return s.gaps[cursor];
  };
  IntervalSet r;
  r.gaps.clear();
  r.gaps.push_back(op(a.gaps[0], b.gaps[0]));
  std::size_t ca = 0, cb = 0;
  for (const auto& p : pts) {
    r.points.push_back(p);
    r.at.push_back(op(a.contains(O, p), b.contains(O, p)));
    r.gaps.push_back(op(gap_above(a, ca, p), gap_above(b, cb, p)));
  }
  r.canonicalize();
  return r;
}

inline IntervalSet set_union(const GroupSpec& O, const IntervalSet& a, const IntervalSet& b) {
  return combine(O, a, b, [](bool x, bool y) { return x || y; });
}
inline IntervalSet set_intersection(const GroupSpec& O, const IntervalSet& a, const IntervalSet& b) {
  return combine(O, a, b, [](bool x, bool y) { return x && y; });
}
inline IntervalSet set_difference(const GroupSpec& O, const IntervalSet& a, const IntervalSet& b) {
  return combine(O, a, b, [](bool x, bool y) { return x && !y; });
}

// (-inf, p] or (-inf, p)
inline IntervalSet half_line(const Element& p, bool closed) { return {{p}, {closed}, {true, false}}; }

// A strictly positive element of a torsion-free ordered group.
inline Element positive_unit(const GroupSpec& O) {
  const Group& g = O.group();
  for (std::size_t i = 0; i < g.dimension(); ++i) {
    Element e = g.zero();
    e[i] = Scalar(1);
    if (O.less(g.zero(), e)) return e;
    if (O.less(e, g.zero())) return g.neg(e);
  }
  throw Error(ErrorKind::unsupported_spec, O.name() + " has no positive element");
}

// Solution set in a divisible ordered group O of a quantifier-free formula in
// x with the other variables fixed. Exact: the truth value can only change at
// roots of the atoms.
inline IntervalSet solve_qf(const GroupSpec& O, const Formula& qf, const std::string& x, const Assignment& params) {
  if (quantifier_rank(qf) > 0) throw Error(ErrorKind::not_order_fragment, "solve_qf needs a quantifier-free formula");
  const Group& g = O.group();
  std::vector<Element> roots;
  std::function<void(const Formula&)> collect = [&](const Formula& f) {
    auto root = [&](const Term& t) {
      long long a = t.coef(x);
      if (a == 0) return;
      Element rest = g.zero();
      Term others = t.without(x);
      for (const auto& [v, k] : others.coefficients()) {
        auto it = params.find(v);
        if (it == params.end()) throw Error(ErrorKind::unbound_variable, "variable " + v + " has no value");
        rest = g.add(rest, g.scale(it->second, Scalar(k)));
      }
      roots.push_back(g.scale(rest, Scalar(-1) / Scalar(a)));
    };
    if (f->op == Op::Le) root(f->b - f->a);
    else if (f->op == Op::Eq0) root(f->a);
    for (const auto& k : f->kids) collect(k);
  };
  collect(qf);
  std::sort(roots.begin(), roots.end(), [&](const Element& p, const Element& q) { return O.less(p, q); });
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  Evaluator ev(O, Window{1});
  auto truth = [&](const Element& v) {
    Assignment a = params;
    a[x] = v;
    return ev(qf, a) == Truth3::True;
  };
  IntervalSet r;
  r.gaps.clear();
  if (roots.empty()) {
    r.gaps.push_back(truth(g.zero()));
    return r;
  }
  Element unit = positive_unit(O);
  r.gaps.push_back(truth(g.sub(roots.front(), unit)));
  for (std::size_t i = 0; i < roots.size(); ++i) {
    r.points.push_back(roots[i]);
    r.at.push_back(truth(roots[i]));
    Element rep = i + 1 < roots.size() ? g.scale(g.add(roots[i], roots[i + 1]), Scalar(1) / Scalar(2))
                                       : g.add(roots[i], unit);
    r.gaps.push_back(truth(rep));
  }
  r.canonicalize();
  return r;
}

// ---- definable sets -------------------------------------------------------------

struct DefinableSet {
  std::string method;  // exhaustive | qe | pairs+qe | expansion+qe | window
  bool exact = false;
  SpecPtr G;
  std::optional<ProductView> view;
  std::set<Element> finite_members;            // finite G
  std::map<Element, IntervalSet> cosets;       // o ⊛ H: valued coordinates -> ordered solutions
  std::vector<Element> window;                 // windowed evaluation
  std::vector<Truth3> flags;
  std::size_t unknowns = 0;

  bool contains(const Element& g) const {
    if (G->group().is_finite()) return finite_members.count(g) > 0;
    auto it = cosets.find(view->v_of(g));
    return it != cosets.end() && it->second.contains(*view->ordered, view->o_of(g));
  }
};

struct DefinableOptions {
  std::size_t pair_budget = 4096;
  bool prefer_pairs = true;
};

namespace cheese_detail {

inline void check_free(const Formula& f, const std::string& x, const Assignment& params) {
  for (const auto& v : free_vars(f))
    if (v != x && !params.count(v)) throw Error(ErrorKind::unbound_variable, "variable " + v + " has no value");
}

inline void split_params(const ProductView& pv, const Assignment& params, Assignment& po, Assignment& ph) {
  for (const auto& [v, e] : params) {
    po[v] = pv.o_of(e);
    ph[v] = pv.v_of(e);
  }
}

}  // namespace cheese_detail

// {g : G |= f(g, params)} for the single free variable x.
inline DefinableSet definable_set(const SpecPtr& G, const Formula& f, const std::string& x, const Assignment& params,
                                  const Window& w, const DefinableOptions& opt = {}) {
  cheese_detail::check_free(f, x, params);
  DefinableSet d;
  d.G = G;
  for (const auto& [v, e] : params) G->group().validate(e);
  if (G->group().is_finite()) {
    d.method = "exhaustive";
    d.exact = true;
    Evaluator ev(*G, w);
    for (const auto& g : ev.domain()) {
      Assignment a = params;
      a[x] = g;
      if (ev(f, a) == Truth3::True) d.finite_members.insert(g);
    }
    return d;
  }
  d.view = product_view(G);
  if (d.view && is_divisible_ordered(*d.view->ordered) && d.view->valued->group().is_finite()) {
    const ProductView& pv = *d.view;
    const GroupSpec& O = *pv.ordered;
    const GroupSpec& H = *pv.valued;
    Assignment po, ph;
    cheese_detail::split_params(pv, params, po, ph);
    auto hs = enumerate(H.group(), Window{1});
    d.exact = true;
    FvOptions fo;
    fo.strip_double_negation = true;
    fo.dedup = true;
    auto n = pv.trivial_valued() ? std::nullopt : fv_count(f, fo);
    if (pv.trivial_valued()) {
      d.method = "qe";
      d.cosets[Element{}] = solve_qf(O, qe_doag(f), x, po);
    } else if (opt.prefer_pairs && n && *n <= opt.pair_budget) {
      // Per pair: valued side exhaustively, ordered side by elimination.
      d.method = "pairs+qe";
      Evaluator ev(H, Window{1});
      for (const auto& h : hs) d.cosets[h] = IntervalSet::none();
      for (const auto& [fo_i, fv_i] : fv_decompose(f, fo).pairs) {
        std::vector<Element> S;
        for (const auto& h : hs) {
          Assignment a = ph;
          a[x] = h;
          if (ev(fv_i, a) == Truth3::True) S.push_back(h);
        }
        if (S.empty()) continue;
        IntervalSet I = solve_qf(O, qe_doag(fo_i), x, po);
        for (const auto& h : S) d.cosets[h] = set_union(O, d.cosets[h], I);
      }
    } else {
      d.method = "expansion+qe";
      for (const auto& h : hs) {
        std::map<std::string, Element> env(ph.begin(), ph.end());
        env[x] = h;
        d.cosets[h] = solve_qf(O, qe_doag(expand_valued(H, f, env)), x, po);
      }
    }
    return d;
  }
  d.method = "window";
  EvalOptions eo;
  eo.solve_equations = true;
  Evaluator ev(*G, w, eo);
  for (const auto& g : ev.domain()) {
    Assignment a = params;
    a[x] = g;
    Truth3 t = ev(f, a);
    d.window.push_back(g);
    d.flags.push_back(t);
    d.unknowns += t == Truth3::Unknown;
  }
  return d;
}

// ---- swiss cheese normal form ------------------------------------------------------

struct CheeseResult {
  std::vector<SwissCheese> cheeses;
  std::optional<std::string> not_representable;
  bool verified = false;   // disjointness and union re-checked
  std::string check;       // how
  bool representable() const { return !not_representable.has_value(); }
};

namespace cheese_detail {

// All balls of a finite compatible group, one per distinct member set.
inline std::vector<std::pair<Ball, std::set<Element>>> finite_balls(const GroupSpec& G) {
  auto dom = enumerate(G.group(), Window{1});
  std::vector<std::pair<Ball, std::set<Element>>> out;
  std::set<std::set<Element>> seen;
  for (const auto& a : dom)
    for (const auto& b : dom)
      for (BallKind k : {BallKind::closed, BallKind::open}) {
        Ball ball{k, a, b};
        std::set<Element> m;
        for (const auto& g : dom)
          if (ball.contains(G, g)) m.insert(g);
        if (!m.empty() && seen.insert(m).second) out.emplace_back(ball, std::move(m));
      }
  return out;
}

// Greedy: the ball covering most of what remains (fewest extras, then the
// enumeration order) becomes the outer ball; the extras are carved out by the
// largest balls inside it avoiding the kept part.
inline std::vector<SwissCheese> finite_cover(const GroupSpec& G, const std::set<Element>& s) {
  auto balls = finite_balls(G);
  std::set<Element> remaining = s;
  std::vector<SwissCheese> out;
  while (!remaining.empty()) {
    std::size_t best = 0;
    long long best_in = -1, best_out = 0;
    for (std::size_t i = 0; i < balls.size(); ++i) {
      long long in = 0, extra = 0;
      for (const auto& g : balls[i].second) (remaining.count(g) ? in : extra)++;
      if (in > best_in || (in == best_in && extra < best_out)) {
        best = i;
        best_in = in;
        best_out = extra;
      }
    }
    const auto& [outer, members] = balls[best];
    std::set<Element> keep, carve;
    for (const auto& g : members) (remaining.count(g) ? keep : carve).insert(g);
    SwissCheese c{outer, {}};
    while (!carve.empty()) {
      std::size_t pick = balls.size();
      std::size_t pick_n = 0;
      for (std::size_t i = 0; i < balls.size(); ++i) {
        const auto& m = balls[i].second;
        bool inside = true, touches_keep = false;
        std::size_t n = 0;
        for (const auto& g : m) {
          if (!members.count(g)) inside = false;
          if (keep.count(g)) touches_keep = true;
          n += carve.count(g);
        }
        if (inside && !touches_keep && n > pick_n) {
          pick = i;
          pick_n = n;
        }
      }
      if (pick == balls.size()) throw Error(ErrorKind::not_representable, "no ball carves " + to_string(*carve.begin()));
      c.holes.push_back(balls[pick].first);
      for (const auto& g : balls[pick].second) carve.erase(g);
    }
    out.push_back(std::move(c));
    for (const auto& g : keep) remaining.erase(g);
  }
  return out;
}

// Exact per-coset description of a ball of o ⊛ H.
inline std::map<Element, IntervalSet> ball_cosets(const ProductView& pv, const Ball& b) {
  const GroupSpec& H = *pv.valued;
  std::map<Element, IntervalSet> out;
  auto hs = enumerate(H.group(), Window{1});
  if (b.kind == BallKind::whole) {
    for (const auto& h : hs) out[h] = IntervalSet::all();
    return out;
  }
  Element av = pv.v_of(b.center), bv = pv.v_of(b.radius);
  if (!H.group().is_zero(bv)) {
    for (const auto& h : hs) {
      Element d = H.group().sub(h, av);
      if (b.kind == BallKind::closed ? H.leq(d, bv) : H.less(d, bv)) out[h] = IntervalSet::all();
    }
    return out;
  }
  const Group& og = pv.ordered->group();
  out[av] = half_line(og.add(pv.o_of(b.center), pv.o_of(b.radius)), b.kind == BallKind::closed);
  return out;
}

inline std::map<Element, IntervalSet> cheese_cosets(const ProductView& pv, const SwissCheese& c) {
  const GroupSpec& O = *pv.ordered;
  auto out = ball_cosets(pv, c.outer);
  for (const auto& h : c.holes)
    for (const auto& [k, I] : ball_cosets(pv, h)) {
      auto it = out.find(k);
      if (it != out.end()) it->second = set_difference(O, it->second, I);
    }
  return out;
}

struct Piece {
  bool lo_inf = true, lo_closed = false, hi_inf = true, hi_closed = false;
  Element lo, hi;
};

inline std::vector<Piece> pieces(const IntervalSet& s) {
  std::vector<Piece> out;
  std::optional<Piece> cur;
  if (s.gaps[0]) cur = Piece{};
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const Element& p = s.points[i];
    bool here = s.at[i], above = s.gaps[i + 1];
    if (cur) {
      if (!here || !above) {
        cur->hi_inf = false;
        cur->hi = p;
        cur->hi_closed = here;
        out.push_back(*cur);
        cur.reset();
        if (above) {  // (.., p) (p, ..)
          Piece q;
          q.lo_inf = false;
          q.lo = p;
          cur = q;
        }
      }
    } else if (here || above) {
      Piece q;
      q.lo_inf = false;
      q.lo = p;
      q.lo_closed = here;
      if (!above) {
        q.hi_inf = false;
        q.hi = p;
        q.hi_closed = true;
        out.push_back(q);
      } else {
        cur = q;
      }
    }
  }
  if (cur) out.push_back(*cur);
  return out;
}

}  // namespace cheese_detail

// Cheese cover of a subset of o ⊛ H given per coset. Whole cosets are
// grouped through a cover of H by H-balls lifted to o ⊛ H; every other
// interval becomes one cheese in its coset.
inline std::vector<SwissCheese> product_cover(const ProductView& pv, const std::map<Element, IntervalSet>& cosets) {
  const GroupSpec& H = *pv.valued;
  std::vector<SwissCheese> out;
  std::set<Element> full;
  for (const auto& [h, I] : cosets)
    if (I.is_all()) full.insert(h);
  std::optional<Element> m;
  if (!pv.trivial_valued()) m = valued_minimum(H);
  if (!full.empty()) {
    if (pv.trivial_valued()) {
      out.push_back({{BallKind::whole, {}, {}}, {}});
    } else {
      SpecPtr Gp = make_product_spec(pv.ordered, pv.valued);
      for (const auto& hc : cheese_detail::finite_cover(H, full)) {
        auto lift = [&](const Ball& b) {
          auto l = lift_ball_formula(Gp, bc_ball(b));
          return l->ball;  // H-balls in a cover are nonempty, so the lift is a ball
        };
        SwissCheese c{lift(hc.outer), {}};
        for (const auto& hole : hc.holes) c.holes.push_back(lift(hole));
        out.push_back(std::move(c));
      }
    }
  }
  for (const auto& [h, I] : cosets) {
    if (I.is_all() || I.is_empty()) continue;
    Element base = pv.embed_v(h);
    auto half = [&](const Element& p, bool closed) { return Ball{closed ? BallKind::closed : BallKind::open, base, pv.embed_o(p)}; };
    Ball coset = pv.trivial_valued() ? Ball{BallKind::whole, {}, {}} : Ball{BallKind::open, base, pv.embed_v(*m)};
    for (const auto& p : cheese_detail::pieces(I)) {
      SwissCheese c;
      c.outer = p.hi_inf ? coset : half(p.hi, p.hi_closed);
      if (!p.lo_inf) c.holes.push_back(half(p.lo, !p.lo_closed));
      out.push_back(std::move(c));
    }
  }
  return out;
}

// Re-checks a cover: pairwise disjoint and union equal to the set, coset by
// coset and exactly.
inline std::optional<std::string> verify_product_cover(const ProductView& pv, const std::map<Element, IntervalSet>& want,
                                                       const std::vector<SwissCheese>& cover) {
  const GroupSpec& O = *pv.ordered;
  std::map<Element, IntervalSet> got;
  for (const auto& h : enumerate(pv.valued->group(), Window{1})) got[h] = IntervalSet::none();
  for (std::size_t i = 0; i < cover.size(); ++i)
    for (const auto& [h, I] : cheese_detail::cheese_cosets(pv, cover[i])) {
      if (!set_intersection(O, got[h], I).is_empty())
        return "cheese " + std::to_string(i) + " overlaps an earlier one in coset " + to_string(h);
      got[h] = set_union(O, got[h], I);
    }
  for (const auto& [h, I] : got) {
    auto it = want.find(h);
    IntervalSet w = it == want.end() ? IntervalSet::none() : it->second;
    if (!(w == I)) return "coset " + to_string(h) + ": cover gives " + I.str() + ", set is " + w.str();
  }
  return std::nullopt;
}

struct CheeseOptions {
  // Windowed mode: the cover learned on the window must reproduce the
  // formula's verdicts on this larger window.
  long long validation_bound = 0;  // 0 = 2N + 2
};

// Swiss cheese cover of a definable set. Exact sets are re-checked exactly;
// windowed sets on o ⊛ H are covered from the window and validated on a
// larger one, NotRepresentable when the validation fails.
inline CheeseResult cheese_normal_form(const DefinableSet& d, const Formula& f, const std::string& x,
                                       const Assignment& params, const Window& w, const CheeseOptions& co = {}) {
  CheeseResult r;
  const GroupSpec& G = *d.G;
  if (G.group().is_finite()) {
    r.cheeses = cheese_detail::finite_cover(G, d.finite_members);
    std::set<Element> seen;
    for (const auto& g : enumerate(G.group(), Window{1})) {
      int hits = 0;
      for (const auto& c : r.cheeses) hits += c.contains(G, g);
      bool in = d.finite_members.count(g) > 0;
      if (hits > 1 || (hits == 1) != in) {
        r.not_representable = "cover fails at " + to_string(g);
        return r;
      }
    }
    r.verified = true;
    r.check = "exhaustive membership";
    return r;
  }
  if (d.exact) {
    r.cheeses = product_cover(*d.view, d.cosets);
    if (auto e = verify_product_cover(*d.view, d.cosets, r.cheeses)) {
      r.not_representable = *e;
      return r;
    }
    // and by direct membership on the window
    for (const auto& g : enumerate(G.group(), w)) {
      int hits = 0;
      for (const auto& c : r.cheeses) hits += c.contains(G, g);
      if (hits > 1 || (hits == 1) != d.contains(g)) {
        r.not_representable = "membership re-check fails at " + to_string(g);
        return r;
      }
    }
    r.verified = true;
    r.check = "exact per coset, membership on " + coverage_label(G.group(), w);
    return r;
  }
  // windowed
  if (d.unknowns > 0) {
    r.not_representable = std::to_string(d.unknowns) + " window elements undecided";
    return r;
  }
  if (!d.view || !d.view->valued->group().is_finite()) {
    r.not_representable = "no cover construction for " + G.kind_name() + " outside finite or o ⊛ finite form";
    return r;
  }
  const ProductView& pv = *d.view;
  const GroupSpec& O = *pv.ordered;
  // Per coset: window points in order; between neighbours the set is taken
  // to continue only when both are in; beyond the ends it continues.
  std::map<Element, std::vector<std::pair<Element, bool>>> samples;
  for (std::size_t i = 0; i < d.window.size(); ++i)
    samples[pv.v_of(d.window[i])].emplace_back(pv.o_of(d.window[i]), d.flags[i] == Truth3::True);
  std::map<Element, IntervalSet> cosets;
  for (auto& [h, s] : samples) {
    std::sort(s.begin(), s.end(), [&](const auto& a, const auto& b) { return O.less(a.first, b.first); });
    IntervalSet I;
    I.gaps.clear();
    I.gaps.push_back(s.front().second);
    for (std::size_t i = 0; i < s.size(); ++i) {
      I.points.push_back(s[i].first);
      I.at.push_back(s[i].second);
      I.gaps.push_back(i + 1 < s.size() ? (s[i].second && s[i + 1].second) : s[i].second);
    }
    I.canonicalize();
    cosets[h] = I;
  }
  r.cheeses = product_cover(pv, cosets);
  Window big{co.validation_bound ? co.validation_bound : 2 * w.bound + 2, w.max_denominator};
  EvalOptions eo;
  eo.solve_equations = true;
  Evaluator ev(G, big, eo);
  for (const auto& g : ev.domain()) {
    Assignment a = params;
    a[x] = g;
    Truth3 t = ev(f, a);
    if (t == Truth3::Unknown) continue;
    int hits = 0;
    for (const auto& c : r.cheeses) hits += c.contains(G, g);
    if (hits > 1 || (hits == 1) != (t == Truth3::True)) {
      r.not_representable = "cover built on " + coverage_label(G.group(), w) + " is wrong at " + to_string(g) +
                            " (" + coverage_label(G.group(), big) + ")";
      return r;
    }
  }
  r.verified = true;
  r.check = "window-validated on " + coverage_label(G.group(), big);
  return r;
}

// ---- minimality probe ---------------------------------------------------------------

struct ProbeItem {
  std::string formula;
  std::string method;
  bool exact = false;
  std::size_t cheeses = 0;
  std::optional<std::string> failure;
};

struct ProbeReport {
  std::vector<ProbeItem> items;
  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& i : items) n += i.failure.has_value();
    return n;
  }
};

inline ProbeReport cminimality_probe(const SpecPtr& G, const std::vector<Formula>& corpus, const std::string& x,
                                     const Assignment& params, const Window& w) {
  ProbeReport rep;
  for (const auto& f : corpus) {
    ProbeItem it;
    it.formula = to_string(f);
    try {
      DefinableSet d = definable_set(G, f, x, params, w);
      it.method = d.method;
      it.exact = d.exact;
      CheeseResult c = cheese_normal_form(d, f, x, params, w);
      it.cheeses = c.cheeses.size();
      if (!d.exact) it.failure = "definable set not exact (" + d.method + ")";
      if (c.not_representable) it.failure = "NotRepresentable: " + *c.not_representable;
    } catch (const Error& e) {
      it.failure = e.what();
    }
    rep.items.push_back(std::move(it));
  }
  return rep;
}

}  // namespace qoag
