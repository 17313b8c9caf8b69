#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qoag/axioms.hpp"
#include "qoag/qo.hpp"
#include "qoag/window.hpp"

namespace qoag {

// ---- C-relations ------------------------------------------------------------

using LeqFn = std::function<bool(const Element&, const Element&)>;
using CFn = std::function<bool(const Element&, const Element&, const Element&)>;

struct CRelation {
  Group group;
  CFn c;
  std::string name;
  SpecPtr source;  // the q.o it was induced from, if any

  bool operator()(const Element& x, const Element& y, const Element& z) const { return c(x, y, z); }
};

// (x != y = z) or (x-z in Gv and y-z < x-z) or (y-z, x-z in Go and 0 < x-y and 0 < x-z)
inline CFn induced_c_fn(const Group& g, LeqFn leq) {
  return [g, leq](const Element& x, const Element& y, const Element& z) {
    auto lt = [&](const Element& a, const Element& b) { return leq(a, b) && !leq(b, a); };
    auto in_v = [&](const Element& a) {
      if (g.is_zero(a)) return false;
      Element n = g.neg(a);
      return leq(a, n) && leq(n, a);
    };
    if (x != y && y == z) return true;
    Element xz = g.sub(x, z), yz = g.sub(y, z);
    bool xz_v = in_v(xz);
    if (xz_v) return lt(yz, xz);
    if (in_v(yz)) return false;
    Element zero = g.zero();
    return lt(zero, g.sub(x, y)) && lt(zero, xz);
  };
}

inline CRelation induce_c(const SpecPtr& G) {
  const GroupSpec* p = G.get();
  return {G->group(), induced_c_fn(G->group(), [p](const Element& a, const Element& b) { return p->leq(a, b); }),
          "C(" + G->name() + ")", G};
}

struct CAxiomOptions {
  // Two-sided compatibility v+x+u is checked exhaustively while |w|^5 stays
  // under this; otherwise on a seeded sample of this many quintuples.
  std::size_t quintuple_budget = 1'000'000;
  std::uint64_t seed = 1;
};

// (C1)-(C4) exhaustively over window triples and quadruples, translation
// compatibility over all window translates, and the two-sided form.
inline Verdict check_c_axioms(const CRelation& cv, const Window& w, const CAxiomOptions& o = {}) {
  const Group& g = cv.group;
  std::vector<Element> dom = enumerate(g, w);
  const std::size_t n = dom.size();
  Verdict out;
  out.coverage = g.is_finite() ? "exhaustive" : coverage_label(g, w);
  ElementMap<std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[dom[i]] = i;
  std::vector<char> t(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) t[(i * n + j) * n + k] = cv(dom[i], dom[j], dom[k]);
  auto C = [&](std::size_t i, std::size_t j, std::size_t k) { return t[(i * n + j) * n + k] != 0; };
  auto fail = [&](const char* axiom, std::vector<Element> wit) {
    out.violation = ViolationReport{axiom, wit, std::string(axiom) + " fails at " + render_tuple(wit)};
    return out;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && !C(i, j, j)) return fail("C4", {dom[i], dom[j]});
      for (std::size_t k = 0; k < n; ++k) {
        if (!C(i, j, k)) continue;
        if (!C(i, k, j)) return fail("C1", {dom[i], dom[j], dom[k]});
        if (C(j, i, k)) return fail("C2", {dom[i], dom[j], dom[k]});
        for (std::size_t l = 0; l < n; ++l)
          if (!C(l, j, k) && !C(i, l, k)) return fail("C3", {dom[i], dom[j], dom[k], dom[l]});
      }
    }
  // Translation by every window element; translates leaving the window are
  // evaluated directly.
  auto C_any = [&](const Element& a, const Element& b, const Element& c) {
    auto ia = index.find(a), ib = index.find(b), ic = index.find(c);
    if (ia != index.end() && ib != index.end() && ic != index.end()) return C(ia->second, ib->second, ic->second);
    return cv(a, b, c);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (!C(i, j, k)) continue;
        for (const auto& s : dom)
          if (!C_any(g.add(dom[i], s), g.add(dom[j], s), g.add(dom[k], s)))
            return fail("compatibility", {dom[i], dom[j], dom[k], s});
      }
  // Two-sided form v + x + u, literally.
  auto two_sided = [&](std::size_t i, std::size_t j, std::size_t k, const Element& u, const Element& v) {
    return C_any(g.add(g.add(v, dom[i]), u), g.add(g.add(v, dom[j]), u), g.add(g.add(v, dom[k]), u));
  };
  double five = 1;
  for (int e = 0; e < 5; ++e) five *= static_cast<double>(n);
  if (five <= static_cast<double>(o.quintuple_budget)) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          if (!C(i, j, k)) continue;
          for (const auto& u : dom)
            for (const auto& v : dom)
              if (!two_sided(i, j, k, u, v)) return fail("compatibility", {dom[i], dom[j], dom[k], u, v});
        }
  } else if (n > 0) {
    std::mt19937_64 rng(o.seed);
    for (std::size_t s = 0; s < o.quintuple_budget / 10; ++s) {
      std::size_t i = rng() % n, j = rng() % n, k = rng() % n;
      if (!C(i, j, k)) continue;
      const Element& u = dom[rng() % n];
      const Element& v = dom[rng() % n];
      if (!two_sided(i, j, k, u, v)) return fail("compatibility", {dom[i], dom[j], dom[k], u, v});
    }
    out.coverage += "; two-sided compatibility sampled";
  }
  return out;
}

// ---- recovering the quasi-order ---------------------------------------------

struct RecoveredQo {
  CRelation cv;

  // G- = {x : C(-x, x, 0)}, G+ its complement.
  bool negative(const Element& x) const { return cv(cv.group.neg(x), x, cv.group.zero()); }
  // x <~ y iff not phi(y, x).
  bool leq(const Element& x, const Element& y) const {
    const Group& g = cv.group;
    Element zero = g.zero();
    bool yn = negative(y), xn = negative(x);
    bool phi = (yn && !xn) || (!yn && !xn && cv(x, y, zero)) || (yn && xn && cv(g.neg(y), g.neg(x), zero));
    return !phi;
  }
  LeqFn fn() const {
    auto self = *this;
    return [self](const Element& a, const Element& b) { return self.leq(a, b); };
  }
};

inline RecoveredQo recover_qo(const CRelation& cv) { return {cv}; }

// First window pair where the recovered relation and G's q.o differ.
inline std::optional<std::string> recovery_disagreement(const GroupSpec& G, const RecoveredQo& r, const Window& w) {
  auto dom = enumerate(G.group(), w);
  for (const auto& a : dom)
    for (const auto& b : dom)
      if (G.leq(a, b) != r.leq(a, b))
        return "at " + render_tuple({a, b}) + ": original " + (G.leq(a, b) ? "<~" : "not <~") + ", recovered " +
               (r.leq(a, b) ? "<~" : "not <~");
  return std::nullopt;
}

// What goes wrong when a C-relation is not induced by a compatible q.o: the
// recovered relation may fail to be a total preorder, may fail (Q1)/(Q2), or
// may induce a different C-relation.
struct RecoveryDiagnosis {
  std::optional<std::string> not_total, not_transitive, not_compatible, does_not_reproduce;
  bool induced() const { return !not_total && !not_transitive && !not_compatible && !does_not_reproduce; }
};

inline RecoveryDiagnosis diagnose_recovery(const CRelation& cv, const Window& w) {
  RecoveredQo r = recover_qo(cv);
  const Group& g = cv.group;
  auto dom = enumerate(g, w);
  RecoveryDiagnosis d;
  for (const auto& a : dom)
    for (const auto& b : dom) {
      if (!d.not_total && !r.leq(a, b) && !r.leq(b, a)) d.not_total = render_tuple({a, b});
      for (const auto& c : dom)
        if (!d.not_transitive && r.leq(a, b) && r.leq(b, c) && !r.leq(a, c)) d.not_transitive = render_tuple({a, b, c});
    }
  for (const auto& x : dom) {
    if (!d.not_compatible && !g.is_zero(x) && r.leq(x, g.zero()) && r.leq(g.zero(), x))
      d.not_compatible = "(Q1) at " + render_tuple({x});
    for (const auto& y : dom)
      for (const auto& z : dom) {
        bool yz = r.leq(y, z) && r.leq(z, y);
        if (!d.not_compatible && r.leq(x, y) && !yz && !r.leq(g.add(x, z), g.add(y, z)))
          d.not_compatible = "(Q2) at " + render_tuple({x, y, z});
      }
  }
  CFn c2 = induced_c_fn(g, r.fn());
  for (const auto& x : dom)
    for (const auto& y : dom)
      for (const auto& z : dom)
        if (!d.does_not_reproduce && c2(x, y, z) != cv(x, y, z)) d.does_not_reproduce = render_tuple({x, y, z});
  return d;
}

// ---- balls and cones ------------------------------------------------------------

// open: {g : g - a < b}; closed: {g : g - a <~ b}; whole: the group itself
// (only used where no ball covers an unbounded piece).
enum class BallKind { open, closed, whole };

struct Ball {
  BallKind kind = BallKind::closed;
  Element center, radius;

  bool contains(const GroupSpec& G, const Element& g) const {
    if (kind == BallKind::whole) return true;
    Element d = G.group().sub(g, center);
    return kind == BallKind::closed ? G.leq(d, radius) : G.less(d, radius);
  }
  std::string str() const {
    if (kind == BallKind::whole) return "G";
    return std::string(kind == BallKind::closed ? "closed" : "open") + "(" + to_string(center) + ", " +
           to_string(radius) + ")";
  }
  bool operator==(const Ball&) const = default;
};

inline std::vector<Element> ball_members(const GroupSpec& G, const Ball& b, const Window& w) {
  std::vector<Element> out;
  for (const auto& g : enumerate(G.group(), w))
    if (b.contains(G, g)) out.push_back(g);
  return out;
}

inline std::vector<Element> cone_members(const CRelation& cv, const Element& a, const Element& b, const Window& w) {
  std::vector<Element> out;
  for (const auto& x : enumerate(cv.group, w))
    if (cv(a, x, b)) out.push_back(x);
  return out;
}

inline std::vector<Element> thick_cone_members(const CRelation& cv, const Element& a, const Element& b,
                                               const Window& w) {
  std::vector<Element> out;
  for (const auto& x : enumerate(cv.group, w))
    if (!cv(x, a, b)) out.push_back(x);
  return out;
}

// A cone or thick cone as a ball. Two degenerate shapes are not balls: the
// empty cone (a = b) and a singleton (cone with a < b inside Go, thick cone
// with a = b); both are swiss cheeses.
struct ConeShape {
  enum class Kind { ball, empty, singleton } kind = Kind::ball;
  Ball ball;
  Element point;

  bool contains(const GroupSpec& G, const Element& g) const {
    switch (kind) {
      case Kind::ball: return ball.contains(G, g);
      case Kind::empty: return false;
      case Kind::singleton: return g == point;
    }
    return false;
  }
};

// {x : C(a, x, b)}
inline ConeShape cone_shape(const GroupSpec& G, const Element& a, const Element& b) {
  const Group& g = G.group();
  Element d = g.sub(a, b);
  if (g.is_zero(d)) return {ConeShape::Kind::empty, {}, {}};
  if (G.classify(d) == Classification::vtype || G.less(g.zero(), d)) return {ConeShape::Kind::ball, {BallKind::open, b, d}, {}};
  return {ConeShape::Kind::singleton, {}, b};
}

// {x : not C(x, a, b)}
inline ConeShape thick_cone_shape(const GroupSpec& G, const Element& a, const Element& b) {
  const Group& g = G.group();
  Element d = g.sub(a, b);
  if (g.is_zero(d)) return {ConeShape::Kind::singleton, {}, a};
  if (G.classify(d) == Classification::vtype || G.less(g.zero(), d)) return {ConeShape::Kind::ball, {BallKind::closed, b, d}, {}};
  return {ConeShape::Kind::ball, {BallKind::closed, b, g.zero()}, {}};
}

// ---- swiss cheeses ---------------------------------------------------------------

struct SwissCheese {
  Ball outer;
  std::vector<Ball> holes;

  bool contains(const GroupSpec& G, const Element& g) const {
    if (!outer.contains(G, g)) return false;
    for (const auto& h : holes)
      if (h.contains(G, g)) return false;
    return true;
  }
  std::string str() const {
    std::string s = outer.str();
    for (const auto& h : holes) s += " \\ " + h.str();
    return s;
  }
};

// {a} = closed(a, 0) \ open(a, 0), by (Q1).
inline SwissCheese singleton_cheese(const Group& g, const Element& a) {
  return {{BallKind::closed, a, g.zero()}, {{BallKind::open, a, g.zero()}}};
}

// ---- boolean combinations of balls and their lift through o ⊛ H -----------------

struct BallCombo;
using BallComboPtr = std::shared_ptr<const BallCombo>;

struct BallCombo {
  enum class Op { ball, empty, negate, conj, disj } op = Op::ball;
  Ball ball;
  std::vector<BallComboPtr> kids;

  bool holds(const GroupSpec& G, const Element& g) const {
    switch (op) {
      case Op::ball: return ball.contains(G, g);
      case Op::empty: return false;
      case Op::negate: return !kids[0]->holds(G, g);
      case Op::conj:
        for (const auto& k : kids)
          if (!k->holds(G, g)) return false;
        return true;
      case Op::disj:
        for (const auto& k : kids)
          if (k->holds(G, g)) return true;
        return false;
    }
    return false;
  }

  std::string str() const {
    auto ball_str = [](const Ball& b) {
      std::string c = to_string(b.center), r = to_string(b.radius);
      return "x - " + c + (b.kind == BallKind::closed ? " <~ " : " << ") + r;
    };
    switch (op) {
      case Op::ball: return ball_str(ball);
      case Op::empty: return "x << 0 & 0 <~ x";
      case Op::negate: return "!(" + kids[0]->str() + ")";
      case Op::conj:
      case Op::disj: {
        std::string s;
        for (std::size_t i = 0; i < kids.size(); ++i) {
          if (i) s += op == Op::conj ? " & " : " | ";
          s += "(" + kids[i]->str() + ")";
        }
        return s;
      }
    }
    return {};
  }
};

inline BallComboPtr bc_ball(Ball b) { return std::make_shared<const BallCombo>(BallCombo{BallCombo::Op::ball, std::move(b), {}}); }
inline BallComboPtr bc_empty() { return std::make_shared<const BallCombo>(BallCombo{BallCombo::Op::empty, {}, {}}); }
inline BallComboPtr bc_not(BallComboPtr k) { return std::make_shared<const BallCombo>(BallCombo{BallCombo::Op::negate, {}, {std::move(k)}}); }
inline BallComboPtr bc_and(std::vector<BallComboPtr> k) { return std::make_shared<const BallCombo>(BallCombo{BallCombo::Op::conj, {}, std::move(k)}); }
inline BallComboPtr bc_or(std::vector<BallComboPtr> k) { return std::make_shared<const BallCombo>(BallCombo{BallCombo::Op::disj, {}, std::move(k)}); }

// The least class of H \ {0}; H must be finite and nontrivial.
inline Element valued_minimum(const GroupSpec& H) {
  if (!H.group().is_finite()) throw Error(ErrorKind::no_minimum, "cannot certify a minimum of an infinite " + H.name());
  std::optional<Element> m;
  for (const auto& h : enumerate(H.group(), Window{1})) {
    if (H.group().is_zero(h)) continue;
    if (!m || H.less(h, *m)) m = h;
  }
  if (!m) throw Error(ErrorKind::no_minimum, H.name() + " has no nonzero element");
  return *m;
}

// View of o ⊛ H by coordinate blocks. A bare ordered group is o ⊛ 0.
struct ProductView {
  SpecPtr ordered, valued;
  std::size_t k = 0, m = 0;

  Element o_of(const Element& g) const { return slice(g, 0, k); }
  Element v_of(const Element& g) const { return slice(g, k, m); }
  Element make(const Element& o, const Element& v) const { return join(o, v); }
  Element embed_v(const Element& v) const { return join(ordered->group().zero(), v); }
  Element embed_o(const Element& o) const { return join(o, valued->group().zero()); }
  bool trivial_valued() const { return m == 0; }
};

inline std::optional<ProductView> product_view(const SpecPtr& G) {
  if (const auto* p = std::get_if<ProductQo>(&G->qo()))
    return ProductView{p->ordered, p->valued, p->ordered->group().dimension(), p->valued->group().dimension()};
  if (std::holds_alternative<LexQo>(G->qo()) && G->group().is_torsion_free())
    return ProductView{G, make_trivial_valuation(Group(std::vector<Factor>{}), "0"), G->group().dimension(), 0};
  return std::nullopt;
}

// Ball combination over H  ->  ball combination over o ⊛ H defining the
// elements whose valued coordinates satisfy it.
inline BallComboPtr lift_ball_formula(const SpecPtr& G, const BallComboPtr& f) {
  auto pv = product_view(G);
  if (!pv || !std::holds_alternative<ProductQo>(G->qo()))
    throw Error(ErrorKind::not_product_form, G->name() + " is not presented as o ⊛ H");
  const GroupSpec& H = *pv->valued;
  Element m = valued_minimum(H);
  std::function<BallComboPtr(const BallComboPtr&)> go = [&](const BallComboPtr& e) -> BallComboPtr {
    switch (e->op) {
      case BallCombo::Op::ball: {
        const Ball& b = e->ball;
        Element a = pv->embed_v(b.center);
        if (b.kind == BallKind::whole) return e;
        if (!H.group().is_zero(b.radius)) return bc_ball({b.kind, a, pv->embed_v(b.radius)});
        if (b.kind == BallKind::closed) return bc_ball({BallKind::open, a, pv->embed_v(m)});
        return bc_empty();
      }
      case BallCombo::Op::empty: return e;
      default: {
        std::vector<BallComboPtr> k;
        for (const auto& c : e->kids) k.push_back(go(c));
        return std::make_shared<const BallCombo>(BallCombo{e->op, {}, std::move(k)});
      }
    }
  };
  return go(f);
}

}  // namespace qoag
