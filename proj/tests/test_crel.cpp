#include <catch_amalgamated.hpp>

#include <random>

#include "qoag/crel_io.hpp"
#include "support.hpp"

using namespace qoag;
using qt::E;

namespace {

Formula P(const char* s) { return parse_formula(s); }

std::string fixture(const char* name) { return std::string(QOAG_FIXTURES) + "/" + name; }

std::set<Element> as_set(const std::vector<Element>& v) { return {v.begin(), v.end()}; }

// 2-adic valuation on Z/2^k by trailing zeros; -1 stands for infinity.
int v2(long long a, int k) {
  if (a == 0) return -1;
  int n = 0;
  while (n < k && a % 2 == 0) {
    a /= 2;
    ++n;
  }
  return n;
}

std::vector<SpecPtr> small_finite() {
  return {qt::z2(),
          qt::trivial_cyclic(5),
          make_padic_cyclic(2, 2),
          make_padic_cyclic(2, 3),
          make_padic_cyclic(3, 2),
          make_table(Group({Factor::cyclic(3)}), {0, 1, 1}),
          make_table(Group({Factor::cyclic(2), Factor::cyclic(2)}), {0, 1, 2, 2}),
          load_spec(fixture("val-hahn-z3.json"))};
}

Assignment params(std::initializer_list<std::pair<const char*, Element>> l) {
  Assignment a;
  for (const auto& [k, v] : l) a[k] = v;
  return a;
}

std::set<Element> cover_members(const GroupSpec& G, const std::vector<SwissCheese>& cs, const std::vector<Element>& dom) {
  std::set<Element> out;
  for (const auto& g : dom)
    for (const auto& c : cs)
      if (c.contains(G, g)) out.insert(g);
  return out;
}

// Each element in at most one cheese.
bool disjoint_on(const GroupSpec& G, const std::vector<SwissCheese>& cs, const std::vector<Element>& dom) {
  for (const auto& g : dom) {
    int n = 0;
    for (const auto& c : cs) n += c.contains(G, g);
    if (n > 1) return false;
  }
  return true;
}

}  // namespace

// ---- induced relation -------------------------------------------------------

TEST_CASE("induce_c: ordered integers") {
  auto G = qt::z_order();
  CRelation C = induce_c(G);
  for (const auto& x : enumerate(G->group(), Window{3}))
    for (const auto& y : enumerate(G->group(), Window{3}))
      for (const auto& z : enumerate(G->group(), Window{3})) {
        bool want = (y[0] < x[0] && z[0] < x[0]) || (y == z && y != x);
        REQUIRE(C(x, y, z) == want);
      }
}

TEST_CASE("induce_c: valuational groups compare valuations") {
  for (int k : {2, 3}) {
    auto G = make_padic_cyclic(2, k);
    CRelation C = induce_c(G);
    auto dom = enumerate(G->group(), Window{1});
    long long n = 1LL << k;
    auto v = [&](const Element& a, const Element& b) {
      long long d = ((a[0].to_int64().value() - b[0].to_int64().value()) % n + n) % n;
      return v2(d, k);
    };
    // v(y - z) > v(x - z), infinity above everything
    for (const auto& x : dom)
      for (const auto& y : dom)
        for (const auto& z : dom) {
          int a = v(y, z), b = v(x, z);
          bool want = a == -1 ? b != -1 : (b != -1 && a > b);
          REQUIRE(C(x, y, z) == want);
        }
  }
}

TEST_CASE("induce_c: C(x,y,y) whenever x != y") {
  for (const auto& G : {qt::example_a(), qt::example_b(), qt::q_tensor_z4(), qt::remark_counterexample()}) {
    CRelation C = induce_c(G);
    auto dom = enumerate(G->group(), Window{2});
    for (const auto& x : dom)
      for (const auto& y : dom)
        if (x != y) REQUIRE(C(x, y, y));
  }
}

// ---- axioms -----------------------------------------------------------------

TEST_CASE("check_c_axioms: finite compatible groups pass exhaustively") {
  for (const auto& G : small_finite()) {
    INFO(G->name());
    Verdict v = check_c_axioms(induce_c(G), Window{1});
    CHECK(v.passed());
    CHECK(v.coverage == "exhaustive");
  }
  CHECK(check_c_axioms(induce_c(make_padic_cyclic(2, 6)), Window{1}).passed());
}

TEST_CASE("check_c_axioms: infinite compatible groups on windows") {
  CHECK(check_c_axioms(induce_c(qt::example_a()), Window{3}).passed());
  CHECK(check_c_axioms(induce_c(qt::z_order()), Window{6}).passed());
  CHECK(check_c_axioms(induce_c(qt::example_b()), Window{6}).passed());
  CHECK(check_c_axioms(induce_c(qt::q_tensor_z4()), Window{2, 2}).passed());
  CHECK(check_c_axioms(induce_c(qt::notproduct_g2()), Window{2}).passed());
}

TEST_CASE("check_c_axioms: trivial Z/5 has 125 triples and no violation") {
  auto G = qt::trivial_cyclic(5);
  auto dom = enumerate(G->group(), Window{1});
  CHECK(dom.size() * dom.size() * dom.size() == 125);
  CHECK(check_c_axioms(induce_c(G), Window{1}).passed());
}

TEST_CASE("check_c_axioms: a mutated table breaks C2") {
  CRelation C = induce_c(qt::trivial_cyclic(5));
  json j = crel_table_json(C);
  // C(1,0,0) holds; add C(0,1,0) and its C1 partner C(0,0,1)
  j["c_relation"]["triples"].push_back(json::array({json::array({0}), json::array({1}), json::array({0})}));
  j["c_relation"]["triples"].push_back(json::array({json::array({0}), json::array({0}), json::array({1})}));
  CRelation M = crel_from_json(j);
  Verdict v = check_c_axioms(M, Window{1});
  REQUIRE(!v.passed());
  CHECK(v.violation->axiom == "C2");
  CHECK(v.violation->witness.size() == 3);
  CHECK(M(v.violation->witness[0], v.violation->witness[1], v.violation->witness[2]));
  CHECK(M(v.violation->witness[1], v.violation->witness[0], v.violation->witness[2]));
}

TEST_CASE("check_c_axioms: dropping C4 triples is caught") {
  CRelation C = induce_c(make_padic_cyclic(2, 2));
  CRelation M{C.group, [C](const Element& x, const Element& y, const Element& z) {
                if (x == E({3}) && y == E({1}) && z == E({1})) return false;
                return C(x, y, z);
              }, "mutant", nullptr};
  Verdict v = check_c_axioms(M, Window{1});
  REQUIRE(!v.passed());
  CHECK(v.violation->axiom == "C4");
}

TEST_CASE("check_c_axioms: a relation that is not translation invariant") {
  // C(x,y,z) iff z = 0 and x != y, plus the C4 triples: C1..C3 hold only
  // by accident, so something must fail.
  Group g({Factor::cyclic(3)});
  CRelation M{g, [](const Element& x, const Element& y, const Element& z) {
                if (x != y && y == z) return true;
                return z[0].is_zero() && x[0] == Scalar(1) && y[0] == Scalar(2);
              }, "skewed", nullptr};
  CHECK(!check_c_axioms(M, Window{1}).passed());
}

TEST_CASE("C-relation files load") {
  CRelation z2 = load_crel(fixture("crel-z2-not-induced.json"));
  CHECK(z2.name == "crel-z2-not-induced");
  CHECK(z2(E({1, 0}), E({0, 5}), E({0, -3})));
  CHECK(!z2(E({0, 0}), E({1, 0}), E({0, 1})));

  json j = json::parse(R"({"name":"zz","free_rank":1,"torsion_orders":[],"c_relation":{"kind":"induced","qo":{"kind":"lex"}}})");
  CRelation c = crel_from_json(j);
  CHECK(c(E({2}), E({1}), E({0})));
  CHECK(!c(E({0}), E({1}), E({2})));

  CHECK_THROWS_AS(crel_from_json(json::parse(R"({"free_rank":1,"torsion_orders":[],"c_relation":{"kind":"bogus"}})")), Error);
  CHECK_THROWS_AS(crel_from_json(json::parse(R"({"free_rank":0,"torsion_orders":[2],"c_relation":{"kind":"coordinate-order","coordinate":0}})")), Error);
}

// ---- recovering the q.o -----------------------------------------------------

TEST_CASE("recover_qo: round trips") {
  struct Case {
    SpecPtr G;
    Window w;
  };
  std::vector<Case> cases = {{qt::example_a(), Window{4}}, {qt::z_order(), Window{8}}, {qt::example_b(), Window{8}},
                             {qt::q_tensor_z4(), Window{2, 2}}};
  for (const auto& G : small_finite()) cases.push_back({G, Window{1}});
  cases.push_back({make_padic_cyclic(2, 6), Window{1}});
  for (const auto& [G, w] : cases) {
    INFO(G->name());
    auto r = recover_qo(induce_c(G));
    auto d = recovery_disagreement(*G, r, w);
    CHECK(!d);
    if (d) UNSCOPED_INFO(*d);
  }
}

TEST_CASE("recover_qo: negative cone") {
  auto r = recover_qo(induce_c(qt::z_order()));
  CHECK(r.negative(E({-3})));
  CHECK(!r.negative(E({0})));
  CHECK(!r.negative(E({2})));
}

TEST_CASE("the Z^2 coordinate C-relation is compatible but not induced") {
  CRelation C = load_crel(fixture("crel-z2-not-induced.json"));
  CHECK(check_c_axioms(C, Window{2}).passed());
  RecoveryDiagnosis d = diagnose_recovery(C, Window{2});
  CHECK(!d.induced());
  // the recovered relation is a total preorder but does not give back C
  CHECK(d.does_not_reproduce.has_value());
}

// ---- balls and cones --------------------------------------------------------

TEST_CASE("ball_members examples") {
  auto Z = qt::z_order();
  std::set<Element> want;
  for (const auto& g : enumerate(Z->group(), Window{5}))
    if (g[0] <= Scalar(0)) want.insert(g);
  CHECK(as_set(ball_members(*Z, {BallKind::closed, E({0}), E({0})}, Window{5})) == want);

  auto H = make_padic_cyclic(2, 2);
  CHECK(as_set(ball_members(*H, {BallKind::closed, E({0}), E({2})}, Window{1})) == std::set<Element>{E({0}), E({2})});
  CHECK(as_set(ball_members(*H, {BallKind::open, E({1}), E({2})}, Window{1})) == std::set<Element>{E({1})});
  CHECK(as_set(ball_members(*H, {BallKind::closed, E({1}), E({1})}, Window{1})).size() == 4);
}

TEST_CASE("cone and thick cone agree with their ball shapes") {
  struct Case {
    SpecPtr G;
    Window w;
  };
  std::vector<Case> cases = {{qt::z_order(), Window{4}}, {qt::example_a(), Window{2}}, {qt::q_tensor_z4(), Window{1, 2}},
                             {qt::example_b(), Window{5}}, {qt::notproduct_g2(), Window{1}}};
  for (const auto& G : small_finite()) cases.push_back({G, Window{1}});
  for (const auto& [G, w] : cases) {
    INFO(G->name());
    CRelation C = induce_c(G);
    auto dom = enumerate(G->group(), w);
    for (const auto& a : dom)
      for (const auto& b : dom) {
        ConeShape cs = cone_shape(*G, a, b), ts = thick_cone_shape(*G, a, b);
        for (const auto& x : dom) {
          REQUIRE(C(a, x, b) == cs.contains(*G, x));
          REQUIRE(!C(x, a, b) == ts.contains(*G, x));
        }
      }
  }
}

TEST_CASE("cones from v-type or positive differences are open balls") {
  auto G = qt::q_tensor_z4();
  CRelation C = induce_c(G);
  auto dom = enumerate(G->group(), Window{1, 2});
  for (const auto& a : dom)
    for (const auto& b : dom) {
      Element d = G->group().sub(a, b);
      if (G->group().is_zero(d)) continue;
      if (G->classify(d) != Classification::vtype && !G->less(G->group().zero(), d)) continue;
      Ball open{BallKind::open, b, d}, closed{BallKind::closed, b, d};
      CHECK(as_set(cone_members(C, a, b, Window{1, 2})) == as_set(ball_members(*G, open, Window{1, 2})));
      CHECK(as_set(thick_cone_members(C, a, b, Window{1, 2})) == as_set(ball_members(*G, closed, Window{1, 2})));
    }
}

TEST_CASE("singleton cheese is closed minus open radius zero") {
  for (const auto& G : small_finite()) {
    auto dom = enumerate(G->group(), Window{1});
    for (const auto& a : dom) {
      SwissCheese s = singleton_cheese(G->group(), a);
      CHECK(s.outer.kind == BallKind::closed);
      REQUIRE(s.holes.size() == 1);
      CHECK(s.holes[0].kind == BallKind::open);
      std::set<Element> m;
      for (const auto& g : dom)
        if (s.contains(*G, g)) m.insert(g);
      CHECK(m == std::set<Element>{a});
    }
  }
  auto Z = qt::z_order();
  SwissCheese s = singleton_cheese(Z->group(), E({2}));
  for (const auto& g : enumerate(Z->group(), Window{5})) CHECK(s.contains(*Z, g) == (g == E({2})));
}

// ---- lifting ball combinations from H --------------------------------------------

namespace {

BallComboPtr random_combo(const GroupSpec& H, std::mt19937_64& rng, int depth) {
  auto dom = enumerate(H.group(), Window{1});
  if (depth == 0 || rng() % 3 == 0) {
    Ball b{rng() % 2 ? BallKind::closed : BallKind::open, dom[rng() % dom.size()], dom[rng() % dom.size()]};
    if (rng() % 5 == 0) b.radius = H.group().zero();
    return bc_ball(b);
  }
  switch (rng() % 3) {
    case 0: return bc_not(random_combo(H, rng, depth - 1));
    case 1: return bc_and({random_combo(H, rng, depth - 1), random_combo(H, rng, depth - 1)});
    default: return bc_or({random_combo(H, rng, depth - 1), random_combo(H, rng, depth - 1)});
  }
}

}  // namespace

TEST_CASE("lift_ball_formula: case rules") {
  auto G = qt::q_tensor_z4();
  auto a = E({1});
  auto same = lift_ball_formula(G, bc_ball({BallKind::closed, a, E({2})}));
  REQUIRE(same->op == BallCombo::Op::ball);
  CHECK(same->ball == Ball{BallKind::closed, E({0, 1}), E({0, 2})});
  CHECK(same->str() == "x - (0,1) <~ (0,2)");

  auto closed0 = lift_ball_formula(G, bc_ball({BallKind::closed, a, E({0})}));
  REQUIRE(closed0->op == BallCombo::Op::ball);
  // minimum of Z/4 \ {0}: 2 has the largest valuation
  CHECK(closed0->ball == Ball{BallKind::open, E({0, 1}), E({0, 2})});

  auto open0 = lift_ball_formula(G, bc_ball({BallKind::open, a, E({0})}));
  CHECK(open0->op == BallCombo::Op::empty);
  CHECK(open0->str() == "x << 0 & 0 <~ x");
}

TEST_CASE("lift_ball_formula: contract on product windows") {
  std::mt19937_64 rng(7);
  std::vector<std::pair<SpecPtr, Window>> cases = {
      {qt::q_tensor_z4(), Window{2, 2}},
      {make_product_spec(qt::z_order(), make_padic_cyclic(2, 3)), Window{3}},
      {qt::notproduct_g2(), Window{3}},
      {make_product_spec(qt::lex_z2(), make_padic_cyclic(3, 1)), Window{2}}};
  for (const auto& [G, w] : cases) {
    auto pv = *product_view(G);
    const GroupSpec& H = *pv.valued;
    auto dom = enumerate(G->group(), w);
    for (int i = 0; i < 60; ++i) {
      BallComboPtr f = random_combo(H, rng, 3);
      BallComboPtr lf = lift_ball_formula(G, f);
      INFO(G->name() << ": " << f->str() << "  ->  " << lf->str());
      for (const auto& g : dom) REQUIRE(lf->holds(*G, g) == f->holds(H, pv.v_of(g)));
    }
  }
}

TEST_CASE("lift_ball_formula: errors") {
  CHECK_THROWS_AS(lift_ball_formula(qt::example_a(), bc_ball({BallKind::closed, E({0}), E({0})})), Error);
  try {
    lift_ball_formula(qt::example_a(), bc_empty());
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_product_form);
  }
  // H = Z with the trivial valuation: infinite, no certified minimum
  auto G = make_product_spec(qt::q_order(), make_trivial_valuation(Group::from_ranks(1, {}), "z-trivial"));
  try {
    lift_ball_formula(G, bc_ball({BallKind::closed, E({0}), E({0})}));
    FAIL("expected NoMinimum");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::no_minimum);
  }
}

// ---- interval sets ----------------------------------------------------------------

namespace {

IntervalSet random_iset(std::mt19937_64& rng) {
  std::set<long long> pts;
  int n = static_cast<int>(rng() % 5);
  while (static_cast<int>(pts.size()) < n) pts.insert(static_cast<long long>(rng() % 11) - 5);
  IntervalSet s;
  s.gaps = {rng() % 2 == 0};
  for (long long p : pts) {
    s.points.push_back(E({p}));
    s.at.push_back(rng() % 2 == 0);
    s.gaps.push_back(rng() % 2 == 0);
  }
  return s;
}

// Membership straight from the breakpoint description.
bool naive_contains(const IntervalSet& s, const Scalar& x) {
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    if (x == s.points[i][0]) return s.at[i];
    if (x < s.points[i][0]) return s.gaps[i];
  }
  return s.gaps.back();
}

}  // namespace

TEST_CASE("interval set algebra agrees pointwise") {
  auto Q = qt::q_order();
  std::mt19937_64 rng(11);
  auto grid = enumerate(Q->group(), Window{7, 4});
  for (int i = 0; i < 400; ++i) {
    IntervalSet a = random_iset(rng), b = random_iset(rng);
    IntervalSet u = set_union(*Q, a, b), n = set_intersection(*Q, a, b), d = set_difference(*Q, a, b);
    for (const auto& x : grid) {
      bool ia = naive_contains(a, x[0]), ib = naive_contains(b, x[0]);
      REQUIRE(a.contains(*Q, x) == ia);
      REQUIRE(u.contains(*Q, x) == (ia || ib));
      REQUIRE(n.contains(*Q, x) == (ia && ib));
      REQUIRE(d.contains(*Q, x) == (ia && !ib));
    }
    IntervalSet c = a;
    c.canonicalize();
    for (const auto& x : grid) REQUIRE(c.contains(*Q, x) == naive_contains(a, x[0]));
    c.canonicalize();
    IntervalSet cc = c;
    cc.canonicalize();
    CHECK(cc == c);
  }
}

TEST_CASE("interval set printing") {
  auto Q = qt::q_order();
  CHECK(IntervalSet::all().str() == "(-inf, inf)");
  CHECK(IntervalSet::none().str() == "{}");
  CHECK(half_line(E({2}), true).str() == "(-inf, (2)]");
  IntervalSet s = set_difference(*Q, half_line(E({3}), false), half_line(E({1}), true));
  CHECK(s.str() == "((1), (3))");
  IntervalSet p = set_difference(*Q, half_line(E({1}), true), half_line(E({1}), false));
  CHECK(p.str() == "{(1)}");
}

TEST_CASE("pieces split an interval set into convex parts") {
  auto Q = qt::q_order();
  std::mt19937_64 rng(5);
  auto grid = enumerate(Q->group(), Window{7, 4});
  for (int i = 0; i < 300; ++i) {
    IntervalSet a = random_iset(rng);
    a.canonicalize();
    auto ps = cheese_detail::pieces(a);
    for (const auto& x : grid) {
      int hits = 0;
      for (const auto& p : ps) {
        bool lo = p.lo_inf || (p.lo_closed ? !Q->less(x, p.lo) : Q->less(p.lo, x));
        bool hi = p.hi_inf || (p.hi_closed ? !Q->less(p.hi, x) : Q->less(x, p.hi));
        hits += lo && hi;
      }
      REQUIRE(hits == (a.contains(*Q, x) ? 1 : 0));
    }
  }
}

TEST_CASE("solve_qf matches evaluation on a fine grid") {
  auto Q = qt::q_order();
  FormulaGen gen;
  gen.max_rank = 0;
  gen.free_vars = 2;
  gen.order_only = true;
  std::mt19937_64 rng(3);
  Evaluator ev(*Q, Window{1});
  auto grid = enumerate(Q->group(), Window{6, 12});
  for (int i = 0; i < 150; ++i) {
    Formula f = rename_free(rename_free(gen(rng), "x1", "x"), "x2", "c");
    Assignment pa{{"c", E({static_cast<long long>(rng() % 5) - 2})}};
    IntervalSet s = solve_qf(*Q, f, "x", pa);
    INFO(to_string(f) << "  ->  " << s.str());
    for (const auto& x : grid) {
      Assignment a = pa;
      a["x"] = x;
      REQUIRE(s.contains(*Q, x) == (ev(f, a) == Truth3::True));
    }
  }
}

// ---- definable sets -------------------------------------------------------------

TEST_CASE("definable_set: equivalence class in Example (a)") {
  auto G = qt::example_a();
  DefinableSet d = definable_set(G, P("x ~ c1"), "x", params({{"c1", E({1, 0})}}), Window{3});
  CHECK(d.method == "window");
  CHECK(!d.exact);
  CHECK(d.unknowns == 0);
  for (std::size_t i = 0; i < d.window.size(); ++i) CHECK((d.flags[i] == Truth3::True) == !d.window[i][0].is_zero());
}

TEST_CASE("definable_set: x = 0") {
  DefinableSet d = definable_set(make_padic_cyclic(2, 3), P("x = 0"), "x", {}, Window{1});
  CHECK(d.exact);
  CHECK(d.method == "exhaustive");
  CHECK(d.finite_members == std::set<Element>{E({0})});
  DefinableSet q = definable_set(qt::q_tensor_z4(), P("x = 0"), "x", {}, Window{1});
  CHECK(q.exact);
  for (const auto& g : enumerate(q.G->group(), Window{4, 2})) CHECK(q.contains(g) == (g == E({0, 0})));
  DefinableSet r = definable_set(qt::q_order(), P("x + x = c"), "x", params({{"c", E({3})}}), Window{1});
  CHECK(r.method == "qe");
  CHECK(r.contains(Element{Scalar(3) / Scalar(2)}));
  CHECK(!r.contains(E({1})));
}

TEST_CASE("definable_set: interval plus valuation ball on Q ⊛ Z/4") {
  auto G = qt::q_tensor_z4();
  Formula f = P("(0 << x & x <~ c2) | x - c3 <~ c4");
  Assignment pa = params({{"c2", E({3, 0})}, {"c3", E({0, 1})}, {"c4", E({0, 2})}});
  DefinableSet d = definable_set(G, f, "x", pa, Window{8});
  CHECK(d.exact);
  CHECK(d.method == "pairs+qe");
  EvalOptions eo;
  eo.solve_equations = true;
  Evaluator ev(*G, Window{8}, eo);
  for (const auto& g : ev.domain()) {
    Assignment a = pa;
    a["x"] = g;
    Truth3 t = ev(f, a);
    REQUIRE(t != Truth3::Unknown);
    REQUIRE(d.contains(g) == (t == Truth3::True));
  }
  CheeseResult c = cheese_normal_form(d, f, "x", pa, Window{8});
  CHECK(c.representable());
  CHECK(c.verified);
  CHECK(c.cheeses.size() <= 4);
  CHECK(c.cheeses.size() == 2);
}

TEST_CASE("definable_set: pair route and expansion route agree") {
  FormulaCorpus corpus = load_corpus(fixture("cmin-corpus.json"));
  DefinableOptions pairs, expand;
  expand.prefer_pairs = false;
  std::size_t via_pairs = 0;
  for (const auto& f : corpus.formulas) {
    DefinableSet a = definable_set(corpus.spec, f, corpus.variable, corpus.parameters, Window{1}, pairs);
    DefinableSet b = definable_set(corpus.spec, f, corpus.variable, corpus.parameters, Window{1}, expand);
    INFO(to_string(f));
    CHECK(b.method == "expansion+qe");
    via_pairs += a.method == "pairs+qe";
    REQUIRE(a.cosets.size() == b.cosets.size());
    for (const auto& [h, I] : a.cosets) {
      IntervalSet x = I, y = b.cosets.at(h);
      x.canonicalize();
      y.canonicalize();
      CHECK(x == y);
    }
  }
  CHECK(via_pairs > 50);
}

TEST_CASE("definable_set: exact sets agree with window evaluation") {
  FormulaCorpus corpus = load_corpus(fixture("cmin-corpus.json"));
  EvalOptions eo;
  eo.solve_equations = true;
  Evaluator ev(*corpus.spec, Window{3, 2}, eo);
  std::size_t definite = 0, unknown = 0;
  for (const auto& f : corpus.formulas) {
    DefinableSet d = definable_set(corpus.spec, f, corpus.variable, corpus.parameters, Window{1});
    REQUIRE(d.exact);
    for (const auto& g : ev.domain()) {
      Assignment a = corpus.parameters;
      a[corpus.variable] = g;
      Truth3 t = ev(f, a);
      if (t == Truth3::Unknown) {
        ++unknown;
        continue;
      }
      ++definite;
      INFO(to_string(f) << " at " << to_string(g));
      REQUIRE(d.contains(g) == (t == Truth3::True));
    }
  }
  CHECK(definite > unknown);
}

TEST_CASE("definable_set: unbound parameter") {
  CHECK_THROWS_AS(definable_set(qt::q_tensor_z4(), P("x <~ c1"), "x", {}, Window{1}), Error);
}

// ---- swiss cheeses ----------------------------------------------------------------

TEST_CASE("cheese_normal_form: singletons and whole groups in finite groups") {
  for (const auto& G : small_finite()) {
    auto dom = enumerate(G->group(), Window{1});
    for (const auto& a : dom) {
      DefinableSet d = definable_set(G, f_eq(Term::var("x"), Term::var("a")), "x", params({{"a", a}}), Window{1});
      CheeseResult c = cheese_normal_form(d, P("x = a"), "x", params({{"a", a}}), Window{1});
      REQUIRE(c.representable());
      CHECK(c.cheeses.size() == 1);
      CHECK(cover_members(*G, c.cheeses, dom) == std::set<Element>{a});
    }
    DefinableSet all = definable_set(G, P("x = x"), "x", {}, Window{1});
    CheeseResult c = cheese_normal_form(all, P("x = x"), "x", {}, Window{1});
    REQUIRE(c.cheeses.size() == 1);
    CHECK(c.cheeses[0].holes.empty());
    DefinableSet none = definable_set(G, P("!(x = x)"), "x", {}, Window{1});
    CHECK(cheese_normal_form(none, P("!(x = x)"), "x", {}, Window{1}).cheeses.empty());
  }
}

TEST_CASE("cheese_normal_form: random subsets of finite groups are partitioned") {
  std::mt19937_64 rng(17);
  for (const auto& G : small_finite()) {
    auto dom = enumerate(G->group(), Window{1});
    for (int i = 0; i < 40; ++i) {
      std::set<Element> s;
      for (const auto& g : dom)
        if (rng() % 2) s.insert(g);
      auto cover = cheese_detail::finite_cover(*G, s);
      INFO(G->name());
      CHECK(disjoint_on(*G, cover, dom));
      CHECK(cover_members(*G, cover, dom) == s);
    }
  }
}

TEST_CASE("ball_cosets agrees with ball membership") {
  std::mt19937_64 rng(23);
  std::vector<std::pair<SpecPtr, Window>> cases = {{qt::q_tensor_z4(), Window{3, 2}},
                                                   {make_product_spec(qt::z_order(), make_padic_cyclic(2, 3)), Window{4}},
                                                   {qt::notproduct_g2(), Window{4}}};
  for (const auto& [G, w] : cases) {
    auto pv = *product_view(G);
    auto dom = enumerate(G->group(), w);
    for (int i = 0; i < 150; ++i) {
      Ball b{rng() % 2 ? BallKind::closed : BallKind::open, dom[rng() % dom.size()], dom[rng() % dom.size()]};
      auto cs = cheese_detail::ball_cosets(pv, b);
      INFO(G->name() << " " << b.str());
      for (const auto& g : dom) {
        auto it = cs.find(pv.v_of(g));
        bool in = it != cs.end() && it->second.contains(*pv.ordered, pv.o_of(g));
        REQUIRE(in == b.contains(*G, g));
      }
    }
  }
}

TEST_CASE("cheese_normal_form: exact covers on Q ⊛ Z/4 partition the set") {
  FormulaCorpus corpus = load_corpus(fixture("cmin-corpus.json"));
  auto dom = enumerate(corpus.spec->group(), Window{4, 2});
  for (const auto& f : corpus.formulas) {
    DefinableSet d = definable_set(corpus.spec, f, corpus.variable, corpus.parameters, Window{2});
    CheeseResult c = cheese_normal_form(d, f, corpus.variable, corpus.parameters, Window{2});
    INFO(to_string(f));
    REQUIRE(c.representable());
    CHECK(disjoint_on(*corpus.spec, c.cheeses, dom));
    for (const auto& g : dom) {
      bool in = false;
      for (const auto& ch : c.cheeses) in = in || ch.contains(*corpus.spec, g);
      REQUIRE(in == d.contains(g));
    }
  }
}

TEST_CASE("cheese_normal_form: pure ordered Q uses intervals") {
  auto Q = qt::q_order();
  Formula f = P("(c1 << x & x <~ c2) | c3 << x");
  Assignment pa = params({{"c1", E({-2})}, {"c2", E({0})}, {"c3", E({3})}});
  DefinableSet d = definable_set(Q, f, "x", pa, Window{1});
  CheeseResult c = cheese_normal_form(d, f, "x", pa, Window{6, 2});
  REQUIRE(c.representable());
  CHECK(c.cheeses.size() == 2);
  for (const auto& g : enumerate(Q->group(), Window{6, 4})) {
    int hits = 0;
    for (const auto& ch : c.cheeses) hits += ch.contains(*Q, g);
    CHECK(hits == (d.contains(g) ? 1 : 0));
  }
}

// ---- minimality probe -------------------------------------------------------------

TEST_CASE("cminimality_probe: shipped corpus over Q ⊛ Z/4") {
  FormulaCorpus corpus = load_corpus(fixture("cmin-corpus.json"));
  CHECK(corpus.formulas.size() == 100);
  for (const auto& f : corpus.formulas) {
    CHECK(quantifier_rank(f) <= 2);
    auto fv = free_vars(f);
    CHECK(fv.count("x"));
    for (const auto& v : fv) CHECK((v == "x" || corpus.parameters.count(v)));
  }
  ProbeReport r = cminimality_probe(corpus.spec, corpus.formulas, corpus.variable, corpus.parameters, Window{4});
  CHECK(r.failures() == 0);
  for (const auto& i : r.items) {
    INFO(i.formula);
    CHECK(i.exact);
    CHECK(!i.failure);
  }
}

TEST_CASE("cminimality_probe: finite valued group") {
  FormulaGen gen;
  gen.free_vars = 2;
  std::mt19937_64 rng(29);
  std::vector<Formula> fs;
  while (fs.size() < 40) {
    Formula f = rename_free(rename_free(gen(rng), "x1", "x"), "x2", "c1");
    if (free_vars(f).count("x")) fs.push_back(f);
  }
  auto G = make_padic_cyclic(2, 3);
  ProbeReport r = cminimality_probe(G, fs, "x", params({{"c1", E({2})}}), Window{1});
  CHECK(r.failures() == 0);
  for (const auto& i : r.items) CHECK(i.method == "exhaustive");
}

TEST_CASE("cminimality_probe: Z ordered part is flagged") {
  auto G = make_product_spec(qt::z_order(), make_padic_cyclic(2, 2), "z-tensor-z4");
  ProbeReport r = cminimality_probe(G, {P("EX y. x = y + y")}, "x", {}, Window{4});
  REQUIRE(r.items.size() == 1);
  CHECK(r.items[0].method == "window");
  REQUIRE(r.items[0].failure.has_value());
  CHECK(r.items[0].failure->find("NotRepresentable") != std::string::npos);

  // a formula without parity content passes the same harness
  ProbeReport ok = cminimality_probe(G, {P("0 <~ x & x <~ c")}, "x", params({{"c", E({2, 0})}}), Window{4});
  CHECK(ok.items[0].method == "window");
  CHECK(!ok.items[0].exact);
}
