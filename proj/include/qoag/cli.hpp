#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qoag/crel_io.hpp"
#include "qoag/decompose.hpp"

namespace qoag::cli {

struct RunConfig {
  std::string command;
  std::vector<std::string> specs;
  std::string corpus;
  long long window = 3;
  long long denominator = 2;
  long long mult_bound = 16;
  int rank = 2;
  std::string format = "text";
  std::uint64_t seed = 0;
  std::string out;
  std::vector<std::string> formulas;
  std::vector<std::string> formula_files;
  std::vector<std::string> lets;
  std::string variable = "x";
  std::string kind;  // product kind
  std::string name;
  std::vector<long long> chain;
  std::string mode = "all";  // translate
  bool solve_equations = true;

  Window win() const { return Window{window, denominator}; }
};

// Exit codes.
constexpr int kPass = 0, kViolation = 1, kInputError = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Report {
  json j = json::object();
  std::string text;
  int code = kPass;

  void line(const std::string& s) { text += s + "\n"; }
};

namespace detail {

inline json elements_json(const std::vector<Element>& v) {
  json a = json::array();
  for (const auto& e : v) a.push_back(element_to_json(e));
  return a;
}

inline json violation_json(const std::optional<ViolationReport>& v) {
  if (!v) return nullptr;
  return {{"axiom", v->axiom}, {"witness", elements_json(v->witness)}, {"message", v->rendering}};
}

inline void base(Report& r, const RunConfig& c) {
  r.j["command"] = c.command;
  r.j["verdict"] = "";
  r.j["witnesses"] = json::array();
  r.j["unknowns"] = 0;
  r.j["pair_count"] = nullptr;
}

inline SpecPtr need_spec(const RunConfig& c, std::size_t i = 0) {
  if (c.specs.size() <= i)
    throw UsageError(c.command + " needs " + (i == 0 ? "--spec FILE" : std::to_string(i + 1) + " --spec options"));
  return load_spec(c.specs[i]);
}

inline std::vector<Formula> formulas(const RunConfig& c) {
  std::vector<Formula> out;
  for (const auto& s : c.formulas) out.push_back(parse_formula(s));
  for (const auto& path : c.formula_files) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::invalid_spec, "cannot open " + path);
    std::string line;
    while (std::getline(in, line)) {
      auto p = line.find_first_not_of(" \t\r");
      if (p == std::string::npos || line[p] == '#') continue;
      out.push_back(parse_formula(line));
    }
  }
  return out;
}

inline Formula one_formula(const RunConfig& c) {
  auto fs = formulas(c);
  if (fs.size() != 1) throw UsageError(c.command + " needs exactly one formula (--formula TEXT or --formula-file FILE)");
  return fs[0];
}

// --let name=value, value a JSON array of coordinates or a bare number.
inline Assignment assignment(const RunConfig& c, const Group& g) {
  Assignment a;
  for (const auto& s : c.lets) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--let expects name=[coordinates], got \"" + s + "\"");
    std::string name = s.substr(0, eq);
    json v;
    try {
      v = json::parse(s.substr(eq + 1));
    } catch (const json::exception&) {
      throw UsageError("--let " + name + ": value is not JSON: " + s.substr(eq + 1));
    }
    if (!v.is_array()) v = json::array({v});
    a[name] = element_from_json(g, v);
  }
  return a;
}

inline std::string elements_text(const std::vector<Element>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s;
}

inline json ball_json(const Ball& b) {
  json j;
  j["kind"] = b.kind == BallKind::open ? "open" : b.kind == BallKind::closed ? "closed" : "whole";
  if (b.kind != BallKind::whole) {
    j["center"] = element_to_json(b.center);
    j["radius"] = element_to_json(b.radius);
  }
  return j;
}

inline json cheeses_json(const std::vector<SwissCheese>& cs) {
  json a = json::array();
  for (const auto& c : cs) {
    json holes = json::array();
    for (const auto& h : c.holes) holes.push_back(ball_json(h));
    a.push_back({{"outer", ball_json(c.outer)}, {"holes", holes}});
  }
  return a;
}

// One row per coset: '#' member, '.' not, over the ordered window when the
// ordered part is one-dimensional.
inline void sketch(Report& r, const DefinableSet& d, const Window& w) {
  if (d.G->group().is_finite()) {
    std::vector<Element> m(d.finite_members.begin(), d.finite_members.end());
    r.line("  members: {" + elements_text(m) + "}");
    return;
  }
  if (!d.exact || !d.view) return;
  const GroupSpec& O = *d.view->ordered;
  bool line = O.group().dimension() == 1;
  std::vector<Element> grid;
  if (line)
    for (const auto& e : enumerate(O.group(), Window{w.bound, 2})) grid.push_back(e);
  std::sort(grid.begin(), grid.end(), [&](const Element& a, const Element& b) { return O.less(a, b); });
  if (line && !grid.empty())
    r.line("  ordered part from " + to_string(grid.front()) + " to " + to_string(grid.back()) + " in steps of 1/2");
  for (const auto& [h, I] : d.cosets) {
    std::string row = "  coset " + (h.empty() ? std::string("0") : to_string(h)) + ": ";
    if (line) {
      std::string bar;
      for (const auto& e : grid) bar += I.contains(O, e) ? '#' : '.';
      row += bar + "   ";
    }
    r.line(row + I.str());
  }
}

}  // namespace detail

// ---- commands ------------------------------------------------------------------

inline Report cmd_check(const RunConfig& c) {
  Report r;
  detail::base(r, c);
  if (c.specs.empty()) throw UsageError("check needs --spec FILE");
  json raw = read_json_file(c.specs[0]);
  Window w = c.win();
  if (is_crel_json(raw)) {
    CRelation cv = crel_from_json(raw, c.specs[0]);
    CAxiomOptions o;
    o.seed = c.seed;
    Verdict v = check_c_axioms(cv, w, o);
    RecoveryDiagnosis d = diagnose_recovery(cv, w);
    r.j["c_axioms"] = {{"coverage", v.coverage}, {"violation", detail::violation_json(v.violation)}};
    json rec;
    auto opt = [](const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); };
    rec["induced_by_recovered_qo"] = d.induced();
    rec["not_total"] = opt(d.not_total);
    rec["not_transitive"] = opt(d.not_transitive);
    rec["not_compatible"] = opt(d.not_compatible);
    rec["does_not_reproduce"] = opt(d.does_not_reproduce);
    r.j["recovery"] = rec;
    r.line("C-relation " + cv.name + " on " + v.coverage);
    r.line("  C1-C4, compatibility: " + (v.passed() ? std::string("pass") : "FAIL " + v.violation->rendering));
    r.line("  recovered q.o induces it: " + std::string(d.induced() ? "yes" : "no"));
    if (d.not_total) r.line("    not total at " + *d.not_total);
    if (d.not_transitive) r.line("    not transitive at " + *d.not_transitive);
    if (d.not_compatible) r.line("    not compatible: " + *d.not_compatible);
    if (d.does_not_reproduce) r.line("    induces a different C at " + *d.does_not_reproduce);
    if (!v.passed()) {
      r.j["verdict"] = "violation";
      r.j["witnesses"].push_back(detail::elements_json(v.violation->witness));
      r.code = kViolation;
    } else {
      r.j["verdict"] = "pass";
    }
    return r;
  }
  SpecPtr G = spec_from_json(raw, c.specs[0]);
  Verdict q1 = check_q1(*G, w), q2 = check_q2(*G, w), vm = check_vm(*G, c.mult_bound, w);
  r.j["spec"] = G->name();
  r.j["coverage"] = q1.coverage;
  r.j["Q1"] = detail::violation_json(q1.violation);
  r.j["Q2"] = detail::violation_json(q2.violation);
  r.j["VM_" + std::to_string(c.mult_bound)] = detail::violation_json(vm.violation);
  r.line(G->name() + " (" + G->group().str() + ") on " + q1.coverage);
  auto show = [&](const std::string& n, const Verdict& v) {
    r.line("  " + n + ": " + (v.passed() ? std::string("pass") : "FAIL " + v.violation->rendering));
  };
  show("Q1", q1);
  show("Q2", q2);
  show("VM_" + std::to_string(c.mult_bound) + " (informational)", vm);
  bool compatible = q1.passed() && q2.passed();
  for (const auto* v : {&q1, &q2})
    if (!v->passed()) r.j["witnesses"].push_back(detail::elements_json(v->violation->witness));
  if (compatible) {
    // the C suite is quartic in the window; shrink it to at most 64 elements
    Window cw = w;
    while (!G->group().is_finite() && cw.bound > 1 && enumerate(G->group(), cw).size() > 64) --cw.bound;
    CAxiomOptions o;
    o.seed = c.seed;
    Verdict cv = check_c_axioms(induce_c(G), cw, o);
    auto rec = recovery_disagreement(*G, recover_qo(induce_c(G)), cw);
    r.j["c_axioms"] = {{"coverage", cv.coverage}, {"violation", detail::violation_json(cv.violation)}};
    r.j["c_recovery"] = rec ? json(*rec) : json(nullptr);
    show("induced C: C1-C4, compatibility on " + cv.coverage, cv);
    r.line("  induced C: recovered q.o " + (rec ? "differs " + *rec : std::string("matches")));
    if (!cv.passed()) r.j["witnesses"].push_back(detail::elements_json(cv.violation->witness));
    compatible = cv.passed() && !rec;
  } else {
    r.j["c_axioms"] = "skipped: not compatible on the window";
    r.line("  induced C: skipped (not compatible on the window)");
  }
  r.j["verdict"] = compatible ? "pass" : "violation";
  r.code = compatible ? kPass : kViolation;
  return r;
}

inline Report cmd_classify(const RunConfig& c) {
  Report r;
  detail::base(r, c);
  SpecPtr G = detail::need_spec(c);
  Window w = c.win();
  json rows = json::array();
  std::size_t counts[3] = {0, 0, 0};
  r.line(G->name() + " on " + coverage_label(G->group(), w));
  for (const auto& e : enumerate(G->group(), w)) {
    Classification k = G->classify(e);
    ++counts[static_cast<int>(k)];
    rows.push_back({{"element", element_to_json(e)}, {"class", classification_name(k)}});
    r.line("  " + to_string(e) + "  " + classification_name(k));
  }
  OPart op = o_part(*G, w);
  r.j["spec"] = G->name();
  r.j["elements"] = rows;
  r.j["o_part"] = {{"members_in_window", op.members.size()},
                   {"subgroup", op.subgroup ? json(op.subgroup->str()) : json(nullptr)},
                   {"from_spec", op.from_spec}};
  r.line("o-part: " + std::to_string(op.members.size()) + " window elements" +
         (op.subgroup ? ", subgroup " + op.subgroup->str() : std::string()) + "; v-type: " + std::to_string(counts[2]));
  r.j["verdict"] = "ok";
  return r;
}

inline Report cmd_decompose(const RunConfig& c) {
  Report r;
  detail::base(r, c);
  SpecPtr G = detail::need_spec(c);
  Window w = c.win();
  Decomposition d = decompose(G, w);
  r.j["spec"] = G->name();
  r.j["o_subgroup"] = d.o_subgroup.str();
  r.j["clauses_checked"] = d.clauses_checked;
  json vs = json::array();
  for (const auto& v : d.violations) {
    vs.push_back(detail::violation_json(v));
    r.j["witnesses"].push_back(detail::elements_json(v.witness));
  }
  r.j["violations"] = vs;
  r.j["product_form"] = d.product_form;
  r.line(G->name() + ": G° = " + d.o_subgroup.str() + " on " + coverage_label(G->group(), w));
  for (const auto& s : d.clauses_checked) r.line("  checked " + s);
  for (const auto& v : d.violations) r.line("  VIOLATION " + v.rendering);
  bool ok = d.violations.empty();
  if (!d.product_form) {
    r.line("  NOT product form: G° is not a coordinate direct summand");
    r.j["recomposition"] = nullptr;
    ok = false;
  } else {
    Recomposition rc = recompose(d);
    auto W = enumerate(G->group(), w);
    std::optional<std::string> diff;
    std::size_t pairs = 0;
    for (const auto& a : W)
      for (const auto& b : W) {
        ++pairs;
        if (!diff && G->compare(a, b) != rc.product->compare(rc.to_product(a), rc.to_product(b)))
          diff = to_string(a) + " vs " + to_string(b);
      }
    r.j["recomposition"] = {{"product", rc.product->name()}, {"pairs", pairs}, {"first_disagreement", diff ? json(*diff) : json(nullptr)}};
    r.line("  recomposed as " + rc.product->group().str() + ": " +
           (diff ? "disagrees at " + *diff : std::to_string(pairs) + " window pairs agree"));
    ok = ok && !diff;
  }
  r.j["verdict"] = ok ? "product form" : (d.product_form ? "violation" : "not product form");
  r.code = ok ? kPass : kViolation;
  return r;
}

inline Report cmd_product(const RunConfig& c) {
  Report r;
  detail::base(r, c);
  std::vector<SpecPtr> parts;
  for (std::size_t i = 0; i < c.specs.size(); ++i) parts.push_back(load_spec(c.specs[i]));
  if (parts.size() < 2) throw UsageError("product needs at least two --spec components");
  SpecPtr P;
  if (c.kind == "lex") P = lex_product(parts, c.chain, kComponentWindow, c.name);
  else if (c.kind == "val-hahn") P = val_hahn_product(parts, c.chain, kComponentWindow, c.name);
  else if (c.kind == "compatible") P = compatible_hahn_product(parts, c.chain, kComponentWindow, c.name);
  else if (c.kind == "tensor") {
    if (parts.size() != 2) throw UsageError("--kind tensor takes exactly two components: ordered, then valued");
    P = compatible_product(parts[0], parts[1], kComponentWindow, c.name);
  } else
    throw UsageError("--kind must be lex, val-hahn, compatible or tensor");
  json spec = spec_to_json(*P);
  r.j["verdict"] = "built";
  r.j["spec"] = spec;
  r.text = spec.dump(2) + "\n";
  return r;
}

inline Report cmd_eval(const RunConfig& c) {
  Report r;
  detail::base(r, c);
  SpecPtr G = detail::need_spec(c);
  Formula f = detail::one_formula(c);
  Assignment a = detail::assignment(c, G->group());
  Window w = c.win();
  Truth3 t;
  std::string method;
  if (free_vars(f).empty()) {
    Decision d = decide_sentence(*G, f, w);
    t = d.verdict;
    method = d.method;
  } else {
    EvalOptions eo;
    eo.solve_equations = c.solve_equations;
    t = Evaluator(*G, w, eo)(f, a);
    method = G->group().is_finite() ? "exhaustive" : "window";
    // witnesses for an outermost EX over the window
    if (f->op == Op::Exists && t == Truth3::True) {
      Evaluator ev(*G, w, eo);
      for (const auto& g : ev.domain()) {
        Assignment b = a;
        b[f->var] = g;
        if (ev(f->kids[0], b) == Truth3::True) {
          r.j["witnesses"].push_back(element_to_json(g));
          if (r.j["witnesses"].size() >= 5) break;
        }
      }
    }
  }
  r.j["spec"] = G->name();
  r.j["formula"] = to_string(f);
  r.j["verdict"] = truth_name(t);
  r.j["unknowns"] = t == Truth3::Unknown ? 1 : 0;
  r.j["method"] = method;
  r.line(truth_name(t) + std::string("  (") + method + ", " + coverage_label(G->group(), w) + ")");
  return r;
}

inline Report cmd_translate(const RunConfig& c) {
  Report r;
  detail::base(r, c);
  Formula f = detail::one_formula(c);
  bool all = c.mode == "all";
  if (!all && c.mode != "o" && c.mode != "v" && c.mode != "fv") throw UsageError("--mode must be o, v, fv or all");
  r.j["formula"] = to_string(f);
  r.line("formula:  " + to_string(f));
  if (all || c.mode == "o") {
    std::string s = to_string(relativize_o(f));
    r.j["relativize_o"] = s;
    r.line("o-part:   " + s);
  }
  if (all || c.mode == "v") {
    std::string s = to_string(translate_v(f));
    r.j["translate_v"] = s;
    r.line("v-part:   " + s);
  }
  if (all || c.mode == "fv") {
    FvPairs p = fv_decompose(f);
    r.j["pair_count"] = p.count_overflow ? json("overflow") : json(p.n.str());
    json pairs = json::array();
    for (const auto& [o, v] : p.pairs) pairs.push_back({{"o", to_string(o)}, {"v", to_string(v)}});
    r.j["pairs"] = pairs;
    r.j["materialized"] = p.materialized;
    r.j["warnings"] = p.warnings;
    r.line("pairs:    " + (p.count_overflow ? std::string("overflow") : p.n.str()) +
           (p.materialized ? "" : " (not materialized)"));
    for (std::size_t i = 0; i < p.pairs.size(); ++i)
      r.line("  [" + std::to_string(i + 1) + "] o: " + to_string(p.pairs[i].first) + "   v: " + to_string(p.pairs[i].second));
    for (const auto& s : p.warnings) r.line("  warning: " + s);
  }
  r.j["verdict"] = "ok";
  return r;
}

inline Report cmd_equiv(const RunConfig& c) {
  Report r;
  detail::base(r, c);
  SpecPtr A = detail::need_spec(c, 0), B = detail::need_spec(c, 1);
  CorpusOptions co;
  co.seed = c.seed;
  EquivReport e = equiv_rank_k(*A, *B, c.rank, detail::formulas(c), c.win(), co);
  r.j["specs"] = {A->name(), B->name()};
  r.j["rank"] = c.rank;
  r.j["sentences"] = e.sentences;
  r.j["methods"] = {e.method1, e.method2};
  r.j["verdict"] = e.indistinguishable() ? "indistinguishable" : "distinguished";
  r.j["witnesses"] = e.distinguishing;
  r.j["unknowns"] = e.unknowns.size();
  r.j["undecided"] = e.unknowns;
  r.line(A->name() + " vs " + B->name() + ": " + e.verdict());
  for (const auto& s : e.distinguishing) r.line("  " + s);
  r.code = e.indistinguishable() ? kPass : kViolation;
  return r;
}

inline Report cmd_minimal(const RunConfig& c) {
  Report r;
  detail::base(r, c);
  Window w = c.win();
  FormulaCorpus corpus;
  if (!c.corpus.empty()) corpus = load_corpus(c.corpus);
  if (!c.specs.empty()) corpus.spec = load_spec(c.specs[0]);
  if (!corpus.spec) throw UsageError("minimal needs --spec FILE or --corpus FILE");
  for (auto& f : detail::formulas(c)) corpus.formulas.push_back(f);
  for (auto& [k, v] : detail::assignment(c, corpus.spec->group())) corpus.parameters[k] = v;
  if (c.corpus.empty()) corpus.variable = c.variable;
  if (corpus.formulas.empty()) throw UsageError("minimal needs formulas (--corpus, --formula or --formula-file)");
  r.j["spec"] = corpus.spec->name();
  if (corpus.formulas.size() == 1) {
    const Formula& f = corpus.formulas[0];
    DefinableSet d = definable_set(corpus.spec, f, corpus.variable, corpus.parameters, w);
    CheeseResult ch = cheese_normal_form(d, f, corpus.variable, corpus.parameters, w);
    r.j["formula"] = to_string(f);
    r.j["method"] = d.method;
    r.j["exact"] = d.exact;
    r.j["unknowns"] = d.unknowns;
    r.j["cheeses"] = detail::cheeses_json(ch.cheeses);
    r.j["check"] = ch.check;
    r.line(to_string(f) + "  [" + d.method + (d.exact ? ", exact" : ", windowed") + "]");
    detail::sketch(r, d, w);
    if (ch.not_representable) {
      r.j["verdict"] = "NotRepresentable";
      r.j["reason"] = *ch.not_representable;
      r.line("NotRepresentable: " + *ch.not_representable);
      r.code = kViolation;
    } else {
      r.j["verdict"] = "representable";
      r.line(std::to_string(ch.cheeses.size()) + " swiss cheese(s), " + ch.check + ":");
      for (const auto& s : ch.cheeses) r.line("  " + s.str());
    }
    return r;
  }
  ProbeReport p = cminimality_probe(corpus.spec, corpus.formulas, corpus.variable, corpus.parameters, w);
  json items = json::array();
  for (const auto& i : p.items) {
    items.push_back({{"formula", i.formula}, {"method", i.method}, {"exact", i.exact}, {"cheeses", i.cheeses},
                     {"failure", i.failure ? json(*i.failure) : json(nullptr)}});
    if (i.failure) r.j["witnesses"].push_back(i.formula);
  }
  r.j["items"] = items;
  r.j["failures"] = p.failures();
  r.j["verdict"] = p.failures() ? "failures" : "all representable";
  r.line(corpus.spec->name() + ": " + std::to_string(p.items.size()) + " formulas, " + std::to_string(p.failures()) +
         " failures");
  for (const auto& i : p.items)
    r.line("  " + std::string(i.failure ? "FAIL " : "ok   ") + i.method + " " + std::to_string(i.cheeses) + "  " +
           i.formula + (i.failure ? "  -- " + *i.failure : ""));
  r.code = p.failures() ? kViolation : kPass;
  return r;
}

inline Report dispatch(const RunConfig& c) {
  if (c.command == "check") return cmd_check(c);
  if (c.command == "classify") return cmd_classify(c);
  if (c.command == "decompose") return cmd_decompose(c);
  if (c.command == "product") return cmd_product(c);
  if (c.command == "eval") return cmd_eval(c);
  if (c.command == "translate") return cmd_translate(c);
  if (c.command == "equiv") return cmd_equiv(c);
  if (c.command == "minimal") return cmd_minimal(c);
  throw UsageError("unknown command " + c.command);
}

// ---- entry point -------------------------------------------------------------------

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qoag: compatible quasi-ordered abelian groups"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  RunConfig c;
  const char* cmds[][2] = {{"check", "Q1/Q2/VM and the C-relation axioms (spec or C-relation file)"},
                           {"classify", "per-element classification and the o-part"},
                           {"decompose", "structure decomposition and recomposition"},
                           {"product", "build a lex / val-hahn / compatible / tensor product"},
                           {"eval", "evaluate a formula"},
                           {"translate", "o-part / v-part translations and the pair decomposition"},
                           {"equiv", "compare two specs on a rank-k sentence corpus"},
                           {"minimal", "definable sets as swiss cheeses; corpus probe"}};
  for (const auto& [name, help] : cmds) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("--spec", c.specs, "spec file (repeat for several)");
    s->add_option("--window", c.window, "window bound N")->check(CLI::PositiveNumber);
    s->add_option("--denominator", c.denominator, "largest denominator on Q coordinates")->check(CLI::PositiveNumber);
    s->add_option("--mult-bound", c.mult_bound, "multiplier bound M")->check(CLI::PositiveNumber);
    s->add_option("--rank", c.rank, "corpus quantifier rank")->check(CLI::PositiveNumber);
    s->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    s->add_option("--seed", c.seed, "seed for sampled checks");
    s->add_option("--out", c.out, "write the report here");
    s->add_option("--formula,-f", c.formulas, "formula text (repeatable)");
    s->add_option("--formula-file", c.formula_files, "file with one formula per line");
    s->add_option("--let", c.lets, "parameter value, name=[coordinates]");
    s->add_option("--var", c.variable, "the free variable of a definable set");
    s->add_option("--corpus", c.corpus, "formula corpus file");
    s->add_option("--kind", c.kind, "product kind: lex, val-hahn, compatible, tensor");
    s->add_option("--name", c.name, "name of the built spec");
    s->add_option("--chain", c.chain, "value chain for Hahn products");
    s->add_option("--mode", c.mode, "translate: o, v, fv or all");
    s->add_flag("!--no-solve", c.solve_equations, "evaluate pinned quantifiers over the window only");
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run qoag --help for the command list\n";
    return kInputError;
  }
  c.command = app.get_subcommands().front()->get_name();
  Report r;
  try {
    r = dispatch(c);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kInputError;
  } catch (const SyntaxError& e) {
    if (c.format == "json") err << json{{"error", "SyntaxError"}, {"position", e.position()}, {"message", e.what()}}.dump() << "\n";
    else err << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    if (c.format == "json") err << json{{"error", error_kind_name(e.kind())}, {"message", e.what()}}.dump() << "\n";
    else err << e.what() << "\n";
    return kInputError;
  }
  std::string body = c.format == "json" ? r.j.dump(2) + "\n" : r.text;
  if (c.command == "product" && c.format == "text") body = r.j["spec"].dump(2) + "\n";
  if (!c.out.empty()) {
    std::ofstream f(c.out);
    if (!f) {
      err << "cannot write " << c.out << "\n";
      return kInputError;
    }
    f << body;
  } else {
    out << body;
  }
  return r.code;
}

inline int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace qoag::cli
