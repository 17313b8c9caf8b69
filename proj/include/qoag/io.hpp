#pragma once

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"
#include "qoag/qo.hpp"
#include "qoag/window.hpp"

namespace qoag {

using json = nlohmann::ordered_json;

namespace io_detail {

[[noreturn]] inline void bad(const std::string& where, const std::string& msg) {
  throw Error(ErrorKind::invalid_spec, where + ": " + msg);
}

inline void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) bad(where, "expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) bad(where, "unknown field \"" + it.key() + "\"");
}

inline const json& need(const json& j, const std::string& where, const char* key) {
  if (!j.contains(key)) bad(where, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline long long as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer, got " + j.dump());
  return j.get<long long>();
}

inline std::size_t as_index(const json& j, const std::string& where) {
  long long v = as_int(j, where);
  if (v < 0) bad(where, "expected a non-negative index");
  return static_cast<std::size_t>(v);
}

inline std::vector<std::size_t> index_list(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  std::vector<std::size_t> out;
  for (const auto& x : j) out.push_back(as_index(x, where));
  return out;
}

inline std::vector<long long> int_list(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  std::vector<long long> out;
  for (const auto& x : j) out.push_back(as_int(x, where));
  return out;
}

inline long long value_from_json(const json& j, const std::string& where) {
  if (j.is_string() && j.get<std::string>() == "inf") return kInfinity;
  return as_int(j, where);
}

inline json value_to_json(long long v) { return v == kInfinity ? json("inf") : json(v); }

}  // namespace io_detail

// Coordinates are integers or "p/q" strings.
inline Scalar scalar_from_json(const json& j) {
  if (j.is_number_integer()) return Scalar(j.get<long long>());
  if (j.is_string()) return Scalar::parse(j.get<std::string>());
  throw Error(ErrorKind::invalid_spec, "coordinate must be an integer or a \"p/q\" string, got " + j.dump());
}

inline json scalar_to_json(const Scalar& s) {
  if (s.is_integer())
    if (auto v = s.to_int64()) return *v;
  return s.str();
}

inline Element element_from_json(const Group& g, const json& j) {
  if (!j.is_array()) throw Error(ErrorKind::invalid_spec, "element must be an array, got " + j.dump());
  Element e;
  for (const auto& x : j) e.push_back(scalar_from_json(x));
  g.validate(e);
  return g.make(std::move(e));
}

inline json element_to_json(const Element& e) {
  json a = json::array();
  for (const auto& x : e) a.push_back(scalar_to_json(x));
  return a;
}

inline Group group_from_json(const json& j, const std::string& where) {
  using namespace io_detail;
  std::size_t rank = as_index(need(j, where, "free_rank"), where + ".free_rank");
  auto torsion = int_list(need(j, where, "torsion_orders"), where + ".torsion_orders");
  for (auto t : torsion)
    if (t < 2) bad(where, "torsion orders must be at least 2");
  if (!j.contains("layout")) return Group::from_ranks(rank, torsion);
  const json& l = j.at("layout");
  if (!l.is_array()) bad(where, "layout must be an array of factor names");
  std::vector<Factor> f;
  for (const auto& x : l) {
    if (!x.is_string()) bad(where, "layout entries are strings like \"Z\", \"Q\", \"Z/4\"");
    f.push_back(Factor::parse(x.get<std::string>()));
  }
  Group g(std::move(f));
  if (g.free_rank() != rank || g.torsion_orders() != torsion)
    bad(where, "layout " + g.str() + " disagrees with free_rank/torsion_orders");
  return g;
}

inline json group_to_json(const Group& g) {
  json j;
  j["free_rank"] = g.free_rank();
  j["torsion_orders"] = g.torsion_orders();
  bool standard = g.is_standard_layout() && !g.has_rational();
  if (!standard) {
    json l = json::array();
    for (const auto& f : g.factors()) l.push_back(f.str());
    j["layout"] = l;
  }
  return j;
}

inline CoordSubgroup subgroup_from_json(const Group& g, const json& j, const std::string& where) {
  auto d = io_detail::int_list(j, where);
  if (d.size() != g.dimension()) io_detail::bad(where, "subgroup needs one divisor per coordinate");
  return CoordSubgroup(g, d);
}

// ---- valuations ------------------------------------------------------------

inline Valuation valuation_from_json(const Group& g, const json& j, const std::string& where) {
  using namespace io_detail;
  if (j.contains("values")) {
    only_keys(j, where, {"kind", "values"});
    if (!g.is_finite()) bad(where, "valuation tables need a finite group");
    std::vector<long long> vals(g.order(), kInfinity);
    std::vector<bool> seen(g.order(), false);
    for (const auto& entry : j.at("values")) {
      if (!entry.is_array() || entry.size() != 2) bad(where, "values entries are [coordinates, value] pairs");
      Element e = element_from_json(g, entry[0]);
      auto i = g.index_of(e);
      if (seen[i]) bad(where, "duplicate entry for " + to_string(e));
      seen[i] = true;
      vals[i] = value_from_json(entry[1], where);
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
      if (!seen[i]) bad(where, "no value for " + to_string(g.element_at(i)));
    if (vals[0] != kInfinity) bad(where, "v(0) must be \"inf\"");
    return Valuation(Valuation::Table{std::move(vals)});
  }
  only_keys(j, where, {"kind", "rules"});
  Valuation::Rules rules;
  for (const auto& r : need(j, where, "rules")) {
    only_keys(r, where + ".rules", {"value", "when"});
    ValuationRule rule;
    rule.value = as_int(need(r, where, "value"), where + ".rules.value");
    if (r.contains("when")) {
      for (const auto& c : r.at("when")) {
        only_keys(c, where + ".when", {"coord", "zero", "nonzero", "divisible_by", "not_divisible_by"});
        Condition cond;
        cond.coord = as_index(need(c, where, "coord"), where + ".when.coord");
        int kinds = 0;
        if (c.contains("zero")) cond.kind = Condition::Kind::zero, ++kinds;
        if (c.contains("nonzero")) cond.kind = Condition::Kind::nonzero, ++kinds;
        if (c.contains("divisible_by"))
          cond.kind = Condition::Kind::divisible_by, cond.modulus = as_int(c.at("divisible_by"), where), ++kinds;
        if (c.contains("not_divisible_by"))
          cond.kind = Condition::Kind::not_divisible_by, cond.modulus = as_int(c.at("not_divisible_by"), where),
          ++kinds;
        if (kinds != 1) bad(where, "each condition has exactly one of zero/nonzero/divisible_by/not_divisible_by");
        rule.when.push_back(cond);
      }
    }
    rules.rules.push_back(std::move(rule));
  }
  return Valuation(std::move(rules));
}

inline json valuation_to_json(const Group& g, const Valuation& v) {
  json j;
  if (v.is_table()) {
    json vals = json::array();
    for (std::size_t i = 0; i < v.table().values.size(); ++i)
      vals.push_back(json::array({element_to_json(g.element_at(i)), io_detail::value_to_json(v.table().values[i])}));
    j["values"] = vals;
    return j;
  }
  json rules = json::array();
  for (const auto& r : v.rules().rules) {
    json rj;
    rj["value"] = r.value;
    json when = json::array();
    for (const auto& c : r.when) {
      json cj;
      cj["coord"] = c.coord;
      switch (c.kind) {
        case Condition::Kind::zero: cj["zero"] = true; break;
        case Condition::Kind::nonzero: cj["nonzero"] = true; break;
        case Condition::Kind::divisible_by: cj["divisible_by"] = c.modulus; break;
        case Condition::Kind::not_divisible_by: cj["not_divisible_by"] = c.modulus; break;
      }
      when.push_back(cj);
    }
    if (!when.empty()) rj["when"] = when;
    rules.push_back(rj);
  }
  j["rules"] = rules;
  return j;
}

// v(-g) = v(g) and v(g+h) >= min(v(g), v(h)) on a window; `outside` limits
// the check to elements not in a subgroup (coset valuations).
inline void validate_valuation(const Group& g, const Valuation& v, const Window& w,
                               const CoordSubgroup* outside = nullptr) {
  auto W = enumerate(g, w);
  std::vector<long long> vals;
  std::vector<Element> els;
  for (const auto& e : W) {
    if (outside && outside->contains(e)) continue;
    els.push_back(e);
    vals.push_back(v(g, e));
  }
  for (std::size_t i = 0; i < els.size(); ++i) {
    if (v(g, g.neg(els[i])) != vals[i])
      throw Error(ErrorKind::invalid_spec, "valuation is not symmetric at " + to_string(els[i]));
    if (outside) continue;
    for (std::size_t k = 0; k < els.size(); ++k)
      if (v(g, g.add(els[i], els[k])) < std::min(vals[i], vals[k]))
        throw Error(ErrorKind::invalid_spec,
                    "ultrametric inequality fails at " + to_string(els[i]) + ", " + to_string(els[k]));
  }
}

// ---- specs -----------------------------------------------------------------

inline constexpr Window kLoadWindow{3, 2};

inline SpecPtr spec_from_json(const json& j, const std::string& where = "spec");

inline SpecPtr spec_from_json(const json& j, const std::string& where) {
  using namespace io_detail;
  only_keys(j, where, {"name", "description", "free_rank", "torsion_orders", "layout", "qo"});
  Group g = group_from_json(j, where);
  std::string name = j.contains("name") ? j.at("name").get<std::string>() : "";
  const json& q = need(j, where, "qo");
  std::string w = where + ".qo";
  if (!q.is_object() || !q.contains("kind") || !q.at("kind").is_string()) bad(w, "qo needs a string \"kind\"");
  std::string kind = q.at("kind").get<std::string>();
  SpecPtr out;
  if (kind == "table") {
    only_keys(q, w, {"kind", "ranks"});
    if (!g.is_finite()) bad(w, "table quasi-orders need a finite group");
    std::vector<std::uint32_t> rank(g.order(), 0);
    std::vector<bool> seen(g.order(), false);
    for (const auto& entry : need(q, w, "ranks")) {
      if (!entry.is_array() || entry.size() != 2) bad(w, "ranks entries are [coordinates, rank] pairs");
      Element e = element_from_json(g, entry[0]);
      auto i = g.index_of(e);
      if (seen[i]) bad(w, "duplicate entry for " + to_string(e));
      seen[i] = true;
      long long r = as_int(entry[1], w);
      if (r < 0) bad(w, "ranks are non-negative");
      rank[i] = static_cast<std::uint32_t>(r);
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
      if (!seen[i]) bad(w, "no rank for " + to_string(g.element_at(i)));
    out = make_table(g, std::move(rank), name);
  } else if (kind == "lex") {
    only_keys(q, w, {"kind", "priority", "degenerate_z2"});
    std::vector<std::size_t> prio;
    if (q.contains("priority")) prio = index_list(q.at("priority"), w);
    bool degen = q.contains("degenerate_z2") && q.at("degenerate_z2").get<bool>();
    out = make_lex(g, prio, degen, name);
  } else if (kind == "valuation") {
    Valuation v = valuation_from_json(g, q, w);
    v.validate_shape(g);
    validate_valuation(g, v, kLoadWindow);
    out = make_valuation(g, std::move(v), name);
  } else if (kind == "product") {
    only_keys(q, w, {"kind", "ordered", "valued"});
    auto o = spec_from_json(need(q, w, "ordered"), w + ".ordered");
    auto v = spec_from_json(need(q, w, "valued"), w + ".valued");
    out = make_product_spec(o, v, name);
  } else if (kind == "hahn") {
    only_keys(q, w, {"kind", "flavor", "chain", "components"});
    std::string fl = q.contains("flavor") ? q.at("flavor").get<std::string>() : "compatible";
    HahnFlavor flavor;
    if (fl == "lexicographic") flavor = HahnFlavor::lexicographic;
    else if (fl == "valuational") flavor = HahnFlavor::valuational;
    else if (fl == "compatible") flavor = HahnFlavor::compatible;
    else bad(w, "unknown Hahn flavor \"" + fl + "\"");
    std::vector<long long> chain;
    if (q.contains("chain")) chain = int_list(q.at("chain"), w);
    std::vector<SpecPtr> comps;
    std::size_t i = 0;
    for (const auto& c : need(q, w, "components"))
      comps.push_back(spec_from_json(c, w + ".components[" + std::to_string(i++) + "]"));
    out = make_hahn_spec(flavor, chain, comps, name);
  } else if (kind == "extension") {
    only_keys(q, w, {"kind", "ordered_subgroup", "priority", "coset_valuation"});
    CoordSubgroup h = subgroup_from_json(g, need(q, w, "ordered_subgroup"), w + ".ordered_subgroup");
    std::vector<std::size_t> prio;
    if (q.contains("priority")) prio = index_list(q.at("priority"), w);
    Valuation v = valuation_from_json(g, need(q, w, "coset_valuation"), w + ".coset_valuation");
    v.validate_shape(g);
    validate_valuation(g, v, kLoadWindow, &h);
    out = make_extension(g, h, prio, std::move(v), name);
  } else if (kind == "subquotient") {
    only_keys(q, w, {"kind", "parent", "sub", "mod"});
    auto parent = spec_from_json(need(q, w, "parent"), w + ".parent");
    const Group& pg = parent->group();
    auto sub = subgroup_from_json(pg, need(q, w, "sub"), w + ".sub");
    auto mod = subgroup_from_json(pg, need(q, w, "mod"), w + ".mod");
    out = make_subquotient(parent, sub, mod, name);
  } else {
    bad(w, "unknown qo kind \"" + kind + "\"");
  }
  if (out->group().factors() != g.factors())
    bad(where, "declared group " + g.str() + " does not match the quasi-order's group " + out->group().str());
  return out;
}

inline json spec_to_json(const GroupSpec& G) {
  const Group& g = G.group();
  json j;
  if (!G.name().empty()) j["name"] = G.name();
  json gj = group_to_json(g);
  for (auto it = gj.begin(); it != gj.end(); ++it) j[it.key()] = it.value();
  json q;
  q["kind"] = G.kind_name();
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, TableQo>) {
          json r = json::array();
          for (std::size_t i = 0; i < d.rank.size(); ++i)
            r.push_back(json::array({element_to_json(g.element_at(i)), d.rank[i]}));
          q["ranks"] = r;
        } else if constexpr (std::is_same_v<T, LexQo>) {
          q["priority"] = d.priority;
          if (d.degenerate_z2) q["degenerate_z2"] = true;
        } else if constexpr (std::is_same_v<T, ValuationQo>) {
          json v = valuation_to_json(g, d.valuation);
          for (auto it = v.begin(); it != v.end(); ++it) q[it.key()] = it.value();
        } else if constexpr (std::is_same_v<T, ProductQo>) {
          q["ordered"] = spec_to_json(*d.ordered);
          q["valued"] = spec_to_json(*d.valued);
        } else if constexpr (std::is_same_v<T, HahnQo>) {
          q["flavor"] = hahn_flavor_name(d.flavor);
          q["chain"] = d.chain;
          json c = json::array();
          for (const auto& comp : d.components) c.push_back(spec_to_json(*comp));
          q["components"] = c;
        } else if constexpr (std::is_same_v<T, ExtensionQo>) {
          q["ordered_subgroup"] = d.ordered_part.divisors();
          q["priority"] = d.priority;
          q["coset_valuation"] = valuation_to_json(g, d.coset_valuation);
        } else if constexpr (std::is_same_v<T, SubquotientQo>) {
          q["parent"] = spec_to_json(*d.parent);
          q["sub"] = d.sub.divisors();
          q["mod"] = d.mod.divisors();
        }
      },
      G.qo());
  j["qo"] = q;
  return j;
}

inline SpecPtr load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::invalid_spec, "cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::invalid_spec, path + ": " + e.what());
  }
  try {
    return spec_from_json(j);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::invalid_spec, path + ": " + e.what());
  }
}

inline SpecPtr parse_spec(const std::string& text) {
  try {
    return spec_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::invalid_spec, e.what());
  }
}

inline void save_spec(const GroupSpec& G, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::invalid_spec, "cannot write " + path);
  out << spec_to_json(G).dump(2) << "\n";
}

}  // namespace qoag
