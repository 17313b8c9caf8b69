#pragma once

#include <fstream>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "qoag/cheese.hpp"
#include "qoag/io.hpp"
#include "qoag/parser.hpp"

namespace qoag {

// C-relation files:
//   {"name", "description", "free_rank", "torsion_orders", "layout"?,
//    "c_relation": {"kind": "induced", "qo": {...}}
//                | {"kind": "coordinate-order", "coordinate": i}
//                | {"kind": "table", "triples": [[x, y, z], ...]}}
//
// coordinate-order: C(x,y,z) iff (x_i != y_i = z_i) or (y_i < x_i and z_i < x_i)
// or (x != y = z); on Z^2 with i = 0 this is compatible but induced by no
// compatible q.o.

inline CRelation crel_from_json(const json& j, const std::string& where = "c-relation") {
  using namespace io_detail;
  only_keys(j, where, {"name", "description", "free_rank", "torsion_orders", "layout", "c_relation"});
  Group g = group_from_json(j, where);
  std::string name = j.contains("name") ? j.at("name").get<std::string>() : "";
  const json& c = need(j, where, "c_relation");
  std::string w = where + ".c_relation";
  if (!c.is_object() || !c.contains("kind") || !c.at("kind").is_string()) bad(w, "c_relation needs a string \"kind\"");
  std::string kind = c.at("kind").get<std::string>();
  if (kind == "induced") {
    only_keys(c, w, {"kind", "qo"});
    json spec = j;
    spec.erase("c_relation");
    spec["qo"] = need(c, w, "qo");
    CRelation r = induce_c(spec_from_json(spec, where));
    if (!name.empty()) r.name = name;
    return r;
  }
  if (kind == "coordinate-order") {
    only_keys(c, w, {"kind", "coordinate"});
    std::size_t i = as_index(need(c, w, "coordinate"), w + ".coordinate");
    if (i >= g.dimension() || !g.factor(i).is_free()) bad(w, "coordinate must name a free coordinate");
    CFn f = [i](const Element& x, const Element& y, const Element& z) {
      if (x != y && y == z) return true;
      if (x[i] != y[i] && y[i] == z[i]) return true;
      return y[i] < x[i] && z[i] < x[i];
    };
    return {g, f, name.empty() ? "coordinate-order" : name, nullptr};
  }
  if (kind == "table") {
    only_keys(c, w, {"kind", "triples"});
    if (!g.is_finite()) bad(w, "table C-relations need a finite group");
    auto triples = std::make_shared<std::set<std::vector<Element>>>();
    for (const auto& t : need(c, w, "triples")) {
      if (!t.is_array() || t.size() != 3) bad(w, "triples are [x, y, z]");
      triples->insert({element_from_json(g, t[0]), element_from_json(g, t[1]), element_from_json(g, t[2])});
    }
    CFn f = [triples](const Element& x, const Element& y, const Element& z) { return triples->count({x, y, z}) > 0; };
    return {g, f, name.empty() ? "table" : name, nullptr};
  }
  bad(w, "unknown c_relation kind \"" + kind + "\"");
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::invalid_spec, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::invalid_spec, path + ": " + e.what());
  }
}

inline CRelation load_crel(const std::string& path) {
  try {
    return crel_from_json(read_json_file(path), path);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::invalid_spec, path + ": " + e.what());
  }
}

inline bool is_crel_json(const json& j) { return j.is_object() && j.contains("c_relation"); }

// Table form of a C-relation on a finite group, for saving mutated copies.
inline json crel_table_json(const CRelation& cv) {
  json j;
  j["name"] = cv.name;
  j["free_rank"] = cv.group.free_rank();
  j["torsion_orders"] = cv.group.torsion_orders();
  json triples = json::array();
  auto dom = enumerate(cv.group, Window{1});
  for (const auto& x : dom)
    for (const auto& y : dom)
      for (const auto& z : dom)
        if (cv(x, y, z)) triples.push_back(json::array({element_to_json(x), element_to_json(y), element_to_json(z)}));
  j["c_relation"] = {{"kind", "table"}, {"triples", triples}};
  return j;
}

// Formula corpus files:
//   {"spec": "file relative to the corpus", "variable": "x",
//    "parameters": {"c1": [..], ...}, "formulas": ["...", ...]}
struct FormulaCorpus {
  SpecPtr spec;
  std::string variable = "x";
  Assignment parameters;
  std::vector<Formula> formulas;
};

inline FormulaCorpus load_corpus(const std::string& path) {
  using namespace io_detail;
  json j = read_json_file(path);
  try {
    only_keys(j, path, {"spec", "variable", "parameters", "formulas", "description"});
    FormulaCorpus c;
    std::string sp = need(j, path, "spec").get<std::string>();
    auto slash = path.find_last_of('/');
    if (!sp.empty() && sp[0] != '/' && slash != std::string::npos) sp = path.substr(0, slash + 1) + sp;
    c.spec = load_spec(sp);
    if (j.contains("variable")) c.variable = j.at("variable").get<std::string>();
    if (j.contains("parameters"))
      for (auto it = j.at("parameters").begin(); it != j.at("parameters").end(); ++it)
        c.parameters[it.key()] = element_from_json(c.spec->group(), it.value());
    for (const auto& f : need(j, path, "formulas")) c.formulas.push_back(parse_formula(f.get<std::string>()));
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::invalid_spec, path + ": " + e.what());
  }
}

}  // namespace qoag
