#pragma once

#include <string>
#include <vector>

#include "qoag/constructions.hpp"
#include "qoag/structure.hpp"

namespace qoag {

struct Decomposition {
  SpecPtr original;
  Window window;
  CoordSubgroup o_subgroup;  // G°
  SpecPtr o_part;            // (G°, <=) as a restriction of G
  SpecPtr v_part;            // G/G° with the induced valuational q.o
  ExtractedValuation valuation;
  bool product_form = false;
  std::vector<std::string> clauses_checked;
  std::vector<ViolationReport> violations;
};

// Structure theorem, second version, on a window: (1) G° is an initial
// segment, (2) it is an ordered group, (3') the induced q.o on G/G° is
// valuational, (4) g not in G°, g-h in G° implies g ~ h.
inline Decomposition decompose(const SpecPtr& G, const Window& w) {
  const Group& g = G->group();
  Decomposition d;
  d.original = G;
  d.window = w;
  OPart op = o_part(*G, w);  // throws StructureViolation on (1) or closure failure
  if (!op.subgroup)
    throw Error(ErrorKind::unsupported_spec, "ordered part is not a coordinate subgroup on the window");
  d.o_subgroup = *op.subgroup;
  const CoordSubgroup& H = d.o_subgroup;
  d.clauses_checked.push_back("(1) G° is an initial segment and a subgroup");

  auto W = enumerate(g, w);
  std::vector<Element> HW;
  for (const auto& e : W)
    if (H.contains(e)) HW.push_back(e);
  // (2)
  for (const auto& x : HW) {
    for (const auto& y : HW) {
      if (x != y && G->equiv(x, y)) {
        d.violations.push_back({"(2)", {x, y}, "distinct elements of G° are equivalent"});
        goto clause2_done;
      }
      if (!G->leq(x, y)) continue;
      for (const auto& z : HW)
        if (!G->leq(g.add(x, z), g.add(y, z))) {
          d.violations.push_back({"(2)", {x, y, z}, "order on G° is not translation invariant"});
          goto clause2_done;
        }
    }
  }
clause2_done:
  d.clauses_checked.push_back("(2) (G°, <=) is an ordered abelian group");

  d.o_part = make_subquotient(G, H, CoordSubgroup::zero(g), G->name().empty() ? "" : G->name() + "/o-part");
  d.v_part = quotient_qo(G, H, w, G->name().empty() ? "" : G->name() + "/v-part");
  for (const auto& x : enumerate(d.v_part->group(), w))
    if (d.v_part->classify(x) == Classification::otype) {
      d.violations.push_back({"(3')", {d.v_part->lift(x)}, "induced q.o on G/G° is not valuational"});
      break;
    }
  d.clauses_checked.push_back("(3') induced q.o on G/G° is valuational");

  for (const auto& x : W) {
    if (H.contains(x)) continue;
    bool bad = false;
    for (const auto& h : HW) {
      Element y = g.add(x, h);
      if (!G->equiv(x, y)) {
        d.violations.push_back({"(4)", {x, y}, "x not in G°, x-y in G°, but x !~ y"});
        bad = true;
        break;
      }
    }
    if (bad) break;
  }
  d.clauses_checked.push_back("(4) g not in G° and g-h in G° imply g ~ h");

  d.valuation = extract_valuation(*G, w);
  d.product_form = H.is_coordinate_aligned();
  return d;
}

struct Recomposition {
  SpecPtr product;              // o_part ⊛ v_part
  std::vector<std::size_t> o_coords, v_coords;  // original coordinates of each block

  Element to_product(const Element& g) const {
    Element r;
    for (auto i : o_coords) r.push_back(g[i]);
    for (auto i : v_coords) r.push_back(g[i]);
    return r;
  }
};

// Rebuilds G from its parts via g <= h iff (g,h in G° and g <=o h) or
// (h not in G° and v(g+G°) >= v(h+G°)).
inline Recomposition recompose(const Decomposition& d) {
  if (!d.product_form)
    throw Error(ErrorKind::not_product_form, "G° = " + d.o_subgroup.str() + " is not a coordinate direct summand");
  Recomposition r;
  for (std::size_t i = 0; i < d.o_subgroup.dimension(); ++i) {
    if (d.o_subgroup.divisor(i) == 1) r.o_coords.push_back(i);
    else r.v_coords.push_back(i);
  }
  r.product = make_product_spec(d.o_part, d.v_part, d.original->name().empty() ? "" : d.original->name() + "/recomposed");
  return r;
}

}  // namespace qoag
