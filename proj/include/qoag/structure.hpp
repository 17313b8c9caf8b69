#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qoag/axioms.hpp"

namespace qoag {

struct OPart {
  std::vector<Element> members;          // window elements that are not v-type, enumeration order
  std::optional<CoordSubgroup> subgroup;  // coordinate description, when one exists
  bool from_spec = false;                 // description read off the spec rather than recognized
};

// Coordinate description of G° implied by the spec itself, where available.
inline std::optional<CoordSubgroup> spec_o_part(const GroupSpec& G) {
  const Group& g = G.group();
  if (std::holds_alternative<LexQo>(G.qo())) {
    // The degenerate Z/2 coordinate is v-type.
    std::vector<long long> d(g.dimension(), 1);
    for (std::size_t i = 0; i < d.size(); ++i)
      if (g.factor(i).kind == FactorKind::cyclic) d[i] = 0;
    return CoordSubgroup(g, d);
  }
  if (std::holds_alternative<ValuationQo>(G.qo())) return CoordSubgroup::zero(g);
  if (auto* p = std::get_if<ProductQo>(&G.qo())) {
    std::vector<long long> d(g.dimension(), 0);
    for (std::size_t i = 0; i < p->ordered->group().dimension(); ++i) d[i] = 1;
    return CoordSubgroup(g, d);
  }
  if (auto* e = std::get_if<ExtensionQo>(&G.qo())) return e->ordered_part;
  if (auto* h = std::get_if<HahnQo>(&G.qo())) {
    std::vector<long long> d;
    for (const auto& c : h->components) {
      auto sub = spec_o_part(*c);
      if (!sub) return std::nullopt;
      d.insert(d.end(), sub->divisors().begin(), sub->divisors().end());
    }
    return CoordSubgroup(g, d);
  }
  return std::nullopt;
}

// G° on the window: not-v-type elements, checked to be closed under + and -
// (where the result stays in the window) and to form an initial segment.
inline OPart o_part(const GroupSpec& G, const Window& w) {
  const Group& g = G.group();
  auto W = enumerate(g, w);
  OPart out;
  ElementSet set;
  for (const auto& e : W)
    if (G.in_o_part(e)) {
      out.members.push_back(e);
      set.insert(e);
    }
  for (const auto& a : out.members) {
    Element na = g.neg(a);
    if (in_window(g, w, na) && !set.count(na))
      throw Error(ErrorKind::structure_violation, "o-type set is not a group: " + to_string(a) +
                                                      " is in it but its negative is not");
    for (const auto& b : out.members) {
      Element s = g.add(a, b);
      if (in_window(g, w, s) && !set.count(s))
        throw Error(ErrorKind::structure_violation, "o-type set is not a group: " + to_string(a) + " + " +
                                                        to_string(b) + " = " + to_string(s) + " is v-type");
    }
  }
  // Initial segment: nothing outside lies below the maximum inside.
  if (!out.members.empty()) {
    const Element* top = &out.members.front();
    for (const auto& a : out.members)
      if (G.compare(*top, a) == Cmp::below) top = &a;
    for (const auto& e : W)
      if (!set.count(e) && G.leq(e, *top))
        throw Error(ErrorKind::structure_violation, "o-type set is not an initial segment: " + to_string(e) +
                                                        " is v-type but <= " + to_string(*top));
  }
  if (auto s = spec_o_part(G)) {
    for (const auto& e : W)
      if (s->contains(e) != (set.count(e) > 0))
        throw Error(ErrorKind::structure_violation, "spec-level ordered part disagrees with classification at " +
                                                        to_string(e));
    out.subgroup = s;
    out.from_spec = true;
  } else {
    out.subgroup = recognize_subgroup(g, W, set);
  }
  return out;
}

struct ExtractedValuation {
  std::vector<long long> chain;  // increasing finite values; gamma0 is the last
  long long gamma0 = 0;
  std::vector<Element> reps;     // representative of each v-type class, by value
  std::vector<std::pair<Element, long long>> values;  // window element -> value

  long long value_of(const Element& e) const {
    for (const auto& [x, v] : values)
      if (x == e) return v;
    throw Error(ErrorKind::coordinate_mismatch, to_string(e) + " is not in the window");
  }
};

// Valuation v(g) = class of g on G^v, gamma0 on G°\{0}, inf at 0. Classes of
// v-type elements are numbered from the top: the highest class gets 0.
inline ExtractedValuation extract_valuation(const GroupSpec& G, const Window& w) {
  const Group& g = G.group();
  o_part(G, w);  // structure checks
  auto W = enumerate(g, w);
  std::vector<Element> vt;
  for (const auto& e : W)
    if (G.classify(e) == Classification::vtype) vt.push_back(e);
  // Sort v-type elements into classes, highest first.
  std::vector<Element> reps;
  for (const auto& e : vt) {
    bool placed = false;
    for (const auto& r : reps)
      if (G.equiv(e, r)) {
        placed = true;
        break;
      }
    if (!placed) reps.push_back(e);
  }
  std::sort(reps.begin(), reps.end(), [&](const Element& a, const Element& b) { return G.less(b, a); });
  ExtractedValuation out;
  out.reps = reps;
  for (std::size_t i = 0; i <= reps.size(); ++i) out.chain.push_back(static_cast<long long>(i));
  out.gamma0 = static_cast<long long>(reps.size());
  auto value = [&](const Element& e) -> std::optional<long long> {
    switch (G.classify(e)) {
      case Classification::zero: return kInfinity;
      case Classification::otype: return out.gamma0;
      case Classification::vtype:
        for (std::size_t i = 0; i < reps.size(); ++i)
          if (G.equiv(e, reps[i])) return static_cast<long long>(i);
        return std::nullopt;  // class not represented in the window
    }
    return std::nullopt;
  };
  for (const auto& e : W) out.values.emplace_back(e, *value(e));
  // Ultrametric inequality, and symmetry.
  for (const auto& [a, va] : out.values) {
    if (*value(g.neg(a)) != va)
      throw Error(ErrorKind::structure_violation, "v(-g) != v(g) at g=" + to_string(a));
    for (const auto& [b, vb] : out.values) {
      auto s = value(g.add(a, b));
      if (s && *s < std::min(va, vb))
        throw Error(ErrorKind::structure_violation,
                    "ultrametric inequality fails at " + to_string(a) + ", " + to_string(b));
    }
  }
  return out;
}

// A subgroup given either by coordinates or, for finite groups, by its members.
class Subgroup {
 public:
  Subgroup(CoordSubgroup c) : coord_(std::move(c)) {}
  Subgroup(ElementSet s) : set_(std::move(s)) {}
  bool contains(const Element& e) const { return coord_ ? coord_->contains(e) : set_.count(e) > 0; }
  const std::optional<CoordSubgroup>& coordinates() const { return coord_; }
  bool is_explicit() const { return !coord_; }
  const ElementSet& members() const { return set_; }

 private:
  std::optional<CoordSubgroup> coord_;
  ElementSet set_;
};

struct ConvexityReport {
  bool convex = false;
  std::vector<Element> witness;  // s <= a <= t with s,t in H, a outside
  bool h_in_o_part = false;      // H ⊆ G° on the window
  bool o_part_in_h = false;      // G° ⊆ H on the window
  std::string coverage;
};

inline ConvexityReport is_convex(const GroupSpec& G, const Subgroup& H, const Window& w) {
  const Group& g = G.group();
  auto W = enumerate(g, w);
  if (H.is_explicit()) {
    for (const auto& a : H.members()) {
      g.validate(a);
      if (!H.contains(g.neg(a))) throw Error(ErrorKind::not_a_subgroup, "not closed under negation at " + to_string(a));
      for (const auto& b : H.members())
        if (!H.contains(g.add(a, b)))
          throw Error(ErrorKind::not_a_subgroup, "not closed under + at " + to_string(a) + ", " + to_string(b));
    }
    if (!H.contains(g.zero())) throw Error(ErrorKind::not_a_subgroup, "does not contain 0");
  }
  ConvexityReport r;
  r.coverage = coverage_label(g, w);
  const Element *lo = nullptr, *hi = nullptr;
  for (const auto& e : W) {
    if (!H.contains(e)) continue;
    if (!lo || G.less(e, *lo)) lo = &e;
    if (!hi || G.less(*hi, e)) hi = &e;
  }
  r.convex = true;
  for (const auto& a : W) {
    if (H.contains(a)) continue;
    if (G.leq(*lo, a) && G.leq(a, *hi)) {
      r.convex = false;
      r.witness = {*lo, a, *hi};
      break;
    }
  }
  r.h_in_o_part = true;
  r.o_part_in_h = true;
  for (const auto& e : W) {
    bool o = G.in_o_part(e), h = H.contains(e);
    if (h && !o) r.h_in_o_part = false;
    if (o && !h) r.o_part_in_h = false;
  }
  return r;
}

// G/H with g+H <= h+H iff g-h in H or g <= h. Re-verifies the side condition
// (g1-g2 not in H, g1 <= g2) => g1+h1 <= g2+h2 on the window.
inline SpecPtr quotient_qo(const SpecPtr& G, const CoordSubgroup& H, const Window& w, std::string name = {}) {
  const Group& g = G->group();
  auto conv = is_convex(*G, Subgroup(H), w);
  if (!conv.convex)
    throw Error(ErrorKind::quotient_condition_violated, "subgroup " + H.str() + " is not convex: " +
                                                            render_tuple(conv.witness));
  auto W = enumerate(g, w);
  // Translates h1, h2 range over H within a window of bound at most 3.
  Window hw = w;
  hw.bound = std::min<long long>(w.bound, 3);
  std::vector<Element> HW;
  for (const auto& e : enumerate(g, hw))
    if (H.contains(e)) HW.push_back(e);
  for (const auto& g1 : W)
    for (const auto& g2 : W) {
      if (H.contains(g.sub(g1, g2)) || !G->leq(g1, g2)) continue;
      for (const auto& h1 : HW)
        for (const auto& h2 : HW)
          if (!G->leq(g.add(g1, h1), g.add(g2, h2)))
            throw Error(ErrorKind::quotient_condition_violated,
                        "witness (g1,g2,h1,h2)=" + render_tuple({g1, g2, h1, h2}));
    }
  return make_subquotient(G, CoordSubgroup::whole(g), H, std::move(name));
}

}  // namespace qoag
