#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "qoag/group.hpp"
#include "qoag/subgroup.hpp"
#include "qoag/valuation.hpp"

namespace qoag {

class GroupSpec;
using SpecPtr = std::shared_ptr<const GroupSpec>;

enum class Cmp { below, equivalent, above };
enum class Classification { zero, otype, vtype };

inline const char* cmp_name(Cmp c) {
  switch (c) {
    case Cmp::below: return "StrictBelow";
    case Cmp::equivalent: return "Equivalent";
    case Cmp::above: return "StrictAbove";
  }
  return "?";
}
inline const char* classification_name(Classification c) {
  switch (c) {
    case Classification::zero: return "Zero";
    case Classification::otype: return "OType";
    case Classification::vtype: return "VType";
  }
  return "?";
}
inline Cmp flip(Cmp c) { return c == Cmp::below ? Cmp::above : c == Cmp::above ? Cmp::below : c; }

// Total preorder on a finite group as a rank function; lower rank is lower.
struct TableQo {
  std::vector<std::uint32_t> rank;
};

// Lexicographic order over coordinates in priority order. A Z/2 coordinate
// (ordered 0 < 1) is only admitted with the degenerate flag.
struct LexQo {
  std::vector<std::size_t> priority;
  bool degenerate_z2 = false;
};

// g <= h iff v(g) >= v(h).
struct ValuationQo {
  Valuation valuation;
};

// Ordered part coordinates first, then the valued part.
struct ProductQo {
  SpecPtr ordered;
  SpecPtr valued;
};

enum class HahnFlavor { lexicographic, valuational, compatible };

inline const char* hahn_flavor_name(HahnFlavor f) {
  switch (f) {
    case HahnFlavor::lexicographic: return "lexicographic";
    case HahnFlavor::valuational: return "valuational";
    case HahnFlavor::compatible: return "compatible";
  }
  return "?";
}

// Finite Hahn product. Components are listed in chain order; the component
// at the smallest index dominates.
struct HahnQo {
  HahnFlavor flavor = HahnFlavor::compatible;
  std::vector<long long> chain;
  std::vector<SpecPtr> components;
  std::vector<std::size_t> offsets;  // first coordinate of each block
};

// Lexicographic order on a coordinate subgroup H, valuation on G outside H,
// H strictly below everything else.
struct ExtensionQo {
  CoordSubgroup ordered_part;
  std::vector<std::size_t> priority;
  Valuation coset_valuation;
};

// sub/mod of a parent spec, with the induced quasi-order
// g+mod <= h+mod iff g-h in mod or g <= h.
struct SubquotientQo {
  SpecPtr parent;
  CoordSubgroup sub;
  CoordSubgroup mod;
  std::vector<std::size_t> kept;  // parent coordinate behind each coordinate
};

using QoDef = std::variant<TableQo, LexQo, ValuationQo, ProductQo, HahnQo, ExtensionQo, SubquotientQo>;

class GroupSpec {
 public:
  GroupSpec(Group group, QoDef qo, std::string name = {})
      : group_(std::move(group)), qo_(std::move(qo)), name_(std::move(name)) {}

  const Group& group() const { return group_; }
  const QoDef& qo() const { return qo_; }
  const std::string& name() const { return name_; }
  std::string kind_name() const {
    static const char* names[] = {"table", "lex", "valuation", "product", "hahn", "extension", "subquotient"};
    return names[qo_.index()];
  }

  Cmp compare(const Element& g, const Element& h) const {
    check_dim(g);
    check_dim(h);
    return compare_unchecked(g, h);
  }
  bool leq(const Element& g, const Element& h) const { return compare(g, h) != Cmp::above; }
  bool less(const Element& g, const Element& h) const { return compare(g, h) == Cmp::below; }
  bool equiv(const Element& g, const Element& h) const { return compare(g, h) == Cmp::equivalent; }

  Classification classify(const Element& g) const {
    check_dim(g);
    if (group_.is_zero(g)) return Classification::zero;
    return compare_unchecked(g, group_.neg(g)) == Cmp::equivalent ? Classification::vtype : Classification::otype;
  }
  bool in_o_part(const Element& g) const { return classify(g) != Classification::vtype; }

  Cmp compare_unchecked(const Element& g, const Element& h) const {
    return std::visit([&](const auto& q) { return cmp(q, g, h); }, qo_);
  }

  // Subquotient helpers.
  Element lift(const Element& x) const;
  Element project(const Element& parent_elem) const;

 private:
  Group group_;
  QoDef qo_;
  std::string name_;

  void check_dim(const Element& g) const {
    if (g.size() != group_.dimension())
      throw Error(ErrorKind::coordinate_mismatch, "element " + to_string(g) + " does not belong to " + group_.str());
  }

  static Cmp of_leq(bool gh, bool hg) {
    if (gh && hg) return Cmp::equivalent;
    return gh ? Cmp::below : Cmp::above;
  }

  Cmp cmp(const TableQo& q, const Element& g, const Element& h) const {
    auto a = q.rank[group_.index_of(g)], b = q.rank[group_.index_of(h)];
    return a < b ? Cmp::below : a > b ? Cmp::above : Cmp::equivalent;
  }

  Cmp cmp(const LexQo& q, const Element& g, const Element& h) const {
    for (std::size_t i : q.priority) {
      auto c = g[i] <=> h[i];
      if (c < 0) return Cmp::below;
      if (c > 0) return Cmp::above;
    }
    return Cmp::equivalent;
  }

  Cmp cmp(const ValuationQo& q, const Element& g, const Element& h) const {
    long long a = q.valuation(group_, g), b = q.valuation(group_, h);
    return a > b ? Cmp::below : a < b ? Cmp::above : Cmp::equivalent;
  }

  Cmp cmp(const ProductQo& q, const Element& g, const Element& h) const {
    std::size_t k = q.ordered->group().dimension();
    std::size_t m = q.valued->group().dimension();
    Element go = slice(g, 0, k), gv = slice(g, k, m), ho = slice(h, 0, k), hv = slice(h, k, m);
    const Group& vg = q.valued->group();
    bool gz = vg.is_zero(gv), hz = vg.is_zero(hv);
    auto leq = [&](const Element& ao, const Element& av, bool az, const Element& bo, const Element& bv, bool bz) {
      if (az && bz) return q.ordered->compare_unchecked(ao, bo) != Cmp::above;
      return !bz && q.valued->compare_unchecked(av, bv) != Cmp::above;
    };
    return of_leq(leq(go, gv, gz, ho, hv, hz), leq(ho, hv, hz, go, gv, gz));
  }

  Cmp cmp(const HahnQo& q, const Element& g, const Element& h) const {
    std::size_t n = q.components.size();
    auto block = [&](const Element& e, std::size_t i) {
      return slice(e, q.offsets[i], q.components[i]->group().dimension());
    };
    switch (q.flavor) {
      case HahnFlavor::lexicographic:
        for (std::size_t i = 0; i < n; ++i) {
          Element a = block(g, i), b = block(h, i);
          if (a != b) return q.components[i]->compare_unchecked(a, b);
        }
        return Cmp::equivalent;
      case HahnFlavor::valuational:
        for (std::size_t i = 0; i < n; ++i) {
          Element a = block(g, i), b = block(h, i);
          const Group& cg = q.components[i]->group();
          if (!cg.is_zero(a) || !cg.is_zero(b)) return q.components[i]->compare_unchecked(a, b);
        }
        return Cmp::equivalent;
      case HahnFlavor::compatible: {
        std::vector<Element> gb(n), hb(n);
        std::vector<bool> gv(n), hv(n);
        bool g_in = true, h_in = true;
        for (std::size_t i = 0; i < n; ++i) {
          gb[i] = block(g, i);
          hb[i] = block(h, i);
          gv[i] = q.components[i]->classify(gb[i]) == Classification::vtype;
          hv[i] = q.components[i]->classify(hb[i]) == Classification::vtype;
          g_in = g_in && !gv[i];
          h_in = h_in && !hv[i];
        }
        auto lex_leq = [&](const std::vector<Element>& a, const std::vector<Element>& b) {
          for (std::size_t i = 0; i < n; ++i)
            if (a[i] != b[i]) return q.components[i]->compare_unchecked(a[i], b[i]) != Cmp::above;
          return true;
        };
        // Valuational Hahn product of the quotients B/B°.
        auto val_leq = [&](const std::vector<Element>& a, const std::vector<bool>& av, const std::vector<Element>& b,
                           const std::vector<bool>& bv) {
          for (std::size_t i = 0; i < n; ++i) {
            if (!av[i] && !bv[i]) continue;
            const auto& c = *q.components[i];
            if (c.classify(c.group().sub(a[i], b[i])) != Classification::vtype) return true;
            return c.compare_unchecked(a[i], b[i]) != Cmp::above;
          }
          return true;
        };
        auto leq = [&](const std::vector<Element>& a, const std::vector<bool>& av, bool a_in,
                       const std::vector<Element>& b, const std::vector<bool>& bv, bool b_in) {
          if (a_in && b_in) return lex_leq(a, b);
          return !b_in && val_leq(a, av, b, bv);
        };
        return of_leq(leq(gb, gv, g_in, hb, hv, h_in), leq(hb, hv, h_in, gb, gv, g_in));
      }
    }
    return Cmp::equivalent;
  }

  Cmp cmp(const ExtensionQo& q, const Element& g, const Element& h) const {
    bool gi = q.ordered_part.contains(g), hi = q.ordered_part.contains(h);
    if (gi && hi) {
      for (std::size_t i : q.priority) {
        auto c = g[i] <=> h[i];
        if (c < 0) return Cmp::below;
        if (c > 0) return Cmp::above;
      }
      return Cmp::equivalent;
    }
    if (gi) return Cmp::below;
    if (hi) return Cmp::above;
    long long a = q.coset_valuation(group_, g), b = q.coset_valuation(group_, h);
    return a > b ? Cmp::below : a < b ? Cmp::above : Cmp::equivalent;
  }

  Cmp cmp(const SubquotientQo& q, const Element& g, const Element& h) const {
    if (g == h) return Cmp::equivalent;
    return q.parent->compare_unchecked(lift(g), lift(h));
  }
};

// ---- construction ---------------------------------------------------------

inline SpecPtr make_table(const Group& g, std::vector<std::uint32_t> rank, std::string name = {}) {
  if (!g.is_finite()) throw Error(ErrorKind::invalid_spec, "table quasi-orders need a finite group");
  if (rank.size() != g.order()) throw Error(ErrorKind::invalid_spec, "rank table does not cover the group");
  return std::make_shared<GroupSpec>(g, TableQo{std::move(rank)}, std::move(name));
}

inline SpecPtr make_lex(const Group& g, std::vector<std::size_t> priority = {}, bool degenerate_z2 = false,
                        std::string name = {}) {
  if (priority.empty())
    for (std::size_t i = 0; i < g.dimension(); ++i) priority.push_back(i);
  std::vector<bool> seen(g.dimension(), false);
  for (std::size_t i : priority) {
    if (i >= g.dimension() || seen[i]) throw Error(ErrorKind::invalid_spec, "bad lex priority list");
    seen[i] = true;
  }
  for (std::size_t i = 0; i < g.dimension(); ++i) {
    if (!seen[i]) throw Error(ErrorKind::invalid_spec, "lex priority must list every coordinate");
    const auto& f = g.factor(i);
    if (f.kind == FactorKind::cyclic && !(f.order == 2 && degenerate_z2))
      throw Error(ErrorKind::invalid_spec, "lex order on torsion coordinate " + f.str() +
                                               " (only Z/2 with the degenerate flag is admitted)");
  }
  return std::make_shared<GroupSpec>(g, LexQo{std::move(priority), degenerate_z2}, std::move(name));
}

inline SpecPtr make_valuation(const Group& g, Valuation v, std::string name = {}) {
  v.validate_shape(g);
  return std::make_shared<GroupSpec>(g, ValuationQo{std::move(v)}, std::move(name));
}

// Trivial valuation: every nonzero element has value 0.
inline SpecPtr make_trivial_valuation(const Group& g, std::string name = {}) {
  return make_valuation(g, Valuation(Valuation::Rules{{ValuationRule{0, {}}}}), std::move(name));
}

// p-adic valuation on Z/p^k, tabulated.
inline SpecPtr make_padic_cyclic(long long p, int k, std::string name = {}) {
  long long n = 1;
  for (int i = 0; i < k; ++i) n *= p;
  Group g({Factor::cyclic(n)});
  std::vector<long long> vals(static_cast<std::size_t>(n), kInfinity);
  for (long long x = 1; x < n; ++x) {
    long long v = 0, y = x;
    while (y % p == 0) {
      y /= p;
      ++v;
    }
    vals[static_cast<std::size_t>(x)] = v;
  }
  return make_valuation(g, Valuation(Valuation::Table{std::move(vals)}), std::move(name));
}

inline SpecPtr make_product_spec(SpecPtr ordered, SpecPtr valued, std::string name = {}) {
  Group g = ordered->group().concat(valued->group());
  return std::make_shared<GroupSpec>(g, ProductQo{std::move(ordered), std::move(valued)}, std::move(name));
}

inline SpecPtr make_hahn_spec(HahnFlavor flavor, std::vector<long long> chain, std::vector<SpecPtr> components,
                              std::string name = {}) {
  if (components.empty()) throw Error(ErrorKind::invalid_spec, "Hahn product needs at least one component");
  if (chain.empty())
    for (std::size_t i = 0; i < components.size(); ++i) chain.push_back(static_cast<long long>(i));
  if (chain.size() != components.size()) throw Error(ErrorKind::invalid_spec, "chain and component counts differ");
  for (std::size_t i = 1; i < chain.size(); ++i)
    if (chain[i] <= chain[i - 1]) throw Error(ErrorKind::invalid_spec, "chain indices must increase strictly");
  Group g;
  std::vector<std::size_t> offsets;
  for (const auto& c : components) {
    offsets.push_back(g.dimension());
    g = g.concat(c->group());
  }
  return std::make_shared<GroupSpec>(g, HahnQo{flavor, std::move(chain), std::move(components), std::move(offsets)},
                                     std::move(name));
}

inline SpecPtr make_extension(const Group& g, CoordSubgroup h, std::vector<std::size_t> priority, Valuation v,
                              std::string name = {}) {
  if (h.dimension() != g.dimension()) throw Error(ErrorKind::invalid_spec, "ordered subgroup has wrong dimension");
  if (priority.empty())
    for (std::size_t i = 0; i < g.dimension(); ++i) priority.push_back(i);
  for (std::size_t i = 0; i < g.dimension(); ++i)
    if (h.divisor(i) != 0 && g.factor(i).kind == FactorKind::cyclic)
      throw Error(ErrorKind::invalid_spec, "ordered subgroup meets a torsion coordinate");
  for (std::size_t i : priority)
    if (i >= g.dimension()) throw Error(ErrorKind::invalid_spec, "bad extension priority list");
  v.validate_shape(g);
  return std::make_shared<GroupSpec>(g, ExtensionQo{std::move(h), std::move(priority), std::move(v)},
                                     std::move(name));
}

// Factor of a subquotient coordinate, or nullopt when it collapses.
inline std::optional<Factor> subquotient_factor(const Factor& f, long long d, long long e) {
  if (d == 0) return std::nullopt;
  switch (f.kind) {
    case FactorKind::rational:
      return e == 0 ? std::optional<Factor>(Factor::rationals()) : std::nullopt;
    case FactorKind::integer:
      if (e == 0) return Factor::integers();
      if (e / d == 1) return std::nullopt;
      return Factor::cyclic(e / d);
    case FactorKind::cyclic: {
      long long top = e == 0 ? f.order : e;
      if (top / d == 1) return std::nullopt;
      return Factor::cyclic(top / d);
    }
  }
  return std::nullopt;
}

inline SpecPtr make_subquotient(SpecPtr parent, CoordSubgroup sub, CoordSubgroup mod, std::string name = {}) {
  const Group& pg = parent->group();
  if (sub.dimension() != pg.dimension() || mod.dimension() != pg.dimension())
    throw Error(ErrorKind::coordinate_mismatch, "subquotient description has wrong dimension");
  if (!mod.is_subset_of(sub)) throw Error(ErrorKind::invalid_spec, "subquotient modulus is not inside the subgroup");
  std::vector<Factor> f;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < pg.dimension(); ++i) {
    if (auto fac = subquotient_factor(pg.factor(i), sub.divisor(i), mod.divisor(i))) {
      f.push_back(*fac);
      kept.push_back(i);
    }
  }
  return std::make_shared<GroupSpec>(Group(std::move(f)),
                                     SubquotientQo{std::move(parent), std::move(sub), std::move(mod), std::move(kept)},
                                     std::move(name));
}

inline Element GroupSpec::lift(const Element& x) const {
  const auto& q = std::get<SubquotientQo>(qo_);
  const Group& pg = q.parent->group();
  Element g = pg.zero();
  for (std::size_t j = 0; j < q.kept.size(); ++j) {
    std::size_t i = q.kept[j];
    g[i] = x[j] * Scalar(q.sub.divisor(i));
  }
  return pg.make(std::move(g));
}

inline Element GroupSpec::project(const Element& pe) const {
  const auto& q = std::get<SubquotientQo>(qo_);
  if (!q.sub.contains(pe))
    throw Error(ErrorKind::coordinate_mismatch, to_string(pe) + " is outside the subquotient's subgroup");
  Element x(q.kept.size());
  for (std::size_t j = 0; j < q.kept.size(); ++j) {
    std::size_t i = q.kept[j];
    x[j] = pe[i] / Scalar(q.sub.divisor(i));
  }
  return group_.make(std::move(x));
}

}  // namespace qoag
