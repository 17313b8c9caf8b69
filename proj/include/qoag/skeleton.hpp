#pragma once

#include <string>
#include <vector>

#include "qoag/archimedean.hpp"
#include "qoag/constructions.hpp"
#include "qoag/structure.hpp"

namespace qoag {

// Value chain with one component B = upper/lower per value.
struct Skeleton {
  std::vector<long long> chain;
  std::vector<SpecPtr> components;
  std::vector<CoordSubgroup> upper;  // G^γ = {g : v(g) >= γ}
  std::vector<CoordSubgroup> lower;  // G_γ = {g : v(g) > γ}
  std::string source;                // "archimedean" or "support"

  std::size_t position(long long gamma) const {
    for (std::size_t i = 0; i < chain.size(); ++i)
      if (chain[i] == gamma) return i;
    throw Error(ErrorKind::coordinate_mismatch, "value " + value_str(gamma) + " is not in the skeleton");
  }
};

inline void check_skeleton_components(const Skeleton& s, const Window& w) {
  for (std::size_t i = 0; i < s.components.size(); ++i)
    if (!is_compatible_on(*s.components[i], w))
      throw Error(ErrorKind::structure_violation, "skeleton component at " + std::to_string(s.chain[i]) +
                                                      " is not compatible");
}

// Skeleton of (G, v*) where v* comes from the archimedean coarsening.
inline Skeleton arch_skeleton(const SpecPtr& G, const Window& w, long long M = 16) {
  ArchData a = archimedean_coarsening(G, w, M);
  const Group& g = G->group();
  auto subgroup_of = [&](std::size_t max_rank) {
    ElementSet set;
    for (std::size_t i = 0; i < a.elements.size(); ++i)
      if (a.rank[i] <= max_rank) set.insert(a.elements[i]);
    auto h = recognize_subgroup(g, a.elements, set);
    if (!h)
      throw Error(ErrorKind::unsupported_spec, "coarsening class subgroup below rank " + std::to_string(max_rank) +
                                                   " is not a coordinate subgroup");
    return *h;
  };
  Skeleton s;
  s.source = "archimedean";
  // Ranks run upward; values run downward, so walk from the top class.
  for (std::size_t r = a.classes - 1; r >= 1; --r) {
    CoordSubgroup up = subgroup_of(r), low = subgroup_of(r - 1);
    long long gamma = static_cast<long long>(a.classes - 1 - r);
    s.chain.push_back(gamma);
    s.upper.push_back(up);
    s.lower.push_back(low);
    s.components.push_back(make_subquotient(G, up, low, "B" + std::to_string(gamma)));
  }
  check_skeleton_components(s, kComponentWindow);
  return s;
}

// Skeleton read off Hahn coordinates: value i is the i-th block.
inline Skeleton support_skeleton(const SpecPtr& G) {
  const auto* h = std::get_if<HahnQo>(&G->qo());
  if (!h) throw Error(ErrorKind::unsupported_spec, "support skeleton needs Hahn-product coordinates");
  const Group& g = G->group();
  Skeleton s;
  s.source = "support";
  for (std::size_t i = 0; i < h->components.size(); ++i) {
    std::vector<long long> up(g.dimension(), 0), low(g.dimension(), 0);
    for (std::size_t c = h->offsets[i]; c < g.dimension(); ++c) up[c] = 1;
    if (i + 1 < h->components.size())
      for (std::size_t c = h->offsets[i + 1]; c < g.dimension(); ++c) low[c] = 1;
    s.chain.push_back(h->chain[i]);
    s.upper.emplace_back(g, up);
    s.lower.emplace_back(g, low);
    s.components.push_back(make_subquotient(G, s.upper.back(), s.lower.back(), "B" + std::to_string(h->chain[i])));
  }
  return s;
}

struct EmbeddingReport {
  std::string skeleton_source;
  std::vector<long long> chain;
  bool preserves = true;
  bool reflects = true;
  bool value_clause = true;        // w(φ(g)) = v(g)
  bool coefficient_clause = true;  // φ(g) at v(g) is the class of g in B_v(g)
  std::size_t pairs_checked = 0;
  std::vector<ViolationReport> failures;
  std::string coverage;

  bool passed() const { return preserves && reflects && value_clause && coefficient_clause; }
};

// Checks the coordinate map G -> compatible Hahn product of the skeleton
// components on the window. Torsion-free G uses the archimedean skeleton,
// otherwise the block structure of the Hahn presentation.
inline EmbeddingReport verify_hahn_embedding(const SpecPtr& G, const Window& w) {
  if (!std::holds_alternative<HahnQo>(G->qo()))
    throw Error(ErrorKind::unsupported_spec, "embedding is only verified for Hahn-product presentations");
  const Group& g = G->group();
  Skeleton s = g.is_torsion_free() ? arch_skeleton(G, w) : support_skeleton(G);

  // Each coordinate must live in exactly one component.
  std::vector<int> owner(g.dimension(), -1);
  std::vector<std::vector<std::size_t>> coords(s.components.size());
  for (std::size_t k = 0; k < s.components.size(); ++k) {
    if (!s.upper[k].is_coordinate_aligned() || !s.lower[k].is_coordinate_aligned())
      throw Error(ErrorKind::unsupported_spec, "skeleton subgroups are not coordinate-aligned");
    for (std::size_t i = 0; i < g.dimension(); ++i) {
      if (s.upper[k].divisor(i) == 1 && s.lower[k].divisor(i) == 0) {
        if (owner[i] != -1) throw Error(ErrorKind::unsupported_spec, "coordinate shared by two components");
        owner[i] = static_cast<int>(k);
        coords[k].push_back(i);
      }
    }
  }
  for (int o : owner)
    if (o == -1) throw Error(ErrorKind::unsupported_spec, "coordinate not covered by the skeleton");

  SpecPtr H = compatible_hahn_product(s.components, s.chain);
  auto phi = [&](const Element& e) {
    Element r;
    for (const auto& cs : coords)
      for (auto i : cs) r.push_back(e[i]);
    return r;
  };
  // Value of a G element, and w on the target (min support).
  std::optional<ArchData> arch;
  if (s.source == "archimedean") arch = archimedean_coarsening(G, w);
  const auto& hq = std::get<HahnQo>(H->qo());
  auto w_of = [&](const Element& x) -> long long {
    for (std::size_t k = 0; k < hq.components.size(); ++k) {
      Element b = slice(x, hq.offsets[k], hq.components[k]->group().dimension());
      if (!hq.components[k]->group().is_zero(b)) return hq.chain[k];
    }
    return kInfinity;
  };
  auto v_of = [&](const Element& e) -> long long {
    if (arch) return arch->value(e);
    for (std::size_t k = 0; k < s.components.size(); ++k)
      if (!s.lower[k].contains(e)) return s.chain[k];
    return kInfinity;
  };

  EmbeddingReport r;
  r.skeleton_source = s.source;
  r.chain = s.chain;
  r.coverage = coverage_label(g, w);
  auto W = enumerate(g, w);
  std::vector<Element> img;
  img.reserve(W.size());
  for (const auto& e : W) img.push_back(phi(e));
  for (std::size_t i = 0; i < W.size(); ++i) {
    for (std::size_t j = 0; j < W.size(); ++j) {
      ++r.pairs_checked;
      bool a = G->leq(W[i], W[j]), b = H->leq(img[i], img[j]);
      if (a && !b && r.preserves) {
        r.preserves = false;
        r.failures.push_back({"preserve", {W[i], W[j]}, "g <= h but φ(g) is not <= φ(h)"});
      }
      if (b && !a && r.reflects) {
        r.reflects = false;
        r.failures.push_back({"reflect", {W[i], W[j]}, "φ(g) <= φ(h) but g is not <= h"});
      }
    }
    const Element& e = W[i];
    long long v = v_of(e);
    if (w_of(img[i]) != v && r.value_clause) {
      r.value_clause = false;
      r.failures.push_back({"value", {e}, "w(φ(g)) = " + value_str(w_of(img[i])) + ", v(g) = " + value_str(v)});
    }
    if (v == kInfinity) continue;
    std::size_t k = s.position(v);
    bool ok = s.upper[k].contains(e) && !s.lower[k].contains(e);
    if (ok) {
      Element coef = slice(img[i], hq.offsets[k], hq.components[k]->group().dimension());
      ok = coef == s.components[k]->project(e);
    }
    if (!ok && r.coefficient_clause) {
      r.coefficient_clause = false;
      r.failures.push_back({"coefficient", {e}, "coefficient at v(g) is not the class of g in B"});
    }
  }
  return r;
}

}  // namespace qoag
