#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qoag/axioms.hpp"

namespace qoag {

// The coarsening relation on a window. rank[i] is the class of window
// element i under the transitive closure of the bounded relation g ⪯' h
// (exists n, m in [-M, M]\{0} with 0 <= ng <= mh). Class 0 is {0}.
struct ArchData {
  SpecPtr spec;
  Window window;
  long long mult_bound = 16;
  std::vector<Element> elements;
  std::vector<std::size_t> rank;
  std::size_t classes = 0;
  std::vector<Element> lo, hi;  // witnesses for ⪯': min_n {ng : 0 <= ng}, max_m {mh}

  std::size_t index_of(const Element& e) const {
    for (std::size_t i = 0; i < elements.size(); ++i)
      if (elements[i] == e) return i;
    throw Error(ErrorKind::coordinate_mismatch, to_string(e) + " is not in the coarsening window");
  }
  // g ⪯* h on the window.
  bool star(const Element& g, const Element& h) const { return rank[index_of(g)] <= rank[index_of(h)]; }
  // v*(g): classes counted from the top, so larger classes get smaller values.
  long long value(const Element& g) const {
    std::size_t r = rank[index_of(g)];
    return r == 0 ? kInfinity : static_cast<long long>(classes - 1 - r);
  }
};

namespace detail {
inline Element bounded_multiple_extreme(const GroupSpec& G, const Element& g, long long M, bool lowest_nonneg) {
  const Group& grp = G.group();
  Element zero = grp.zero();
  std::optional<Element> best;
  for (long long n = -M; n <= M; ++n) {
    if (n == 0) continue;
    Element ng = grp.scale(g, Scalar(n));
    if (lowest_nonneg) {
      if (!G.leq(zero, ng)) continue;
      if (!best || G.less(ng, *best)) best = ng;
    } else if (!best || G.less(*best, ng)) {
      best = ng;
    }
  }
  return *best;
}
}  // namespace detail

// g ⪯' h with multipliers bounded by M, evaluated without a window.
inline bool arch_prime(const GroupSpec& G, const Element& g, const Element& h, long long M = 16) {
  Element lo = detail::bounded_multiple_extreme(G, g, M, true);
  Element hi = detail::bounded_multiple_extreme(G, h, M, false);
  return G.leq(lo, hi);
}

inline void require_torsion_free(const GroupSpec& G) {
  if (!G.group().is_torsion_free())
    throw Error(ErrorKind::unsupported_spec, "archimedean coarsening needs a torsion-free group, got " + G.group().str());
  if (G.group().dimension() == 0) throw Error(ErrorKind::unsupported_spec, "archimedean coarsening of the zero group");
}

inline ArchData archimedean_coarsening(const SpecPtr& G, const Window& w, long long M = 16) {
  require_torsion_free(*G);
  if (M < 1) throw Error(ErrorKind::invalid_spec, "multiplier bound must be positive");
  ArchData a;
  a.spec = G;
  a.window = w;
  a.mult_bound = M;
  a.elements = enumerate(G->group(), w);
  std::size_t n = a.elements.size();
  for (const auto& e : a.elements) {
    a.lo.push_back(detail::bounded_multiple_extreme(*G, e, M, true));
    a.hi.push_back(detail::bounded_multiple_extreme(*G, e, M, false));
  }
  // Reachability bitsets; reach[i] holds j with i ⪯* j.
  std::size_t words = (n + 63) / 64;
  std::vector<std::vector<std::uint64_t>> reach(n, std::vector<std::uint64_t>(words, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (G->leq(a.lo[i], a.hi[j])) reach[i][j / 64] |= 1ull << (j % 64);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k / 64] >> (k % 64) & 1)
        for (std::size_t t = 0; t < words; ++t) reach[i][t] |= reach[k][t];
  // Relation is total, so the size of the up-set orders the classes.
  std::vector<std::size_t> up(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t c = 0;
    for (auto word : reach[i]) c += static_cast<std::size_t>(__builtin_popcountll(word));
    up[i] = c;
  }
  std::vector<std::size_t> sizes(up);
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  a.classes = sizes.size();
  a.rank.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    a.rank[i] = static_cast<std::size_t>(std::find(sizes.begin(), sizes.end(), up[i]) - sizes.begin());
  return a;
}

// Sanity checks of an ArchData on its own window: coarsening of <= on absolute
// values (|g| <= |h| implies g ⪯* h), valuational (0 alone at the bottom,
// g ≈* -g, ultrametric), and g ≈* ng for 1 <= n <= M.
inline std::optional<ViolationReport> check_arch_data(const ArchData& a) {
  const GroupSpec& G = *a.spec;
  const Group& grp = G.group();
  std::size_t n = a.elements.size();
  auto in = [&](const Element& e) -> std::optional<std::size_t> {
    if (!in_window(grp, a.window, e)) return std::nullopt;
    return a.index_of(e);
  };
  std::vector<Element> absval;
  for (const auto& e : a.elements) {
    Element ne = grp.neg(e);
    absval.push_back(G.leq(ne, e) ? e : ne);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Element& g = a.elements[i];
    bool zero = grp.is_zero(g);
    if (zero != (a.rank[i] == 0)) return ViolationReport{"valuational", {g}, "only 0 may sit in the bottom class"};
    if (a.rank[*in(grp.neg(g))] != a.rank[i]) return ViolationReport{"valuational", {g}, "g and -g differ"};
    for (long long m = 1; m <= a.mult_bound; ++m) {
      auto j = in(grp.scale(g, Scalar(m)));
      if (j && a.rank[*j] != a.rank[i]) return ViolationReport{"multiples", {g}, "g and " + std::to_string(m) + "g differ"};
    }
    for (std::size_t j = 0; j < n; ++j) {
      const Element& h = a.elements[j];
      if (G.leq(absval[i], absval[j]) && a.rank[i] > a.rank[j])
        return ViolationReport{"coarsening", {g, h}, "|g| <= |h| but not g ⪯* h"};
      if (a.rank[j] <= a.rank[i]) {
        auto s = in(grp.add(g, h));
        if (s && a.rank[*s] > a.rank[i])
          return ViolationReport{"ultrametric", {g, h}, "h ⪯* g but g+h is not ⪯* g"};
      }
    }
  }
  return std::nullopt;
}

}  // namespace qoag
