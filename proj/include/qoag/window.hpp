#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "qoag/group.hpp"

namespace qoag {

// Bounded enumeration domain. Free coordinates range over [-bound, bound];
// rational coordinates over p/q with q <= max_denominator and |p/q| <= bound.
// Torsion coordinates are always enumerated in full.
struct Window {
  long long bound = 3;
  long long max_denominator = 2;
};

// Values of one coordinate, centre-out: 0, 1, -1, 2, -2, ...
inline std::vector<Scalar> coordinate_values(const Factor& f, const Window& w) {
  std::vector<Scalar> v;
  switch (f.kind) {
    case FactorKind::cyclic:
      for (long long i = 0; i < f.order; ++i) v.emplace_back(i);
      break;
    case FactorKind::integer:
      v.emplace_back(0);
      for (long long i = 1; i <= w.bound; ++i) {
        v.emplace_back(i);
        v.emplace_back(-i);
      }
      break;
    case FactorKind::rational: {
      std::vector<Scalar> pos;
      for (long long q = 1; q <= std::max(1LL, w.max_denominator); ++q)
        for (long long p = 1; p <= w.bound * q; ++p) pos.push_back(Scalar::fraction(p, q));
      std::sort(pos.begin(), pos.end());
      pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
      v.emplace_back(0);
      for (const auto& p : pos) {
        v.push_back(p);
        v.push_back(-p);
      }
      break;
    }
  }
  return v;
}

// Window elements in lexicographic order over coordinates, each coordinate
// taking its values in coordinate_values order. For a finite group this is
// the whole group, in index order.
inline std::vector<Element> enumerate(const Group& g, const Window& w) {
  std::vector<std::vector<Scalar>> vals;
  std::size_t total = 1;
  for (const auto& f : g.factors()) {
    vals.push_back(coordinate_values(f, w));
    total *= vals.back().size();
  }
  std::vector<Element> out;
  out.reserve(total);
  std::vector<std::size_t> idx(g.dimension(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    Element e(g.dimension());
    for (std::size_t i = 0; i < idx.size(); ++i) e[i] = vals[i][idx[i]];
    out.push_back(std::move(e));
    for (std::size_t i = idx.size(); i-- > 0;) {
      if (++idx[i] < vals[i].size()) break;
      idx[i] = 0;
    }
  }
  return out;
}

inline bool in_window(const Group& g, const Window& w, const Element& e) {
  for (std::size_t i = 0; i < e.size(); ++i) {
    const auto& f = g.factor(i);
    if (f.kind == FactorKind::cyclic) continue;
    if (e[i].abs() > Scalar(w.bound)) return false;
    if (f.kind == FactorKind::rational && e[i].denominator() > w.max_denominator) return false;
  }
  return true;
}

// "exhaustive" when the window covers the group, otherwise names the bound.
inline std::string coverage_label(const Group& g, const Window& w) {
  if (g.is_finite()) return "exhaustive";
  std::string s = "window-verified up to N=" + std::to_string(w.bound);
  if (g.has_rational()) s += ", denominators <= " + std::to_string(w.max_denominator);
  return s;
}

}  // namespace qoag
