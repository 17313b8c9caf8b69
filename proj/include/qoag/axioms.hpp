#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qoag/qo.hpp"
#include "qoag/window.hpp"

namespace qoag {

struct ViolationReport {
  std::string axiom;
  std::vector<Element> witness;
  std::string rendering;
};

inline std::string render_tuple(const std::vector<Element>& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += to_string(w[i]);
  }
  return s + ")";
}

// Outcome of a windowed check. coverage is "exhaustive" on finite groups and
// "window-verified up to N=..." otherwise; a pass is never called a proof.
struct Verdict {
  std::optional<ViolationReport> violation;
  std::string coverage;
  bool passed() const { return !violation.has_value(); }
};

// Pairwise comparison table over a window, to avoid recomputing compare.
class CompareTable {
 public:
  CompareTable(const GroupSpec& g, const std::vector<Element>& w) : n_(w.size()), t_(n_ * n_) {
    for (std::size_t i = 0; i < n_; ++i) {
      t_[i * n_ + i] = Cmp::equivalent;
      for (std::size_t j = i + 1; j < n_; ++j) {
        Cmp c = g.compare(w[i], w[j]);
        t_[i * n_ + j] = c;
        t_[j * n_ + i] = flip(c);
      }
    }
  }
  Cmp operator()(std::size_t i, std::size_t j) const { return t_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<Cmp> t_;
};

// (Q1): x ~ 0 implies x = 0.
inline Verdict check_q1(const GroupSpec& G, const Window& w) {
  Verdict v{std::nullopt, coverage_label(G.group(), w)};
  Element zero = G.group().zero();
  for (const auto& x : enumerate(G.group(), w)) {
    if (!G.group().is_zero(x) && G.equiv(x, zero)) {
      v.violation = ViolationReport{"Q1", {x}, "x=" + to_string(x) + " satisfies x ~ 0 but x != 0"};
      break;
    }
  }
  return v;
}

// (Q2): x <= y, y !~ z implies x+z <= y+z. First witness in (x, y, z)
// enumeration order.
inline Verdict check_q2(const GroupSpec& G, const Window& w) {
  Verdict v{std::nullopt, coverage_label(G.group(), w)};
  const Group& grp = G.group();
  auto W = enumerate(grp, w);
  CompareTable ct(G, W);
  std::size_t n = W.size();
  bool cache_sums = n <= 1200;
  std::vector<Element> sums;
  if (cache_sums) {
    sums.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sums[i * n + j] = grp.add(W[i], W[j]);
  }
  std::vector<Element> xz(n), yz(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (ct(x, y) == Cmp::above) continue;
      for (std::size_t z = 0; z < n; ++z) {
        if (ct(y, z) == Cmp::equivalent) continue;
        const Element& a = cache_sums ? sums[x * n + z] : (xz[z] = grp.add(W[x], W[z]));
        const Element& b = cache_sums ? sums[y * n + z] : (yz[z] = grp.add(W[y], W[z]));
        if (G.compare_unchecked(a, b) == Cmp::above) {
          v.violation = ViolationReport{
              "Q2",
              {W[x], W[y], W[z]},
              "x=" + to_string(W[x]) + ", y=" + to_string(W[y]) + ", z=" + to_string(W[z]) + ": x <= y !~ z but x+z=" +
                  to_string(a) + " is not <= y+z=" + to_string(b)};
          return v;
        }
      }
    }
  }
  return v;
}

// (VM_n): -g <= g implies g <= n g.
inline Verdict check_vm(const GroupSpec& G, long long n, const Window& w) {
  if (n < 1) throw Error(ErrorKind::invalid_spec, "VM_n needs n >= 1");
  Verdict v{std::nullopt, coverage_label(G.group(), w)};
  const Group& grp = G.group();
  for (const auto& g : enumerate(grp, w)) {
    if (!G.leq(grp.neg(g), g)) continue;
    Element ng = grp.scale(g, Scalar(n));
    if (!G.leq(g, ng)) {
      v.violation = ViolationReport{"VM_" + std::to_string(n), {g},
                                    "g=" + to_string(g) + ": -g <= g but g is not <= " + std::to_string(n) +
                                        "g=" + to_string(ng)};
      break;
    }
  }
  return v;
}

// Totality is built into Cmp; this checks transitivity of the returned
// relation and antisymmetry of the comparison results.
inline Verdict check_preorder(const GroupSpec& G, const Window& w) {
  Verdict v{std::nullopt, coverage_label(G.group(), w)};
  auto W = enumerate(G.group(), w);
  CompareTable ct(G, W);
  std::size_t n = W.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (G.compare(W[j], W[i]) != flip(ct(i, j))) {
        v.violation = ViolationReport{"antisymmetry", {W[i], W[j]}, "compare is not consistent under swapping"};
        return v;
      }
      if (ct(i, j) == Cmp::above) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (ct(j, k) == Cmp::above) continue;
        if (ct(i, k) == Cmp::above) {
          v.violation = ViolationReport{"transitivity", {W[i], W[j], W[k]},
                                        to_string(W[i]) + " <= " + to_string(W[j]) + " <= " + to_string(W[k]) +
                                            " but not " + to_string(W[i]) + " <= " + to_string(W[k])};
          return v;
        }
      }
    }
  return v;
}

}  // namespace qoag
