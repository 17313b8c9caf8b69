#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "qoag/group.hpp"
#include "qoag/window.hpp"

namespace qoag {

// Coordinate subgroup prod_i d_i*A_i. Divisor 0 is the zero subgroup of a
// coordinate, 1 the whole coordinate. Rational coordinates only take 0 or 1;
// cyclic divisors are normalized to proper divisors of the order.
class CoordSubgroup {
 public:
  CoordSubgroup() = default;
  CoordSubgroup(const Group& g, std::vector<long long> divisors) : divisors_(std::move(divisors)) {
    if (divisors_.size() != g.dimension())
      throw Error(ErrorKind::coordinate_mismatch, "subgroup description has wrong dimension for " + g.str());
    for (std::size_t i = 0; i < divisors_.size(); ++i) {
      long long& d = divisors_[i];
      if (d < 0) d = -d;
      const auto& f = g.factor(i);
      if (f.kind == FactorKind::rational && d > 1)
        throw Error(ErrorKind::unsupported_spec, "rational coordinate subgroups must be 0 or Q");
      if (f.kind == FactorKind::cyclic) {
        d = std::gcd(d, f.order);
        if (d == f.order) d = 0;
      }
    }
  }

  static CoordSubgroup whole(const Group& g) { return CoordSubgroup(g, std::vector<long long>(g.dimension(), 1)); }
  static CoordSubgroup zero(const Group& g) { return CoordSubgroup(g, std::vector<long long>(g.dimension(), 0)); }

  const std::vector<long long>& divisors() const { return divisors_; }
  long long divisor(std::size_t i) const { return divisors_[i]; }
  std::size_t dimension() const { return divisors_.size(); }

  bool contains(const Element& e) const {
    for (std::size_t i = 0; i < divisors_.size(); ++i) {
      long long d = divisors_[i];
      if (d == 1) continue;
      if (d == 0) {
        if (!e[i].is_zero()) return false;
        continue;
      }
      if (!e[i].is_integer() || !e[i].mod(d).is_zero()) return false;
    }
    return true;
  }

  bool is_whole() const {
    for (long long d : divisors_)
      if (d != 1) return false;
    return true;
  }
  bool is_zero() const {
    for (long long d : divisors_)
      if (d != 0) return false;
    return true;
  }
  // Every divisor is 0 or 1: a coordinate-aligned direct summand.
  bool is_coordinate_aligned() const {
    for (long long d : divisors_)
      if (d > 1) return false;
    return true;
  }

  bool is_subset_of(const CoordSubgroup& o) const {
    for (std::size_t i = 0; i < divisors_.size(); ++i) {
      long long d = divisors_[i], e = o.divisors_[i];
      if (d == 0) continue;
      if (e == 0 || d % e != 0) return false;
    }
    return true;
  }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < divisors_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(divisors_[i]);
    }
    return s + "]";
  }

  bool operator==(const CoordSubgroup&) const = default;

 private:
  std::vector<long long> divisors_;
};

// Recovers a coordinate subgroup from its members in a window: the
// per-coordinate gcd is the candidate, accepted only if it reproduces the
// member set exactly on the window.
inline std::optional<CoordSubgroup> recognize_subgroup(const Group& g, const std::vector<Element>& window,
                                                       const ElementSet& members) {
  std::vector<long long> d(g.dimension(), 0);
  for (const auto& e : members) {
    for (std::size_t i = 0; i < g.dimension(); ++i) {
      if (e[i].is_zero()) continue;
      if (g.factor(i).kind == FactorKind::rational || !e[i].is_integer()) {
        d[i] = 1;
        continue;
      }
      auto v = e[i].abs().to_int64();
      if (!v) return std::nullopt;
      d[i] = std::gcd(d[i], *v);
    }
  }
  CoordSubgroup h(g, d);
  for (const auto& e : window)
    if (h.contains(e) != (members.count(e) > 0)) return std::nullopt;
  return h;
}

}  // namespace qoag
