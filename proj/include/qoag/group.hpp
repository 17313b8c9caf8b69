#pragma once

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <initializer_list>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "qoag/error.hpp"
#include "qoag/scalar.hpp"

namespace qoag {

using Element = boost::container::small_vector<Scalar, 4>;

struct ElementHash {
  std::size_t operator()(const Element& e) const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (const auto& s : e) h = (h ^ s.hash()) * 0x100000001b3ull;
    return h;
  }
};

using ElementSet = std::unordered_set<Element, ElementHash>;
template <class V>
using ElementMap = std::unordered_map<Element, V, ElementHash>;

inline std::string to_string(const Element& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) s += ",";
    s += e[i].str();
  }
  return s + ")";
}

enum class FactorKind { integer, rational, cyclic };

struct Factor {
  FactorKind kind = FactorKind::integer;
  long long order = 0;  // cyclic only

  static Factor integers() { return {FactorKind::integer, 0}; }
  static Factor rationals() { return {FactorKind::rational, 0}; }
  static Factor cyclic(long long n) {
    if (n < 2) throw Error(ErrorKind::invalid_spec, "torsion order must be >= 2, got " + std::to_string(n));
    return {FactorKind::cyclic, n};
  }
  bool is_free() const { return kind != FactorKind::cyclic; }

  std::string str() const {
    switch (kind) {
      case FactorKind::integer: return "Z";
      case FactorKind::rational: return "Q";
      case FactorKind::cyclic: return "Z/" + std::to_string(order);
    }
    return "?";
  }
  static Factor parse(const std::string& s) {
    if (s == "Z") return integers();
    if (s == "Q") return rationals();
    if (s.rfind("Z/", 0) == 0) {
      try {
        return cyclic(std::stoll(s.substr(2)));
      } catch (const std::logic_error&) {
      }
    }
    throw Error(ErrorKind::invalid_spec, "unknown factor '" + s + "'");
  }
  bool operator==(const Factor&) const = default;
};

// Finitely generated abelian group, one coordinate per cyclic factor
// (Z, Q or Z/n). Torsion coordinates are kept reduced into [0, n).
class Group {
 public:
  Group() = default;
  explicit Group(std::vector<Factor> factors) : factors_(std::move(factors)) {}

  // Free coordinates first, then the torsion coordinates in the given order.
  static Group from_ranks(std::size_t free_rank, const std::vector<long long>& torsion) {
    std::vector<Factor> f(free_rank, Factor::integers());
    for (long long n : torsion) f.push_back(Factor::cyclic(n));
    return Group(std::move(f));
  }

  const std::vector<Factor>& factors() const { return factors_; }
  const Factor& factor(std::size_t i) const { return factors_[i]; }
  std::size_t dimension() const { return factors_.size(); }

  std::size_t free_rank() const {
    std::size_t r = 0;
    for (const auto& f : factors_) r += f.is_free();
    return r;
  }
  std::vector<long long> torsion_orders() const {
    std::vector<long long> t;
    for (const auto& f : factors_)
      if (!f.is_free()) t.push_back(f.order);
    return t;
  }
  bool is_finite() const { return free_rank() == 0; }
  bool is_torsion_free() const { return torsion_orders().empty(); }
  bool has_rational() const {
    for (const auto& f : factors_)
      if (f.kind == FactorKind::rational) return true;
    return false;
  }
  // Free coordinates first, torsion after, Q absent: the layout from_ranks produces.
  bool is_standard_layout() const {
    bool seen_torsion = false;
    for (const auto& f : factors_) {
      if (f.kind == FactorKind::rational) return false;
      if (f.kind == FactorKind::cyclic) seen_torsion = true;
      else if (seen_torsion) return false;
    }
    return true;
  }

  std::uint64_t order() const {
    if (!is_finite()) throw Error(ErrorKind::unsupported_spec, "order of an infinite group");
    std::uint64_t n = 1;
    for (const auto& f : factors_) {
      if (__builtin_mul_overflow(n, static_cast<std::uint64_t>(f.order), &n))
        throw Error(ErrorKind::unsupported_spec, "group too large to enumerate");
    }
    return n;
  }

  std::string str() const {
    if (factors_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) s += " x ";
      s += factors_[i].str();
    }
    return s;
  }

  Element zero() const { return Element(dimension(), Scalar(0)); }

  bool is_zero(const Element& e) const {
    for (const auto& s : e)
      if (!s.is_zero()) return false;
    return true;
  }

  void validate(const Element& e) const {
    if (e.size() != dimension())
      throw Error(ErrorKind::coordinate_mismatch, "element " + to_string(e) + " has " + std::to_string(e.size()) +
                                                      " coordinates, group " + str() + " needs " +
                                                      std::to_string(dimension()));
    for (std::size_t i = 0; i < e.size(); ++i) {
      const auto& f = factors_[i];
      if (f.kind != FactorKind::rational && !e[i].is_integer())
        throw Error(ErrorKind::coordinate_mismatch, "non-integer coordinate in " + to_string(e));
      if (f.kind == FactorKind::cyclic && (e[i].sign() < 0 || e[i] >= Scalar(f.order)))
        throw Error(ErrorKind::coordinate_mismatch, "unreduced torsion coordinate in " + to_string(e));
    }
  }

  // Reduces torsion coordinates; checks integrality.
  Element make(Element e) const {
    if (e.size() != dimension())
      throw Error(ErrorKind::coordinate_mismatch, "element " + to_string(e) + " has wrong dimension for " + str());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (factors_[i].kind != FactorKind::rational && !e[i].is_integer())
        throw Error(ErrorKind::coordinate_mismatch, "non-integer coordinate in " + to_string(e));
      if (factors_[i].kind == FactorKind::cyclic) e[i] = e[i].mod(factors_[i].order);
    }
    return e;
  }
  Element make(std::initializer_list<Scalar> c) const { return make(Element(c.begin(), c.end())); }

  Element add(const Element& a, const Element& b) const {
    Element r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      r[i] = a[i] + b[i];
      if (factors_[i].kind == FactorKind::cyclic && r[i] >= Scalar(factors_[i].order)) r[i] -= Scalar(factors_[i].order);
    }
    return r;
  }
  Element neg(const Element& a) const {
    Element r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (factors_[i].kind == FactorKind::cyclic)
        r[i] = a[i].is_zero() ? Scalar(0) : Scalar(factors_[i].order) - a[i];
      else
        r[i] = -a[i];
    }
    return r;
  }
  Element sub(const Element& a, const Element& b) const { return add(a, neg(b)); }
  Element scale(const Element& a, const Scalar& n) const {
    Element r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      r[i] = a[i] * n;
      if (factors_[i].kind == FactorKind::cyclic) r[i] = r[i].mod(factors_[i].order);
    }
    return r;
  }

  // Mixed-radix index, coordinate 0 most significant (finite groups only).
  std::size_t index_of(const Element& e) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
      idx = idx * static_cast<std::size_t>(factors_[i].order) + static_cast<std::size_t>(*e[i].to_int64());
    return idx;
  }
  Element element_at(std::size_t idx) const {
    Element e(dimension());
    for (std::size_t i = dimension(); i-- > 0;) {
      auto n = static_cast<std::size_t>(factors_[i].order);
      e[i] = Scalar(static_cast<long long>(idx % n));
      idx /= n;
    }
    return e;
  }

  Group concat(const Group& other) const {
    std::vector<Factor> f = factors_;
    f.insert(f.end(), other.factors_.begin(), other.factors_.end());
    return Group(std::move(f));
  }

  bool operator==(const Group&) const = default;

 private:
  std::vector<Factor> factors_;
};

// Splits and joins coordinate blocks.
inline Element slice(const Element& e, std::size_t from, std::size_t len) {
  return Element(e.begin() + static_cast<std::ptrdiff_t>(from), e.begin() + static_cast<std::ptrdiff_t>(from + len));
}
inline Element join(const Element& a, const Element& b) {
  Element r(a);
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

}  // namespace qoag
