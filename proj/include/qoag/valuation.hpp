#pragma once

#include <climits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qoag/group.hpp"

namespace qoag {

inline constexpr long long kInfinity = LLONG_MAX;

inline std::string value_str(long long v) { return v == kInfinity ? "inf" : std::to_string(v); }

struct Condition {
  enum class Kind { zero, nonzero, divisible_by, not_divisible_by };
  std::size_t coord = 0;
  Kind kind = Kind::zero;
  long long modulus = 0;

  bool holds(const Element& e) const {
    const Scalar& x = e[coord];
    switch (kind) {
      case Kind::zero: return x.is_zero();
      case Kind::nonzero: return !x.is_zero();
      case Kind::divisible_by: return x.mod(modulus).is_zero();
      case Kind::not_divisible_by: return !x.mod(modulus).is_zero();
    }
    return false;
  }
};

struct ValuationRule {
  long long value = 0;
  std::vector<Condition> when;  // conjunction; empty matches everything
};

// Group valuation into a finite chain of integers plus infinity at 0.
// Either a full table (finite groups) or an ordered rule list where the first
// matching rule gives the value of a nonzero element.
class Valuation {
 public:
  struct Table {
    std::vector<long long> values;  // indexed by Group::index_of
  };
  struct Rules {
    std::vector<ValuationRule> rules;
  };

  Valuation() = default;
  explicit Valuation(Table t) : rep_(std::move(t)) {}
  explicit Valuation(Rules r) : rep_(std::move(r)) {}

  bool is_table() const { return std::holds_alternative<Table>(rep_); }
  const Table& table() const { return std::get<Table>(rep_); }
  const Rules& rules() const { return std::get<Rules>(rep_); }

  long long operator()(const Group& g, const Element& e) const {
    if (g.is_zero(e)) return kInfinity;
    if (auto* t = std::get_if<Table>(&rep_)) return t->values[g.index_of(e)];
    for (const auto& r : std::get<Rules>(rep_).rules) {
      bool ok = true;
      for (const auto& c : r.when)
        if (!c.holds(e)) {
          ok = false;
          break;
        }
      if (ok) return r.value;
    }
    throw Error(ErrorKind::invalid_spec, "valuation undefined at " + to_string(e));
  }

  void validate_shape(const Group& g) const {
    if (auto* t = std::get_if<Table>(&rep_)) {
      if (!g.is_finite()) throw Error(ErrorKind::invalid_spec, "valuation table on an infinite group");
      if (t->values.size() != g.order()) throw Error(ErrorKind::invalid_spec, "valuation table does not cover the group");
      for (std::size_t i = 1; i < t->values.size(); ++i)
        if (t->values[i] == kInfinity) throw Error(ErrorKind::invalid_spec, "nonzero element with infinite value");
      return;
    }
    for (const auto& r : std::get<Rules>(rep_).rules)
      for (const auto& c : r.when) {
        if (c.coord >= g.dimension()) throw Error(ErrorKind::invalid_spec, "valuation rule coordinate out of range");
        bool divis = c.kind == Condition::Kind::divisible_by || c.kind == Condition::Kind::not_divisible_by;
        if (divis && c.modulus < 1) throw Error(ErrorKind::invalid_spec, "divisibility modulus must be positive");
        if (divis && g.factor(c.coord).kind == FactorKind::rational)
          throw Error(ErrorKind::invalid_spec, "divisibility condition on a rational coordinate");
      }
  }

 private:
  std::variant<Table, Rules> rep_ = Rules{};
};

}  // namespace qoag
