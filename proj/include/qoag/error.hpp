#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qoag {

enum class ErrorKind {
  coordinate_mismatch,
  invalid_spec,
  structure_violation,
  not_a_subgroup,
  quotient_condition_violated,
  unsupported_spec,
  component_not_ordered,
  component_not_valuational,
  component_not_compatible,
  not_product_form,
  syntax_error,
  unbound_variable,
  not_order_fragment,
  no_minimum,
  not_representable,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::coordinate_mismatch: return "CoordinateMismatch";
    case ErrorKind::invalid_spec: return "InvalidSpec";
    case ErrorKind::structure_violation: return "StructureViolation";
    case ErrorKind::not_a_subgroup: return "NotASubgroup";
    case ErrorKind::quotient_condition_violated: return "QuotientConditionViolated";
    case ErrorKind::unsupported_spec: return "UnsupportedSpec";
    case ErrorKind::component_not_ordered: return "ComponentNotOrdered";
    case ErrorKind::component_not_valuational: return "ComponentNotValuational";
    case ErrorKind::component_not_compatible: return "ComponentNotCompatible";
    case ErrorKind::not_product_form: return "NotProductForm";
    case ErrorKind::syntax_error: return "SyntaxError";
    case ErrorKind::unbound_variable: return "UnboundVariable";
    case ErrorKind::not_order_fragment: return "NotOrderFragment";
    case ErrorKind::no_minimum: return "NoMinimum";
    case ErrorKind::not_representable: return "NotRepresentable";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse failures carry the byte offset into the source text.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t pos, const std::string& msg)
      : Error(ErrorKind::syntax_error, "at position " + std::to_string(pos) + ": " + msg), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

}  // namespace qoag
