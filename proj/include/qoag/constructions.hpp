#pragma once

#include <string>
#include <vector>

#include "qoag/axioms.hpp"

namespace qoag {

// Component checks run on this window unless the caller passes another.
inline constexpr Window kComponentWindow{2, 2};

inline bool is_ordered_on(const GroupSpec& G, const Window& w) {
  for (const auto& e : enumerate(G.group(), w))
    if (G.classify(e) == Classification::vtype) return false;
  return true;
}

inline bool is_valuational_on(const GroupSpec& G, const Window& w) {
  for (const auto& e : enumerate(G.group(), w))
    if (G.classify(e) == Classification::otype) return false;
  return true;
}

inline bool is_compatible_on(const GroupSpec& G, const Window& w) {
  return check_q1(G, w).passed() && check_q2(G, w).passed();
}

inline std::string component_label(const SpecPtr& c, std::size_t i) {
  return "component " + std::to_string(i) + (c->name().empty() ? "" : " (" + c->name() + ")");
}

// Lexicographic product: decided at the first coordinate block where g and h differ.
inline SpecPtr lex_product(std::vector<SpecPtr> components, std::vector<long long> chain = {},
                           const Window& w = kComponentWindow, std::string name = {}) {
  for (std::size_t i = 0; i < components.size(); ++i)
    if (!is_ordered_on(*components[i], w))
      throw Error(ErrorKind::component_not_ordered, component_label(components[i], i) + " has a v-type element");
  return make_hahn_spec(HahnFlavor::lexicographic, std::move(chain), std::move(components), std::move(name));
}

// Valuational Hahn product: compare at the smaller of the two min-supports.
inline SpecPtr val_hahn_product(std::vector<SpecPtr> components, std::vector<long long> chain = {},
                                const Window& w = kComponentWindow, std::string name = {}) {
  for (std::size_t i = 0; i < components.size(); ++i)
    if (!is_valuational_on(*components[i], w))
      throw Error(ErrorKind::component_not_valuational, component_label(components[i], i) + " has an o-type element");
  return make_hahn_spec(HahnFlavor::valuational, std::move(chain), std::move(components), std::move(name));
}

// Compatible Hahn product: lex product of the ordered parts glued to the
// valuational Hahn product of the quotients B/B°.
inline SpecPtr compatible_hahn_product(std::vector<SpecPtr> components, std::vector<long long> chain = {},
                                       const Window& w = kComponentWindow, std::string name = {}) {
  for (std::size_t i = 0; i < components.size(); ++i)
    if (!is_compatible_on(*components[i], w))
      throw Error(ErrorKind::component_not_compatible, component_label(components[i], i) + " fails Q1/Q2");
  return make_hahn_spec(HahnFlavor::compatible, std::move(chain), std::move(components), std::move(name));
}

// o ⊛ v.
inline SpecPtr compatible_product(SpecPtr o, SpecPtr v, const Window& w = kComponentWindow, std::string name = {}) {
  if (!is_ordered_on(*o, w)) throw Error(ErrorKind::component_not_ordered, "ordered side has a v-type element");
  if (!is_valuational_on(*v, w))
    throw Error(ErrorKind::component_not_valuational, "valued side has an o-type element");
  return make_product_spec(std::move(o), std::move(v), std::move(name));
}

}  // namespace qoag
