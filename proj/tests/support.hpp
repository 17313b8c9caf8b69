#pragma once

// Specs shared across the test suite, built directly in code. The JSON files
// under fixtures/ describe the same objects; test_json checks they agree.

#include "qoag/qo.hpp"

namespace qt {

using namespace qoag;

inline Element E(std::initializer_list<long long> c) {
  Element e;
  for (auto x : c) e.emplace_back(x);
  return e;
}

inline SpecPtr z_order() { return make_lex(Group::from_ranks(1, {}), {}, false, "z"); }
inline SpecPtr q_order() { return make_lex(Group({Factor::rationals()}), {}, false, "q"); }
inline SpecPtr lex_z2() { return make_lex(Group::from_ranks(2, {}), {}, false, "lex-z2"); }

// (a,b) <= (c,d) iff c != 0 or (c = a = 0 and b <= d).
inline SpecPtr example_a() {
  Group g = Group::from_ranks(2, {});
  return make_extension(g, CoordSubgroup(g, {0, 1}), {1}, Valuation(Valuation::Rules{{ValuationRule{0, {}}}}),
                        "example-a");
}

// Z with 5Z ordered below a single class for everything else.
inline SpecPtr example_b() {
  Group g = Group::from_ranks(1, {});
  return make_extension(g, CoordSubgroup(g, {5}), {0}, Valuation(Valuation::Rules{{ValuationRule{0, {}}}}),
                        "example-b");
}

// Z/2 ordered 0 < 1.
inline SpecPtr z2() { return make_lex(Group({Factor::cyclic(2)}), {}, true, "z2"); }

// (Z/2) x Z with (a,b) <= (c,d) iff (a = c and b <= d) or a < c.
inline SpecPtr remark_counterexample() {
  return make_lex(Group({Factor::cyclic(2), Factor::integers()}), {0, 1}, true, "remark-counterexample");
}

inline SpecPtr trivial_cyclic(long long n) {
  return make_trivial_valuation(Group({Factor::cyclic(n)}), "z" + std::to_string(n) + "-trivial");
}

// Z^2 with v = 1 if p does not divide m, 2 if n != 0 and p | m,
// 3 if n = 0 and p | m != 0.
inline SpecPtr preqo_example(long long p = 2) {
  Group g = Group::from_ranks(2, {});
  using K = Condition::Kind;
  Valuation::Rules r{{
      ValuationRule{1, {Condition{1, K::not_divisible_by, p}}},
      ValuationRule{2, {Condition{0, K::nonzero, 0}}},
      ValuationRule{3, {}},
  }};
  return make_valuation(g, Valuation(r), "preqo-nontransitive");
}

// Q ⊛ (Z/4, v_2).
inline SpecPtr q_tensor_z4() { return make_product_spec(q_order(), make_padic_cyclic(2, 2), "q-tensor-z4"); }

// 5Z ⊛ (Z/5, trivial); 5Z is presented as Z with its usual order.
inline SpecPtr notproduct_g2() { return make_product_spec(z_order(), trivial_cyclic(5), "notproduct-g2"); }

}  // namespace qt

#include <functional>
#include <optional>
#include <string>

#include "qoag/window.hpp"

namespace qt {

// First window pair where two specs disagree, after mapping G's coordinates
// into H's. Empty when they agree everywhere on the window.
inline std::optional<std::string> first_disagreement(const GroupSpec& G, const GroupSpec& H, const Window& w,
                                                     const std::function<Element(const Element&)>& map = {}) {
  auto W = enumerate(G.group(), w);
  std::vector<Element> img;
  for (const auto& e : W) img.push_back(map ? map(e) : e);
  for (std::size_t i = 0; i < W.size(); ++i)
    for (std::size_t j = 0; j < W.size(); ++j)
      if (G.compare(W[i], W[j]) != H.compare(img[i], img[j]))
        return to_string(W[i]) + " vs " + to_string(W[j]) + ": " + cmp_name(G.compare(W[i], W[j])) + " / " +
               cmp_name(H.compare(img[i], img[j]));
  return std::nullopt;
}

}  // namespace qt
