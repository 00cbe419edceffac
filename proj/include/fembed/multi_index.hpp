#pragma once

#include "fembed/rational.hpp"

#include <cstdint>
#include <vector>

namespace fembed {

// Exponent multi-index, used both for z-monomials and for t-degrees.
using MultiIndex = std::vector<std::uint32_t>;

inline std::uint32_t mi_total(const MultiIndex& a) {
  std::uint32_t s = 0;
  for (auto v : a) s += v;
  return s;
}

// Graded lexicographic order: total degree first, then lexicographic on the
// exponent vector. This is the canonical term order everywhere (maps,
// serialization, system assembly).
inline bool grlex_less(const MultiIndex& a, const MultiIndex& b) {
  const std::uint32_t ta = mi_total(a), tb = mi_total(b);
  if (ta != tb) return ta < tb;
  return a < b;
}

struct GrlexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const { return grlex_less(a, b); }
};

inline MultiIndex mi_add(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

// alpha!  (product of factorials of the entries)
BigInt mi_factorial_product(const MultiIndex& a);

// |alpha|! / alpha!  -- the coefficient of the monomial t^alpha in
// (t_1 + ... + t_d)^{|alpha|}.
BigInt mi_multinomial(const MultiIndex& a);

// All multi-indices of the given arity with total degree <= max_total,
// in graded lexicographic order.
std::vector<MultiIndex> mi_all_up_to(std::uint32_t arity, std::uint32_t max_total);

// All multi-indices of the given arity with total degree == total,
// in graded lexicographic order.
std::vector<MultiIndex> mi_all_of_degree(std::uint32_t arity, std::uint32_t total);

}  // namespace fembed
