#include "fembed/multi_index.hpp"

#include <algorithm>

namespace fembed {

BigInt mi_factorial_product(const MultiIndex& a) {
  BigInt p(1);
  for (auto v : a)
    for (std::uint32_t k = 2; k <= v; ++k) p *= k;
  return p;
}

BigInt mi_multinomial(const MultiIndex& a) {
  BigInt num(1);
  const std::uint32_t total = mi_total(a);
  for (std::uint32_t k = 2; k <= total; ++k) num *= k;
  return num / mi_factorial_product(a);
}

namespace {

void enumerate_of_degree(std::uint32_t arity, std::uint32_t total, MultiIndex& prefix,
                         std::vector<MultiIndex>& out) {
  if (prefix.size() + 1 == arity) {
    prefix.push_back(total);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (std::uint32_t v = 0; v <= total; ++v) {
    prefix.push_back(v);
    enumerate_of_degree(arity, total - v, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<MultiIndex> mi_all_of_degree(std::uint32_t arity, std::uint32_t total) {
  std::vector<MultiIndex> out;
  if (arity == 0) {
    if (total == 0) out.push_back(MultiIndex{});
    return out;
  }
  MultiIndex prefix;
  enumerate_of_degree(arity, total, prefix, out);
  std::sort(out.begin(), out.end(), grlex_less);
  return out;
}

std::vector<MultiIndex> mi_all_up_to(std::uint32_t arity, std::uint32_t max_total) {
  std::vector<MultiIndex> out;
  for (std::uint32_t d = 0; d <= max_total; ++d) {
    auto layer = mi_all_of_degree(arity, d);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

}  // namespace fembed
