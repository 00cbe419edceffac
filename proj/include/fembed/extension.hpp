#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fembed/cech.hpp"
#include "fembed/cover.hpp"

namespace fembed {

// One completed order of the construction: the defect that was measured at
// t-degree `degree` and the correction that removed it. When `obstructed` is
// set the split failed and the state was left at the previous order.
struct OrderStep {
  std::uint32_t degree = 0;
  OneCochain defect;
  ZeroCochain split;
  bool obstructed = false;
};

// The order-by-order state: per-chart maps f_j congruent to embeddings of the
// deformed fibers modulo t-degree > order. At order 0 each f_j is the seed.
struct ExtensionState {
  CoverSpec spec;
  JacobianTwist twist;
  std::uint32_t order = 0;
  std::map<std::string, TruncatedSeries> f;
  std::vector<OrderStep> history;
};

// Starts at the seed embeddings and verifies they agree on overlaps at t = 0.
ExtensionState init_extension(const CoverSpec& spec);

// The degree-(order+1) failure of h_{jk}(f_k) = f_j(g_{jk}) on each declared
// pair. All lower-degree slices are required to vanish; a nonzero one means
// the maintained congruence is broken and throws.
OneCochain compute_defect(const ExtensionState& st);

// Advances the state one order: measures the defect, checks it against the
// twisted cocycle identity on declared triples, splits it, applies the
// correction, and re-verifies the congruence exactly at the new order.
// Returns the obstruction instead of advancing when no split exists.
std::optional<Obstruction> extend_one_order(ExtensionState& st,
                                            std::optional<std::uint32_t> psi_degree = {});

std::optional<Obstruction> run_to_order(ExtensionState& st, std::uint32_t target,
                                        std::optional<std::uint32_t> psi_degree = {});

struct ImmersionReport {
  bool pass = true;
  std::vector<CheckLine> lines;
};

// Spot-checks that each chart map is an immersion with pairwise-distinct
// values on a fixed grid of rational sample points, at the given parameter
// value. Advisory: failures are warnings, not errors.
ImmersionReport immersion_spot_check(const ExtensionState& st, const std::vector<Rational>& t_value);

}  // namespace fembed
