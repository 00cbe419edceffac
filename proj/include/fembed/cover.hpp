#pragma once

#include "fembed/series.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fembed {

// Fiber chart of the deformation family. delta is the boundary shrink margin
// used by the certification radii; it must lie strictly between 0 and 1.
struct Chart {
  std::string id;
  Rational delta;
};

struct AmbientChart {
  std::string id;
};

// Ordered pair of chart ids (a <- b direction: data converting b-coordinates
// into a-coordinates).
struct PairKey {
  std::string a, b;
  auto operator<=>(const PairKey&) const = default;
};

struct TripleKey {
  std::string a, b, c;
  auto operator<=>(const TripleKey&) const = default;
};

std::string pair_label(const PairKey& p);
std::string triple_label(const TripleKey& t);

// Complete presentation of a deformation family together with an embedded
// central fiber: fiber charts and t-dependent transitions g_{jk}, ambient
// charts and polynomial transitions h_{AB}, the chart assignment, and the
// seed embeddings i_j. Purely combinatorial: no claim is made that the data
// comes from an actual compact manifold.
struct CoverSpec {
  std::uint32_t t_arity = 0;      // number of deformation parameters d
  std::uint32_t fiber_dim = 0;    // n
  std::uint32_t ambient_dim = 0;  // r + n
  std::uint32_t max_order = 0;    // truncation order M of the stored series
  std::uint32_t eq_degree_bound = 0;  // z-degree up to which polynomial identities are enforced

  std::vector<Chart> charts;
  std::vector<AmbientChart> ambient_charts;
  std::map<std::string, std::string> assignment;  // chart id -> ambient chart id

  // Fiber transitions per ordered pair: series with codomain n in the source
  // chart's variables. g.at({j,k}) converts z_k into z_j.
  std::map<PairKey, TruncatedSeries> g;
  // Ambient transitions per ordered pair of ambient chart ids; vector of
  // polynomials in ambient_dim variables. Pairs assigned to one ambient
  // chart need no entry (identity).
  std::map<PairKey, ZPolyVec> h;
  // Seed embedding per chart: ambient_dim polynomials in fiber_dim variables.
  std::map<std::string, ZPolyVec> seed;

  std::vector<PairKey> pairs;            // declared overlapping ordered pairs
  std::vector<TripleKey> triples;        // declared fiber triples
  std::vector<TripleKey> ambient_triples;

  bool has_chart(const std::string& id) const;
  const Chart& chart(const std::string& id) const;
  // g for the ordered pair, with {j,j} resolving to the identity map.
  TruncatedSeries transition(const std::string& j, const std::string& k) const;
  // z_j = G_{jk}(z_k) at t = 0, as a polynomial map.
  ZPolyVec transition_at_zero(const std::string& j, const std::string& k) const;
  // Ambient transition between the ambient charts of two fiber charts;
  // identity when they share one.
  ZPolyVec ambient_transition_for(const std::string& j, const std::string& k) const;
  const ZPolyVec& seed_of(const std::string& j) const;
};

// Parses a cover document. Structural problems (bad JSON, missing fields,
// arity mismatches, malformed rationals, unknown ids) throw
// std::invalid_argument with a line naming the offending element.
CoverSpec load_cover(const std::string& json_text);
CoverSpec load_cover_file(const std::string& path);
std::string serialize_cover(const CoverSpec& spec);

struct CheckLine {
  std::string kind;     // e.g. "fiber-cocycle", "pair-inverse", "seed-compat"
  std::string subject;  // pair or triple label
  bool pass = false;
  std::string detail;   // first offending index / exact-order info
};

struct ValidationReport {
  bool pass = true;
  std::vector<CheckLine> lines;
  std::vector<std::string> unchecked;  // hypotheses recorded, not verified
  std::string to_json() const;
};

// Checks g_{ik} = g_{ij} (.) g_{jk} on every declared triple as an exact
// series identity up to the stored order, and the t = 0 mutual-inverse
// property on every declared pair up to the declared degree bound.
ValidationReport validate_fiber_cocycle(const CoverSpec& spec);

// Checks h_{ik} = h_{ij} (.) h_{jk} on declared ambient triples as exact
// polynomial identities, plus seed compatibility h_{jk}(i_k) = i_j(g_{jk}(.,0))
// on every declared pair.
ValidationReport validate_ambient_cocycle(const CoverSpec& spec);

// Both of the above plus structural sanity lines.
ValidationReport validate_cover(const CoverSpec& spec);

}  // namespace fembed
