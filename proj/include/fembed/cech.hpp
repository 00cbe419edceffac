#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fembed/cover.hpp"
#include "fembed/series.hpp"

namespace fembed {

// Linearization of the ambient transition along the seed embedding:
// J_{jk}(z_k) = D h_{jk} evaluated at i_k(z_k), a square matrix of
// polynomials in the fiber variables of chart k.
struct JacobianTwist {
  std::map<PairKey, ZPolyMatrix> at;

  // Identity on diagonal pairs, stored matrix otherwise.
  ZPolyMatrix of(const std::string& j, const std::string& k, std::uint32_t ambient_dim,
                 std::uint32_t fiber_dim) const;
};

JacobianTwist make_twist(const CoverSpec& spec);

// A degree-m one-cochain: for each declared ordered pair, a series whose
// t-coefficients all sit in total degree exactly m, with values in the
// ambient chart of the first index.
struct OneCochain {
  std::uint32_t degree = 0;
  std::map<PairKey, TruncatedSeries> at;

  bool is_zero() const;
};

// A degree-m zero-cochain: one series per chart, same homogeneity.
struct ZeroCochain {
  std::uint32_t degree = 0;
  std::map<std::string, TruncatedSeries> at;
};

// Largest coefficient-vector norm across pairs and t-indices.
Rational cochain_max_norm(const OneCochain& c);
Rational cochain_max_norm(const ZeroCochain& c);

// (delta phi)_{jk}(z_k, t) = phi_j(G_{jk}(z_k), t) - J_{jk}(z_k) phi_k(z_k, t)
OneCochain coboundary(const CoverSpec& spec, const JacobianTwist& twist, const ZeroCochain& phi);

struct CocycleReport {
  bool pass = true;
  std::vector<CheckLine> lines;
};

// On each declared triple (i,j,k), a genuine defect cochain satisfies
//   psi_{ij}(G_{jk}(z_k), t) + J_{ij}(G_{jk}(z_k)) psi_{jk}(z_k, t) = psi_{ik}(z_k, t)
// with the conventions psi_{ii} = 0, G_{ii} = id, J_{ii} = I.
CocycleReport check_defect_cocycle(const CoverSpec& spec, const JacobianTwist& twist,
                                   const OneCochain& psi);

struct Obstruction {
  std::uint32_t degree = 0;
  std::uint32_t psi_degree_bound = 0;
  // delta(phi_hat) - psi for the least-squares phi_hat, so the reader can see
  // exactly which monomials cannot be matched.
  OneCochain residual;
  Rational residual_norm_sq = Rational(0);
  std::vector<PairKey> offending;
};

// Solve delta(phi) = psi over the declared pairs with phi polynomial of
// z-degree at most psi_degree (default: deg psi + deg twist, which is always
// enough when an exact solution of coboundary shape exists). Among all exact
// solutions the one of least Euclidean coefficient norm is returned; if no
// exact solution exists the least-squares residual is packaged as an
// Obstruction. Equations are enforced for every arising z-monomial of total
// degree at most eq_degree_bound; the returned cochain is re-checked exactly,
// so a bound chosen too small surfaces as an Obstruction rather than silence.
std::variant<ZeroCochain, Obstruction> split_cocycle(const CoverSpec& spec,
                                                     const JacobianTwist& twist,
                                                     const OneCochain& psi,
                                                     std::optional<std::uint32_t> psi_degree = {});

}  // namespace fembed
