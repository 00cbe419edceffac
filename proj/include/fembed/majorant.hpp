#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fembed/cover.hpp"
#include "fembed/extension.hpp"
#include "fembed/series.hpp"

namespace fembed {

// The comparison series A(t) = (a/16b) sum_{m>=1} b^m (t_1+...+t_d)^m / m^2,
// which converges for |t_1|+...+|t_d| < 1/b. Its coefficient at t^alpha is
// coeff(|alpha|) times the multinomial of alpha.
struct Majorant {
  Rational a;
  Rational b;

  Rational coeff(std::uint32_t m) const;
  Rational t_coeff(const MultiIndex& alpha) const;
};

// f << A: every t-coefficient of f is bounded in the coefficient-sum norm by
// the corresponding coefficient of A. The constant term must vanish.
bool dominates(const TruncatedSeries& f, const Majorant& A, std::string* why = nullptr);

// The closure property the recursion leans on: the univariate coefficients of
// A^gamma are bounded by (a/b)^(gamma-1) times those of A. Checked exactly
// through degree `upto`.
bool power_bound_check(const Majorant& A, std::uint32_t gamma, std::uint32_t upto,
                       std::string* why = nullptr);

// Geometry-derived constants feeding the convergence estimate.
struct ConstantsLedger {
  // 1 + B where B bounds every entry of the ambient transition derivatives
  // on the unit polydisc (and B >= 1), so c0 > 1 always.
  Rational c0;
  // Smallest positive integer c with |coeff| <= c^{deg} * multinomial for
  // every monomial of every ambient transition (in w) and every fiber
  // transition (in z and t jointly). Infeasible when a constant term
  // exceeds 1; then c1_ok is false and c1_note names the culprit.
  bool c1_ok = true;
  std::uint32_t c1 = 1;
  std::string c1_note;
  // Smallest chart polydisc radius.
  Rational delta;
  // mu(rho) = max over pairs of the coefficient-sum norm of the t-dependent
  // part of the fiber transitions, with t weighted by rho per degree.
  Rational rho;
  Rational mu;
  // c3 = 2 c0 (2 c1^2 (r+n)^2 a / b + ((1 - mu/delta)^{-n} - 1)).
  Rational c3;
  // Empirical splitting gain per computed order and its floor-at-2 maximum.
  std::vector<Rational> c4_history;
  Rational c4;
};

Rational mu_of_rho(const CoverSpec& spec, const Rational& rho);

// Fills c0, c1, delta, mu, c3 for the given a, b, rho. c4 fields are filled
// from a run history by certify.
ConstantsLedger estimate_constants(const CoverSpec& spec, const Rational& a, const Rational& b,
                                   const Rational& rho);

struct DefectBoundReport {
  bool pass = true;
  std::vector<CheckLine> lines;
};

// Verifies, for every order measured from an already-corrected state (degree
// 2 and up), that the defect obeys the bound ||psi_alpha|| <= c3 * A_{|alpha|}
// * multinomial(alpha) the estimate promises. The first defect is exempt: the
// scale a is chosen to absorb it. A failing line names the order, pair, and
// t-index.
DefectBoundReport defect_bound_check(const ExtensionState& st, const ConstantsLedger& ledger,
                                     const Majorant& A);

struct ConvergenceCertificate {
  bool certified = false;
  std::string status;  // "CERTIFIED" or "UNCERTIFIABLE"
  std::string reason;  // names the violated condition when not certified
  Rational a;
  Rational b;
  Rational rho;
  Rational epsilon0;  // certified common polydisc radius in t
  ConstantsLedger constants;
  std::vector<CheckLine> conditions;
};

// Builds the convergence certificate for a completed run. Missing a or b are
// chosen from the data (a from the first-order correction, b so the geometric
// smallness condition holds with slack); rho starts at the given value
// (default 1/16) and is halved until the overlap-shrinkage condition holds.
ConvergenceCertificate certify(const ExtensionState& st, std::optional<Rational> a_opt,
                               std::optional<Rational> b_opt, std::optional<Rational> rho_opt);

}  // namespace fembed
