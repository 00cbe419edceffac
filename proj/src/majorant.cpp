#include "fembed/majorant.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fembed {

namespace {

std::string mi_brackets(const MultiIndex& a) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << "]";
  return os.str();
}

MultiIndex concat(const MultiIndex& e, const MultiIndex& alpha) {
  MultiIndex out = e;
  out.insert(out.end(), alpha.begin(), alpha.end());
  return out;
}

}  // namespace

Rational Majorant::coeff(std::uint32_t m) const {
  if (m == 0) return Rational(0);
  return a * rational_pow(b, m - 1) / (Rational(16) * Rational(m) * Rational(m));
}

Rational Majorant::t_coeff(const MultiIndex& alpha) const {
  std::uint32_t m = mi_total(alpha);
  if (m == 0) return Rational(0);
  return coeff(m) * Rational(mi_multinomial(alpha));
}

bool dominates(const TruncatedSeries& f, const Majorant& A, std::string* why) {
  for (const auto& [alpha, v] : f.terms()) {
    Rational lhs = vec_coeff_abs_sum(v);
    Rational rhs = A.t_coeff(alpha);
    if (lhs > rhs) {
      if (why)
        *why = "t-index " + mi_brackets(alpha) + ": coefficient norm " + rational_to_string(lhs) +
               " exceeds majorant coefficient " + rational_to_string(rhs);
      return false;
    }
  }
  return true;
}

bool power_bound_check(const Majorant& A, std::uint32_t gamma, std::uint32_t upto,
                       std::string* why) {
  if (gamma == 0) throw std::invalid_argument("power bound needs a positive exponent");
  std::vector<Rational> base(upto + 1);
  for (std::uint32_t m = 0; m <= upto; ++m) base[m] = A.coeff(m);
  std::vector<Rational> conv = base;
  for (std::uint32_t k = 2; k <= gamma; ++k) {
    std::vector<Rational> next(upto + 1, Rational(0));
    for (std::uint32_t i = 0; i <= upto; ++i) {
      if (conv[i] == 0) continue;
      for (std::uint32_t j = 0; i + j <= upto; ++j) next[i + j] += conv[i] * base[j];
    }
    conv = std::move(next);
  }
  Rational scale = rational_pow(A.a / A.b, gamma - 1);
  for (std::uint32_t m = 0; m <= upto; ++m)
    if (conv[m] > scale * base[m]) {
      if (why)
        *why = "degree " + std::to_string(m) + ": power coefficient " + rational_to_string(conv[m]) +
               " exceeds scaled majorant " + rational_to_string(scale * base[m]);
      return false;
    }
  return true;
}

Rational mu_of_rho(const CoverSpec& spec, const Rational& rho) {
  Rational mu(0);
  for (const auto& [pk, series] : spec.g)
    for (std::uint32_t s = 0; s < series.codomain(); ++s) {
      Rational total(0);
      for (const auto& [alpha, v] : series.terms()) {
        std::uint32_t m = mi_total(alpha);
        if (m == 0) continue;
        total += v[s].coeff_abs_sum() * rational_pow(rho, m);
      }
      mu = std::max(mu, total);
    }
  return mu;
}

ConstantsLedger estimate_constants(const CoverSpec& spec, const Rational& a, const Rational& b,
                                   const Rational& rho) {
  ConstantsLedger lg;

  Rational B(1);
  for (const auto& [pk, hv] : spec.h)
    for (const auto& comp : hv)
      for (std::uint32_t u = 0; u < spec.ambient_dim; ++u)
        B = std::max(B, comp.derivative(u).coeff_abs_sum());
  lg.c0 = Rational(1) + B;

  // c1: per monomial the requirement is |coeff| <= c1^k * multinomial, with k
  // the total degree. Degree-zero monomials admit no slack, so a constant
  // term above 1 makes domination impossible.
  lg.c1 = 1;
  auto absorb = [&lg](const MultiIndex& idx, const Rational& coeff, const std::string& where) {
    if (!lg.c1_ok) return;
    Rational mag = rational_abs(coeff);
    std::uint32_t k = mi_total(idx);
    Rational mult(mi_multinomial(idx));
    if (k == 0) {
      if (mag > 1) {
        lg.c1_ok = false;
        lg.c1_note = where + ": constant term of size " + rational_to_string(mag) +
                     " cannot be dominated by any geometric weight";
      }
      return;
    }
    while (rational_pow(Rational(lg.c1), k) * mult < mag) ++lg.c1;
  };
  for (const auto& [pk, hv] : spec.h)
    for (std::size_t s = 0; s < hv.size(); ++s)
      for (const auto& [e, c] : hv[s].terms())
        absorb(e, c, "ambient transition " + pair_label(pk) + ", component " + std::to_string(s + 1));
  for (const auto& [pk, series] : spec.g)
    for (const auto& [alpha, v] : series.terms())
      for (std::size_t s = 0; s < v.size(); ++s)
        for (const auto& [e, c] : v[s].terms())
          absorb(concat(e, alpha), c,
                 "fiber transition " + pair_label(pk) + ", component " + std::to_string(s + 1));

  lg.delta = Rational(1);
  for (const auto& c : spec.charts) lg.delta = std::min(lg.delta, c.delta);

  lg.rho = rho;
  lg.mu = mu_of_rho(spec, rho);

  if (lg.mu < lg.delta) {
    Rational shrink = rational_pow(lg.delta / (lg.delta - lg.mu), spec.fiber_dim);
    Rational rn2 = Rational(spec.ambient_dim) * Rational(spec.ambient_dim);
    lg.c3 = Rational(2) * lg.c0 *
            (Rational(2) * Rational(lg.c1) * Rational(lg.c1) * rn2 * a / b + shrink - Rational(1));
  } else {
    lg.c3 = Rational(0);
  }
  lg.c4 = Rational(2);
  return lg;
}

DefectBoundReport defect_bound_check(const ExtensionState& st, const ConstantsLedger& ledger,
                                     const Majorant& A) {
  DefectBoundReport report;
  for (const auto& step : st.history) {
    // The estimate bounds defects produced from an already-corrected state,
    // so it starts at degree 2; the first defect is absorbed by the scale a.
    if (step.degree < 2) continue;
    CheckLine line{"defect-bound", "order " + std::to_string(step.degree), true, ""};
    for (const auto& [pk, series] : step.defect.at) {
      for (const auto& [alpha, v] : series.terms()) {
        Rational lhs = vec_coeff_abs_sum(v);
        Rational rhs = ledger.c3 * A.t_coeff(alpha);
        if (lhs > rhs) {
          line.pass = false;
          line.detail = "pair " + pair_label(pk) + ", t-index " + mi_brackets(alpha) +
                        ": defect norm " + rational_to_string(lhs) + " exceeds c3 * A = " +
                        rational_to_string(rhs);
          break;
        }
      }
      if (!line.pass) break;
    }
    if (line.pass) line.detail = "defect within c3 * A on every pair";
    report.pass = report.pass && line.pass;
    report.lines.push_back(std::move(line));
  }
  return report;
}

ConvergenceCertificate certify(const ExtensionState& st, std::optional<Rational> a_opt,
                               std::optional<Rational> b_opt, std::optional<Rational> rho_opt) {
  ConvergenceCertificate cert;
  const CoverSpec& spec = st.spec;
  const Rational rn(spec.ambient_dim);

  auto fail = [&cert](const std::string& reason) -> ConvergenceCertificate {
    cert.certified = false;
    cert.status = "UNCERTIFIABLE";
    cert.reason = reason;
    return cert;
  };

  for (const auto& step : st.history)
    if (step.obstructed)
      return fail("construction is obstructed at order " + std::to_string(step.degree));

  // Scale a to the first-order corrections (headroom factor 2 over the exact
  // requirement 16 * norm), never below 1.
  Rational a;
  if (a_opt) {
    a = *a_opt;
  } else {
    Rational norm1(0);
    for (const auto& c : spec.charts) {
      TruncatedSeries seed_series =
          TruncatedSeries::from_poly_map(spec.seed_of(c.id), spec.t_arity, st.order);
      TruncatedSeries difference = st.f.at(c.id) - seed_series;
      for (const auto& [alpha, v] : difference.terms())
        if (mi_total(alpha) == 1) norm1 = std::max(norm1, vec_coeff_abs_sum(v));
    }
    a = std::max(Rational(32) * norm1, Rational(1));
  }
  if (a <= 0) return fail("the scale a must be positive");

  ConstantsLedger probe = estimate_constants(spec, a, Rational(1), rho_opt.value_or(Rational(1, 16)));
  if (!probe.c1_ok) return fail("no geometric coefficient domination exists: " + probe.c1_note);

  Rational b = b_opt ? *b_opt
                     : Rational(16) * probe.c0 * Rational(probe.c1) * Rational(probe.c1) * rn * rn * a;
  if (b <= 0) return fail("the scale b must be positive");

  // Shrink rho until the overlap drift mu(rho) is small against the chart
  // margin delta. mu is monotone in rho, so halving terminates if anything does.
  Rational rho = rho_opt.value_or(Rational(1, 16));
  Rational delta = probe.delta;
  bool rho_found = false;
  for (int iter = 0; iter <= 60; ++iter) {
    Rational mu = mu_of_rho(spec, rho);
    if (mu < delta) {
      Rational lhs = Rational(2) * probe.c0 *
                     (rational_pow(delta / (delta - mu), spec.fiber_dim) - Rational(1));
      if (lhs * 2 < 1) {
        rho_found = true;
        break;
      }
    }
    rho /= 2;
  }
  if (!rho_found)
    return fail("(iii) 2c0((1-mu/delta)^-n - 1) < 1/2 fails for every tested overlap radius rho");

  ConstantsLedger lg = estimate_constants(spec, a, b, rho);
  Majorant A{a, b};
  cert.a = a;
  cert.b = b;
  cert.rho = rho;

  {
    CheckLine line{"condition", "(i) b > 2c1(r+n)a", true, ""};
    Rational rhs = Rational(2) * Rational(lg.c1) * rn * a;
    line.pass = b > rhs;
    line.detail = rational_to_string(b) + (line.pass ? " > " : " <= ") + rational_to_string(rhs);
    cert.conditions.push_back(line);
  }
  {
    CheckLine line{"condition", "(ii) 4c0c1^2(r+n)^2 a/b < 1/2", true, ""};
    Rational lhs = Rational(4) * lg.c0 * Rational(lg.c1) * Rational(lg.c1) * rn * rn * a / b;
    line.pass = lhs * 2 < 1;
    line.detail = rational_to_string(lhs) + (line.pass ? " < " : " >= ") + "1/2";
    cert.conditions.push_back(line);
  }
  {
    CheckLine line{"condition", "(iii) 2c0((1-mu/delta)^-n - 1) < 1/2", true, ""};
    Rational lhs = lg.mu < lg.delta
                       ? Rational(2) * lg.c0 *
                             (rational_pow(lg.delta / (lg.delta - lg.mu), spec.fiber_dim) - Rational(1))
                       : Rational(-1);
    line.pass = lg.mu < lg.delta && lhs * 2 < 1;
    line.detail = lg.mu < lg.delta
                      ? rational_to_string(lhs) + (line.pass ? " < " : " >= ") + "1/2"
                      : "mu = " + rational_to_string(lg.mu) + " reaches the chart margin delta = " +
                            rational_to_string(lg.delta);
    cert.conditions.push_back(line);
  }

  // Empirical splitting gains, floored at 2 so the recorded constant is never
  // optimistic about a short run.
  Rational running(0);
  bool stable = st.history.size() >= 2;
  std::size_t half_mark = (st.history.size() + 1) / 2;
  Rational max_at_half(0);
  for (std::size_t i = 0; i < st.history.size(); ++i) {
    Rational x(0);
    for (const auto& [chart, series] : st.history[i].split.at)
      for (const auto& [alpha, v] : series.terms()) {
        Rational denom = lg.c3 * A.t_coeff(alpha);
        if (denom > 0) x = std::max(x, vec_coeff_abs_sum(v) / denom);
      }
    lg.c4_history.push_back(x);
    running = std::max(running, x);
    if (i + 1 == half_mark) max_at_half = running;
  }
  lg.c4 = std::max(running, Rational(2));
  stable = stable && running == max_at_half;
  {
    CheckLine line{"condition", "splitting gain stable", stable,
                   stable ? "no new maximum in the second half of the run"
                          : (st.history.size() < 2 ? "needs at least two computed orders"
                                                   : "maximum still growing in the second half")};
    cert.conditions.push_back(line);
  }

  {
    CheckLine line{"condition", "(f - seed) << A", true, ""};
    for (const auto& c : spec.charts) {
      TruncatedSeries seed_series =
          TruncatedSeries::from_poly_map(spec.seed_of(c.id), spec.t_arity, st.order);
      std::string why;
      if (!dominates(st.f.at(c.id) - seed_series, A, &why)) {
        line.pass = false;
        line.detail = "chart " + c.id + ": " + why;
        break;
      }
    }
    if (line.pass) line.detail = "every chart map stays within the comparison series";
    cert.conditions.push_back(line);
  }

  DefectBoundReport defects = defect_bound_check(st, lg, A);
  for (const auto& line : defects.lines) cert.conditions.push_back(line);

  cert.constants = lg;
  cert.epsilon0 = std::min(rho, Rational(1) / (Rational(2) * b));

  for (const auto& line : cert.conditions)
    if (!line.pass) return fail(line.subject + ": " + line.detail);

  cert.certified = true;
  cert.status = "CERTIFIED";
  cert.reason = "";
  return cert;
}

}  // namespace fembed
