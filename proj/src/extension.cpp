#include "fembed/extension.hpp"

#include "fembed/linalg.hpp"

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

// Both sides of the congruence h_{jk}(f_k) = f_j(g_{jk}) at working order M.
std::pair<TruncatedSeries, TruncatedSeries> congruence_sides(const ExtensionState& st,
                                                             const PairKey& p, std::uint32_t M) {
  const TruncatedSeries fk = st.f.at(p.b).retruncated(M);
  const TruncatedSeries fj = st.f.at(p.a).retruncated(M);
  TruncatedSeries lhs = compose_ambient(st.spec.ambient_transition_for(p.a, p.b), fk);
  TruncatedSeries rhs = compose_fiber(fj, st.spec.transition(p.a, p.b).retruncated(M));
  return {std::move(lhs), std::move(rhs)};
}

}  // namespace

ExtensionState init_extension(const CoverSpec& spec) {
  ExtensionState st;
  st.spec = spec;
  st.twist = make_twist(spec);
  st.order = 0;
  for (const auto& c : spec.charts)
    st.f.emplace(c.id, TruncatedSeries::from_poly_map(spec.seed_of(c.id), spec.t_arity, 0));
  for (const auto& p : spec.pairs) {
    auto [lhs, rhs] = congruence_sides(st, p, 0);
    std::string why;
    if (!congruent_mod(lhs, rhs, 0, &why))
      throw std::invalid_argument("seed embeddings disagree on overlap " + pair_label(p) + ": " + why);
  }
  return st;
}

OneCochain compute_defect(const ExtensionState& st) {
  const std::uint32_t M = st.order + 1;
  if (M > st.spec.max_order)
    throw std::invalid_argument("cover document carries transition data only up to t-order " +
                                std::to_string(st.spec.max_order));
  OneCochain psi;
  psi.degree = M;
  for (const auto& p : st.spec.pairs) {
    auto [lhs, rhs] = congruence_sides(st, p, M);
    TruncatedSeries diff = lhs - rhs;
    for (const auto& [alpha, v] : diff.terms())
      if (mi_total(alpha) <= st.order)
        throw std::logic_error("maintained congruence is broken on pair " + pair_label(p) +
                               " at t-index " + mi_brackets(alpha));
    psi.at.emplace(p, diff.homogeneous_part(M));
  }
  return psi;
}

std::optional<Obstruction> extend_one_order(ExtensionState& st,
                                            std::optional<std::uint32_t> psi_degree) {
  const std::uint32_t M = st.order + 1;
  OneCochain psi = compute_defect(st);

  CocycleReport cocycle = check_defect_cocycle(st.spec, st.twist, psi);
  if (!cocycle.pass) {
    std::string detail;
    for (const auto& line : cocycle.lines)
      if (!line.pass) {
        detail = "triple " + line.subject + ": " + line.detail;
        break;
      }
    throw std::invalid_argument(
        "defect fails the twisted cocycle identity (" + detail +
        "); the overlap data is inconsistent, run validation for details");
  }

  auto outcome = split_cocycle(st.spec, st.twist, psi, psi_degree);
  if (std::holds_alternative<Obstruction>(outcome)) {
    OrderStep step;
    step.degree = M;
    step.defect = std::move(psi);
    step.obstructed = true;
    st.history.push_back(std::move(step));
    return std::get<Obstruction>(std::move(outcome));
  }

  ZeroCochain phi = std::get<ZeroCochain>(std::move(outcome));
  for (const auto& c : st.spec.charts) {
    TruncatedSeries lifted = st.f.at(c.id).retruncated(M);
    auto it = phi.at.find(c.id);
    if (it != phi.at.end()) lifted = lifted + it->second;
    st.f.at(c.id) = std::move(lifted);
  }
  st.order = M;

  for (const auto& p : st.spec.pairs) {
    auto [lhs, rhs] = congruence_sides(st, p, M);
    std::string why;
    if (!congruent_mod(lhs, rhs, M, &why))
      throw std::logic_error("correction failed to restore the congruence on pair " +
                             pair_label(p) + " at order " + std::to_string(M) + ": " + why);
  }

  OrderStep step;
  step.degree = M;
  step.defect = std::move(psi);
  step.split = std::move(phi);
  st.history.push_back(std::move(step));
  return std::nullopt;
}

std::optional<Obstruction> run_to_order(ExtensionState& st, std::uint32_t target,
                                        std::optional<std::uint32_t> psi_degree) {
  while (st.order < target) {
    auto ob = extend_one_order(st, psi_degree);
    if (ob) return ob;
  }
  return std::nullopt;
}

ImmersionReport immersion_spot_check(const ExtensionState& st,
                                     const std::vector<Rational>& t_value) {
  if (t_value.size() != st.spec.t_arity)
    throw std::invalid_argument("parameter sample must have one entry per deformation parameter");
  ImmersionReport report;
  const std::uint32_t n = st.spec.fiber_dim;
  const std::uint32_t rn = st.spec.ambient_dim;
  const std::vector<Rational> values = {Rational(0), Rational(1, 2), Rational(-1, 2),
                                        Rational(1, 4), Rational(-1, 4)};
  for (const auto& c : st.spec.charts) {
    // Specialize f at the sample parameter: a polynomial map of z alone.
    ZPolyVec F(rn, ZPoly(n));
    for (const auto& [alpha, v] : st.f.at(c.id).terms()) {
      Rational weight(1);
      for (std::uint32_t i = 0; i < st.spec.t_arity; ++i)
        weight *= rational_pow(t_value[i], alpha[i]);
      if (weight == 0) continue;
      for (std::uint32_t s = 0; s < rn; ++s) F[s] = F[s] + v[s].scaled(weight);
    }
    ZPolyMatrix dF(rn, std::vector<ZPoly>(n, ZPoly(n)));
    for (std::uint32_t s = 0; s < rn; ++s)
      for (std::uint32_t u = 0; u < n; ++u) dF[s][u] = F[s].derivative(u);

    bool full_rank = true;
    std::string rank_detail;
    std::vector<std::vector<Rational>> images;
    for (const Rational& val : values) {
      std::vector<Rational> point(n, val);
      QMatrix jac(rn, n);
      for (std::uint32_t s = 0; s < rn; ++s)
        for (std::uint32_t u = 0; u < n; ++u) jac.at(s, u) = dF[s][u].eval(point);
      std::size_t rank = matrix_rank(jac);
      if (rank < n && full_rank) {
        full_rank = false;
        rank_detail = "Jacobian rank drops to " + std::to_string(rank) + " at z = " +
                      rational_to_string(val) + " (needs " + std::to_string(n) + ")";
      }
      std::vector<Rational> image(rn);
      for (std::uint32_t s = 0; s < rn; ++s) image[s] = F[s].eval(point);
      images.push_back(std::move(image));
    }
    CheckLine rank_line{"immersion", c.id, full_rank,
                        full_rank ? "full Jacobian rank at all sample points" : rank_detail};
    report.pass = report.pass && rank_line.pass;
    report.lines.push_back(std::move(rank_line));

    bool distinct = true;
    Rational margin(-1);
    std::string sep_detail;
    for (std::size_t i = 0; i < images.size() && distinct; ++i)
      for (std::size_t j = i + 1; j < images.size(); ++j) {
        Rational dist(0);
        for (std::uint32_t s = 0; s < rn; ++s)
          dist = std::max(dist, rational_abs(images[i][s] - images[j][s]));
        if (dist == 0) {
          distinct = false;
          sep_detail = "sample points z = " + rational_to_string(values[i]) + " and z = " +
                       rational_to_string(values[j]) + " map to the same ambient point";
          break;
        }
        if (margin < 0 || dist < margin) margin = dist;
      }
    CheckLine sep_line{"separation", c.id, distinct,
                       distinct ? "pairwise distinct images, margin " + rational_to_string(margin)
                                : sep_detail};
    report.pass = report.pass && sep_line.pass;
    report.lines.push_back(std::move(sep_line));
  }
  return report;
}

}  // namespace fembed
