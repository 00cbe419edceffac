#include "fembed/cech.hpp"

#include "fembed/linalg.hpp"

#include <algorithm>
#include <set>
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

// Substitute z -> G(z') in every t-coefficient.
TruncatedSeries substitute_z(const TruncatedSeries& s, const ZPolyVec& G) {
  TruncatedSeries out(s.t_arity(), s.order(), s.codomain(), G.empty() ? 0 : G[0].vars());
  for (const auto& [alpha, v] : s.terms()) out.add_term(alpha, compose_vec(v, G));
  return out;
}

TruncatedSeries matrix_apply(const ZPolyMatrix& J, const TruncatedSeries& s) {
  TruncatedSeries out(s.t_arity(), s.order(), static_cast<std::uint32_t>(J.size()), s.z_vars());
  for (const auto& [alpha, v] : s.terms()) {
    ZPolyVec w(J.size(), ZPoly(s.z_vars()));
    for (std::size_t row = 0; row < J.size(); ++row)
      for (std::size_t colv = 0; colv < v.size(); ++colv) w[row] = w[row] + J[row][colv] * v[colv];
    out.add_term(alpha, w);
  }
  return out;
}

ZPolyMatrix matrix_compose(const ZPolyMatrix& J, const ZPolyVec& G) {
  ZPolyMatrix out(J.size());
  for (std::size_t r = 0; r < J.size(); ++r) {
    out[r].reserve(J[r].size());
    for (const auto& entry : J[r]) out[r].push_back(entry.compose(G));
  }
  return out;
}

int matrix_degree(const ZPolyMatrix& J) {
  int d = 0;
  for (const auto& row : J)
    for (const auto& e : row) d = std::max(d, e.degree());
  return d;
}

std::string first_offense(const TruncatedSeries& residual) {
  for (const auto& [alpha, v] : residual.terms())
    for (std::size_t s = 0; s < v.size(); ++s)
      if (!v[s].is_zero())
        return "first offense at t-index " + mi_brackets(alpha) + ", component " +
               std::to_string(s + 1) + ", z-monomial " + mi_brackets(v[s].terms().begin()->first);
  return {};
}

}  // namespace

ZPolyMatrix JacobianTwist::of(const std::string& j, const std::string& k,
                              std::uint32_t ambient_dim, std::uint32_t fiber_dim) const {
  if (j == k) {
    ZPolyMatrix id(ambient_dim, std::vector<ZPoly>(ambient_dim, ZPoly(fiber_dim)));
    for (std::uint32_t s = 0; s < ambient_dim; ++s) id[s][s] = ZPoly::constant(fiber_dim, 1);
    return id;
  }
  auto it = at.find(PairKey{j, k});
  if (it == at.end()) throw std::invalid_argument("no twist matrix for pair " + j + "," + k);
  return it->second;
}

JacobianTwist make_twist(const CoverSpec& spec) {
  JacobianTwist twist;
  for (const auto& p : spec.pairs)
    twist.at.emplace(p, jacobian_at_center(spec.ambient_transition_for(p.a, p.b), spec.seed_of(p.b)));
  return twist;
}

bool OneCochain::is_zero() const {
  for (const auto& [unused, s] : at)
    if (!s.is_zero()) return false;
  return true;
}

Rational cochain_max_norm(const OneCochain& c) {
  Rational best(0);
  for (const auto& [unused, s] : c.at)
    for (const auto& [alpha, v] : s.terms()) best = std::max(best, vec_coeff_abs_sum(v));
  return best;
}

Rational cochain_max_norm(const ZeroCochain& c) {
  Rational best(0);
  for (const auto& [unused, s] : c.at)
    for (const auto& [alpha, v] : s.terms()) best = std::max(best, vec_coeff_abs_sum(v));
  return best;
}

OneCochain coboundary(const CoverSpec& spec, const JacobianTwist& twist, const ZeroCochain& phi) {
  OneCochain out;
  out.degree = phi.degree;
  for (const auto& p : spec.pairs) {
    TruncatedSeries zero(spec.t_arity, phi.degree, spec.ambient_dim, spec.fiber_dim);
    auto jt = phi.at.find(p.a);
    auto kt = phi.at.find(p.b);
    const TruncatedSeries& phi_j = jt == phi.at.end() ? zero : jt->second;
    const TruncatedSeries& phi_k = kt == phi.at.end() ? zero : kt->second;
    TruncatedSeries lhs = substitute_z(phi_j, spec.transition_at_zero(p.a, p.b));
    TruncatedSeries rhs = matrix_apply(twist.of(p.a, p.b, spec.ambient_dim, spec.fiber_dim), phi_k);
    out.at.emplace(p, lhs - rhs);
  }
  return out;
}

CocycleReport check_defect_cocycle(const CoverSpec& spec, const JacobianTwist& twist,
                                   const OneCochain& psi) {
  CocycleReport report;
  auto psi_of = [&](const std::string& a, const std::string& b) -> TruncatedSeries {
    if (a == b) return TruncatedSeries(spec.t_arity, psi.degree, spec.ambient_dim, spec.fiber_dim);
    auto it = psi.at.find(PairKey{a, b});
    if (it == psi.at.end())
      throw std::invalid_argument("cocycle check needs the undeclared pair " + a + "," + b);
    return it->second;
  };
  for (const auto& t : spec.triples) {
    ZPolyVec G = spec.transition_at_zero(t.b, t.c);
    TruncatedSeries lhs =
        substitute_z(psi_of(t.a, t.b), G) +
        matrix_apply(matrix_compose(twist.of(t.a, t.b, spec.ambient_dim, spec.fiber_dim), G),
                     psi_of(t.b, t.c));
    TruncatedSeries residual = lhs - psi_of(t.a, t.c);
    CheckLine line{"defect-cocycle", triple_label(t), residual.is_zero(),
                   residual.is_zero() ? "exact" : first_offense(residual)};
    report.pass = report.pass && line.pass;
    report.lines.push_back(std::move(line));
  }
  return report;
}

std::variant<ZeroCochain, Obstruction> split_cocycle(const CoverSpec& spec,
                                                     const JacobianTwist& twist,
                                                     const OneCochain& psi,
                                                     std::optional<std::uint32_t> psi_degree) {
  const std::uint32_t n = spec.fiber_dim;
  const std::uint32_t rn = spec.ambient_dim;
  const std::uint32_t m = psi.degree;

  ZeroCochain phi;
  phi.degree = m;
  for (const auto& c : spec.charts)
    phi.at.emplace(c.id, TruncatedSeries(spec.t_arity, m, rn, n));
  if (spec.pairs.empty()) return phi;

  // Default unknown degree: enough to express any solution assembled from the
  // data itself, i.e. deg psi plus the largest twist degree.
  std::uint32_t d_psi = 0;
  if (psi_degree) {
    d_psi = *psi_degree;
  } else {
    int dp = 0, dt = 0;
    for (const auto& [unused, s] : psi.at)
      for (const auto& [alpha, v] : s.terms()) dp = std::max(dp, vec_degree(v));
    for (const auto& [unused, J] : twist.at) dt = std::max(dt, matrix_degree(J));
    d_psi = static_cast<std::uint32_t>(dp + dt);
  }

  const std::vector<MultiIndex> exps = mi_all_up_to(n, d_psi);
  const std::size_t n_exps = exps.size();
  const std::size_t cols = spec.charts.size() * rn * n_exps;
  auto col_index = [&](std::size_t chart_idx, std::uint32_t sigma, std::size_t exp_idx) {
    return (chart_idx * rn + sigma) * n_exps + exp_idx;
  };
  std::map<std::string, std::size_t> chart_index;
  for (std::size_t i = 0; i < spec.charts.size(); ++i) chart_index.emplace(spec.charts[i].id, i);

  // Column polynomials per pair: what one unit of unknown (chart, sigma, e)
  // contributes to the pair's equation block. The matrix is the same for all
  // t-indices; only the right-hand side varies.
  std::map<PairKey, std::vector<ZPolyVec>> contrib;
  for (const auto& p : spec.pairs) {
    std::vector<ZPolyVec> block(cols, ZPolyVec(rn, ZPoly(n)));
    const ZPolyVec G = spec.transition_at_zero(p.a, p.b);
    const ZPolyMatrix J = twist.of(p.a, p.b, rn, n);
    // Powers of the components of G, enough for any exponent we substitute.
    std::vector<std::vector<ZPoly>> gpow(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      gpow[i].push_back(ZPoly::constant(n, 1));
      for (std::uint32_t d = 1; d <= d_psi; ++d) gpow[i].push_back(gpow[i][d - 1] * G[i]);
    }
    const std::size_t ja = chart_index.at(p.a);
    const std::size_t kb = chart_index.at(p.b);
    for (std::size_t ei = 0; ei < n_exps; ++ei) {
      ZPoly image = ZPoly::constant(n, 1);
      for (std::uint32_t i = 0; i < n; ++i)
        if (exps[ei][i] > 0) image = image * gpow[i][exps[ei][i]];
      ZPoly mono = ZPoly::monomial(n, exps[ei], Rational(1));
      for (std::uint32_t sigma = 0; sigma < rn; ++sigma) {
        block[col_index(ja, sigma, ei)][sigma] = block[col_index(ja, sigma, ei)][sigma] + image;
        for (std::uint32_t s = 0; s < rn; ++s)
          block[col_index(kb, sigma, ei)][s] =
              block[col_index(kb, sigma, ei)][s] - J[s][sigma] * mono;
      }
    }
    contrib.emplace(p, std::move(block));
  }

  // Rows: every z-monomial arising in a column or in psi, capped at the
  // declared equation degree bound. Anything beyond the cap is caught by the
  // exact re-check below.
  std::map<PairKey, std::vector<MultiIndex>> rowset;
  std::size_t rows_total = 0;
  for (const auto& p : spec.pairs) {
    std::set<MultiIndex, GrlexLess> monos;
    for (const auto& colvec : contrib.at(p))
      for (const auto& comp : colvec)
        for (const auto& [e, c] : comp.terms())
          if (mi_total(e) <= spec.eq_degree_bound) monos.insert(e);
    auto it = psi.at.find(p);
    if (it != psi.at.end())
      for (const auto& [alpha, v] : it->second.terms())
        for (const auto& comp : v)
          for (const auto& [e, c] : comp.terms())
            if (mi_total(e) <= spec.eq_degree_bound) monos.insert(e);
    rowset.emplace(p, std::vector<MultiIndex>(monos.begin(), monos.end()));
    rows_total += rn * monos.size();
  }

  QMatrix A(rows_total, cols);
  {
    std::size_t row_base = 0;
    for (const auto& p : spec.pairs) {
      const auto& monos = rowset.at(p);
      const auto& block = contrib.at(p);
      for (std::size_t col = 0; col < cols; ++col)
        for (std::uint32_t s = 0; s < rn; ++s)
          for (std::size_t mi = 0; mi < monos.size(); ++mi) {
            Rational c = block[col][s].coeff(monos[mi]);
            if (c != 0) A.at(row_base + s * monos.size() + mi, col) = c;
          }
      row_base += rn * monos.size();
    }
  }

  RrefSolver solver(A);
  bool all_feasible = true;
  for (const MultiIndex& alpha : mi_all_of_degree(spec.t_arity, m)) {
    std::vector<Rational> b(rows_total, Rational(0));
    std::size_t row_base = 0;
    bool any = false;
    for (const auto& p : spec.pairs) {
      const auto& monos = rowset.at(p);
      auto it = psi.at.find(p);
      if (it != psi.at.end()) {
        ZPolyVec v = it->second.coeff(alpha);
        for (std::uint32_t s = 0; s < rn && s < v.size(); ++s)
          for (std::size_t mi = 0; mi < monos.size(); ++mi) {
            Rational c = v[s].coeff(monos[mi]);
            if (c != 0) {
              b[row_base + s * monos.size() + mi] = c;
              any = true;
            }
          }
      }
      row_base += rn * monos.size();
    }
    if (!any) continue;  // zero right-hand side: keep phi_alpha = 0
    SolveOutcome out = solver.solve_min_norm(b);
    if (!out.feasible) {
      all_feasible = false;
      out.x = solver.solve_least_squares(b);
    }
    for (std::size_t ci = 0; ci < spec.charts.size(); ++ci) {
      ZPolyVec v(rn, ZPoly(n));
      bool nonzero = false;
      for (std::uint32_t sigma = 0; sigma < rn; ++sigma)
        for (std::size_t ei = 0; ei < n_exps; ++ei) {
          const Rational& x = out.x[col_index(ci, sigma, ei)];
          if (x != 0) {
            v[sigma].add_term(exps[ei], x);
            nonzero = true;
          }
        }
      if (nonzero) phi.at.at(spec.charts[ci].id).add_term(alpha, v);
    }
  }

  // Exact re-check: the candidate must reproduce psi identically, including
  // any monomials the row cap left unenforced.
  OneCochain delta = coboundary(spec, twist, phi);
  OneCochain residual;
  residual.degree = m;
  Rational norm_sq(0);
  std::vector<PairKey> offending;
  bool exact = true;
  for (const auto& p : spec.pairs) {
    TruncatedSeries zero(spec.t_arity, m, rn, n);
    auto it = psi.at.find(p);
    TruncatedSeries r = delta.at.at(p) - (it == psi.at.end() ? zero : it->second);
    if (!r.is_zero()) {
      exact = false;
      offending.push_back(p);
      for (const auto& [alpha, v] : r.terms())
        for (const auto& comp : v)
          for (const auto& [e, c] : comp.terms()) norm_sq += c * c;
    }
    residual.at.emplace(p, std::move(r));
  }
  if (exact && all_feasible) return phi;

  Obstruction ob;
  ob.degree = m;
  ob.psi_degree_bound = d_psi;
  ob.residual = std::move(residual);
  ob.residual_norm_sq = norm_sq;
  ob.offending = std::move(offending);
  return ob;
}

}  // namespace fembed
