#include "fembed/series.hpp"

#include <sstream>
#include <stdexcept>

namespace fembed {

namespace {

bool vec_is_zero(const ZPolyVec& v) {
  for (const auto& p : v)
    if (!p.is_zero()) return false;
  return true;
}

}  // namespace

ZPolyVec TruncatedSeries::coeff(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  if (it != terms_.end()) return it->second;
  return ZPolyVec(codomain_, ZPoly(z_vars_));
}

void TruncatedSeries::add_term(const MultiIndex& alpha, const ZPolyVec& v) {
  if (alpha.size() != t_arity_) throw std::invalid_argument("TruncatedSeries::add_term: t-index arity mismatch");
  if (v.size() != codomain_) throw std::invalid_argument("TruncatedSeries::add_term: codomain mismatch");
  for (const auto& p : v)
    if (p.vars() != z_vars_) throw std::invalid_argument("TruncatedSeries::add_term: coefficient arity mismatch");
  if (mi_total(alpha) > order_) return;
  if (vec_is_zero(v)) return;
  auto it = terms_.find(alpha);
  if (it == terms_.end()) {
    terms_.emplace(alpha, v);
    return;
  }
  for (std::uint32_t s = 0; s < codomain_; ++s) it->second[s] = it->second[s] + v[s];
  if (vec_is_zero(it->second)) terms_.erase(it);
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
  if (t_arity_ != o.t_arity_ || codomain_ != o.codomain_ || z_vars_ != o.z_vars_ || order_ != o.order_)
    throw std::invalid_argument("TruncatedSeries::+: shape mismatch");
  TruncatedSeries r = *this;
  for (const auto& [a, v] : o.terms_) r.add_term(a, v);
  return r;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
  return *this + o.scaled(Rational(-1));
}

TruncatedSeries TruncatedSeries::scaled(const Rational& c) const {
  TruncatedSeries r(t_arity_, order_, codomain_, z_vars_);
  if (c == 0) return r;
  for (const auto& [a, v] : terms_) {
    ZPolyVec w;
    w.reserve(v.size());
    for (const auto& p : v) w.push_back(p.scaled(c));
    r.terms_.emplace(a, std::move(w));
  }
  return r;
}

bool TruncatedSeries::operator==(const TruncatedSeries& o) const {
  return t_arity_ == o.t_arity_ && order_ == o.order_ && codomain_ == o.codomain_ &&
         z_vars_ == o.z_vars_ && terms_ == o.terms_;
}

TruncatedSeries TruncatedSeries::retruncated(std::uint32_t new_order) const {
  TruncatedSeries r(t_arity_, new_order, codomain_, z_vars_);
  for (const auto& [a, v] : terms_)
    if (mi_total(a) <= new_order) r.terms_.emplace(a, v);
  return r;
}

TruncatedSeries TruncatedSeries::homogeneous_part(std::uint32_t m) const {
  if (m > order_) throw std::out_of_range("TruncatedSeries::homogeneous_part: degree beyond truncation order");
  TruncatedSeries r(t_arity_, order_, codomain_, z_vars_);
  for (const auto& [a, v] : terms_)
    if (mi_total(a) == m) r.terms_.emplace(a, v);
  return r;
}

TruncatedSeries TruncatedSeries::tail_from(std::uint32_t m) const {
  TruncatedSeries r(t_arity_, order_, codomain_, z_vars_);
  for (const auto& [a, v] : terms_)
    if (mi_total(a) >= m) r.terms_.emplace(a, v);
  return r;
}

TruncatedSeries TruncatedSeries::component(std::uint32_t s) const {
  if (s >= codomain_) throw std::out_of_range("TruncatedSeries::component: index out of range");
  TruncatedSeries r(t_arity_, order_, 1, z_vars_);
  for (const auto& [a, v] : terms_)
    if (!v[s].is_zero()) r.terms_.emplace(a, ZPolyVec{v[s]});
  return r;
}

TruncatedSeries TruncatedSeries::t_shifted(const MultiIndex& alpha) const {
  if (alpha.size() != t_arity_) throw std::invalid_argument("TruncatedSeries::t_shifted: t-index arity mismatch");
  TruncatedSeries r(t_arity_, order_, codomain_, z_vars_);
  for (const auto& [a, v] : terms_) {
    MultiIndex b = mi_add(a, alpha);
    if (mi_total(b) <= order_) r.terms_.emplace(std::move(b), v);
  }
  return r;
}

TruncatedSeries TruncatedSeries::mul_scalar(const TruncatedSeries& o) const {
  if (codomain_ != 1 || o.codomain_ != 1)
    throw std::invalid_argument("TruncatedSeries::mul_scalar: requires codomain 1");
  if (t_arity_ != o.t_arity_ || z_vars_ != o.z_vars_ || order_ != o.order_)
    throw std::invalid_argument("TruncatedSeries::mul_scalar: shape mismatch");
  TruncatedSeries r(t_arity_, order_, 1, z_vars_);
  for (const auto& [a, v] : terms_)
    for (const auto& [b, w] : o.terms_) {
      MultiIndex c = mi_add(a, b);
      if (mi_total(c) <= order_) r.add_term(c, ZPolyVec{v[0] * w[0]});
    }
  return r;
}

std::string TruncatedSeries::to_string() const {
  std::ostringstream os;
  os << "series(order=" << order_ << ")";
  for (const auto& [a, v] : terms_) {
    os << "\n  t^[";
    for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
    os << "]: (";
    for (std::size_t s = 0; s < v.size(); ++s) os << (s ? ", " : "") << v[s].to_string();
    os << ")";
  }
  return os.str();
}

TruncatedSeries TruncatedSeries::from_poly_map(const ZPolyVec& components, std::uint32_t t_arity,
                                               std::uint32_t order) {
  if (components.empty()) throw std::invalid_argument("TruncatedSeries::from_poly_map: empty component list");
  TruncatedSeries r(t_arity, order, static_cast<std::uint32_t>(components.size()),
                    components[0].vars());
  r.add_term(MultiIndex(t_arity, 0), components);
  return r;
}

bool congruent_mod(const TruncatedSeries& a, const TruncatedSeries& b, std::uint32_t m,
                   std::string* why) {
  auto complain = [&why](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (a.t_arity() != b.t_arity()) return complain("t-arity mismatch");
  if (a.codomain() != b.codomain()) return complain("codomain mismatch");
  if (a.z_vars() != b.z_vars()) return complain("chart-variable arity mismatch");
  if (m > a.order() || m > b.order()) return complain("congruence degree exceeds truncation order");
  for (const auto& alpha : mi_all_up_to(a.t_arity(), m)) {
    ZPolyVec va = a.coeff(alpha), vb = b.coeff(alpha);
    for (std::uint32_t s = 0; s < a.codomain(); ++s) {
      if (!(va[s] == vb[s])) {
        if (why) {
          std::ostringstream os;
          os << "difference nonzero at t-index [";
          for (std::size_t i = 0; i < alpha.size(); ++i) os << (i ? "," : "") << alpha[i];
          os << "], component " << s + 1;
          *why = os.str();
        }
        return false;
      }
    }
  }
  if (why) why->clear();
  return true;
}

TruncatedSeries poly_at_series(const ZPoly& p, const TruncatedSeries& g) {
  const std::uint32_t order = g.order();
  const std::uint32_t t_arity = g.t_arity();
  const std::uint32_t z_vars = g.z_vars();
  // Memoized truncated powers of each component of g.
  std::vector<std::vector<TruncatedSeries>> powers(g.codomain());
  auto one = TruncatedSeries::from_poly_map({ZPoly::constant(z_vars, Rational(1))}, t_arity, order);
  auto power = [&](std::uint32_t i, std::uint32_t e) -> const TruncatedSeries& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(one);
    while (cache.size() <= e) cache.push_back(cache.back().mul_scalar(g.component(i)));
    return cache[e];
  };
  TruncatedSeries r(t_arity, order, 1, z_vars);
  if (p.vars() != g.codomain()) throw std::invalid_argument("poly_at_series: arity mismatch");
  for (const auto& [e, c] : p.terms()) {
    TruncatedSeries term = one.scaled(c);
    for (std::uint32_t i = 0; i < p.vars(); ++i)
      if (e[i] > 0) term = term.mul_scalar(power(i, e[i]));
    r = r + term;
  }
  return r;
}

TruncatedSeries compose_ambient(const ZPolyVec& h, const TruncatedSeries& f) {
  if (h.empty()) throw std::invalid_argument("compose_ambient: empty polynomial map");
  for (const auto& p : h)
    if (p.vars() != f.codomain()) throw std::invalid_argument("compose_ambient: h arity does not match f codomain");
  TruncatedSeries r(f.t_arity(), f.order(), static_cast<std::uint32_t>(h.size()), f.z_vars());
  for (std::uint32_t s = 0; s < h.size(); ++s) {
    TruncatedSeries comp = poly_at_series(h[s], f);
    for (const auto& [a, v] : comp.terms()) {
      ZPolyVec slot(h.size(), ZPoly(f.z_vars()));
      slot[s] = v[0];
      r.add_term(a, slot);
    }
  }
  return r;
}

TruncatedSeries compose_fiber(const TruncatedSeries& f, const TruncatedSeries& g) {
  if (f.t_arity() != g.t_arity()) throw std::invalid_argument("compose_fiber: t-arity mismatch");
  if (f.order() != g.order()) throw std::invalid_argument("compose_fiber: order mismatch");
  if (f.z_vars() != g.codomain()) throw std::invalid_argument("compose_fiber: f chart arity does not match g codomain");
  TruncatedSeries r(f.t_arity(), f.order(), f.codomain(), g.z_vars());
  for (const auto& [alpha, v] : f.terms()) {
    for (std::uint32_t s = 0; s < f.codomain(); ++s) {
      if (v[s].is_zero()) continue;
      TruncatedSeries sub = poly_at_series(v[s], g).t_shifted(alpha);
      for (const auto& [beta, w] : sub.terms()) {
        ZPolyVec slot(f.codomain(), ZPoly(g.z_vars()));
        slot[s] = w[0];
        r.add_term(beta, slot);
      }
    }
  }
  return r;
}

ZPolyMatrix jacobian_at_center(const ZPolyVec& h, const ZPolyVec& seed) {
  if (h.empty()) throw std::invalid_argument("jacobian_at_center: empty polynomial map");
  const std::uint32_t w_vars = h[0].vars();
  for (const auto& p : h)
    if (p.vars() != w_vars) throw std::invalid_argument("jacobian_at_center: mixed arities in h");
  if (seed.size() != w_vars)
    throw std::invalid_argument("jacobian_at_center: seed component count does not match h arity");
  ZPolyMatrix J(h.size());
  for (std::size_t s = 0; s < h.size(); ++s) {
    J[s].reserve(w_vars);
    for (std::uint32_t u = 0; u < w_vars; ++u) J[s].push_back(h[s].derivative(u).compose(seed));
  }
  return J;
}

}  // namespace fembed
