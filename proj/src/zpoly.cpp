#include "fembed/zpoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fembed {

ZPoly ZPoly::constant(std::uint32_t vars, const Rational& c) {
  ZPoly p(vars);
  p.add_term(MultiIndex(vars, 0), c);
  return p;
}

ZPoly ZPoly::variable(std::uint32_t vars, std::uint32_t which) {
  if (which >= vars) throw std::invalid_argument("ZPoly::variable: index out of range");
  MultiIndex e(vars, 0);
  e[which] = 1;
  return monomial(vars, std::move(e), Rational(1));
}

ZPoly ZPoly::monomial(std::uint32_t vars, MultiIndex e, const Rational& c) {
  if (e.size() != vars) throw std::invalid_argument("ZPoly::monomial: exponent arity mismatch");
  ZPoly p(vars);
  p.add_term(e, c);
  return p;
}

int ZPoly::degree() const {
  if (terms_.empty()) return -1;
  // Graded order: the last term has maximal total degree.
  return static_cast<int>(mi_total(terms_.rbegin()->first));
}

Rational ZPoly::coeff(const MultiIndex& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void ZPoly::add_term(const MultiIndex& e, const Rational& c) {
  if (e.size() != vars_) throw std::invalid_argument("ZPoly::add_term: exponent arity mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

ZPoly ZPoly::operator+(const ZPoly& o) const {
  if (vars_ != o.vars_) throw std::invalid_argument("ZPoly::+: variable count mismatch");
  ZPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

ZPoly ZPoly::operator-(const ZPoly& o) const {
  if (vars_ != o.vars_) throw std::invalid_argument("ZPoly::-: variable count mismatch");
  ZPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, Rational(-c));
  return r;
}

ZPoly ZPoly::operator-() const {
  ZPoly r(vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, Rational(-c));
  return r;
}

ZPoly ZPoly::operator*(const ZPoly& o) const {
  if (vars_ != o.vars_) throw std::invalid_argument("ZPoly::*: variable count mismatch");
  ZPoly r(vars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) r.add_term(mi_add(ea, eb), ca * cb);
  return r;
}

ZPoly ZPoly::scaled(const Rational& c) const {
  ZPoly r(vars_);
  if (c == 0) return r;
  for (const auto& [e, cc] : terms_) r.terms_.emplace(e, cc * c);
  return r;
}

ZPoly ZPoly::pow(std::uint32_t e) const {
  ZPoly acc = constant(vars_, Rational(1));
  ZPoly b = *this;
  while (e > 0) {
    if (e & 1u) acc = acc * b;
    b = b * b;
    e >>= 1u;
  }
  return acc;
}

ZPoly ZPoly::derivative(std::uint32_t var) const {
  if (var >= vars_) throw std::invalid_argument("ZPoly::derivative: index out of range");
  ZPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    MultiIndex d = e;
    d[var] -= 1;
    r.add_term(d, c * Rational(e[var]));
  }
  return r;
}

ZPoly ZPoly::compose(const std::vector<ZPoly>& args) const {
  if (args.size() != vars_) throw std::invalid_argument("ZPoly::compose: argument count mismatch");
  std::uint32_t out_vars = args.empty() ? 0 : args[0].vars();
  for (const auto& a : args)
    if (a.vars() != out_vars) throw std::invalid_argument("ZPoly::compose: argument arity mismatch");
  // Memoized powers of each argument; exponents at desk scale stay small.
  std::vector<std::vector<ZPoly>> powers(vars_);
  for (std::uint32_t i = 0; i < vars_; ++i) powers[i].push_back(ZPoly::constant(out_vars, Rational(1)));
  auto power = [&](std::uint32_t i, std::uint32_t e) -> const ZPoly& {
    auto& cache = powers[i];
    while (cache.size() <= e) cache.push_back(cache.back() * args[i]);
    return cache[e];
  };
  ZPoly r(out_vars);
  for (const auto& [e, c] : terms_) {
    ZPoly t = ZPoly::constant(out_vars, c);
    for (std::uint32_t i = 0; i < vars_; ++i)
      if (e[i] > 0) t = t * power(i, e[i]);
    r = r + t;
  }
  return r;
}

Rational ZPoly::eval(const std::vector<Rational>& point) const {
  if (point.size() != vars_) throw std::invalid_argument("ZPoly::eval: point arity mismatch");
  Rational r(0);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::uint32_t i = 0; i < vars_; ++i)
      if (e[i] > 0) t *= rational_pow(point[i], e[i]);
    r += t;
  }
  return r;
}

Rational ZPoly::coeff_abs_sum() const {
  Rational s(0);
  for (const auto& [e, c] : terms_) s += rational_abs(c);
  return s;
}

ZPoly ZPoly::truncated_to_degree(std::uint32_t bound) const {
  ZPoly r(vars_);
  for (const auto& [e, c] : terms_)
    if (mi_total(e) <= bound) r.terms_.emplace(e, c);
  return r;
}

std::string ZPoly::to_string(const std::string& var_stem) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << rational_to_string(c) << ")";
    for (std::uint32_t i = 0; i < vars_; ++i) {
      if (e[i] == 0) continue;
      os << "*" << var_stem << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

ZPolyVec compose_vec(const ZPolyVec& f, const ZPolyVec& args) {
  ZPolyVec out;
  out.reserve(f.size());
  for (const auto& p : f) out.push_back(p.compose(args));
  return out;
}

Rational vec_coeff_abs_sum(const ZPolyVec& v) {
  Rational m(0);
  for (const auto& p : v) m = std::max(m, p.coeff_abs_sum());
  return m;
}

int vec_degree(const ZPolyVec& v) {
  int d = -1;
  for (const auto& p : v) d = std::max(d, p.degree());
  return d;
}

ZPolyVec identity_map(std::uint32_t vars) {
  ZPolyVec out;
  out.reserve(vars);
  for (std::uint32_t i = 0; i < vars; ++i) out.push_back(ZPoly::variable(vars, i));
  return out;
}

}  // namespace fembed
