#pragma once

#include "fembed/multi_index.hpp"
#include "fembed/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace fembed {

// Sparse multivariate polynomial over exact rationals. The variable count is
// fixed per instance; every stored exponent vector has exactly that length and
// no stored coefficient is zero. Terms are kept in graded lexicographic order.
// There is no degree truncation: products and compositions are exact.
class ZPoly {
 public:
  using TermMap = std::map<MultiIndex, Rational, GrlexLess>;

  explicit ZPoly(std::uint32_t vars = 0) : vars_(vars) {}

  static ZPoly constant(std::uint32_t vars, const Rational& c);
  static ZPoly variable(std::uint32_t vars, std::uint32_t which);
  static ZPoly monomial(std::uint32_t vars, MultiIndex e, const Rational& c);

  std::uint32_t vars() const { return vars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  // Total degree; -1 for the zero polynomial.
  int degree() const;

  const TermMap& terms() const { return terms_; }
  Rational coeff(const MultiIndex& e) const;
  // Adds c to the coefficient at e, erasing the term if it cancels to zero.
  void add_term(const MultiIndex& e, const Rational& c);

  ZPoly operator+(const ZPoly& o) const;
  ZPoly operator-(const ZPoly& o) const;
  ZPoly operator-() const;
  ZPoly operator*(const ZPoly& o) const;
  ZPoly scaled(const Rational& c) const;
  ZPoly pow(std::uint32_t e) const;
  bool operator==(const ZPoly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }

  ZPoly derivative(std::uint32_t var) const;

  // Substitutes args[i] for variable i. All args must share one variable
  // count, which becomes the variable count of the result.
  ZPoly compose(const std::vector<ZPoly>& args) const;

  Rational eval(const std::vector<Rational>& point) const;

  // Sum of absolute values of the coefficients: an upper bound for the sup of
  // the polynomial on the closed unit polydisc.
  Rational coeff_abs_sum() const;

  // Drops every term of total degree > bound.
  ZPoly truncated_to_degree(std::uint32_t bound) const;

  std::string to_string(const std::string& var_stem = "z") const;

 private:
  std::uint32_t vars_;
  TermMap terms_;
};

using ZPolyVec = std::vector<ZPoly>;
using ZPolyMatrix = std::vector<std::vector<ZPoly>>;

// Componentwise substitution: out[s] = f[s](args).
ZPolyVec compose_vec(const ZPolyVec& f, const ZPolyVec& args);

// Max over components of the coefficient-sum bound.
Rational vec_coeff_abs_sum(const ZPolyVec& v);

// Max total degree over components; -1 if all zero.
int vec_degree(const ZPolyVec& v);

ZPolyVec identity_map(std::uint32_t vars);

}  // namespace fembed
