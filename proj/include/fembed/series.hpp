#pragma once

#include "fembed/zpoly.hpp"

#include <map>
#include <string>
#include <vector>

namespace fembed {

// Vector-valued power series in the deformation parameters t_1..t_d,
// truncated at total t-degree `order`, with coefficients that are exact
// polynomials in the chart variables z_1..z_n (never truncated in z).
// Invariants: every stored t-index has |alpha| <= order and arity t_arity;
// every stored coefficient vector has length codomain and at least one
// nonzero component; all coefficient polynomials share z_vars variables.
class TruncatedSeries {
 public:
  using TermMap = std::map<MultiIndex, ZPolyVec, GrlexLess>;

  TruncatedSeries(std::uint32_t t_arity, std::uint32_t order, std::uint32_t codomain,
                  std::uint32_t z_vars)
      : t_arity_(t_arity), order_(order), codomain_(codomain), z_vars_(z_vars) {}

  std::uint32_t t_arity() const { return t_arity_; }
  std::uint32_t order() const { return order_; }
  std::uint32_t codomain() const { return codomain_; }
  std::uint32_t z_vars() const { return z_vars_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  // Coefficient vector at t^alpha (zero vector if absent).
  ZPolyVec coeff(const MultiIndex& alpha) const;
  // Adds v to the coefficient at t^alpha; drops the entry if it cancels.
  // Indices beyond the truncation order are discarded silently: truncation
  // is part of the arithmetic, not an error.
  void add_term(const MultiIndex& alpha, const ZPolyVec& v);

  TruncatedSeries operator+(const TruncatedSeries& o) const;
  TruncatedSeries operator-(const TruncatedSeries& o) const;
  TruncatedSeries scaled(const Rational& c) const;
  bool operator==(const TruncatedSeries& o) const;

  // Same terms, new truncation order (terms above the new order are dropped).
  TruncatedSeries retruncated(std::uint32_t new_order) const;

  // The degree-m homogeneous slice, kept as a series of the same order.
  TruncatedSeries homogeneous_part(std::uint32_t m) const;
  // Terms of total t-degree >= m.
  TruncatedSeries tail_from(std::uint32_t m) const;

  // Single component as a codomain-1 series.
  TruncatedSeries component(std::uint32_t s) const;

  // Multiplies every term by t^alpha, dropping what falls beyond the order.
  TruncatedSeries t_shifted(const MultiIndex& alpha) const;

  // Truncated product of two scalar (codomain-1) series.
  TruncatedSeries mul_scalar(const TruncatedSeries& o) const;

  std::string to_string() const;

  static TruncatedSeries from_poly_map(const ZPolyVec& components, std::uint32_t t_arity,
                                       std::uint32_t order);

 private:
  std::uint32_t t_arity_, order_, codomain_, z_vars_;
  TermMap terms_;
};

// a == b modulo t-degree > m: every coefficient with |alpha| <= m of a - b
// vanishes identically. Structural mismatch (arity, codomain, z-arity) is
// reported as false with a diagnostic rather than an exception.
bool congruent_mod(const TruncatedSeries& a, const TruncatedSeries& b, std::uint32_t m,
                   std::string* why = nullptr);

// h composed with f: h is a polynomial map in f.codomain variables and the
// result collects h(f) truncated at f.order. Exact in z.
TruncatedSeries compose_ambient(const ZPolyVec& h, const TruncatedSeries& f);

// f with its chart variables substituted by the components of g, then
// re-truncated. f's coefficients are polynomials in g.codomain variables;
// the result lives in g's chart variables. Orders must agree.
TruncatedSeries compose_fiber(const TruncatedSeries& f, const TruncatedSeries& g);

// Evaluates the scalar polynomial p on the components of g (a codomain-1
// truncated series in g's chart variables).
TruncatedSeries poly_at_series(const ZPoly& p, const TruncatedSeries& g);

// Entry (s,u) = (d h^s / d w^u) evaluated along the seed: a matrix of
// polynomials in the seed's chart variables.
ZPolyMatrix jacobian_at_center(const ZPolyVec& h, const ZPolyVec& seed);

}  // namespace fembed
