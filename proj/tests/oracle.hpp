#pragma once
// Slow reference implementations the tests cross-check the library against.
// Kept deliberately independent: polynomials here live on joint (z, t)
// exponent vectors under plain lexicographic order, composition is direct
// power expansion, and rank is fraction-free integer elimination rather than
// rational row reduction.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fembed/cover.hpp"
#include "fembed/linalg.hpp"
#include "fembed/series.hpp"

namespace oracle {

using fembed::Rational;

// Polynomial in zn z-variables and tn t-variables jointly, with terms of
// total t-degree above tcap discarded on entry.
struct BiPoly {
  int zn = 0, tn = 0, tcap = 0;
  std::map<std::vector<int>, Rational> c;

  BiPoly() = default;
  BiPoly(int zvars, int tvars, int cap) : zn(zvars), tn(tvars), tcap(cap) {}

  static BiPoly constant(int zn, int tn, int cap, const Rational& v) {
    BiPoly p(zn, tn, cap);
    if (v != 0) p.c[std::vector<int>(zn + tn, 0)] = v;
    return p;
  }
  static BiPoly zvar(int zn, int tn, int cap, int i) {
    BiPoly p(zn, tn, cap);
    std::vector<int> e(zn + tn, 0);
    e[i] = 1;
    p.c[e] = Rational(1);
    return p;
  }
  static BiPoly tvar(int zn, int tn, int cap, int i) {
    BiPoly p(zn, tn, cap);
    std::vector<int> e(zn + tn, 0);
    e[zn + i] = 1;
    p.c[e] = Rational(1);
    return p;
  }

  int tdeg(const std::vector<int>& e) const {
    int s = 0;
    for (int i = zn; i < zn + tn; ++i) s += e[i];
    return s;
  }

  void add(const std::vector<int>& e, const Rational& v) {
    if (v == 0 || tdeg(e) > tcap) return;
    auto it = c.find(e);
    if (it == c.end()) {
      c.emplace(e, v);
    } else {
      it->second += v;
      if (it->second == 0) c.erase(it);
    }
  }

  bool operator==(const BiPoly& o) const { return c == o.c; }
};

inline BiPoly operator+(const BiPoly& a, const BiPoly& b) {
  BiPoly r = a;
  for (const auto& [e, v] : b.c) r.add(e, v);
  return r;
}

inline BiPoly operator-(const BiPoly& a, const BiPoly& b) {
  BiPoly r = a;
  for (const auto& [e, v] : b.c) r.add(e, -v);
  return r;
}

inline BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  BiPoly r(a.zn, a.tn, a.tcap);
  for (const auto& [ea, va] : a.c)
    for (const auto& [eb, vb] : b.c) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add(e, va * vb);
    }
  return r;
}

inline BiPoly bp_pow(const BiPoly& base, int k) {
  BiPoly r = BiPoly::constant(base.zn, base.tn, base.tcap, Rational(1));
  for (int i = 0; i < k; ++i) r = r * base;
  return r;
}

// Terms of total t-degree exactly m.
inline BiPoly t_slice(const BiPoly& p, int m) {
  BiPoly r(p.zn, p.tn, p.tcap);
  for (const auto& [e, v] : p.c)
    if (p.tdeg(e) == m) r.c.emplace(e, v);
  return r;
}

// A t-free polynomial in the z block.
inline BiPoly from_zpoly(const fembed::ZPoly& p, int tn, int cap) {
  BiPoly r(static_cast<int>(p.vars()), tn, cap);
  for (const auto& [e, v] : p.terms()) {
    std::vector<int> je(r.zn + tn, 0);
    for (std::size_t i = 0; i < e.size(); ++i) je[i] = static_cast<int>(e[i]);
    r.add(je, v);
  }
  return r;
}

// Substitute args (one per variable of h) into h by expanding powers.
inline BiPoly subst_zpoly(const fembed::ZPoly& h, const std::vector<BiPoly>& args) {
  const BiPoly& model = args.at(0);
  BiPoly r(model.zn, model.tn, model.tcap);
  for (const auto& [e, v] : h.terms()) {
    BiPoly term = BiPoly::constant(model.zn, model.tn, model.tcap, v);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) term = term * bp_pow(args[i], static_cast<int>(e[i]));
    r = r + term;
  }
  return r;
}

// A series component as a joint polynomial in its own z-variables and t.
inline BiPoly from_series_component(const fembed::TruncatedSeries& f, std::uint32_t comp,
                                    int cap) {
  const int zn = static_cast<int>(f.z_vars());
  const int tn = static_cast<int>(f.t_arity());
  BiPoly r(zn, tn, cap);
  for (const auto& [alpha, vec] : f.terms()) {
    BiPoly tpow = BiPoly::constant(zn, tn, cap, Rational(1));
    for (std::size_t i = 0; i < alpha.size(); ++i)
      if (alpha[i] > 0)
        tpow = tpow * bp_pow(BiPoly::tvar(zn, tn, cap, static_cast<int>(i)),
                             static_cast<int>(alpha[i]));
    r = r + tpow * from_zpoly(vec[comp], tn, cap);
  }
  return r;
}

// Substitute zargs for the z-variables of component `comp` of f; the t
// variables of f pass through unchanged.
inline BiPoly subst_series_component(const fembed::TruncatedSeries& f, std::uint32_t comp,
                                     const std::vector<BiPoly>& zargs) {
  const BiPoly& model = zargs.at(0);
  BiPoly r(model.zn, model.tn, model.tcap);
  for (const auto& [alpha, vec] : f.terms()) {
    BiPoly tpow = BiPoly::constant(model.zn, model.tn, model.tcap, Rational(1));
    for (std::size_t i = 0; i < alpha.size(); ++i)
      if (alpha[i] > 0)
        tpow = tpow * bp_pow(BiPoly::tvar(model.zn, model.tn, model.tcap, static_cast<int>(i)),
                             static_cast<int>(alpha[i]));
    r = r + tpow * subst_zpoly(vec[comp], zargs);
  }
  return r;
}

// The total t-degree-M slice of h_{jk}(f_k) - f_j(g_{jk}, t) over the ordered
// pair p = (j, k), recomputed from scratch. Components are indexed by the
// ambient coordinates of chart j's ambient chart.
inline std::vector<BiPoly> defect_slice(const fembed::CoverSpec& spec,
                                        const std::map<std::string, fembed::TruncatedSeries>& f,
                                        const fembed::PairKey& p, int M) {
  const int zn = static_cast<int>(spec.fiber_dim);
  const int tn = static_cast<int>(spec.t_arity);
  const fembed::TruncatedSeries& fj = f.at(p.a);
  const fembed::TruncatedSeries& fk = f.at(p.b);

  std::vector<BiPoly> fk_joint;
  for (std::uint32_t s = 0; s < spec.ambient_dim; ++s)
    fk_joint.push_back(from_series_component(fk, s, M));

  const fembed::ZPolyVec h = spec.ambient_transition_for(p.a, p.b);
  std::vector<BiPoly> lhs;
  for (std::uint32_t s = 0; s < spec.ambient_dim; ++s)
    lhs.push_back(subst_zpoly(h[s], fk_joint));

  const fembed::TruncatedSeries g = spec.transition(p.a, p.b);
  std::vector<BiPoly> gargs;
  for (std::uint32_t i = 0; i < spec.fiber_dim; ++i)
    gargs.push_back(from_series_component(g, i, M));
  if (gargs.empty()) gargs.push_back(BiPoly(zn, tn, M));

  std::vector<BiPoly> out;
  for (std::uint32_t s = 0; s < spec.ambient_dim; ++s)
    out.push_back(t_slice(lhs[s] - subst_series_component(fj, s, gargs), M));
  return out;
}

using Int = boost::multiprecision::cpp_int;

// Rank by Bareiss fraction-free elimination after clearing each row's
// denominators. Exact; no rational division anywhere in the sweep.
inline std::size_t bareiss_rank(const fembed::QMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<Int>> a(rows, std::vector<Int>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    Int lcm = 1;
    for (std::size_t j = 0; j < cols; ++j) {
      Int den = boost::multiprecision::denominator(m.at(i, j));
      lcm = boost::multiprecision::lcm(lcm, den);
    }
    for (std::size_t j = 0; j < cols; ++j) {
      const Rational& q = m.at(i, j);
      a[i][j] = boost::multiprecision::numerator(q) *
                (lcm / boost::multiprecision::denominator(q));
    }
  }

  Int prev = 1;
  std::size_t rank = 0;
  std::size_t col = 0;
  for (std::size_t row = 0; row < rows && col < cols; ++col) {
    std::size_t piv = row;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[row], a[piv]);
    for (std::size_t i = row + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j)
        a[i][j] = (a[row][col] * a[i][j] - a[i][col] * a[row][j]) / prev;
      a[i][col] = 0;
    }
    prev = a[row][col];
    ++rank;
    ++row;
  }
  return rank;
}

}  // namespace oracle
