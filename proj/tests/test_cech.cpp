#include <doctest.h>

#include <random>
#include <variant>

#include "fembed/cech.hpp"
#include "fembed/fixtures.hpp"
#include "fembed/linalg.hpp"

#include "gen.hpp"
#include "oracle.hpp"

using namespace fembed;

namespace {

ZeroCochain random_zero_cochain(std::mt19937& rng, const CoverSpec& spec, std::uint32_t m) {
  ZeroCochain phi;
  phi.degree = m;
  for (const auto& c : spec.charts) {
    TruncatedSeries s(spec.t_arity, m, spec.ambient_dim, spec.fiber_dim);
    for (const auto& alpha : mi_all_of_degree(spec.t_arity, m)) {
      ZPolyVec v;
      for (std::uint32_t comp = 0; comp < spec.ambient_dim; ++comp)
        v.push_back(gen::zpoly(rng, spec.fiber_dim, 2, 3));
      s.add_term(alpha, v);
    }
    phi.at.emplace(c.id, s);
  }
  return phi;
}

ZeroCochain scaled(const ZeroCochain& phi, const Rational& c) {
  ZeroCochain out;
  out.degree = phi.degree;
  for (const auto& [id, s] : phi.at) out.at.emplace(id, s.scaled(c));
  return out;
}

ZeroCochain added(const ZeroCochain& a, const ZeroCochain& b) {
  ZeroCochain out;
  out.degree = a.degree;
  for (const auto& [id, s] : a.at) out.at.emplace(id, s + b.at.at(id));
  return out;
}

// The order-one defect of the two-chart document with one honest correction,
// written out by hand:
//   psi_{12} = -(1, 2z) t        psi_{21} = (1 - z, z) t
OneCochain linear_order_one_defect(const CoverSpec& spec) {
  OneCochain psi;
  psi.degree = 1;
  TruncatedSeries s12(1, 1, 2, 1), s21(1, 1, 2, 1);
  s12.add_term({1}, {ZPoly::constant(1, Rational(-1)), ZPoly::monomial(1, {1}, Rational(-2))});
  s21.add_term({1}, {ZPoly::constant(1, Rational(1)) + ZPoly::monomial(1, {1}, Rational(-1)),
                     ZPoly::variable(1, 0)});
  psi.at.emplace(PairKey{"U1", "U2"}, s12);
  psi.at.emplace(PairKey{"U2", "U1"}, s21);
  (void)spec;
  return psi;
}

}  // namespace

TEST_CASE("twists are Jacobians along the seed, identity on the diagonal") {
  CoverSpec triv = fixture("trivial");
  JacobianTwist tw = make_twist(triv);
  ZPolyMatrix j12 = tw.of("U1", "U2", triv.ambient_dim, triv.fiber_dim);
  REQUIRE(j12.size() == 1);
  CHECK(j12[0][0] == ZPoly::constant(1, Rational(1)));

  CoverSpec lin = fixture("linear");
  JacobianTwist twl = make_twist(lin);
  // h_{12} = (w1 + w2, 2 w2) has the constant Jacobian [[1,1],[0,2]].
  ZPolyMatrix j = twl.of("U1", "U2", 2, 1);
  CHECK(j[0][0] == ZPoly::constant(1, Rational(1)));
  CHECK(j[0][1] == ZPoly::constant(1, Rational(1)));
  CHECK(j[1][0] == ZPoly(1));
  CHECK(j[1][1] == ZPoly::constant(1, Rational(2)));
  // Diagonal convention: the identity matrix.
  ZPolyMatrix jd = twl.of("U2", "U2", 2, 1);
  CHECK(jd[0][0] == ZPoly::constant(1, Rational(1)));
  CHECK(jd[0][1] == ZPoly(1));

  // A curved ambient change of charts gives a z-dependent twist.
  CoverSpec three = fixture("threechart");
  JacobianTwist twt = make_twist(three);
  ZPolyMatrix j21 = twt.of("U2", "U1", 2, 1);
  CHECK(j21[0][0] == ZPoly::constant(1, Rational(2)));
  CHECK(j21[1][0] ==
        ZPoly::constant(1, Rational(1, 2)) + ZPoly::monomial(1, {1}, Rational(-4)));
  CHECK(j21[1][1] == ZPoly::constant(1, Rational(2)));
}

TEST_CASE("the coboundary operator is linear") {
  CoverSpec spec = fixture("threechart");
  JacobianTwist tw = make_twist(spec);
  std::mt19937 rng(777);
  for (int it = 0; it < 10; ++it) {
    const std::uint32_t m = 1 + (it % 3);
    ZeroCochain phi = random_zero_cochain(rng, spec, m);
    ZeroCochain chi = random_zero_cochain(rng, spec, m);
    OneCochain lhs = coboundary(spec, tw, added(phi, chi));
    OneCochain rhs_phi = coboundary(spec, tw, phi);
    OneCochain rhs_chi = coboundary(spec, tw, chi);
    for (const auto& p : spec.pairs)
      CHECK(lhs.at.at(p) == rhs_phi.at.at(p) + rhs_chi.at.at(p));

    const Rational c(-3, 7);
    OneCochain sc = coboundary(spec, tw, scaled(phi, c));
    for (const auto& p : spec.pairs) CHECK(sc.at.at(p) == rhs_phi.at.at(p).scaled(c));
  }
}

TEST_CASE("hand-computed defect satisfies the twisted cocycle identity") {
  CoverSpec spec = fixture("linear");
  JacobianTwist tw = make_twist(spec);
  OneCochain psi = linear_order_one_defect(spec);

  // Cross-check the hand computation against the joint-polynomial oracle.
  std::map<std::string, TruncatedSeries> f;
  for (const auto& c : spec.charts)
    f.emplace(c.id, TruncatedSeries::from_poly_map(spec.seed_of(c.id), spec.t_arity, 1));
  for (const auto& p : spec.pairs) {
    auto slice = oracle::defect_slice(spec, f, p, 1);
    for (std::uint32_t s = 0; s < spec.ambient_dim; ++s)
      CHECK(oracle::from_series_component(psi.at.at(p), s, 1) == slice[s]);
  }

  CocycleReport rep = check_defect_cocycle(spec, tw, psi);
  CHECK(rep.pass);
  for (const auto& line : rep.lines) {
    CHECK(line.kind == "defect-cocycle");
    CHECK(line.pass);
  }

  // Breaking one coefficient must be caught and the triple named.
  OneCochain broken = psi;
  TruncatedSeries bump(1, 1, 2, 1);
  bump.add_term({1}, {ZPoly::constant(1, Rational(1)), ZPoly(1)});
  broken.at.at(PairKey{"U1", "U2"}) = broken.at.at(PairKey{"U1", "U2"}) + bump;
  CocycleReport bad = check_defect_cocycle(spec, tw, broken);
  CHECK_FALSE(bad.pass);
  bool named = false;
  for (const auto& line : bad.lines)
    if (!line.pass && line.subject.find("U1,U2,U1") != std::string::npos) named = true;
  CHECK(named);
}

TEST_CASE("splitting returns the known minimum-norm correction") {
  CoverSpec spec = fixture("linear");
  JacobianTwist tw = make_twist(spec);
  OneCochain psi = linear_order_one_defect(spec);

  auto result = split_cocycle(spec, tw, psi);
  auto* phi = std::get_if<ZeroCochain>(&result);
  REQUIRE(phi != nullptr);

  // delta(phi) reproduces psi exactly.
  OneCochain back = coboundary(spec, tw, *phi);
  for (const auto& p : spec.pairs) CHECK(back.at.at(p) == psi.at.at(p));

  // The value at U1 was solved by hand from the normal equations.
  ZPolyVec u1 = phi->at.at("U1").coeff({1});
  CHECK(u1[0] == ZPoly::constant(1, Rational(-5, 11)) + ZPoly::monomial(1, {1}, Rational(4, 11)));
  CHECK(u1[1] == ZPoly::constant(1, Rational(2, 11)) + ZPoly::monomial(1, {1}, Rational(-6, 11)));
  CHECK(cochain_max_norm(*phi) == Rational(9, 11));
  CHECK(cochain_max_norm(psi) == Rational(2));
}

TEST_CASE("splitting round-trips over random coboundaries") {
  std::mt19937 rng(31337);
  for (const char* name : {"linear", "threechart"}) {
    CoverSpec spec = fixture(name);
    JacobianTwist tw = make_twist(spec);
    for (int it = 0; it < 4; ++it) {
      const std::uint32_t m = 1 + (it % 2);
      ZeroCochain planted = random_zero_cochain(rng, spec, m);
      OneCochain psi = coboundary(spec, tw, planted);
      psi.degree = m;

      auto result = split_cocycle(spec, tw, psi);
      auto* phi = std::get_if<ZeroCochain>(&result);
      REQUIRE(phi != nullptr);
      OneCochain back = coboundary(spec, tw, *phi);
      for (const auto& p : spec.pairs) CHECK(back.at.at(p) == psi.at.at(p));

      // Min-norm never exceeds the planted preimage.
      Rational planted_sq(0), got_sq(0);
      for (const auto& [id, s] : planted.at)
        for (const auto& [alpha, v] : s.terms())
          for (const auto& poly : v)
            for (const auto& [e, cval] : poly.terms()) planted_sq += cval * cval;
      for (const auto& [id, s] : phi->at)
        for (const auto& [alpha, v] : s.terms())
          for (const auto& poly : v)
            for (const auto& [e, cval] : poly.terms()) got_sq += cval * cval;
      CHECK(got_sq <= planted_sq);
    }
  }
}

TEST_CASE("an unsplittable cocycle is returned as an obstruction with its residual") {
  CoverSpec spec = fixture("obstructed");
  JacobianTwist tw = make_twist(spec);

  // Both directions carry the same defect, so the two coboundary equations
  // demand phi_1 - phi_2 to equal the same nonzero thing with both signs.
  OneCochain psi;
  psi.degree = 1;
  TruncatedSeries s(1, 1, 2, 1);
  ZPoly bumpy = ZPoly::constant(1, Rational(-1)) + ZPoly::monomial(1, {2}, Rational(-1));
  s.add_term({1}, {bumpy, ZPoly(1)});
  psi.at.emplace(PairKey{"U1", "U2"}, s);
  psi.at.emplace(PairKey{"U2", "U1"}, s);

  auto result = split_cocycle(spec, tw, psi);
  auto* ob = std::get_if<Obstruction>(&result);
  REQUIRE(ob != nullptr);
  CHECK(ob->degree == 1);
  CHECK(ob->residual_norm_sq == Rational(4));
  CHECK(ob->offending.size() == 2);
  ZPolyVec r12 = ob->residual.at.at(PairKey{"U1", "U2"}).coeff({1});
  CHECK(r12[0] == ZPoly::constant(1, Rational(1)) + ZPoly::monomial(1, {2}, Rational(1)));
  CHECK(r12[1].is_zero());

  // Independent confirmation on one monomial block: the coefficient system
  // for each affected z-monomial is [[1,-1],[-1,1]] x = (-1,-1), which gains
  // rank when augmented, so no exact solution exists.
  QMatrix a(2, 2), aug(2, 3);
  a.at(0, 0) = Rational(1);
  a.at(0, 1) = Rational(-1);
  a.at(1, 0) = Rational(-1);
  a.at(1, 1) = Rational(1);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) aug.at(i, j) = a.at(i, j);
  aug.at(0, 2) = Rational(-1);
  aug.at(1, 2) = Rational(-1);
  CHECK(matrix_rank(a) == 1);
  CHECK(matrix_rank(aug) == 2);
  CHECK(oracle::bareiss_rank(a) == 1);
  CHECK(oracle::bareiss_rank(aug) == 2);
}

TEST_CASE("cochain norms take the worst component over pairs and charts") {
  OneCochain c;
  c.degree = 1;
  TruncatedSeries s(1, 1, 2, 1);
  s.add_term({1}, {ZPoly::constant(1, Rational(1, 2)) + ZPoly::monomial(1, {1}, Rational(1, 3)),
                   ZPoly::constant(1, Rational(-1, 4))});
  c.at.emplace(PairKey{"U1", "U2"}, s);
  CHECK(cochain_max_norm(c) == Rational(5, 6));

  ZeroCochain z;
  z.degree = 1;
  CHECK(cochain_max_norm(z) == Rational(0));
  z.at.emplace("U1", s);
  CHECK(cochain_max_norm(z) == Rational(5, 6));
}
