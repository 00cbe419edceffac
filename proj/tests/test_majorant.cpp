#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>

#include "fembed/extension.hpp"
#include "fembed/fixtures.hpp"
#include "fembed/majorant.hpp"

using namespace fembed;

namespace {

bool condition_present(const ConvergenceCertificate& cert, const std::string& fragment,
                       bool must_pass = true) {
  for (const auto& line : cert.conditions)
    if (line.subject.find(fragment) != std::string::npos) return !must_pass || line.pass;
  return false;
}

}  // namespace

TEST_CASE("majorant coefficients follow the closed form") {
  Majorant A{Rational(1), Rational(64)};
  CHECK(A.coeff(0) == Rational(0));
  CHECK(A.coeff(1) == Rational(1, 16));      // a/16
  CHECK(A.coeff(2) == Rational(1));          // a b / 64
  CHECK(A.coeff(3) == Rational(256, 9));     // a b^2 / 144
  CHECK(A.t_coeff(MultiIndex{2}) == Rational(1));
  // Multinomial weights show up for several parameters: (1,1) carries 2.
  CHECK(A.t_coeff(MultiIndex{1, 1}) == Rational(2));
  CHECK(A.t_coeff(MultiIndex{0, 0}) == Rational(0));
}

TEST_CASE("domination compares each t-coefficient against the majorant") {
  Majorant A{Rational(1), Rational(64)};

  TruncatedSeries big(1, 2, 1, 1);
  big.add_term({1}, {ZPoly::constant(1, Rational(2))});  // 2 > A_1 = 1/16
  std::string why;
  CHECK_FALSE(dominates(big, A, &why));
  CHECK(why.find("t-index") != std::string::npos);

  TruncatedSeries small(1, 2, 1, 1);
  small.add_term({1}, {ZPoly::constant(1, Rational(1, 32))});
  small.add_term({2}, {ZPoly::monomial(1, {3}, Rational(1, 2))});
  CHECK(dominates(small, A, &why));

  TruncatedSeries constant(1, 2, 1, 1);
  constant.add_term({0}, {ZPoly::constant(1, Rational(1, 100))});
  CHECK_FALSE(dominates(constant, A, &why));  // constant slice must vanish
}

TEST_CASE("powers of the majorant stay geometrically controlled") {
  CHECK(power_bound_check(Majorant{Rational(1), Rational(32)}, 2, 20));
  CHECK(power_bound_check(Majorant{Rational(1), Rational(64)}, 3, 12));
  CHECK(power_bound_check(Majorant{Rational(5, 3), Rational(100)}, 4, 10));
  CHECK_THROWS_AS(power_bound_check(Majorant{Rational(1), Rational(2)}, 0, 4),
                  std::invalid_argument);
}

TEST_CASE("geometry constants of the built-in documents") {
  ConstantsLedger triv = estimate_constants(fixture("trivial"), Rational(1), Rational(64),
                                            Rational(1, 128));
  CHECK(triv.c0 == Rational(2));  // no ambient glue: derivative bound floor
  CHECK(triv.c1_ok);
  CHECK(triv.c1 == 1);
  CHECK(triv.delta == Rational(1, 2));
  CHECK(triv.mu == Rational(0));  // transitions carry no t terms
  CHECK(triv.c3 == Rational(1, 8));

  ConstantsLedger lin = estimate_constants(fixture("linear"), Rational(1), Rational(64),
                                           Rational(1, 16));
  CHECK(lin.c0 == Rational(3));  // Dh_{12} has an entry of size 2
  CHECK(lin.c1 == 2);            // the coefficient 2 of h_{12} at degree one
  CHECK(lin.delta == Rational(1, 4));
  CHECK(lin.mu == Rational(1, 16));  // mu(rho) = rho for g = z +- t

  CHECK(mu_of_rho(fixture("linear"), Rational(1, 4)) == Rational(1, 4));
  CHECK(mu_of_rho(fixture("trivial"), Rational(1, 4)) == Rational(0));

  ConstantsLedger three = estimate_constants(fixture("threechart"), Rational(1), Rational(64),
                                             Rational(1, 16));
  CHECK(three.c1 == 4);  // h_{31} scales by 4
  CHECK(three.delta == Rational(1, 4));
}

TEST_CASE("a constant term above one defeats every geometric weight") {
  nlohmann::ordered_json doc =
      nlohmann::ordered_json::parse(serialize_cover(fixture("trivial")));
  doc["g"]["U1,U2"]["terms"][0]["coeffs"][0]["terms"][0]["c"] = "5/4";
  CoverSpec spec = load_cover(doc.dump());
  ConstantsLedger led = estimate_constants(spec, Rational(1), Rational(64), Rational(1, 16));
  CHECK_FALSE(led.c1_ok);
  CHECK(led.c1_note.find("constant term") != std::string::npos);
  CHECK(led.c1_note.find("U1,U2") != std::string::npos);
}

TEST_CASE("defect bounds start at the first remeasured order") {
  CoverSpec spec = fixture("linear");
  ExtensionState st = init_extension(spec);
  REQUIRE_FALSE(run_to_order(st, 3).has_value());
  ConvergenceCertificate cert = certify(st, {}, {}, {});
  REQUIRE(cert.certified);

  DefectBoundReport rep = defect_bound_check(st, cert.constants, Majorant{cert.a, cert.b});
  CHECK(rep.pass);
  CHECK(!rep.lines.empty());
  for (const auto& line : rep.lines) {
    CHECK(line.pass);
    CHECK(line.subject != "order 1");  // the scale a absorbs the first defect
  }
  bool order2 = false;
  for (const auto& line : rep.lines) order2 = order2 || line.subject == "order 2";
  CHECK(order2);
}

TEST_CASE("pinned certificate for the product family") {
  CoverSpec spec = fixture("trivial");
  ExtensionState st = init_extension(spec);
  REQUIRE_FALSE(run_to_order(st, 3).has_value());

  ConvergenceCertificate cert =
      certify(st, Rational(1), Rational(64), Rational(1, 128));
  CHECK(cert.certified);
  CHECK(cert.status == "CERTIFIED");
  CHECK(cert.epsilon0 == Rational(1, 128));  // min(rho, 1/(2b)) with both 1/128
  CHECK(cert.constants.c3 == Rational(1, 8));
  CHECK(cert.constants.c4 == Rational(2));  // floor: all split gains vanish
  CHECK(condition_present(cert, "(i) b > 2c1(r+n)a"));
  CHECK(condition_present(cert, "(ii) 4c0c1^2(r+n)^2 a/b < 1/2"));
  CHECK(condition_present(cert, "(iii) 2c0((1-mu/delta)^-n - 1) < 1/2"));
  CHECK(condition_present(cert, "splitting gain stable"));
  CHECK(condition_present(cert, "(f - seed) << A"));
}

TEST_CASE("auto-selected constants certify the corrected family") {
  CoverSpec spec = fixture("linear");
  ExtensionState st = init_extension(spec);
  REQUIRE_FALSE(run_to_order(st, 4).has_value());

  ConvergenceCertificate cert = certify(st, {}, {}, {});
  REQUIRE(cert.certified);
  // a = 32 * ||first correction|| = 32 * 9/11; b makes condition (ii) = 1/4.
  CHECK(cert.a == Rational(288, 11));
  CHECK(cert.b == Rational(221184, 11));
  CHECK(cert.rho == Rational(1, 64));
  CHECK(cert.epsilon0 == Rational(11, 442368));  // 1/(2b) is the binding cap
  CHECK(cert.constants.c3 == Rational(13, 20));

  REQUIRE(cert.constants.c4_history.size() == 4);
  CHECK(cert.constants.c4_history[0] == Rational(10, 13));
  CHECK(cert.constants.c4_history[1] == Rational(5, 134784));
  CHECK(cert.constants.c4_history[2] == Rational(0));
  CHECK(cert.constants.c4_history[3] == Rational(0));
  CHECK(std::is_sorted(cert.constants.c4_history.rbegin(), cert.constants.c4_history.rend()));
  CHECK(cert.constants.c4 == Rational(2));  // observed gains never beat the floor
}

TEST_CASE("violated smallness conditions are reported by name") {
  CoverSpec spec = fixture("trivial");
  ExtensionState st = init_extension(spec);
  REQUIRE_FALSE(run_to_order(st, 3).has_value());

  ConvergenceCertificate cert = certify(st, Rational(1), Rational(1), Rational(1, 128));
  CHECK_FALSE(cert.certified);
  CHECK(cert.status == "UNCERTIFIABLE");
  CHECK(cert.reason.find("b > 2c1(r+n)a") != std::string::npos);
}

TEST_CASE("one computed order is not enough history to trust the gains") {
  CoverSpec spec = fixture("trivial");
  ExtensionState st = init_extension(spec);
  REQUIRE_FALSE(run_to_order(st, 1).has_value());
  ConvergenceCertificate cert = certify(st, Rational(1), Rational(64), Rational(1, 128));
  CHECK_FALSE(cert.certified);
  CHECK(cert.reason.find("splitting gain stable") != std::string::npos);
  CHECK(cert.reason.find("two computed orders") != std::string::npos);
}

TEST_CASE("an obstructed run cannot be certified") {
  CoverSpec spec = fixture("obstructed");
  ExtensionState st = init_extension(spec);
  auto ob = run_to_order(st, 2);
  REQUIRE(ob.has_value());
  ConvergenceCertificate cert = certify(st, {}, {}, {});
  CHECK_FALSE(cert.certified);
  CHECK(cert.reason.find("obstructed at order 1") != std::string::npos);
}
