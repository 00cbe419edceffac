#include "fembed/fixtures.hpp"

#include <initializer_list>
#include <stdexcept>
#include <utility>

namespace fembed {

namespace {

ZPoly zp(std::uint32_t vars, std::initializer_list<std::pair<MultiIndex, const char*>> terms) {
  ZPoly p(vars);
  for (const auto& [e, c] : terms) p.add_term(e, parse_rational(c));
  return p;
}

TruncatedSeries constant_series(const ZPolyVec& components, std::uint32_t t_arity,
                                std::uint32_t order) {
  return TruncatedSeries::from_poly_map(components, t_arity, order);
}

CoverSpec make_trivial() {
  CoverSpec s;
  s.t_arity = 1;
  s.fiber_dim = 1;
  s.ambient_dim = 1;
  s.max_order = 8;
  s.eq_degree_bound = 8;
  s.charts = {{"U1", Rational(1, 2)}, {"U2", Rational(1, 2)}};
  s.ambient_charts = {{"V1"}};
  s.assignment = {{"U1", "V1"}, {"U2", "V1"}};
  // t-independent glue: the family is the product of the central fiber with
  // the parameter disc, so every defect vanishes identically.
  s.g.emplace(PairKey{"U1", "U2"},
              constant_series({zp(1, {{{1}, "1"}, {{0}, "1/4"}})}, 1, s.max_order));
  s.g.emplace(PairKey{"U2", "U1"},
              constant_series({zp(1, {{{1}, "1"}, {{0}, "-1/4"}})}, 1, s.max_order));
  s.seed.emplace("U1", ZPolyVec{zp(1, {{{1}, "1"}})});
  s.seed.emplace("U2", ZPolyVec{zp(1, {{{1}, "1"}, {{0}, "1/4"}})});
  s.pairs = {{"U1", "U2"}, {"U2", "U1"}};
  s.triples = {{"U1", "U2", "U1"}, {"U2", "U1", "U2"}};
  return s;
}

CoverSpec make_linear() {
  CoverSpec s;
  s.t_arity = 1;
  s.fiber_dim = 1;
  s.ambient_dim = 2;
  s.max_order = 6;
  s.eq_degree_bound = 10;
  s.charts = {{"U1", Rational(1, 4)}, {"U2", Rational(1, 4)}};
  s.ambient_charts = {{"V1"}, {"V2"}};
  s.assignment = {{"U1", "V1"}, {"U2", "V2"}};
  // g12(z,t) = z + t and its exact inverse z - t.
  TruncatedSeries g12(1, s.max_order, 1, 1);
  g12.add_term({0}, {zp(1, {{{1}, "1"}})});
  g12.add_term({1}, {zp(1, {{{0}, "1"}})});
  TruncatedSeries g21(1, s.max_order, 1, 1);
  g21.add_term({0}, {zp(1, {{{1}, "1"}})});
  g21.add_term({1}, {zp(1, {{{0}, "-1"}})});
  s.g.emplace(PairKey{"U1", "U2"}, std::move(g12));
  s.g.emplace(PairKey{"U2", "U1"}, std::move(g21));
  // Linear ambient glue with a nontrivial twist.
  s.h.emplace(PairKey{"V1", "V2"},
              ZPolyVec{zp(2, {{{1, 0}, "1"}, {{0, 1}, "1"}}), zp(2, {{{0, 1}, "2"}})});
  s.h.emplace(PairKey{"V2", "V1"},
              ZPolyVec{zp(2, {{{1, 0}, "1"}, {{0, 1}, "-1/2"}}), zp(2, {{{0, 1}, "1/2"}})});
  s.seed.emplace("U1", ZPolyVec{zp(1, {{{1}, "1"}}), zp(1, {{{2}, "1"}})});
  s.seed.emplace("U2", ZPolyVec{zp(1, {{{1}, "1"}, {{2}, "-1/2"}}), zp(1, {{{2}, "1/2"}})});
  s.pairs = {{"U1", "U2"}, {"U2", "U1"}};
  s.triples = {{"U1", "U2", "U1"}, {"U2", "U1", "U2"}};
  s.ambient_triples = {{"V1", "V2", "V1"}, {"V2", "V1", "V2"}};
  return s;
}

CoverSpec make_threechart() {
  CoverSpec s;
  s.t_arity = 1;
  s.fiber_dim = 1;
  s.ambient_dim = 2;
  s.max_order = 6;
  s.eq_degree_bound = 12;
  s.charts = {{"U1", Rational(1, 4)}, {"U2", Rational(1, 4)}, {"U3", Rational(1, 4)}};
  s.ambient_charts = {{"V1"}, {"V2"}, {"V3"}};
  s.assignment = {{"U1", "V1"}, {"U2", "V2"}, {"U3", "V3"}};

  // Fiber glue of the form G_jk(z + t a_k) - t a_j with a = (0, 1, 1/2), so
  // the cocycle identity holds exactly at every t-order.
  auto fiber = [&s](const char* lin, const char* con, const char* tcoef) {
    TruncatedSeries g(1, s.max_order, 1, 1);
    g.add_term({0}, {zp(1, {{{1}, lin}, {{0}, con}})});
    g.add_term({1}, {zp(1, {{{0}, tcoef}})});
    return g;
  };
  s.g.emplace(PairKey{"U1", "U2"}, fiber("1/2", "1/8", "1/2"));
  s.g.emplace(PairKey{"U2", "U1"}, fiber("2", "-1/4", "-1"));
  s.g.emplace(PairKey{"U2", "U3"}, fiber("1/2", "-1/8", "-3/4"));
  s.g.emplace(PairKey{"U3", "U2"}, fiber("2", "1/4", "3/2"));
  s.g.emplace(PairKey{"U1", "U3"}, fiber("1/4", "1/16", "1/8"));
  s.g.emplace(PairKey{"U3", "U1"}, fiber("4", "-1/4", "-1/2"));

  // Triangular ambient automorphisms: w2 picks up a quadratic in w1.
  s.h.emplace(PairKey{"V1", "V2"}, ZPolyVec{zp(2, {{{1, 0}, "1/2"}, {{0, 0}, "1/8"}}),
                                            zp(2, {{{0, 1}, "1/2"}, {{2, 0}, "1/4"}})});
  s.h.emplace(PairKey{"V2", "V1"},
              ZPolyVec{zp(2, {{{1, 0}, "2"}, {{0, 0}, "-1/4"}}),
                       zp(2, {{{0, 1}, "2"}, {{2, 0}, "-2"}, {{1, 0}, "1/2"}, {{0, 0}, "-1/32"}})});
  s.h.emplace(PairKey{"V2", "V3"},
              ZPolyVec{zp(2, {{{1, 0}, "1/2"}, {{0, 0}, "-1/8"}}), zp(2, {{{0, 1}, "1/2"}})});
  s.h.emplace(PairKey{"V3", "V2"},
              ZPolyVec{zp(2, {{{1, 0}, "2"}, {{0, 0}, "1/4"}}), zp(2, {{{0, 1}, "2"}})});
  s.h.emplace(PairKey{"V1", "V3"},
              ZPolyVec{zp(2, {{{1, 0}, "1/4"}, {{0, 0}, "1/16"}}),
                       zp(2, {{{0, 1}, "1/4"}, {{2, 0}, "1/16"}, {{1, 0}, "-1/32"}, {{0, 0}, "1/256"}})});
  s.h.emplace(PairKey{"V3", "V1"},
              ZPolyVec{zp(2, {{{1, 0}, "4"}, {{0, 0}, "-1/4"}}),
                       zp(2, {{{0, 1}, "4"}, {{2, 0}, "-4"}, {{1, 0}, "1"}, {{0, 0}, "-1/16"}})});

  s.seed.emplace("U1", ZPolyVec{zp(1, {{{1}, "1"}}), zp(1, {{{2}, "1"}})});
  s.seed.emplace("U2", ZPolyVec{zp(1, {{{1}, "1"}}), zp(1, {{{1}, "1/4"}, {{0}, "1/32"}})});
  s.seed.emplace("U3", ZPolyVec{zp(1, {{{1}, "1"}}), zp(1, {{{1}, "1/4"}})});

  s.pairs = {{"U1", "U2"}, {"U2", "U1"}, {"U2", "U3"},
             {"U3", "U2"}, {"U1", "U3"}, {"U3", "U1"}};
  s.triples = {{"U1", "U2", "U3"}, {"U1", "U3", "U2"}, {"U2", "U1", "U3"},
               {"U2", "U3", "U1"}, {"U3", "U1", "U2"}, {"U3", "U2", "U1"},
               {"U1", "U2", "U1"}, {"U2", "U3", "U2"}, {"U3", "U1", "U3"}};
  s.ambient_triples = {{"V1", "V2", "V3"}, {"V1", "V3", "V2"}, {"V2", "V1", "V3"},
                       {"V2", "V3", "V1"}, {"V3", "V1", "V2"}, {"V3", "V2", "V1"},
                       {"V1", "V2", "V1"}, {"V2", "V3", "V2"}, {"V3", "V1", "V3"}};
  return s;
}

CoverSpec make_obstructed() {
  CoverSpec s;
  s.t_arity = 1;
  s.fiber_dim = 1;
  s.ambient_dim = 2;
  s.max_order = 4;
  s.eq_degree_bound = 8;
  s.charts = {{"U1", Rational(1, 2)}, {"U2", Rational(1, 2)}};
  s.ambient_charts = {{"V1"}};
  s.assignment = {{"U1", "V1"}, {"U2", "V1"}};
  // Both directions push by +t(1 + z^2): consistent at t = 0 but not the
  // inverse of one another, so the order-1 defects point the same way on both
  // sides of the overlap and no correction can absorb them.
  auto push = [&s]() {
    TruncatedSeries g(1, s.max_order, 1, 1);
    g.add_term({0}, {zp(1, {{{1}, "1"}})});
    g.add_term({1}, {zp(1, {{{0}, "1"}, {{2}, "1"}})});
    return g;
  };
  s.g.emplace(PairKey{"U1", "U2"}, push());
  s.g.emplace(PairKey{"U2", "U1"}, push());
  s.seed.emplace("U1", ZPolyVec{zp(1, {{{1}, "1"}}), ZPoly(1)});
  s.seed.emplace("U2", ZPolyVec{zp(1, {{{1}, "1"}}), ZPoly(1)});
  s.pairs = {{"U1", "U2"}, {"U2", "U1"}};
  return s;
}

CoverSpec make_degenerate_seed() {
  CoverSpec s;
  s.t_arity = 1;
  s.fiber_dim = 1;
  s.ambient_dim = 2;
  s.max_order = 2;
  s.eq_degree_bound = 8;
  s.charts = {{"U1", Rational(1, 2)}};
  s.ambient_charts = {{"V1"}};
  s.assignment = {{"U1", "V1"}};
  // The cusp parametrization: a valid document whose seed fails to be an
  // immersion at the origin, which the spot check should flag.
  s.seed.emplace("U1", ZPolyVec{zp(1, {{{2}, "1"}}), zp(1, {{{3}, "1"}})});
  return s;
}

}  // namespace

std::vector<std::string> fixture_names() {
  return {"trivial", "linear", "threechart", "obstructed", "degenerate-seed"};
}

CoverSpec fixture(const std::string& name) {
  if (name == "trivial") return make_trivial();
  if (name == "linear") return make_linear();
  if (name == "threechart") return make_threechart();
  if (name == "obstructed") return make_obstructed();
  if (name == "degenerate-seed") return make_degenerate_seed();
  std::string known;
  for (const auto& n : fixture_names()) known += (known.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown fixture \"" + name + "\" (known: " + known + ")");
}

}  // namespace fembed
