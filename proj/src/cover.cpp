#include "fembed/cover.hpp"

#include "fembed/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fembed {

// ---- json helpers -----------------------------------------------------------

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw std::invalid_argument(where + ": " + what);
}

std::string mi_brackets(const MultiIndex& a) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << "]";
  return os.str();
}

}  // namespace

MultiIndex multi_index_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "multi-index must be an array of nonnegative integers");
  MultiIndex e;
  e.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number_unsigned()) bad(where, "multi-index entries must be nonnegative integers");
    e.push_back(v.get<std::uint32_t>());
  }
  return e;
}

Json zpoly_to_json(const ZPoly& p) {
  Json j;
  j["vars"] = p.vars();
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json t;
    t["e"] = e;
    t["c"] = rational_to_string(c);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

ZPoly zpoly_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("vars") || !j.contains("terms"))
    bad(where, "polynomial must be an object with \"vars\" and \"terms\"");
  if (!j["vars"].is_number_unsigned()) bad(where, "\"vars\" must be a nonnegative integer");
  ZPoly p(j["vars"].get<std::uint32_t>());
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("e") || !t.contains("c")) bad(where, "term must carry \"e\" and \"c\"");
    MultiIndex e = multi_index_from_json(t["e"], where);
    if (e.size() != p.vars()) bad(where, "exponent arity " + std::to_string(e.size()) +
                                             " does not match vars " + std::to_string(p.vars()));
    if (!t["c"].is_string()) bad(where, "coefficient must be a \"p/q\" string");
    Rational c;
    try {
      c = parse_rational(t["c"].get<std::string>());
    } catch (const std::exception& ex) {
      bad(where, ex.what());
    }
    p.add_term(e, c);
  }
  return p;
}

Json zpolyvec_to_json(const ZPolyVec& v) {
  Json arr = Json::array();
  for (const auto& p : v) arr.push_back(zpoly_to_json(p));
  return arr;
}

ZPolyVec zpolyvec_from_json(const nlohmann::json& j, std::uint32_t expect_vars,
                            const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of polynomials");
  ZPolyVec v;
  for (std::size_t s = 0; s < j.size(); ++s) {
    ZPoly p = zpoly_from_json(j[s], where + ", component " + std::to_string(s + 1));
    if (p.vars() != expect_vars)
      bad(where, "component " + std::to_string(s + 1) + " has " + std::to_string(p.vars()) +
                     " variables, expected " + std::to_string(expect_vars));
    v.push_back(std::move(p));
  }
  return v;
}

Json series_to_json(const TruncatedSeries& s) {
  Json j;
  j["t_arity"] = s.t_arity();
  j["order"] = s.order();
  j["codomain"] = s.codomain();
  j["z_vars"] = s.z_vars();
  Json terms = Json::array();
  for (const auto& [a, v] : s.terms()) {
    Json t;
    t["t"] = a;
    t["coeffs"] = zpolyvec_to_json(v);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

TruncatedSeries series_from_json(const nlohmann::json& j, const std::string& where) {
  for (const char* key : {"t_arity", "order", "codomain", "z_vars", "terms"})
    if (!j.contains(key)) bad(where, std::string("series is missing \"") + key + "\"");
  TruncatedSeries s(j["t_arity"].get<std::uint32_t>(), j["order"].get<std::uint32_t>(),
                    j["codomain"].get<std::uint32_t>(), j["z_vars"].get<std::uint32_t>());
  for (const auto& t : j["terms"]) {
    if (!t.contains("t") || !t.contains("coeffs")) bad(where, "series term must carry \"t\" and \"coeffs\"");
    MultiIndex a = multi_index_from_json(t["t"], where);
    if (a.size() != s.t_arity()) bad(where, "t-index arity mismatch at " + mi_brackets(a));
    if (mi_total(a) > s.order()) bad(where, "t-index " + mi_brackets(a) + " exceeds the declared order");
    ZPolyVec v = zpolyvec_from_json(t["coeffs"], s.z_vars(), where + ", t-index " + mi_brackets(a));
    if (v.size() != s.codomain()) bad(where, "coefficient vector length mismatch at t-index " + mi_brackets(a));
    s.add_term(a, v);
  }
  return s;
}

// ---- CoverSpec accessors ----------------------------------------------------

std::string pair_label(const PairKey& p) { return p.a + "," + p.b; }
std::string triple_label(const TripleKey& t) { return t.a + "," + t.b + "," + t.c; }

bool CoverSpec::has_chart(const std::string& id) const {
  for (const auto& c : charts)
    if (c.id == id) return true;
  return false;
}

const Chart& CoverSpec::chart(const std::string& id) const {
  for (const auto& c : charts)
    if (c.id == id) return c;
  throw std::invalid_argument("unknown chart id \"" + id + "\"");
}

TruncatedSeries CoverSpec::transition(const std::string& j, const std::string& k) const {
  if (j == k) return TruncatedSeries::from_poly_map(identity_map(fiber_dim), t_arity, max_order);
  auto it = g.find(PairKey{j, k});
  if (it == g.end()) throw std::invalid_argument("no fiber transition for pair " + j + "," + k);
  return it->second;
}

ZPolyVec CoverSpec::transition_at_zero(const std::string& j, const std::string& k) const {
  if (j == k) return identity_map(fiber_dim);
  TruncatedSeries s = transition(j, k);
  ZPolyVec out(fiber_dim, ZPoly(fiber_dim));
  auto v = s.coeff(MultiIndex(t_arity, 0));
  for (std::uint32_t i = 0; i < fiber_dim; ++i) out[i] = v[i];
  return out;
}

ZPolyVec CoverSpec::ambient_transition_for(const std::string& j, const std::string& k) const {
  const std::string& aj = assignment.at(j);
  const std::string& ak = assignment.at(k);
  if (aj == ak) return identity_map(ambient_dim);
  auto it = h.find(PairKey{aj, ak});
  if (it == h.end()) throw std::invalid_argument("no ambient transition for pair " + aj + "," + ak);
  return it->second;
}

const ZPolyVec& CoverSpec::seed_of(const std::string& j) const {
  auto it = seed.find(j);
  if (it == seed.end()) throw std::invalid_argument("no seed embedding for chart \"" + j + "\"");
  return it->second;
}

// ---- load / serialize -------------------------------------------------------

namespace {

PairKey pair_from_key(const std::string& key, const std::string& where) {
  auto comma = key.find(',');
  if (comma == std::string::npos || comma == 0 || comma + 1 == key.size())
    bad(where, "pair key \"" + key + "\" must look like \"A,B\"");
  return PairKey{key.substr(0, comma), key.substr(comma + 1)};
}

}  // namespace

CoverSpec load_cover(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const std::exception& ex) {
    throw std::invalid_argument(std::string("cover document is not valid JSON: ") + ex.what());
  }
  CoverSpec spec;
  for (const char* key :
       {"t_arity", "fiber_dim", "ambient_dim", "max_order", "eq_degree_bound", "charts",
        "ambient_charts", "assignment", "g", "h", "seed", "overlaps"})
    if (!j.contains(key)) bad("cover", std::string("missing top-level field \"") + key + "\"");

  spec.t_arity = j["t_arity"].get<std::uint32_t>();
  spec.fiber_dim = j["fiber_dim"].get<std::uint32_t>();
  spec.ambient_dim = j["ambient_dim"].get<std::uint32_t>();
  spec.max_order = j["max_order"].get<std::uint32_t>();
  spec.eq_degree_bound = j["eq_degree_bound"].get<std::uint32_t>();
  if (spec.t_arity == 0) bad("cover", "t_arity must be positive");
  if (spec.fiber_dim == 0) bad("cover", "fiber_dim must be positive");
  if (spec.ambient_dim < spec.fiber_dim) bad("cover", "ambient_dim must be at least fiber_dim");

  for (const auto& c : j["charts"]) {
    if (!c.contains("id") || !c.contains("delta")) bad("cover", "chart entries need \"id\" and \"delta\"");
    Chart chart{c["id"].get<std::string>(), Rational(0)};
    try {
      chart.delta = parse_rational(c["delta"].get<std::string>());
    } catch (const std::exception& ex) {
      bad("chart " + chart.id, ex.what());
    }
    if (!(chart.delta > 0 && chart.delta < 1)) bad("chart " + chart.id, "delta must satisfy 0 < delta < 1");
    if (spec.has_chart(chart.id)) bad("chart " + chart.id, "duplicate chart id");
    spec.charts.push_back(std::move(chart));
  }
  if (spec.charts.empty()) bad("cover", "at least one chart is required");

  for (const auto& c : j["ambient_charts"]) {
    if (!c.contains("id")) bad("cover", "ambient chart entries need \"id\"");
    AmbientChart ac{c["id"].get<std::string>()};
    for (const auto& other : spec.ambient_charts)
      if (other.id == ac.id) bad("ambient chart " + ac.id, "duplicate ambient chart id");
    spec.ambient_charts.push_back(std::move(ac));
  }
  if (spec.ambient_charts.empty()) bad("cover", "at least one ambient chart is required");

  auto has_ambient = [&spec](const std::string& id) {
    for (const auto& a : spec.ambient_charts)
      if (a.id == id) return true;
    return false;
  };

  for (const auto& [chart_id, ambient_id] : j["assignment"].items()) {
    if (!spec.has_chart(chart_id)) bad("assignment", "unknown chart \"" + chart_id + "\"");
    std::string aid = ambient_id.get<std::string>();
    if (!has_ambient(aid)) bad("assignment", "unknown ambient chart \"" + aid + "\"");
    spec.assignment[chart_id] = aid;
  }
  for (const auto& c : spec.charts)
    if (!spec.assignment.count(c.id)) bad("assignment", "chart \"" + c.id + "\" has no ambient chart");

  const auto& ov = j["overlaps"];
  if (!ov.contains("pairs")) bad("overlaps", "missing \"pairs\"");
  for (const auto& p : ov["pairs"]) {
    if (!p.is_array() || p.size() != 2) bad("overlaps", "pair entries must be [j,k]");
    PairKey key{p[0].get<std::string>(), p[1].get<std::string>()};
    if (!spec.has_chart(key.a) || !spec.has_chart(key.b)) bad("overlaps", "unknown chart in pair " + pair_label(key));
    if (key.a == key.b) bad("overlaps", "pair " + pair_label(key) + " repeats a chart");
    spec.pairs.push_back(key);
  }
  if (ov.contains("triples"))
    for (const auto& t : ov["triples"]) {
      if (!t.is_array() || t.size() != 3) bad("overlaps", "triple entries must be [i,j,k]");
      TripleKey key{t[0].get<std::string>(), t[1].get<std::string>(), t[2].get<std::string>()};
      for (const auto& id : {key.a, key.b, key.c})
        if (!spec.has_chart(id)) bad("overlaps", "unknown chart in triple " + triple_label(key));
      spec.triples.push_back(key);
    }
  if (ov.contains("ambient_triples"))
    for (const auto& t : ov["ambient_triples"]) {
      if (!t.is_array() || t.size() != 3) bad("overlaps", "ambient triple entries must be [A,B,C]");
      TripleKey key{t[0].get<std::string>(), t[1].get<std::string>(), t[2].get<std::string>()};
      for (const auto& id : {key.a, key.b, key.c})
        if (!has_ambient(id)) bad("overlaps", "unknown ambient chart in triple " + triple_label(key));
      spec.ambient_triples.push_back(key);
    }

  auto pair_declared = [&spec](const std::string& a, const std::string& b) {
    if (a == b) return true;  // diagonal pairs are implicit identities
    for (const auto& p : spec.pairs)
      if (p.a == a && p.b == b) return true;
    return false;
  };

  for (const auto& [key, val] : j["g"].items()) {
    PairKey pk = pair_from_key(key, "g");
    if (!spec.has_chart(pk.a) || !spec.has_chart(pk.b)) bad("g", "unknown chart in pair " + key);
    TruncatedSeries s = series_from_json(val, "g[" + key + "]");
    if (s.t_arity() != spec.t_arity) bad("g[" + key + "]", "t_arity does not match the cover");
    if (s.order() != spec.max_order) bad("g[" + key + "]", "order does not match max_order");
    if (s.codomain() != spec.fiber_dim || s.z_vars() != spec.fiber_dim)
      bad("g[" + key + "]", "transition must map fiber variables to fiber variables");
    spec.g.emplace(pk, std::move(s));
  }
  for (const auto& p : spec.pairs) {
    if (!spec.g.count(p)) bad("g", "declared pair " + pair_label(p) + " has no transition");
    if (!spec.g.count(PairKey{p.b, p.a})) bad("g", "pair " + pair_label(p) + " lacks the reverse transition");
  }
  for (const auto& [pk, unused] : spec.g)
    if (!pair_declared(pk.a, pk.b)) bad("g", "transition " + pair_label(pk) + " is not a declared pair");

  for (const auto& [key, val] : j["h"].items()) {
    PairKey pk = pair_from_key(key, "h");
    if (!has_ambient(pk.a) || !has_ambient(pk.b)) bad("h", "unknown ambient chart in pair " + key);
    spec.h.emplace(pk, zpolyvec_from_json(val, spec.ambient_dim, "h[" + key + "]"));
    if (spec.h.at(pk).size() != spec.ambient_dim) bad("h[" + key + "]", "component count must equal ambient_dim");
  }
  for (const auto& [pk, unused] : spec.h)
    if (!spec.h.count(PairKey{pk.b, pk.a})) bad("h", "pair " + pair_label(pk) + " lacks the reverse transition");

  for (const auto& [chart_id, val] : j["seed"].items()) {
    if (!spec.has_chart(chart_id)) bad("seed", "unknown chart \"" + chart_id + "\"");
    ZPolyVec v = zpolyvec_from_json(val, spec.fiber_dim, "seed[" + chart_id + "]");
    if (v.size() != spec.ambient_dim) bad("seed[" + chart_id + "]", "component count must equal ambient_dim");
    spec.seed.emplace(chart_id, std::move(v));
  }
  for (const auto& c : spec.charts)
    if (!spec.seed.count(c.id)) bad("seed", "chart \"" + c.id + "\" has no seed embedding");

  for (const auto& t : spec.triples)
    for (const auto& [a, b] : {std::pair{t.a, t.b}, {t.b, t.c}, {t.a, t.c}})
      if (!pair_declared(a, b)) bad("overlaps", "triple " + triple_label(t) + " uses undeclared pair " + a + "," + b);

  // Every pair of fiber charts with distinct ambient charts needs the ambient
  // transition to exist.
  for (const auto& p : spec.pairs) {
    const std::string& aj = spec.assignment.at(p.a);
    const std::string& ak = spec.assignment.at(p.b);
    if (aj != ak && !spec.h.count(PairKey{aj, ak}))
      bad("h", "pair " + pair_label(p) + " needs ambient transition " + aj + "," + ak);
  }

  return spec;
}

CoverSpec load_cover_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read cover document \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_cover(buf.str());
}

std::string serialize_cover(const CoverSpec& spec) {
  Json j;
  j["t_arity"] = spec.t_arity;
  j["fiber_dim"] = spec.fiber_dim;
  j["ambient_dim"] = spec.ambient_dim;
  j["max_order"] = spec.max_order;
  j["eq_degree_bound"] = spec.eq_degree_bound;
  Json charts = Json::array();
  for (const auto& c : spec.charts) {
    Json cj;
    cj["id"] = c.id;
    cj["delta"] = rational_to_string(c.delta);
    charts.push_back(std::move(cj));
  }
  j["charts"] = std::move(charts);
  Json ambient = Json::array();
  for (const auto& a : spec.ambient_charts) {
    Json aj;
    aj["id"] = a.id;
    ambient.push_back(std::move(aj));
  }
  j["ambient_charts"] = std::move(ambient);
  Json assignment = Json::object();
  for (const auto& [k, v] : spec.assignment) assignment[k] = v;
  j["assignment"] = std::move(assignment);
  Json g = Json::object();
  for (const auto& [pk, s] : spec.g) g[pair_label(pk)] = series_to_json(s);
  j["g"] = std::move(g);
  Json h = Json::object();
  for (const auto& [pk, v] : spec.h) h[pair_label(pk)] = zpolyvec_to_json(v);
  j["h"] = std::move(h);
  Json seed = Json::object();
  for (const auto& [id, v] : spec.seed) seed[id] = zpolyvec_to_json(v);
  j["seed"] = std::move(seed);
  Json overlaps;
  Json pairs = Json::array();
  for (const auto& p : spec.pairs) pairs.push_back(Json::array({p.a, p.b}));
  overlaps["pairs"] = std::move(pairs);
  Json triples = Json::array();
  for (const auto& t : spec.triples) triples.push_back(Json::array({t.a, t.b, t.c}));
  overlaps["triples"] = std::move(triples);
  Json atriples = Json::array();
  for (const auto& t : spec.ambient_triples) atriples.push_back(Json::array({t.a, t.b, t.c}));
  overlaps["ambient_triples"] = std::move(atriples);
  j["overlaps"] = std::move(overlaps);
  return j.dump(2) + "\n";
}

// ---- validation -------------------------------------------------------------

namespace {

// First nonzero coefficient of a series difference in scan order
// (t-index, component, z-monomial), or empty if identically zero.
std::string first_offense(const TruncatedSeries& residual) {
  for (const auto& [alpha, v] : residual.terms())
    for (std::size_t s = 0; s < v.size(); ++s)
      if (!v[s].is_zero())
        return "first offense at t-index " + mi_brackets(alpha) + ", component " +
               std::to_string(s + 1) + ", z-monomial " + mi_brackets(v[s].terms().begin()->first);
  return {};
}

std::string first_offense_vec(const ZPolyVec& v) {
  for (std::size_t s = 0; s < v.size(); ++s)
    if (!v[s].is_zero())
      return "first offense at component " + std::to_string(s + 1) + ", z-monomial " +
             mi_brackets(v[s].terms().begin()->first);
  return {};
}

// Largest m such that every coefficient of total t-degree <= m vanishes.
int exact_through_order(const TruncatedSeries& residual) {
  int best = static_cast<int>(residual.order());
  for (const auto& [alpha, v] : residual.terms()) {
    bool zero = true;
    for (const auto& p : v) zero = zero && p.is_zero();
    if (!zero) best = std::min(best, static_cast<int>(mi_total(alpha)) - 1);
  }
  return best;
}

}  // namespace

ValidationReport validate_fiber_cocycle(const CoverSpec& spec) {
  ValidationReport report;
  for (const auto& p : spec.pairs) {
    // z == G_jk(G_kj(z)) up to the declared degree bound.
    ZPolyVec round_trip = compose_vec(spec.transition_at_zero(p.a, p.b), spec.transition_at_zero(p.b, p.a));
    ZPolyVec id = identity_map(spec.fiber_dim);
    CheckLine line{"pair-inverse", pair_label(p), true, ""};
    for (std::uint32_t i = 0; i < spec.fiber_dim; ++i) {
      ZPoly diff = (round_trip[i] - id[i]).truncated_to_degree(spec.eq_degree_bound);
      if (!diff.is_zero()) {
        line.pass = false;
        line.detail = "t=0 transitions are not mutually inverse; first offense at component " +
                      std::to_string(i + 1) + ", z-monomial " + mi_brackets(diff.terms().begin()->first);
        break;
      }
    }
    if (line.pass) line.detail = "exact up to z-degree " + std::to_string(spec.eq_degree_bound);
    report.pass = report.pass && line.pass;
    report.lines.push_back(std::move(line));
  }
  for (const auto& t : spec.triples) {
    TruncatedSeries composed = compose_fiber(spec.transition(t.a, t.b), spec.transition(t.b, t.c));
    TruncatedSeries residual = composed - spec.transition(t.a, t.c);
    CheckLine line{"fiber-cocycle", triple_label(t), residual.is_zero(), ""};
    if (line.pass) {
      line.detail = "exact through t-order " + std::to_string(spec.max_order);
    } else {
      line.detail = "holds through t-order " + std::to_string(exact_through_order(residual)) + "; " +
                    first_offense(residual);
    }
    report.pass = report.pass && line.pass;
    report.lines.push_back(std::move(line));
  }
  report.unchecked.push_back(
      "the declared parameter count t_arity equals the dimension of the space of first-order "
      "deformations of the central fiber (not verified)");
  return report;
}

ValidationReport validate_ambient_cocycle(const CoverSpec& spec) {
  ValidationReport report;
  auto ambient_transition = [&spec](const std::string& a, const std::string& b) -> ZPolyVec {
    if (a == b) return identity_map(spec.ambient_dim);
    auto it = spec.h.find(PairKey{a, b});
    if (it == spec.h.end()) throw std::invalid_argument("no ambient transition for pair " + a + "," + b);
    return it->second;
  };
  for (const auto& t : spec.ambient_triples) {
    ZPolyVec composed = compose_vec(ambient_transition(t.a, t.b), ambient_transition(t.b, t.c));
    ZPolyVec direct = ambient_transition(t.a, t.c);
    ZPolyVec residual(spec.ambient_dim, ZPoly(spec.ambient_dim));
    for (std::uint32_t s = 0; s < spec.ambient_dim; ++s) residual[s] = composed[s] - direct[s];
    bool pass = true;
    for (const auto& pcomp : residual) pass = pass && pcomp.is_zero();
    CheckLine line{"ambient-cocycle", triple_label(t), pass,
                   pass ? "exact polynomial identity" : first_offense_vec(residual)};
    report.pass = report.pass && line.pass;
    report.lines.push_back(std::move(line));
  }
  for (const auto& p : spec.pairs) {
    // h_{jk}(i_k) agrees with i_j after the t=0 chart change.
    ZPolyVec lhs = compose_vec(spec.ambient_transition_for(p.a, p.b), spec.seed_of(p.b));
    ZPolyVec rhs = compose_vec(spec.seed_of(p.a), spec.transition_at_zero(p.a, p.b));
    ZPolyVec residual(spec.ambient_dim, ZPoly(spec.fiber_dim));
    for (std::uint32_t s = 0; s < spec.ambient_dim; ++s) residual[s] = lhs[s] - rhs[s];
    bool pass = true;
    for (const auto& pcomp : residual) pass = pass && pcomp.is_zero();
    CheckLine line{"seed-compat", pair_label(p), pass,
                   pass ? "seed embeddings agree on the overlap" : first_offense_vec(residual)};
    report.pass = report.pass && line.pass;
    report.lines.push_back(std::move(line));
  }
  return report;
}

ValidationReport validate_cover(const CoverSpec& spec) {
  ValidationReport report;
  ValidationReport fiber = validate_fiber_cocycle(spec);
  ValidationReport ambient = validate_ambient_cocycle(spec);
  report.pass = fiber.pass && ambient.pass;
  report.lines.insert(report.lines.end(), fiber.lines.begin(), fiber.lines.end());
  report.lines.insert(report.lines.end(), ambient.lines.begin(), ambient.lines.end());
  report.unchecked = fiber.unchecked;
  return report;
}

std::string ValidationReport::to_json() const {
  Json j;
  j["pass"] = pass;
  Json checks = Json::array();
  for (const auto& line : lines) {
    Json c;
    c["kind"] = line.kind;
    c["subject"] = line.subject;
    c["pass"] = line.pass;
    c["detail"] = line.detail;
    checks.push_back(std::move(c));
  }
  j["checks"] = std::move(checks);
  j["unchecked_hypotheses"] = unchecked;
  return j.dump(2) + "\n";
}

}  // namespace fembed
