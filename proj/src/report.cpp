#include "fembed/report.hpp"

namespace fembed {

namespace {

Json check_lines_to_json(const std::vector<CheckLine>& lines) {
  Json arr = Json::array();
  for (const auto& line : lines) {
    Json c;
    c["kind"] = line.kind;
    c["subject"] = line.subject;
    c["pass"] = line.pass;
    c["detail"] = line.detail;
    arr.push_back(std::move(c));
  }
  return arr;
}

Rational series_max_norm(const TruncatedSeries& s) {
  Rational best(0);
  for (const auto& [alpha, v] : s.terms()) best = std::max(best, vec_coeff_abs_sum(v));
  return best;
}

}  // namespace

Json validation_to_json(const ValidationReport& report) {
  Json j;
  j["pass"] = report.pass;
  j["checks"] = check_lines_to_json(report.lines);
  j["unchecked_hypotheses"] = report.unchecked;
  return j;
}

Json immersion_to_json(const ImmersionReport& report) {
  Json j;
  j["pass"] = report.pass;
  j["checks"] = check_lines_to_json(report.lines);
  return j;
}

Json obstruction_to_json(const Obstruction& ob) {
  Json j;
  j["order"] = ob.degree;
  j["correction_degree_bound"] = ob.psi_degree_bound;
  j["residual_norm_sq"] = rational_to_string(ob.residual_norm_sq);
  Json pairs = Json::array();
  for (const auto& p : ob.offending) pairs.push_back(pair_label(p));
  j["offending_pairs"] = std::move(pairs);
  Json residual = Json::object();
  for (const auto& [pk, s] : ob.residual.at)
    if (!s.is_zero()) residual[pair_label(pk)] = series_to_json(s);
  j["residual"] = std::move(residual);
  return j;
}

Json certificate_to_json(const ConvergenceCertificate& cert) {
  Json j;
  j["status"] = cert.status;
  j["reason"] = cert.reason;
  j["a"] = rational_to_string(cert.a);
  j["b"] = rational_to_string(cert.b);
  j["rho"] = rational_to_string(cert.rho);
  j["epsilon0"] = rational_to_string(cert.epsilon0);
  Json constants;
  constants["c0"] = rational_to_string(cert.constants.c0);
  constants["c1"] = cert.constants.c1;
  constants["c1_ok"] = cert.constants.c1_ok;
  if (!cert.constants.c1_ok) constants["c1_note"] = cert.constants.c1_note;
  constants["delta"] = rational_to_string(cert.constants.delta);
  constants["mu"] = rational_to_string(cert.constants.mu);
  constants["rho"] = rational_to_string(cert.constants.rho);
  constants["c3"] = rational_to_string(cert.constants.c3);
  constants["c4"] = rational_to_string(cert.constants.c4);
  Json history = Json::array();
  for (const auto& x : cert.constants.c4_history) history.push_back(rational_to_string(x));
  constants["c4_history"] = std::move(history);
  j["constants"] = std::move(constants);
  j["conditions"] = check_lines_to_json(cert.conditions);
  return j;
}

Json orders_to_json(const ExtensionState& st) {
  Json arr = Json::array();
  for (const auto& step : st.history) {
    Json s;
    s["order"] = step.degree;
    Json defects = Json::object();
    for (const auto& [pk, series] : step.defect.at)
      defects[pair_label(pk)] = rational_to_string(series_max_norm(series));
    s["defect_norms"] = std::move(defects);
    Json splits = Json::object();
    for (const auto& [chart, series] : step.split.at)
      splits[chart] = rational_to_string(series_max_norm(series));
    s["correction_norms"] = std::move(splits);
    s["obstructed"] = step.obstructed;
    arr.push_back(std::move(s));
  }
  return arr;
}

Json series_map_to_json(const ExtensionState& st) {
  Json j = Json::object();
  for (const auto& c : st.spec.charts) j[c.id] = series_to_json(st.f.at(c.id));
  return j;
}

std::string ReportBuilder::build() const {
  Json j;
  Json tool;
  tool["name"] = "fembed";
  tool["version"] = "1.0.0";
  j["tool"] = std::move(tool);
  j["command"] = command;
  j["parameters"] = parameters;
  if (validation) j["validation"] = validation_to_json(*validation);
  if (state) {
    j["order_reached"] = state->order;
    j["orders"] = orders_to_json(*state);
  }
  if (obstruction) j["obstruction"] = obstruction_to_json(*obstruction);
  if (certificate) j["certificate"] = certificate_to_json(*certificate);
  if (immersion) j["immersion"] = immersion_to_json(*immersion);
  if (state && emit_series) j["series"] = series_map_to_json(*state);
  j["status"] = status;
  j["exit_code"] = exit_code;
  return j.dump(2) + "\n";
}

CommandOutput validate_document(const std::string& cover_text, const std::string& input_label) {
  CoverSpec spec = load_cover(cover_text);
  ValidationReport validation = validate_cover(spec);
  ReportBuilder rb;
  rb.command = "validate";
  rb.parameters["input"] = input_label;
  rb.validation = &validation;
  rb.status = validation.pass ? "OK" : "VALIDATION_FAILED";
  rb.exit_code = validation.pass ? kExitOk : kExitValidationFailed;
  return {rb.build(), "", rb.exit_code};
}

namespace {

// Load, validate, and construct to the target order: the part run and
// certify share. The report is finished here when validation already failed.
struct Pipeline {
  CoverSpec spec;
  ValidationReport validation;
  std::optional<ExtensionState> state;
  std::optional<Obstruction> obstruction;
};

Pipeline run_pipeline(const std::string& cover_text, std::uint32_t order,
                      std::optional<std::uint32_t> psi_degree) {
  Pipeline p;
  p.spec = load_cover(cover_text);
  p.validation = validate_cover(p.spec);
  if (!p.validation.pass) return p;
  p.state = init_extension(p.spec);
  p.obstruction = run_to_order(*p.state, order, psi_degree);
  return p;
}

CommandOutput finish(ReportBuilder& rb, Pipeline& p, const ImmersionReport* immersion) {
  rb.validation = &p.validation;
  if (!p.validation.pass) {
    rb.status = "VALIDATION_FAILED";
    rb.exit_code = kExitValidationFailed;
    return {rb.build(), "", rb.exit_code};
  }
  rb.state = &*p.state;
  rb.immersion = immersion;
  rb.emit_series = true;
  if (p.obstruction) {
    rb.obstruction = &*p.obstruction;
    rb.status = "OBSTRUCTED";
    rb.exit_code = kExitObstructed;
  }
  return {rb.build(), series_map_to_json(*p.state).dump(2) + "\n", rb.exit_code};
}

}  // namespace

CommandOutput run_document(const std::string& cover_text, const std::string& input_label,
                           std::uint32_t order, std::optional<std::uint32_t> psi_degree) {
  Pipeline p = run_pipeline(cover_text, order, psi_degree);
  ReportBuilder rb;
  rb.command = "run";
  rb.parameters["input"] = input_label;
  rb.parameters["order"] = order;
  if (psi_degree) rb.parameters["psi_degree"] = *psi_degree;
  rb.status = "OK";
  rb.exit_code = kExitOk;
  std::optional<ImmersionReport> immersion;
  if (p.validation.pass && !p.obstruction)
    immersion =
        immersion_spot_check(*p.state, std::vector<Rational>(p.spec.t_arity, Rational(0)));
  return finish(rb, p, immersion ? &*immersion : nullptr);
}

CommandOutput certify_document(const std::string& cover_text, const std::string& input_label,
                               std::uint32_t order, std::optional<Rational> a,
                               std::optional<Rational> b, std::optional<Rational> rho,
                               std::optional<std::uint32_t> psi_degree) {
  Pipeline p = run_pipeline(cover_text, order, psi_degree);
  ReportBuilder rb;
  rb.command = "certify";
  rb.parameters["input"] = input_label;
  rb.parameters["order"] = order;
  if (psi_degree) rb.parameters["psi_degree"] = *psi_degree;
  if (a) rb.parameters["a"] = rational_to_string(*a);
  if (b) rb.parameters["b"] = rational_to_string(*b);
  if (rho) rb.parameters["rho"] = rational_to_string(*rho);
  rb.status = "OK";
  rb.exit_code = kExitOk;
  std::optional<ConvergenceCertificate> cert;
  std::optional<ImmersionReport> immersion;
  if (p.validation.pass && !p.obstruction) {
    cert = certify(*p.state, a, b, rho);
    Rational t_sample = cert->certified ? cert->epsilon0 / 4 : Rational(0);
    immersion = immersion_spot_check(*p.state, std::vector<Rational>(p.spec.t_arity, t_sample));
    rb.certificate = &*cert;
    rb.status = cert->status;
    rb.exit_code = cert->certified ? kExitOk : kExitUncertifiable;
  }
  return finish(rb, p, immersion ? &*immersion : nullptr);
}

}  // namespace fembed
