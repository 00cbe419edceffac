#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "fembed/fixtures.hpp"
#include "fembed/report.hpp"

namespace py = pybind11;

namespace {

std::optional<fembed::Rational> opt_rational(const std::optional<std::string>& text) {
  if (!text) return std::nullopt;
  return fembed::parse_rational(*text);
}

py::dict to_result(const fembed::CommandOutput& out) {
  py::dict d;
  d["report"] = out.report;
  d["exit_code"] = out.exit_code;
  if (!out.series.empty()) d["series"] = out.series;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "order-by-order embedding extension for deformation families, with exact "
            "rational arithmetic and convergence certificates";

  m.def("fixture_names", &fembed::fixture_names, "names of the built-in cover documents");

  m.def(
      "fixture_json",
      [](const std::string& name) { return fembed::serialize_cover(fembed::fixture(name)); },
      py::arg("name"), "the built-in cover document as canonical JSON text");

  m.def(
      "validate",
      [](const std::string& cover_json) {
        return to_result(fembed::validate_document(cover_json, "<python>"));
      },
      py::arg("cover_json"),
      "check the consistency identities of a cover document; returns report and exit_code");

  m.def(
      "run",
      [](const std::string& cover_json, unsigned order, std::optional<unsigned> psi_degree) {
        return to_result(fembed::run_document(cover_json, "<python>", order, psi_degree));
      },
      py::arg("cover_json"), py::arg("order"), py::arg("psi_degree") = std::nullopt,
      "extend the seed embedding to the given t-order; returns report, series, exit_code");

  m.def(
      "certify",
      [](const std::string& cover_json, unsigned order, std::optional<std::string> a,
         std::optional<std::string> b, std::optional<std::string> rho,
         std::optional<unsigned> psi_degree) {
        return to_result(fembed::certify_document(cover_json, "<python>", order, opt_rational(a),
                                                  opt_rational(b), opt_rational(rho), psi_degree));
      },
      py::arg("cover_json"), py::arg("order"), py::arg("a") = std::nullopt,
      py::arg("b") = std::nullopt, py::arg("rho") = std::nullopt,
      py::arg("psi_degree") = std::nullopt,
      "run to the given order and certify convergence; rationals are \"p/q\" strings");
}
