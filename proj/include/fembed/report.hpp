#pragma once

#include <string>

#include "fembed/cech.hpp"
#include "fembed/cover.hpp"
#include "fembed/extension.hpp"
#include "fembed/json_io.hpp"
#include "fembed/majorant.hpp"

namespace fembed {

// Exit codes shared by the command-line tool and the report documents.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitValidationFailed = 2;
inline constexpr int kExitObstructed = 3;
inline constexpr int kExitUncertifiable = 4;

Json validation_to_json(const ValidationReport& report);
Json immersion_to_json(const ImmersionReport& report);
Json obstruction_to_json(const Obstruction& ob);
Json certificate_to_json(const ConvergenceCertificate& cert);

// Per-order defect and correction norms, plus the obstructed flag.
Json orders_to_json(const ExtensionState& st);

// The chart maps themselves, keyed by chart id.
Json series_map_to_json(const ExtensionState& st);

// Assembles the full report a command prints. Sections that do not apply are
// simply absent. Everything is exact: all numbers appear as "p/q" strings,
// and emission order is fixed, so identical inputs give identical bytes.
struct ReportBuilder {
  std::string command;
  Json parameters = Json::object();
  const ValidationReport* validation = nullptr;
  const ExtensionState* state = nullptr;
  const Obstruction* obstruction = nullptr;
  const ConvergenceCertificate* certificate = nullptr;
  const ImmersionReport* immersion = nullptr;
  bool emit_series = false;
  std::string status;
  int exit_code = 0;

  std::string build() const;
};

// High-level entry points shared by the command-line tool and the python
// bindings. Each returns the canonical report text, the chart-map document
// (empty when the command produced none), and the process exit code.
struct CommandOutput {
  std::string report;
  std::string series;
  int exit_code = 0;
};

CommandOutput validate_document(const std::string& cover_text, const std::string& input_label);

CommandOutput run_document(const std::string& cover_text, const std::string& input_label,
                           std::uint32_t order, std::optional<std::uint32_t> psi_degree = {});

CommandOutput certify_document(const std::string& cover_text, const std::string& input_label,
                               std::uint32_t order, std::optional<Rational> a = {},
                               std::optional<Rational> b = {}, std::optional<Rational> rho = {},
                               std::optional<std::uint32_t> psi_degree = {});

}  // namespace fembed
