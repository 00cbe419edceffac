#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fembed/fixtures.hpp"
#include "fembed/report.hpp"

namespace {

using namespace fembed;

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write \"" + path + "\"");
  out << text;
}

int deliver(const CommandOutput& result, const std::string& out_path, const std::string& emit_path) {
  if (out_path.empty())
    std::cout << result.report;
  else
    write_text(out_path, result.report);
  if (!emit_path.empty()) {
    if (result.series.empty())
      throw std::runtime_error("nothing to emit: the command produced no chart maps");
    write_text(emit_path, result.series);
  }
  return result.exit_code;
}

std::optional<Rational> parse_opt(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return parse_rational(text);
}

int cmd_fixtures(const std::string& show, const std::string& export_dir) {
  if (!show.empty()) {
    std::cout << serialize_cover(fixture(show));
    return kExitOk;
  }
  if (!export_dir.empty()) {
    for (const auto& name : fixture_names()) {
      std::string path = export_dir + "/" + name + ".cover";
      write_text(path, serialize_cover(fixture(name)));
      std::cout << path << "\n";
    }
    return kExitOk;
  }
  for (const auto& name : fixture_names()) std::cout << name << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constructs embeddings of deformation families order by order and certifies convergence"};
  app.require_subcommand(1);

  std::string input, out, emit, psi_degree, a, b, rho;
  std::uint32_t order = 1;
  bool fixtures_list = false;
  std::string fixtures_show, fixtures_export;

  CLI::App* validate = app.add_subcommand("validate", "check the consistency identities of a cover document");
  validate->add_option("input", input, "cover document (JSON)")->required();
  validate->add_option("--out", out, "write the report here instead of stdout");

  CLI::App* run = app.add_subcommand("run", "extend the seed embedding order by order");
  run->add_option("input", input, "cover document (JSON)")->required();
  run->add_option("--order", order, "target t-order")->required();
  run->add_option("--psi-degree", psi_degree, "z-degree bound for the corrections");
  run->add_option("--out", out, "write the report here instead of stdout");
  run->add_option("--emit", emit, "also write the chart maps to this file");

  CLI::App* certify_cmd = app.add_subcommand("certify", "run and then certify convergence");
  certify_cmd->add_option("input", input, "cover document (JSON)")->required();
  certify_cmd->add_option("--order", order, "target t-order")->required();
  certify_cmd->add_option("--psi-degree", psi_degree, "z-degree bound for the corrections");
  certify_cmd->add_option("--a", a, "majorant scale a (rational)");
  certify_cmd->add_option("--b", b, "majorant scale b (rational)");
  certify_cmd->add_option("--rho", rho, "starting overlap radius (rational)");
  certify_cmd->add_option("--out", out, "write the report here instead of stdout");
  certify_cmd->add_option("--emit", emit, "also write the chart maps to this file");

  CLI::App* fixtures = app.add_subcommand("fixtures", "list, show, or export the built-in covers");
  fixtures->add_flag("--list", fixtures_list, "list fixture names (default)");
  fixtures->add_option("--show", fixtures_show, "print one fixture document");
  fixtures->add_option("--export", fixtures_export, "write every fixture into this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return fembed::kExitError;
  }

  const auto started = std::chrono::steady_clock::now();
  int code = fembed::kExitError;
  try {
    std::optional<std::uint32_t> psi;
    if (!psi_degree.empty()) psi = static_cast<std::uint32_t>(std::stoul(psi_degree));
    if (validate->parsed()) code = deliver(validate_document(read_text(input), input), out, "");
    if (run->parsed())
      code = deliver(run_document(read_text(input), input, order, psi), out, emit);
    if (certify_cmd->parsed())
      code = deliver(certify_document(read_text(input), input, order, parse_opt(a), parse_opt(b),
                                      parse_opt(rho), psi),
                     out, emit);
    if (fixtures->parsed()) {
      (void)fixtures_list;
      code = cmd_fixtures(fixtures_show, fixtures_export);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return fembed::kExitError;
  }
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
  // Timing never goes into the report, so identical inputs stay byte-identical.
  std::cerr << "# elapsed " << elapsed.count() << " ms\n";
  return code;
}
