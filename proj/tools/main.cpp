#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "lcp/errors.hpp"
#include "lcp/version.hpp"
#include "scenarios.hpp"

namespace {

void add_common_options(CLI::App* cmd, lcp::tool::GlobalOptions& opt) {
  cmd->add_option("--config", opt.config_path,
                  "configuration file (key = value with unit suffixes)");
  cmd->add_option("--output", opt.output_path,
                  "output file (default: stdout)");
  cmd->add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->default_str("csv");
  cmd->add_option("--workers", opt.workers,
                  "concurrent sweep-point evaluations")
      ->check(CLI::Range(1u, 256u));
  cmd->add_option("--tolerance", opt.tolerance,
                  "relative quadrature tolerance (default 1e-8)")
      ->check(CLI::Range(1e-14, 1e-2));
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"lateral Casimir-Polder potentials, corrugation response "
               "kernels and trapped-atom frequency shifts"};
  app.set_version_flag("--version", std::string("lcp ") + lcp::version);
  app.require_subcommand(1);

  lcp::tool::GlobalOptions opt;
  struct Sweep {
    const char* verb;
    const char* help;
  };
  const Sweep sweeps[] = {
      {"plane", "flat-surface Casimir-Polder potential over a separation grid"},
      {"kernel-sweep", "corrugation response amplitude and PFA ratio vs k_c z_A"},
      {"rho-sweep", "PFA deviation ratio rho(k_c z_A)"},
      {"lateral-curve", "lateral potential and force across one period"},
      {"shift-sweep", "dipole-oscillation frequency shift vs k_c z_A"},
      {"bec-sweep", "finite-size condensate shift vs Thomas-Fermi radius"},
  };
  for (const auto& s : sweeps)
    add_common_options(app.add_subcommand(s.verb, s.help), opt);

  std::string ingest_path, ingest_units;
  auto* optical = app.add_subcommand(
      "ingest-optical", "ingest tabulated eps''(omega) and cache eps(i xi)");
  optical->add_option("file", ingest_path, "two-column table")->required();
  optical->add_option("--units", ingest_units, "frequency column units")
      ->check(CLI::IsMember({"rad/s", "eV"}));
  add_common_options(optical, opt);

  auto* polar = app.add_subcommand(
      "ingest-polarizability",
      "ingest tabulated alpha(i xi) and cache a canonical SI table");
  polar->add_option("file", ingest_path, "two-column table")->required();
  polar->add_option("--units", ingest_units, "polarizability column units")
      ->check(CLI::IsMember({"SI", "au"}));
  add_common_options(polar, opt);

  CLI11_PARSE(app, argc, argv);

  try {
    const std::string verb = app.get_subcommands().front()->get_name();
    if (verb == "ingest-optical")
      return lcp::tool::run_ingest_optical(ingest_path, ingest_units, opt);
    if (verb == "ingest-polarizability")
      return lcp::tool::run_ingest_polarizability(ingest_path, ingest_units,
                                                  opt);
    return lcp::tool::run_sweep_command(verb, opt);
  } catch (const std::exception& e) {
    std::cerr << "lcp: error: " << e.what() << "\n";
    return 1;
  }
}
