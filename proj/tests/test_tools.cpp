#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "config.hpp"
#include "lcp/constants.hpp"
#include "scenarios.hpp"
#include "table.hpp"

using namespace lcp::tool;
namespace k = lcp::constants;
namespace fs = std::filesystem;

namespace {

struct Command {
  int exit_code;
  std::string output; // stdout + stderr
};

Command run_cli(const std::string& args) {
  const fs::path tmp =
      fs::temp_directory_path() / "lcp_cli_capture.txt";
  const std::string cmd =
      std::string(LCP_CLI_BINARY) + " " + args + " > " + tmp.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(tmp);
  std::ostringstream text;
  text << in.rdbuf();
  fs::remove(tmp);
  return {WEXITSTATUS(status), text.str()};
}

fs::path write_temp(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p, std::ios::binary);
  out << content;
  return p;
}

} // namespace

TEST_CASE("config parsing and unit enforcement") {
  const auto cfg = Config::from_string("# comment\n"
                                       "trap.z = 2 um\n"
                                       "trap.frequency = 229 Hz\n"
                                       "atom.mass = 86.909 u\n"
                                       "atom.alpha0 = 319 au\n"
                                       "sweep.count = 12\n"
                                       "sweep.min = 0.25\n",
                                       "test.cfg");
  CHECK(cfg.length("trap.z") == doctest::Approx(2e-6));
  CHECK(cfg.angular_frequency("trap.frequency") ==
        doctest::Approx(2.0 * k::pi * 229.0));
  CHECK(cfg.mass("atom.mass") ==
        doctest::Approx(86.909 * k::atomic_mass_unit));
  CHECK(cfg.polarizability("atom.alpha0") ==
        doctest::Approx(319.0 * k::polarizability_au));
  CHECK(cfg.count("sweep.count") == 12);
  CHECK(cfg.dimensionless("sweep.min") == 0.25);
  CHECK(cfg.length("profile.period", 4e-6) == 4e-6); // fallback path
  cfg.validate_schema();
}

TEST_CASE("bare numbers are rejected for physical quantities") {
  const auto cfg = Config::from_string("trap.z = 2\n", "bare.cfg");
  try {
    cfg.length("trap.z");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    CHECK(what.find("bare.cfg:1") != std::string::npos);
    CHECK(what.find("unit") != std::string::npos);
  }
}

TEST_CASE("units are rejected on dimensionless keys") {
  const auto cfg = Config::from_string("sweep.min = 0.25 um\n", "dim.cfg");
  CHECK_THROWS_AS(cfg.dimensionless("sweep.min"), ConfigError);
}

TEST_CASE("unknown keys are reported with their line") {
  const auto cfg =
      Config::from_string("trap.z = 2 um\ntrap.zz = 3 um\n", "typo.cfg");
  try {
    cfg.validate_schema();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    CHECK(what.find("typo.cfg:2") != std::string::npos);
    CHECK(what.find("trap.zz") != std::string::npos);
  }
}

TEST_CASE("config rejects duplicates and malformed lines") {
  CHECK_THROWS_AS(Config::from_string("a.b = 1\na.b = 2\n", "dup.cfg"),
                  ConfigError);
  CHECK_THROWS_AS(Config::from_string("just words\n", "bad.cfg"), ConfigError);
}

TEST_CASE("table formatting: 9 significant digits, csv and json mirror") {
  Table t;
  t.scenario = "rho-sweep";
  t.add_meta("kernel", "perfect-cp");
  t.columns = {{"k_c_z_A"}, {"rho"}, {"flag", true}};
  t.rows = {{0.25, 0.12345678987654, 1.0}};
  t.finalize_hash();

  std::ostringstream csv;
  write_csv(csv, t);
  CHECK(csv.str().find("2.50000000e-01,1.23456790e-01,1") !=
        std::string::npos);
  CHECK(csv.str().find("# config-hash: ") != std::string::npos);

  std::ostringstream json;
  write_json(json, t);
  CHECK(json.str().find("0.123456790") != std::string::npos);
}

TEST_CASE("build_table: empty grid produces an empty table with headers") {
  const auto cfg = Config::from_string("sweep.count = 0\n", "empty.cfg");
  const GlobalOptions opt;
  const Table t = build_table("rho-sweep", cfg, opt);
  CHECK(t.rows.empty());
  CHECK(t.columns.size() == 2);
}

TEST_CASE("build_table: worker count does not change values") {
  const auto cfg = Config::from_string("sweep.count = 9\n", "w.cfg");
  GlobalOptions serial;
  GlobalOptions parallel;
  parallel.workers = 4;
  const Table a = build_table("shift-sweep", cfg, serial);
  const Table b = build_table("shift-sweep", cfg, parallel);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i)
    for (std::size_t c = 0; c < a.rows[i].size(); ++c)
      CHECK(a.rows[i][c] == b.rows[i][c]);
}

TEST_CASE("cli: identical configs give byte-identical outputs") {
  const auto cfg = write_temp("lcp_det.cfg", "sweep.count = 6\n");
  const fs::path out1 = fs::temp_directory_path() / "lcp_det1.csv";
  const fs::path out2 = fs::temp_directory_path() / "lcp_det2.csv";
  const std::string base = "shift-sweep --config " + cfg.string();
  CHECK(run_cli(base + " --output " + out1.string()).exit_code == 0);
  CHECK(run_cli(base + " --workers 3 --output " + out2.string()).exit_code ==
        0);
  std::ifstream a(out1), b(out2);
  std::ostringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
  CHECK(!sa.str().empty());
  fs::remove(cfg);
  fs::remove(out1);
  fs::remove(out2);
}

TEST_CASE("cli: rho at the quoted deviation point") {
  // k_c z_A = 3.55 with the retarded kernel sits near 28-29% of the
  // proximity-force value
  const auto cfg = write_temp("lcp_rho.cfg",
                              "sweep.min = 3.55\nsweep.max = 3.55\n"
                              "sweep.count = 1\n");
  const auto r = run_cli("rho-sweep --config " + cfg.string());
  CHECK(r.exit_code == 0);
  const auto pos = r.output.rfind("3.55000000e+00,");
  REQUIRE(pos != std::string::npos);
  const double rho = std::strtod(
      r.output.c_str() + pos + std::string("3.55000000e+00,").size(), nullptr);
  CHECK(std::abs(rho - 0.28) < 0.03);
  fs::remove(cfg);
}

TEST_CASE("cli: empty grid exits zero with a header-only table") {
  const auto cfg = write_temp("lcp_empty.cfg", "sweep.count = 0\n");
  const auto r = run_cli("kernel-sweep --config " + cfg.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("k_c_z_A,U1_amplitude_J,rho") != std::string::npos);
  fs::remove(cfg);
}

TEST_CASE("cli: unknown kernel name fails with a nonzero exit") {
  const auto cfg = write_temp("lcp_badkernel.cfg", "kernel = frobnicate\n");
  const auto r = run_cli("kernel-sweep --config " + cfg.string());
  CHECK(r.exit_code != 0);
  CHECK(r.output.find("unknown kernel") != std::string::npos);
  fs::remove(cfg);
}

TEST_CASE("cli: bec radius touching the surface is rejected") {
  const auto cfg = write_temp("lcp_touch.cfg",
                              "sweep.min = 0.5 um\nsweep.max = 2.5 um\n"
                              "sweep.count = 3\n");
  const auto r = run_cli("bec-sweep --config " + cfg.string());
  CHECK(r.exit_code != 0);
  CHECK(r.output.find("touches the surface") != std::string::npos);
  fs::remove(cfg);
}

TEST_CASE("cli: scenario key must match the verb") {
  const auto cfg = write_temp("lcp_scen.cfg", "scenario = plane\n");
  const auto r = run_cli("rho-sweep --config " + cfg.string());
  CHECK(r.exit_code != 0);
  CHECK(r.output.find("does not match") != std::string::npos);
  fs::remove(cfg);
}

TEST_CASE("cli ingest-optical: drude table round-trips and caches") {
  const double wp = 1.37e16, g = 5.3e13;
  std::ostringstream data;
  data << "# synthetic drude\n";
  for (int i = 0; i < 300; ++i) {
    const double w = 1e9 * std::pow(1e10, i / 299.0);
    char row[64];
    std::snprintf(row, sizeof row, "%.9e %.9e\n", w,
                  g * wp * wp / (w * (w * w + g * g)));
    data << row;
  }
  const auto table = write_temp("lcp_drude.txt", data.str());
  const fs::path cache = fs::temp_directory_path() / "lcp_drude.kk-cache.txt";
  const auto r = run_cli("ingest-optical " + table.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("cache written") != std::string::npos);
  REQUIRE(fs::exists(cache));

  std::ifstream in(cache);
  std::string line;
  int checked = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#')
      continue;
    std::istringstream row(line);
    double xi, eps;
    row >> xi >> eps;
    if (xi < 1e12 || xi > 1e17)
      continue;
    const double analytic = 1.0 + wp * wp / (xi * (xi + g));
    CHECK(std::abs(eps - analytic) / analytic < 1e-2);
    ++checked;
  }
  CHECK(checked > 100);
  fs::remove(table);
  fs::remove(cache);
}

TEST_CASE("cli ingest-optical: malformed rows name the line; duplicates warn") {
  const auto bad = write_temp("lcp_bad.txt", "1e15 0.5\noops\n");
  const auto r = run_cli("ingest-optical " + bad.string());
  CHECK(r.exit_code != 0);
  CHECK(r.output.find("2") != std::string::npos);
  fs::remove(bad);

  const auto dup = write_temp("lcp_dup.txt", "1e15 0.5\n1e15 0.5\n2e15 0.2\n");
  const auto r2 = run_cli("ingest-optical " + dup.string());
  CHECK(r2.exit_code == 0);
  CHECK(r2.output.find("deduplicated") != std::string::npos);
  fs::remove(dup);
  fs::remove(fs::temp_directory_path() / "lcp_dup.kk-cache.txt");
}

TEST_CASE("cli ingest-polarizability honors atomic units") {
  const auto table =
      write_temp("lcp_alpha.txt", "units: au\n1e14 300\n1e15 100\n");
  const auto r = run_cli("ingest-polarizability " + table.string());
  CHECK(r.exit_code == 0);
  const double expected = 300.0 * k::polarizability_au;
  char formatted[40];
  std::snprintf(formatted, sizeof formatted, "%.8e", expected);
  CHECK(r.output.find(formatted) != std::string::npos);
  fs::remove(table);
  fs::remove(fs::temp_directory_path() / "lcp_alpha.alpha-cache.txt");
}

TEST_CASE("cli: cache directory environment override") {
  const fs::path dir = fs::temp_directory_path() / "lcp_cache_dir";
  fs::create_directories(dir);
  const auto table = write_temp("lcp_env.txt", "1e15 0.5\n2e15 0.2\n");
  const std::string cmd = "LCP_CACHE_DIR=" + dir.string() + " " +
                          std::string(LCP_CLI_BINARY) + " ingest-optical " +
                          table.string() + " > /dev/null 2>&1";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(dir / "lcp_env.kk-cache.txt"));
  fs::remove_all(dir);
  fs::remove(table);
}
