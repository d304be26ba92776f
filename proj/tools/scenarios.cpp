#include "scenarios.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "lcp/constants.hpp"
#include "lcp/errors.hpp"
#include "lcp/trap.hpp"
#include "lcp/version.hpp"

namespace lcp::tool {

namespace k = lcp::constants;
namespace fs = std::filesystem;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

QuadratureSpec spec_1d(const GlobalOptions& opt) {
  QuadratureSpec s = default_quadrature_1d();
  if (opt.tolerance > 0.0)
    s.rel_tol = opt.tolerance;
  return s;
}

QuadratureSpec spec_2d(const GlobalOptions& opt) {
  QuadratureSpec s = default_quadrature_2d();
  if (opt.tolerance > 0.0)
    s.rel_tol = std::min(1e-3, opt.tolerance * 100.0);
  return s;
}

// ---------------------------------------------------------------------------
// Builders from configuration. The built-in defaults are a synthetic
// single-oscillator rubidium-like stand-in, not measured data.
// ---------------------------------------------------------------------------

AtomResponse build_atom(const Config& cfg) {
  const std::string kind = cfg.word("atom.kind", "oscillator");
  const double mass = cfg.mass("atom.mass", 86.909 * k::atomic_mass_unit);
  if (kind == "oscillator")
    return AtomResponse::single_oscillator(
        cfg.polarizability("atom.alpha0", 319.0 * k::polarizability_au),
        cfg.angular_frequency("atom.omega", 2.415e15), mass);
  if (kind == "static")
    return AtomResponse::static_polarizability(
        cfg.polarizability("atom.alpha0", 319.0 * k::polarizability_au), mass);
  if (kind == "tabulated") {
    const auto table = PolarizabilityTable::from_file(cfg.file_path("atom.table"));
    const double alpha0 = cfg.has("atom.alpha0")
                              ? cfg.polarizability("atom.alpha0")
                              : 0.0;
    return AtomResponse::tabulated(table.rows, alpha0, mass);
  }
  throw ConfigError(cfg.name() + ": atom.kind: unknown kind '" + kind +
                    "' (oscillator, static, tabulated)");
}

MaterialResponse build_material(const Config& cfg) {
  const std::string kind = cfg.word("material.kind", "perfect");
  if (kind == "perfect")
    return MaterialResponse::perfect_reflector();
  if (kind == "drude")
    return MaterialResponse::drude(
        cfg.angular_frequency("material.omega_p"),
        cfg.angular_frequency("material.gamma"));
  if (kind == "lorentz") {
    std::vector<LorentzOscillator> oscillators;
    for (int i = 1; i <= 99; ++i) {
      const std::string base = "material.oscillator." + std::to_string(i);
      if (!cfg.has(base + ".strength"))
        break;
      oscillators.push_back({cfg.squared_frequency(base + ".strength"),
                             cfg.angular_frequency(base + ".omega0"),
                             cfg.angular_frequency(base + ".damping", 0.0)});
    }
    if (oscillators.empty())
      throw ConfigError(cfg.name() + ": lorentz material needs "
                        "material.oscillator.1.{strength,omega0[,damping]}");
    return MaterialResponse::lorentz(std::move(oscillators));
  }
  if (kind == "tabulated") {
    // two columns (xi rad/s, eps(i xi)); typically an ingest-optical cache
    const auto raw = OpticalDataTable::from_file(cfg.file_path("material.table"));
    return MaterialResponse::tabulated(raw.rows);
  }
  throw ConfigError(cfg.name() + ": material.kind: unknown kind '" + kind +
                    "' (perfect, drude, lorentz, tabulated)");
}

ResponseKernel build_kernel(const Config& cfg, const GlobalOptions& opt) {
  const AtomResponse atom = build_atom(cfg);
  const std::string kind = cfg.word("kernel", "perfect-cp");
  if (kind == "perfect-cp")
    return ResponseKernel::perfect_cp(atom);
  if (kind == "perfect-vdw")
    return ResponseKernel::perfect_vdw(atom);
  if (kind == "pfa")
    return ResponseKernel::pfa_specular(atom, build_material(cfg), spec_1d(opt));
  throw ConfigError(cfg.name() + ": kernel: unknown kernel '" + kind +
                    "' (perfect-cp, perfect-vdw, pfa)");
}

CorrugationProfile build_profile(const Config& cfg, const char* default_kind) {
  const std::string kind = cfg.word("profile.kind", default_kind);
  const long harmonics = cfg.count("profile.harmonics", 101);
  if (kind == "sinusoid")
    return CorrugationProfile::sinusoid(
        cfg.length("profile.period", 10e-6),
        cfg.length("profile.amplitude", 250e-9),
        static_cast<int>(std::max(1L, harmonics)));
  if (kind == "grooves") {
    const double period = cfg.length("profile.period", 4e-6);
    return CorrugationProfile::rectangular_grooves(
        period, cfg.length("profile.depth", 250e-9),
        cfg.length("profile.width", period / 2.0),
        static_cast<int>(std::max(1L, harmonics)));
  }
  if (kind == "tabulated")
    return CorrugationProfile::from_file(
        cfg.file_path("profile.table"),
        static_cast<int>(std::max(1L, harmonics)));
  throw ConfigError(cfg.name() + ": profile.kind: unknown kind '" + kind +
                    "' (sinusoid, grooves, tabulated)");
}

TrapConfiguration build_trap(const Config& cfg) {
  TrapConfiguration t;
  t.omega_x = cfg.angular_frequency("trap.frequency", 2.0 * k::pi * 229.0);
  t.mass = cfg.mass("atom.mass", 86.909 * k::atomic_mass_unit);
  t.x0 = cfg.length("trap.x", 0.0);
  t.z_cm = cfg.length("trap.z", 2e-6);
  t.delta_x = cfg.length("trap.amplitude", 0.0);
  t.tf_radius = cfg.length("trap.radius", 0.0);
  return t;
}

struct Grid {
  std::vector<double> values;
  double lo = 0.0, hi = 0.0;
  long count = 0;
  std::string spacing;
};

Grid make_grid(const Config& cfg, bool dimensional, double def_lo, double def_hi,
               long def_count, const std::string& def_spacing) {
  Grid g;
  g.lo = dimensional ? cfg.length("sweep.min", def_lo)
                     : cfg.dimensionless("sweep.min", def_lo);
  g.hi = dimensional ? cfg.length("sweep.max", def_hi)
                     : cfg.dimensionless("sweep.max", def_hi);
  g.count = cfg.count("sweep.count", def_count);
  g.spacing = cfg.word("sweep.spacing", def_spacing);
  if (g.spacing != "linear" && g.spacing != "log")
    throw ConfigError(cfg.name() + ": sweep.spacing must be linear or log");
  if (g.count > 0 && g.hi < g.lo)
    throw ConfigError(cfg.name() + ": sweep.max must be >= sweep.min");
  if (g.spacing == "log" && g.count > 0 && !(g.lo > 0.0))
    throw ConfigError(cfg.name() + ": log spacing needs sweep.min > 0");
  g.values.reserve(static_cast<std::size_t>(g.count));
  for (long i = 0; i < g.count; ++i) {
    const double t = g.count == 1 ? 0.0 : double(i) / double(g.count - 1);
    g.values.push_back(g.spacing == "log"
                           ? g.lo * std::pow(g.hi / g.lo, t)
                           : g.lo + (g.hi - g.lo) * t);
  }
  return g;
}

void add_grid_meta(Table& t, const Grid& g, const std::string& variable,
                   const std::string& unit) {
  t.add_meta("sweep.variable", variable);
  t.add_meta("sweep.min", num(g.lo) + (unit.empty() ? "" : " " + unit));
  t.add_meta("sweep.max", num(g.hi) + (unit.empty() ? "" : " " + unit));
  t.add_meta("sweep.count", std::to_string(g.count));
  t.add_meta("sweep.spacing", g.spacing);
}

void add_trap_meta(Table& t, const TrapConfiguration& trap) {
  t.add_meta("trap.omega_x", num(trap.omega_x) + " rad/s (" +
                                 num(trap.omega_x / (2.0 * k::pi)) + " Hz)");
  t.add_meta("trap.mass", num(trap.mass) + " kg");
  t.add_meta("trap.x", num(trap.x0) + " m");
  t.add_meta("trap.z", num(trap.z_cm) + " m");
  t.add_meta("trap.amplitude", num(trap.delta_x) + " m");
  t.add_meta("trap.radius", num(trap.tf_radius) + " m");
}

// Evaluates fn over [0, n) with a small worker pool; rows are stored by
// index so the output order never depends on scheduling.
std::vector<std::vector<double>>
map_rows(std::size_t n, unsigned workers,
         const std::function<std::vector<double>(std::size_t)>& fn) {
  std::vector<std::vector<double>> rows(n);
  if (n == 0)
    return rows;
  workers = std::max(1u, std::min<unsigned>(workers, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i)
      rows[i] = fn(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_guard;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n)
          return;
        try {
          rows[i] = fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_guard);
          if (!failure)
            failure = std::current_exception();
          return;
        }
      }
    });
  for (auto& t : pool)
    t.join();
  if (failure)
    std::rethrow_exception(failure);
  return rows;
}

double first_harmonic_amplitude(const CorrugationProfile& profile) {
  const auto& a = profile.fourier_coefficients();
  for (std::size_t n = 1; n < a.size(); ++n)
    if (a[n] != 0.0)
      return std::abs(a[n]);
  throw DataError("profile has no oscillating Fourier component");
}

// ---------------------------------------------------------------------------
// Scenario tables
// ---------------------------------------------------------------------------

Table table_plane(const Config& cfg, const GlobalOptions& opt) {
  const auto atom = build_atom(cfg);
  const auto material = build_material(cfg);
  const auto spec = spec_1d(opt);
  const Grid grid = make_grid(cfg, true, 1e-8, 1e-4, 25, "log");

  Table t;
  t.scenario = "plane";
  t.add_meta("atom", atom.describe());
  t.add_meta("material", material.describe());
  t.add_meta("quadrature.rel_tol", num(spec.rel_tol));
  add_grid_meta(t, grid, "z_A", "m");
  t.add_meta("regime-legend", "0=vdW-asymptote 1=full-integral 2=CP-asymptote");
  t.columns = {{"z_A_m"}, {"U0_J"}, {"estimated_error_J"}, {"regime", true}};
  t.rows = map_rows(grid.values.size(), opt.workers, [&](std::size_t i) {
    const auto r = u0_plane(atom, material, grid.values[i], spec);
    const double regime = r.regime == PotentialRegime::vdw_asymptote ? 0.0
                          : r.regime == PotentialRegime::full_integral ? 1.0
                                                                       : 2.0;
    return std::vector<double>{grid.values[i], r.value, r.estimated_error,
                               regime};
  });
  return t;
}

Table table_kernel_sweep(const Config& cfg, const GlobalOptions& opt,
                         bool with_amplitude) {
  const auto kernel = build_kernel(cfg, opt);
  const auto profile = build_profile(cfg, "sinusoid");
  const Grid grid = make_grid(cfg, false, 0.25, 10.0, 40, "linear");
  const double k_c = profile.wavevector();
  const double h1 = first_harmonic_amplitude(profile);

  Table t;
  t.scenario = with_amplitude ? "kernel-sweep" : "rho-sweep";
  t.add_meta("kernel", kernel.describe());
  t.add_meta("atom", kernel.atom().describe());
  t.add_meta("profile", profile.describe());
  add_grid_meta(t, grid, "k_c z_A", "");
  if (with_amplitude)
    t.columns = {{"k_c_z_A"}, {"U1_amplitude_J"}, {"rho"}};
  else
    t.columns = {{"k_c_z_A"}, {"rho"}};
  t.rows = map_rows(grid.values.size(), opt.workers, [&](std::size_t i) {
    const double phase = grid.values[i];
    const double z = phase / k_c;
    const double rho = kernel.rho(k_c, z);
    if (!with_amplitude)
      return std::vector<double>{phase, rho};
    const double amplitude = h1 * std::abs(kernel.g(k_c, z));
    return std::vector<double>{phase, amplitude, rho};
  });
  return t;
}

Table table_lateral_curve(const Config& cfg, const GlobalOptions& opt) {
  const auto kernel = build_kernel(cfg, opt);
  const auto profile = build_profile(cfg, "grooves");
  const auto trap = build_trap(cfg);
  const double z = trap.z_cm;
  const Grid grid = make_grid(cfg, true, 0.0, profile.period(), 81, "linear");

  const auto field = make_lateral_field(profile, kernel, z);
  Table t;
  t.scenario = "lateral-curve";
  t.add_meta("kernel", kernel.describe());
  t.add_meta("atom", kernel.atom().describe());
  t.add_meta("profile", profile.describe());
  t.add_meta("z_A", num(z) + " m");
  t.add_meta("truncation-remainder", num(field.truncation_remainder) + " J");
  for (const auto& w : field.warnings)
    t.add_meta("warning", w);
  add_grid_meta(t, grid, "x_A", "m");
  t.columns = {{"x_A_m"}, {"U1_J"}, {"F_lateral_N"}};
  t.rows = map_rows(grid.values.size(), opt.workers, [&](std::size_t i) {
    const double x = grid.values[i];
    return std::vector<double>{x, field.potential(x), field.force(x)};
  });
  return t;
}

Table table_shift_sweep(const Config& cfg, const GlobalOptions& opt) {
  const auto kernel = build_kernel(cfg, opt);
  const auto trap = build_trap(cfg);
  if (cfg.word("profile.kind", "grooves") != "grooves")
    throw ConfigError(cfg.name() +
                      ": shift-sweep requires profile.kind = grooves");
  const double depth = cfg.length("profile.depth", 250e-9);
  const long harmonics = std::max(1L, cfg.count("profile.harmonics", 101));
  // the groove width tracks the swept period at a fixed fill ratio
  double width_ratio = 0.5;
  if (cfg.has("profile.width") && cfg.has("profile.period"))
    width_ratio = cfg.length("profile.width") / cfg.length("profile.period");
  if (!(width_ratio > 0.0) || !(width_ratio < 1.0))
    throw ConfigError(cfg.name() + ": profile.width must lie in (0, period)");

  const Grid grid = make_grid(cfg, false, 0.25, 12.0, 48, "linear");
  const auto spec = spec_1d(opt);

  Table t;
  t.scenario = "shift-sweep";
  t.add_meta("kernel", kernel.describe());
  t.add_meta("atom", kernel.atom().describe());
  t.add_meta("profile",
             "rectangular-grooves depth=" + num(depth) + " m width=" +
                 num(width_ratio) + "*period harmonics=" +
                 std::to_string(harmonics) + " (period swept)");
  add_trap_meta(t, trap);
  add_grid_meta(t, grid, "k_c z_A", "");
  t.columns = {{"k_c_z_A"},
               {"gamma0"},
               {"detectable_1e-5", true},
               {"detectable_1e-4", true}};
  t.rows = map_rows(grid.values.size(), opt.workers, [&](std::size_t i) {
    const double phase = grid.values[i];
    const double k_c = phase / trap.z_cm;
    const double period = 2.0 * k::pi / k_c;
    const auto profile = CorrugationProfile::rectangular_grooves(
        period, depth, width_ratio * period, static_cast<int>(harmonics));
    const auto shift = gamma_single(profile, kernel, trap, spec);
    return std::vector<double>{
        phase, shift.gamma_harmonic,
        detectability(shift.gamma_harmonic, 1e-5).detectable ? 1.0 : 0.0,
        detectability(shift.gamma_harmonic, 1e-4).detectable ? 1.0 : 0.0};
  });
  return t;
}

Table table_bec_sweep(const Config& cfg, const GlobalOptions& opt) {
  const auto kernel = build_kernel(cfg, opt);
  const auto profile = build_profile(cfg, "grooves");
  TrapConfiguration trap = build_trap(cfg);
  const Grid grid = make_grid(cfg, true, 0.1e-6, 1.5e-6, 15, "linear");
  for (double radius : grid.values)
    if (!(trap.z_cm - radius > 0.0))
      throw ConfigError(cfg.name() + ": sweep radius " + num(radius) +
                        " m touches the surface (z_cm = " + num(trap.z_cm) +
                        " m)");

  trap.tf_radius = 0.0;
  const auto center = gamma_single(profile, kernel, trap);
  const auto spec = spec_2d(opt);

  Table t;
  t.scenario = "bec-sweep";
  t.add_meta("kernel", kernel.describe());
  t.add_meta("atom", kernel.atom().describe());
  t.add_meta("profile", profile.describe());
  add_trap_meta(t, trap);
  t.add_meta("gamma0-pointlike", num(center.gamma_harmonic));
  add_grid_meta(t, grid, "R", "m");
  t.columns = {{"R_m"}, {"gamma_ratio"}};
  t.rows = map_rows(grid.values.size(), opt.workers, [&](std::size_t i) {
    TrapConfiguration point = trap;
    point.tf_radius = grid.values[i];
    const auto shift = gamma_bec(profile, kernel, point, spec);
    return std::vector<double>{grid.values[i], shift.finite_size_factor};
  });
  return t;
}

void write_table(const Table& t, const GlobalOptions& opt) {
  std::ostringstream buffer;
  if (opt.format == "json")
    write_json(buffer, t);
  else
    write_csv(buffer, t);
  if (opt.output_path.empty()) {
    std::cout << buffer.str();
    return;
  }
  std::ofstream out(opt.output_path, std::ios::binary);
  if (!out)
    throw DataError("cannot write '" + opt.output_path + "'");
  out << buffer.str();
}

Config load_config(const std::string& scenario, const GlobalOptions& opt) {
  Config cfg;
  if (!opt.config_path.empty())
    cfg = Config::from_file(opt.config_path);
  cfg.validate_schema();
  const std::string declared = cfg.word("scenario", scenario);
  if (declared != scenario)
    throw ConfigError(cfg.name() + ": scenario '" + declared +
                      "' does not match the requested command '" + scenario +
                      "'");
  return cfg;
}

fs::path cache_destination(const std::string& input, const char* suffix,
                           const GlobalOptions& opt) {
  if (!opt.output_path.empty())
    return opt.output_path;
  const fs::path in(input);
  fs::path dir = in.parent_path();
  if (const char* env = std::getenv("LCP_CACHE_DIR"); env && *env)
    dir = env;
  return dir / (in.stem().string() + suffix);
}

} // namespace

Table build_table(const std::string& scenario, const Config& cfg,
                  const GlobalOptions& opt) {
  Table t;
  if (scenario == "plane")
    t = table_plane(cfg, opt);
  else if (scenario == "kernel-sweep")
    t = table_kernel_sweep(cfg, opt, true);
  else if (scenario == "rho-sweep")
    t = table_kernel_sweep(cfg, opt, false);
  else if (scenario == "lateral-curve")
    t = table_lateral_curve(cfg, opt);
  else if (scenario == "shift-sweep")
    t = table_shift_sweep(cfg, opt);
  else if (scenario == "bec-sweep")
    t = table_bec_sweep(cfg, opt);
  else
    throw ConfigError("unknown scenario '" + scenario + "'");
  t.finalize_hash();
  return t;
}

int run_sweep_command(const std::string& scenario, const GlobalOptions& opt) {
  const Config cfg = load_config(scenario, opt);
  const Table t = build_table(scenario, cfg, opt);
  write_table(t, opt);
  return 0;
}

int run_ingest_optical(const std::string& path, const std::string& units,
                       const GlobalOptions& opt) {
  const auto table = OpticalDataTable::from_file(path, units);
  for (const auto& w : table.warnings)
    std::cerr << "lcp: warning: " << path << ": " << w << "\n";

  const int points = 200;
  const double xi_lo = 1e11, xi_hi = 1e18;
  std::vector<std::array<double, 2>> grid(points);
  const QuadratureSpec spec = spec_1d(opt);
  for (int i = 0; i < points; ++i) {
    const double xi = xi_lo * std::pow(xi_hi / xi_lo, double(i) / (points - 1));
    grid[i] = {xi, kramers_kronig(table, xi, spec)};
  }

  const fs::path dest = cache_destination(path, ".kk-cache.txt", opt);
  std::ofstream out(dest, std::ios::binary);
  if (!out)
    throw DataError("cannot write cache '" + dest.string() + "'");
  out << "# lcp " << lcp::version << " kramers-kronig cache\n";
  out << "# source: " << path << "\n";
  out << "# rows-ingested: " << table.rows.size() << "\n";
  out << "# low-extrapolation: constant eps'' below the first row\n";
  out << "# high-extrapolation: eps'' ~ omega^-" << num(table.high_freq_exponent)
      << " above the last row\n";
  out << "# columns: xi_rad_s epsilon_i_xi\n";
  for (const auto& g : grid)
    out << format_cell(g[0], false) << " " << format_cell(g[1], false) << "\n";
  out.close();

  std::cout << "ingested " << table.rows.size() << " rows from " << path
            << "\n";
  std::cout << "eps(i*" << num(xi_lo) << " rad/s) = "
            << format_cell(grid.front()[1], false) << "\n";
  std::cout << "eps(i*" << num(xi_hi) << " rad/s) = "
            << format_cell(grid.back()[1], false) << "\n";
  std::cout << "cache written to " << dest.string() << "\n";
  return 0;
}

int run_ingest_polarizability(const std::string& path, const std::string& units,
                              const GlobalOptions& opt) {
  const auto table = PolarizabilityTable::from_file(path, units);
  for (const auto& w : table.warnings)
    std::cerr << "lcp: warning: " << path << ": " << w << "\n";
  for (std::size_t i = 1; i < table.rows.size(); ++i)
    if (table.rows[i][1] > table.rows[i - 1][1] * (1.0 + 1e-12))
      throw DataError(path + ": alpha(i xi) must be non-increasing (violated "
                      "at xi = " + num(table.rows[i][0]) + " rad/s)");

  const fs::path dest = cache_destination(path, ".alpha-cache.txt", opt);
  std::ofstream out(dest, std::ios::binary);
  if (!out)
    throw DataError("cannot write cache '" + dest.string() + "'");
  out << "# lcp " << lcp::version << " polarizability cache (SI)\n";
  out << "# source: " << path << "\n";
  out << "# rows: " << table.rows.size() << "\n";
  out << "# columns: xi_rad_s alpha_C_m2_per_V\n";
  for (const auto& r : table.rows)
    out << format_cell(r[0], false) << " " << format_cell(r[1], false) << "\n";
  out.close();

  std::cout << "ingested " << table.rows.size() << " rows from " << path
            << "\n";
  std::cout << "alpha(i*" << num(table.rows.front()[0]) << " rad/s) = "
            << format_cell(table.rows.front()[1], false) << " C m^2/V\n";
  std::cout << "alpha(i*" << num(table.rows.back()[0]) << " rad/s) = "
            << format_cell(table.rows.back()[1], false) << " C m^2/V\n";
  std::cout << "cache written to " << dest.string() << "\n";
  return 0;
}

} // namespace lcp::tool
