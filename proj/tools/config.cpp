#include "config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>
#include <vector>

#include "lcp/constants.hpp"

namespace lcp::tool {

namespace k = lcp::constants;

namespace {

const std::map<std::string, double> kLengthUnits = {
    {"m", 1.0},    {"mm", 1e-3}, {"um", 1e-6},
    {"µm", 1e-6},  {"nm", 1e-9}, {"pm", 1e-12}};

// cyclic frequencies are multiplied by 2 pi on ingestion
const std::map<std::string, double> kFrequencyUnits = {
    {"rad/s", 1.0},
    {"Hz", 2.0 * k::pi},
    {"kHz", 2.0 * k::pi * 1e3},
    {"MHz", 2.0 * k::pi * 1e6},
    {"GHz", 2.0 * k::pi * 1e9},
    {"THz", 2.0 * k::pi * 1e12},
    {"eV", k::ev_to_rad_s}};

const std::map<std::string, double> kMassUnits = {
    {"kg", 1.0}, {"u", k::atomic_mass_unit}};

const std::map<std::string, double> kPolarizabilityUnits = {
    {"au", k::polarizability_au}, {"C*m^2/V", 1.0}, {"SI", 1.0}};

const std::map<std::string, double> kSquaredFrequencyUnits = {
    {"rad^2/s^2", 1.0}};

// every key the tool understands; material oscillators are indexed
const std::vector<std::string> kSchema = {
    "scenario",
    "atom.kind", "atom.alpha0", "atom.omega", "atom.mass", "atom.table",
    "material.kind", "material.omega_p", "material.gamma", "material.table",
    "kernel",
    "profile.kind", "profile.period", "profile.amplitude", "profile.depth",
    "profile.width", "profile.harmonics", "profile.table",
    "trap.frequency", "trap.x", "trap.z", "trap.amplitude", "trap.radius",
    "sweep.min", "sweep.max", "sweep.count", "sweep.spacing",
};

bool key_in_schema(const std::string& key) {
  for (const auto& known : kSchema)
    if (key == known)
      return true;
  static const std::regex oscillator(
      R"(material\.oscillator\.[1-9][0-9]?\.(strength|omega0|damping))");
  return std::regex_match(key, oscillator);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// splits "2.5 um" into the number and the unit token; the unit may be absent
bool split_number(const std::string& raw, double& value, std::string& unit) {
  const char* begin = raw.c_str();
  char* end = nullptr;
  value = std::strtod(begin, &end);
  if (end == begin)
    return false;
  unit = trim(std::string(end));
  return true;
}

std::string unit_list(const std::map<std::string, double>& units) {
  std::string s;
  for (const auto& [name, factor] : units) {
    (void)factor;
    if (!s.empty())
      s += ", ";
    s += name;
  }
  return s;
}

} // namespace

Config Config::from_string(const std::string& text, const std::string& name) {
  Config cfg;
  cfg.name_ = name;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(name + ":" + std::to_string(lineno) +
                        ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(name + ":" + std::to_string(lineno) +
                        ": empty key or value");
    if (cfg.entries_.count(key))
      throw ConfigError(name + ":" + std::to_string(lineno) +
                        ": duplicate key '" + key + "'");
    cfg.entries_[key] = {value, lineno};
  }
  return cfg;
}

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return from_string(text.str(), path);
}

bool Config::has(const std::string& key) const {
  return entries_.count(key) > 0;
}

const Config::Entry* Config::find(const std::string& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

void Config::fail(const std::string& key, const std::string& message) const {
  const Entry* e = find(key);
  std::string where = name_;
  if (e)
    where += ":" + std::to_string(e->line);
  throw ConfigError(where + ": " + key + ": " + message);
}

double Config::with_unit(const std::string& key, std::optional<double> fallback,
                         const std::map<std::string, double>& units,
                         const std::string& expectation) const {
  const Entry* e = find(key);
  if (!e) {
    if (fallback)
      return *fallback;
    throw ConfigError(name_ + ": missing required key '" + key + "' (" +
                      expectation + ")");
  }
  double value;
  std::string unit;
  if (!split_number(e->raw, value, unit))
    fail(key, "expected '<number> <unit>' with unit in {" + unit_list(units) +
                  "}");
  if (unit.empty())
    fail(key, "a unit suffix is required here ({" + unit_list(units) + "})");
  const auto it = units.find(unit);
  if (it == units.end())
    fail(key, "unknown unit '" + unit + "' (expected one of {" +
                  unit_list(units) + "})");
  return value * it->second;
}

double Config::length(const std::string& key,
                      std::optional<double> fallback) const {
  return with_unit(key, fallback, kLengthUnits, "a length such as '2 um'");
}

double Config::angular_frequency(const std::string& key,
                                 std::optional<double> fallback) const {
  return with_unit(key, fallback, kFrequencyUnits,
                   "a frequency such as '229 Hz' or '2.4e15 rad/s'");
}

double Config::mass(const std::string& key,
                    std::optional<double> fallback) const {
  return with_unit(key, fallback, kMassUnits, "a mass such as '86.909 u'");
}

double Config::polarizability(const std::string& key,
                              std::optional<double> fallback) const {
  return with_unit(key, fallback, kPolarizabilityUnits,
                   "a polarizability such as '319 au'");
}

double Config::squared_frequency(const std::string& key,
                                 std::optional<double> fallback) const {
  return with_unit(key, fallback, kSquaredFrequencyUnits,
                   "an oscillator strength such as '2e31 rad^2/s^2'");
}

double Config::dimensionless(const std::string& key,
                             std::optional<double> fallback) const {
  const Entry* e = find(key);
  if (!e) {
    if (fallback)
      return *fallback;
    throw ConfigError(name_ + ": missing required key '" + key + "'");
  }
  double value;
  std::string unit;
  if (!split_number(e->raw, value, unit) || !unit.empty())
    fail(key, "expected a bare dimensionless number");
  return value;
}

long Config::count(const std::string& key, std::optional<long> fallback) const {
  const Entry* e = find(key);
  if (!e) {
    if (fallback)
      return *fallback;
    throw ConfigError(name_ + ": missing required key '" + key + "'");
  }
  double value;
  std::string unit;
  if (!split_number(e->raw, value, unit) || !unit.empty() ||
      value != std::floor(value) || value < 0)
    fail(key, "expected a non-negative integer");
  return static_cast<long>(value);
}

std::string Config::word(const std::string& key,
                         const std::string& fallback) const {
  const Entry* e = find(key);
  return e ? e->raw : fallback;
}

std::string Config::word_required(const std::string& key) const {
  const Entry* e = find(key);
  if (!e)
    throw ConfigError(name_ + ": missing required key '" + key + "'");
  return e->raw;
}

std::string Config::file_path(const std::string& key) const {
  return word_required(key);
}

void Config::validate_schema() const {
  for (const auto& [key, entry] : entries_)
    if (!key_in_schema(key))
      throw ConfigError(name_ + ":" + std::to_string(entry.line) +
                        ": unknown key '" + key + "'");
}

} // namespace lcp::tool
