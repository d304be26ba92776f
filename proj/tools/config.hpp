#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace lcp::tool {

/// Configuration file error with file:line context where available.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Flat `key = value` configuration with '#' comments. Physical quantities
/// must carry an explicit unit suffix ("z = 2 um", "omega_x = 229 Hz");
/// bare numbers are rejected for dimensional keys and required for
/// dimensionless ones. Unknown keys are reported with their line number.
class Config {
public:
  Config() = default;
  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text, const std::string& name);

  bool has(const std::string& key) const;

  // Typed getters. Without a fallback the key is required.
  double length(const std::string& key,
                std::optional<double> fallback = std::nullopt) const; // m
  double angular_frequency(const std::string& key,
                           std::optional<double> fallback = std::nullopt)
      const; // rad/s; "Hz" style inputs are cyclic and multiplied by 2 pi
  double mass(const std::string& key,
              std::optional<double> fallback = std::nullopt) const; // kg
  double polarizability(const std::string& key,
                        std::optional<double> fallback = std::nullopt)
      const; // C m^2 / V
  double squared_frequency(const std::string& key,
                           std::optional<double> fallback = std::nullopt)
      const; // rad^2/s^2
  double dimensionless(const std::string& key,
                       std::optional<double> fallback = std::nullopt) const;
  long count(const std::string& key,
             std::optional<long> fallback = std::nullopt) const;
  std::string word(const std::string& key, const std::string& fallback) const;
  std::string word_required(const std::string& key) const;
  std::string file_path(const std::string& key) const;

  /// Rejects keys that are not part of the schema, naming their lines.
  void validate_schema() const;

  const std::string& name() const { return name_; }

private:
  struct Entry {
    std::string raw;
    int line = 0;
  };

  const Entry* find(const std::string& key) const;
  [[noreturn]] void fail(const std::string& key, const std::string& message) const;
  double with_unit(const std::string& key, std::optional<double> fallback,
                   const std::map<std::string, double>& units,
                   const std::string& expectation) const;

  std::string name_ = "<defaults>";
  std::map<std::string, Entry> entries_;
};

} // namespace lcp::tool
