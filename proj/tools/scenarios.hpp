#pragma once

#include <string>

#include "config.hpp"
#include "table.hpp"

namespace lcp::tool {

struct GlobalOptions {
  std::string config_path; // empty: built-in stand-in defaults
  std::string output_path; // empty: stdout
  std::string format = "csv";
  unsigned workers = 1;
  double tolerance = 0.0; // 0: library defaults; else 1D relative tolerance
};

/// Builds the sweep table for one scenario verb. Pure given (config,
/// options); exposed separately from run_sweep_command for testing.
Table build_table(const std::string& scenario, const Config& cfg,
                  const GlobalOptions& opt);

int run_sweep_command(const std::string& scenario, const GlobalOptions& opt);
int run_ingest_optical(const std::string& path, const std::string& units,
                       const GlobalOptions& opt);
int run_ingest_polarizability(const std::string& path, const std::string& units,
                              const GlobalOptions& opt);

} // namespace lcp::tool
