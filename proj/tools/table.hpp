#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace lcp::tool {

/// Machine-readable sweep output. Every table carries enough metadata
/// (scenario, kernel, all physical parameters with units, tool version and
/// a config hash) to regenerate the figure from the file alone.
struct Table {
  struct Column {
    std::string name;
    bool integer = false; // booleans/counters print as 0/1 instead of %.8e
  };

  std::string scenario;
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;

  void add_meta(const std::string& key, const std::string& value) {
    metadata.emplace_back(key, value);
  }
  /// FNV-1a over the canonical metadata block; appended as `config-hash`.
  void finalize_hash();
};

std::string format_cell(double value, bool integer);

void write_csv(std::ostream& out, const Table& table);
void write_json(std::ostream& out, const Table& table);

std::uint64_t fnv1a(const std::string& bytes);

} // namespace lcp::tool
