#include "table.hpp"

#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "lcp/version.hpp"

namespace lcp::tool {

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string format_cell(double value, bool integer) {
  char buf[40];
  if (integer)
    std::snprintf(buf, sizeof buf, "%.0f", value);
  else
    std::snprintf(buf, sizeof buf, "%.8e", value); // 9 significant digits
  return buf;
}

void Table::finalize_hash() {
  std::string canon = "scenario=" + scenario + "\n";
  for (const auto& [key, value] : metadata)
    canon += key + "=" + value + "\n";
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(canon)));
  add_meta("config-hash", buf);
}

void write_csv(std::ostream& out, const Table& table) {
  out << "# lcp " << lcp::version << "\n";
  out << "# scenario: " << table.scenario << "\n";
  for (const auto& [key, value] : table.metadata)
    out << "# " << key << ": " << value << "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out << (c ? "," : "") << table.columns[c].name;
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      out << (c ? "," : "")
          << format_cell(row[c], table.columns[c].integer);
    out << "\n";
  }
}

void write_json(std::ostream& out, const Table& table) {
  nlohmann::ordered_json doc;
  doc["tool"] = "lcp";
  doc["version"] = lcp::version;
  doc["scenario"] = table.scenario;
  nlohmann::ordered_json meta;
  for (const auto& [key, value] : table.metadata)
    meta[key] = value;
  doc["metadata"] = meta;
  nlohmann::ordered_json cols = nlohmann::ordered_json::array();
  for (const auto& c : table.columns)
    cols.push_back(c.name);
  doc["columns"] = cols;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < row.size(); ++c) {
      // mirror the CSV's 9-significant-digit values exactly
      const std::string cell = format_cell(row[c], table.columns[c].integer);
      if (table.columns[c].integer)
        r.push_back(std::strtol(cell.c_str(), nullptr, 10));
      else
        r.push_back(std::strtod(cell.c_str(), nullptr));
    }
    rows.push_back(r);
  }
  doc["rows"] = rows;
  out << doc.dump(2) << "\n";
}

} // namespace lcp::tool
