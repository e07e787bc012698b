#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace rotorpair {

/// Tabular result of a sweep or single evaluation: ordered metadata,
/// column names, and numeric rows.
struct Dataset {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_meta(const std::string& key, const std::string& value);
  void add_meta(const std::string& key, double value);
  const std::string* find_meta(const std::string& key) const;
  int column_index(const std::string& name) const;  // -1 when absent
};

/// 17-significant-digit decimal form; round-trips a double bit-exactly.
std::string format_double(double value);

/// Comma-separated values with '#'-prefixed "key = value" metadata lines
/// and a header row of column names.
void write_csv(const Dataset& ds, std::ostream& out);
Dataset read_csv(std::istream& in);

/// JSON mirror: {"metadata": {...}, "columns": [...], "rows": [[...]]}.
void write_json(const Dataset& ds, std::ostream& out);
Dataset read_json(std::istream& in);

}  // namespace rotorpair
