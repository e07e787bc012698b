#include "rotorpair/dataset.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace rotorpair {

void Dataset::add_meta(const std::string& key, const std::string& value) {
  metadata.emplace_back(key, value);
}

void Dataset::add_meta(const std::string& key, double value) {
  metadata.emplace_back(key, format_double(value));
}

const std::string* Dataset::find_meta(const std::string& key) const {
  for (const auto& [k, v] : metadata)
    if (k == key) return &v;
  return nullptr;
}

int Dataset::column_index(const std::string& name) const {
  for (size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  return -1;
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_csv(const Dataset& ds, std::ostream& out) {
  for (const auto& [key, value] : ds.metadata)
    out << "# " << key << " = " << value << "\n";
  for (size_t i = 0; i < ds.columns.size(); ++i)
    out << (i ? "," : "") << ds.columns[i];
  out << "\n";
  for (const auto& row : ds.rows) {
    if (row.size() != ds.columns.size())
      throw std::invalid_argument("dataset: row width differs from header");
    for (size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_double(row[i]);
    out << "\n";
  }
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream is(line);
  while (std::getline(is, item, sep)) parts.push_back(item);
  if (!line.empty() && line.back() == sep) parts.emplace_back();
  return parts;
}

double parse_double(const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str())
    throw std::invalid_argument("dataset: malformed number '" + text + "'");
  return v;
}

}  // namespace

Dataset read_csv(std::istream& in) {
  Dataset ds;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      const size_t eq = body.find(" = ");
      if (eq != std::string::npos) {
        std::string key = body.substr(0, eq);
        if (!key.empty() && key.front() == ' ') key.erase(0, 1);
        ds.add_meta(key, body.substr(eq + 3));
      }
      continue;
    }
    if (!have_header) {
      ds.columns = split(line, ',');
      have_header = true;
      continue;
    }
    const auto parts = split(line, ',');
    if (parts.size() != ds.columns.size())
      throw std::invalid_argument("dataset: row width differs from header");
    std::vector<double> row;
    row.reserve(parts.size());
    for (const auto& p : parts) row.push_back(parse_double(p));
    ds.rows.push_back(std::move(row));
  }
  if (!have_header)
    throw std::invalid_argument("dataset: missing header row");
  return ds;
}

void write_json(const Dataset& ds, std::ostream& out) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [key, value] : ds.metadata) meta[key] = value;
  j["metadata"] = std::move(meta);
  j["columns"] = ds.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : ds.rows) rows.push_back(row);
  j["rows"] = std::move(rows);
  out << j.dump(2) << "\n";
}

Dataset read_json(std::istream& in) {
  nlohmann::ordered_json j;
  in >> j;
  Dataset ds;
  for (const auto& [key, value] : j.at("metadata").items())
    ds.add_meta(key, value.get<std::string>());
  ds.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& row : j.at("rows"))
    ds.rows.push_back(row.get<std::vector<double>>());
  return ds;
}

}  // namespace rotorpair
