#include "cqnls/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "cqnls/error.hpp"

namespace cqnls {

namespace {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string json_value(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    return std::isfinite(*d) ? format_real(*d) : "null";
  }
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return nlohmann::json(std::get<std::string>(c)).dump();
}

std::string json_key(const std::string& k) { return nlohmann::json(k).dump(); }

void json_object(std::ostream& os, const std::vector<std::pair<std::string, Cell>>& kv,
                 const char* indent) {
  os << "{";
  for (std::size_t i = 0; i < kv.size(); ++i) {
    os << (i ? "," : "") << "\n" << indent << "  " << json_key(kv[i].first) << ": "
       << json_value(kv[i].second);
  }
  os << (kv.empty() ? "" : "\n") << (kv.empty() ? "" : indent) << "}";
}

}  // namespace

std::string format_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return std::get<std::string>(c);
}

void Report::add_config(std::string key, Cell value) {
  config.emplace_back(std::move(key), std::move(value));
}

void Report::add_summary(std::string key, Cell value) {
  summary.emplace_back(std::move(key), std::move(value));
}

void Report::check(const std::string& name, bool ok, const std::string& detail) {
  summary.emplace_back("check." + name, ok);
  if (!ok) failures.push_back(detail.empty() ? name : name + ": " + detail);
}

void Report::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw ContractError("report row has " + std::to_string(row.size()) +
                        " cells, expected " + std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

void write_csv(std::ostream& os, const Report& r) {
  os << "# cqnls " << kVersion << "\n";
  os << "# subcommand=" << r.subcommand << "\n";
  for (const auto& [k, v] : r.config) os << "# config." << k << "=" << format_cell(v) << "\n";
  for (const auto& [k, v] : r.summary) os << "# " << k << "=" << format_cell(v) << "\n";
  os << "# status=" << (r.failures.empty() ? "pass" : "fail") << "\n";
  for (const auto& f : r.failures) os << "# failure=" << f << "\n";
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    os << (i ? "," : "") << csv_field(r.columns[i]);
  }
  os << "\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << csv_field(format_cell(row[i]));
    }
    os << "\n";
  }
}

void write_json(std::ostream& os, const Report& r) {
  os << "{\n";
  os << "  \"version\": " << json_key(kVersion) << ",\n";
  os << "  \"subcommand\": " << json_key(r.subcommand) << ",\n";
  os << "  \"config\": ";
  json_object(os, r.config, "  ");
  os << ",\n  \"summary\": ";
  json_object(os, r.summary, "  ");
  os << ",\n  \"status\": " << json_key(r.failures.empty() ? "pass" : "fail") << ",\n";
  os << "  \"failures\": [";
  for (std::size_t i = 0; i < r.failures.size(); ++i) {
    os << (i ? ", " : "") << json_key(r.failures[i]);
  }
  os << "],\n  \"columns\": [";
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    os << (i ? ", " : "") << json_key(r.columns[i]);
  }
  os << "],\n  \"records\": [";
  for (std::size_t n = 0; n < r.rows.size(); ++n) {
    os << (n ? "," : "") << "\n    {";
    for (std::size_t i = 0; i < r.columns.size(); ++i) {
      os << (i ? ", " : "") << json_key(r.columns[i]) << ": " << json_value(r.rows[n][i]);
    }
    os << "}";
  }
  os << (r.rows.empty() ? "" : "\n  ") << "]\n}\n";
}

}  // namespace cqnls
