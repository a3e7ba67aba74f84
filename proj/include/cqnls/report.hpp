#ifndef CQNLS_REPORT_HPP
#define CQNLS_REPORT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cqnls {

inline constexpr const char* kVersion = "1.0.0";

/// One report value. Reals are written with 17 significant digits.
using Cell = std::variant<double, std::int64_t, std::string, bool>;

std::string format_cell(const Cell& c);

struct Report {
  std::string subcommand;
  std::vector<std::pair<std::string, Cell>> config;   // resolved configuration
  std::vector<std::pair<std::string, Cell>> summary;  // scalar results
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> failures;  // violated assertions, if any

  void add_config(std::string key, Cell value);
  void add_summary(std::string key, Cell value);
  /// Records a named check in the summary and remembers failures.
  void check(const std::string& name, bool ok, const std::string& detail = {});
  void add_row(std::vector<Cell> row);
};

/// `#` metadata lines (version, subcommand, config, summary, status), then the
/// header line, then one line per row.
void write_csv(std::ostream& os, const Report& r);

/// Single JSON object with the same content; records are flat objects keyed
/// by column name.
void write_json(std::ostream& os, const Report& r);

}  // namespace cqnls

#endif  // CQNLS_REPORT_HPP
