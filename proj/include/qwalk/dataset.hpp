#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace qwalk {

using Json = nlohmann::ordered_json;

using Cell = std::variant<double, std::int64_t, std::string>;

/// Tabular result of one CLI command plus the resolved configuration that
/// produced it.
struct Dataset {
  std::string command;
  Json config = Json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> summary;
  // 0 on success, 2 when a convergence scan hit its horizon.
  int exit_code = 0;
};

/// Shortest text that round-trips the double (17 significant digits);
/// non-finite values print as inf, -inf, nan.
std::string format_number(double v);

/// Commented header block (version, command, config, summary), one column
/// header row, then one line per row.
std::string to_csv(const Dataset& ds);

/// {"version", "command", "config", "columns", "records", "summary"};
/// non-finite numbers are emitted as the strings "inf", "-inf", "nan".
std::string to_json(const Dataset& ds);

}  // namespace qwalk
