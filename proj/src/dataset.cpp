#include "qwalk/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "qwalk/version.hpp"

namespace qwalk {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

Json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return format_number(*d);
    return *d;
  }
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  return std::get<std::string>(c);
}

}  // namespace

std::string to_csv(const Dataset& ds) {
  std::ostringstream os;
  os << "# qwalk " << kVersion << "\n";
  os << "# command: " << ds.command << "\n";
  os << "# config: " << ds.config.dump() << "\n";
  for (const auto& line : ds.summary) os << "# summary: " << line << "\n";
  for (std::size_t i = 0; i < ds.columns.size(); ++i) {
    os << (i ? "," : "") << ds.columns[i];
  }
  os << "\n";
  for (const auto& row : ds.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << "\n";
  }
  return os.str();
}

std::string to_json(const Dataset& ds) {
  Json doc;
  doc["version"] = std::string(kVersion);
  doc["command"] = ds.command;
  doc["config"] = ds.config;
  doc["columns"] = ds.columns;
  Json records = Json::array();
  for (const auto& row : ds.rows) {
    Json rec = Json::object();
    for (std::size_t i = 0; i < row.size() && i < ds.columns.size(); ++i) {
      rec[ds.columns[i]] = cell_json(row[i]);
    }
    records.push_back(std::move(rec));
  }
  doc["records"] = std::move(records);
  doc["summary"] = ds.summary;
  return doc.dump(2) + "\n";
}

}  // namespace qwalk
