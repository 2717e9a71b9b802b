#include <cstdio>
#include <ostream>

#include "xychain/cli.hpp"
#include "xychain/errors.hpp"

namespace xychain::cli {

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw ConsistencyError("row width does not match the header");
  rows_.push_back(std::move(row));
}

namespace {

struct CsvCell {
  std::string operator()(std::int64_t v) const { return std::to_string(v); }
  std::string operator()(double v) const { return format_double(v); }
  std::string operator()(const std::string& v) const { return v; }
  std::string operator()(bool v) const { return v ? "1" : "0"; }
};

}  // namespace

void Table::write_csv(std::ostream& out) const {
  for (std::size_t c = 0; c < columns_.size(); ++c) out << (c ? "," : "") << columns_[c];
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << std::visit(CsvCell{}, row[c]);
    out << '\n';
  }
}

nlohmann::ordered_json Table::to_json() const {
  auto data = nlohmann::ordered_json::array();
  for (const auto& row : rows_) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::visit([&](const auto& v) { obj[columns_[c]] = v; }, row[c]);
    }
    data.push_back(std::move(obj));
  }
  return data;
}

}  // namespace xychain::cli
