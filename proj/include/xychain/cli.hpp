#pragma once

// Command-line front end: run configuration, tabular output and the
// individual commands. Each command is a pure function from a RunConfig to a
// Report; `run` adds argument parsing, output and the exit-code contract.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace xychain::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kSuccess = 0, kMismatch = 1, kUsageError = 2 };

/// Closed interval [start, stop] sampled at `count` points, endpoints included.
struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;

  std::vector<double> values() const;
};

/// "start:stop:count".
GridSpec parse_grid(const std::string& text);
/// "a:b" or "a:b:step" (inclusive) or "a,b,c" or a single "a".
std::vector<int> parse_n_list(const std::string& text);
/// "x,y,z" of doubles.
std::vector<double> parse_value_list(const std::string& text);

enum class OutputFormat { csv, json };

struct RunConfig {
  std::string command;
  int n_sites = 4;
  double gamma = 0.0;
  double field_g = 0.0;
  double coupling_j = 1.0;
  std::optional<GridSpec> g_grid;
  std::vector<int> n_list;
  std::vector<double> gamma_list;  ///< oracle-compare only
  std::optional<int> ell;
  std::optional<int> index;
  std::string quantity;
  double step = 1e-4;
  std::optional<std::size_t> max_levels;
  bool physical_only = false;
  bool corrupt_gauge = false;  ///< test hook: break the pair constraint of the gauge
  bool n_given = false;  // explicit --n / --gamma / --g
  bool gamma_given = false;
  bool g_given = false;
  OutputFormat format = OutputFormat::csv;
  std::string output_path;

  /// Grid values if a grid was given, else {field_g}.
  std::vector<double> g_values() const;
  /// n_list if given, else {n_sites}.
  std::vector<int> sizes() const;
};

using Cell = std::variant<std::int64_t, double, std::string, bool>;

class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<Cell> row);
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

  /// Header line then one line per row; doubles as %.17g, LF endings.
  void write_csv(std::ostream& out) const;
  /// Array of row objects keyed by column name.
  nlohmann::ordered_json to_json() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

std::string format_double(double value);

struct Report {
  explicit Report(Table t) : table(std::move(t)) {}

  Table table;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();  ///< command-specific metadata
  std::optional<nlohmann::ordered_json> fit;
  int exit_code = kSuccess;
  std::string message;  ///< printed to stderr when nonempty
};

Report cmd_spectrum(const RunConfig& config);
Report cmd_vacua(const RunConfig& config);
Report cmd_crossings(const RunConfig& config);
Report cmd_scaling(const RunConfig& config);
Report cmd_oracle_compare(const RunConfig& config);
Report cmd_derivative(const RunConfig& config);
Report cmd_xx_levels(const RunConfig& config);

Report dispatch(const RunConfig& config);

/// Serialize a report in the configured format.
void write_report(const RunConfig& config, const Report& report, std::ostream& out);

/// Full program: parse, run, write. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace xychain::cli
