#include <charconv>
#include <cmath>
#include <sstream>

#include "xychain/cli.hpp"
#include "xychain/errors.hpp"

namespace xychain::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream stream(text);
  while (std::getline(stream, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

template <typename T>
T parse_number(const std::string& text, const char* what) {
  T value{};
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw ParameterError(std::string("cannot parse ") + what + " from '" + text + "'");
  }
  return value;
}

}  // namespace

std::vector<double> GridSpec::values() const {
  std::vector<double> out(static_cast<std::size_t>(count));
  if (count == 1) {
    out[0] = start;
    return out;
  }
  for (int i = 0; i < count; ++i) {
    out[i] = (i == count - 1) ? stop : start + (stop - start) * static_cast<double>(i) / (count - 1);
  }
  return out;
}

GridSpec parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ParameterError("g-grid must be start:stop:count, got '" + text + "'");
  GridSpec grid{parse_number<double>(parts[0], "grid start"), parse_number<double>(parts[1], "grid stop"),
                parse_number<int>(parts[2], "grid count")};
  if (!std::isfinite(grid.start) || !std::isfinite(grid.stop)) throw ParameterError("grid bounds must be finite");
  if (grid.count < 2) throw ParameterError("grid count must be >= 2");
  if (grid.stop < grid.start) throw ParameterError("grid stop must not be below start");
  return grid;
}

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> sizes;
  if (text.find(',') != std::string::npos) {
    for (const auto& part : split(text, ',')) sizes.push_back(parse_number<int>(part, "size"));
  } else if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() < 2 || parts.size() > 3) throw ParameterError("n-list range must be a:b or a:b:step");
    const int a = parse_number<int>(parts[0], "size");
    const int b = parse_number<int>(parts[1], "size");
    const int step = parts.size() == 3 ? parse_number<int>(parts[2], "step") : 1;
    if (step <= 0) throw ParameterError("n-list step must be positive");
    if (b < a) throw ParameterError("n-list range is empty");
    for (int n = a; n <= b; n += step) sizes.push_back(n);
  } else {
    sizes.push_back(parse_number<int>(text, "size"));
  }
  if (sizes.empty()) throw ParameterError("n-list is empty");
  return sizes;
}

std::vector<double> parse_value_list(const std::string& text) {
  std::vector<double> values;
  for (const auto& part : split(text, ',')) values.push_back(parse_number<double>(part, "value"));
  if (values.empty()) throw ParameterError("value list is empty");
  return values;
}

std::vector<double> RunConfig::g_values() const {
  if (g_grid) return g_grid->values();
  return {field_g};
}

std::vector<int> RunConfig::sizes() const {
  if (!n_list.empty()) return n_list;
  return {n_sites};
}

}  // namespace xychain::cli
