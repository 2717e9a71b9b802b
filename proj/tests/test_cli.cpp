#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "xychain/cli.hpp"

using namespace xychain::cli;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "xychain");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

}  // namespace

TEST_CASE("grid and size lists") {
  const auto grid = parse_grid("-2:2:5").values();
  CHECK(grid == std::vector<double>{-2.0, -1.0, 0.0, 1.0, 2.0});
  CHECK(parse_grid("0:1:3").values().back() == 1.0);
  CHECK_THROWS(parse_grid("0:1"));
  CHECK_THROWS(parse_grid("0:1:1"));
  CHECK_THROWS(parse_grid("1:0:3"));
  CHECK(parse_n_list("18:24:2") == std::vector<int>{18, 20, 22, 24});
  CHECK(parse_n_list("4:6") == std::vector<int>{4, 5, 6});
  CHECK(parse_n_list("4,5,9") == std::vector<int>{4, 5, 9});
  CHECK(parse_n_list("7") == std::vector<int>{7});
  CHECK_THROWS(parse_n_list("a:b"));
  CHECK_THROWS(parse_n_list("6:4"));
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("spectrum command") {
  const auto r = invoke({"spectrum", "--n", "4", "--gamma", "0.333", "--g-grid", "-2:2:401"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  CHECK(rows.front() == "g,level_index,energy_density,sector,physical");
  CHECK(rows.size() == 1 + 401 * 32);
  CHECK(r.out.find('\r') == std::string::npos);

  const auto phys = invoke({"spectrum", "--n", "5", "--gamma", "0", "--g", "0.3", "--physical-only", "--max-levels", "3"});
  REQUIRE(phys.code == 0);
  CHECK(lines(phys.out).size() == 4);
  for (std::size_t i = 1; i < 4; ++i) CHECK(fields(lines(phys.out)[i])[4] == "1");

  CHECK(invoke({"spectrum", "--n", "1", "--g", "0"}).code == 2);
  CHECK(invoke({"spectrum", "--n", "30", "--g", "0"}).code == 2);
  CHECK(invoke({"spectrum", "--n", "4", "--gamma", "1.5"}).code == 2);
}

TEST_CASE("vacua command") {
  const double root = std::sqrt(1.0 - 1.0 / 9.0);
  const auto r = invoke({"vacua", "--n-list", "4,5,6", "--gamma", "0.3333333333333333", "--g",
                         format_double(root), "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["meta"]["command"] == "vacua");
  CHECK(doc["meta"]["version"] == kVersion);
  REQUIRE(doc["data"].size() == 3);
  for (const auto& row : doc["data"]) CHECK(std::abs(row["e_diff"].get<double>()) < 1e-10);

  const auto xx = invoke({"vacua", "--n", "8", "--gamma", "0", "--g-grid", "-1.2:1.2:2401", "--format", "json"});
  const auto data = nlohmann::json::parse(xx.out)["data"];
  int flips = 0;
  for (std::size_t i = 1; i < data.size(); ++i) {
    const int a = data[i - 1]["winner_sector"], b = data[i]["winner_sector"];
    if (a != 0 && b != 0 && a != b) ++flips;
  }
  CHECK(flips >= 7);
}

TEST_CASE("crossings command") {
  const auto r = invoke({"crossings", "--n", "8", "--gamma", "0"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 1 + 16);
  std::vector<double> closed;
  for (std::size_t i = 1; i <= 8; ++i) {
    CHECK(fields(rows[i])[2] == "closed_form");
    closed.push_back(std::stod(fields(rows[i])[1]));
  }
  CHECK(closed.front() == -1.0);
  CHECK(closed.back() == 1.0);
  for (int n = 0; n < 8; ++n) CHECK_THAT(closed[n], WithinAbs(-closed[7 - n], 1e-12));

  const auto bis = invoke({"crossings", "--n", "4", "--gamma", "0.3333333333333333"});
  REQUIRE(bis.code == 0);
  bool found = false;
  for (const auto& line : lines(bis.out)) {
    const auto f = fields(line);
    if (f[2] == "bisection" && std::abs(std::stod(f[1]) - 2.0 * std::sqrt(2.0) / 3.0) < 1e-10) found = true;
  }
  CHECK(found);
}

TEST_CASE("scaling command") {
  const auto d2 = invoke({"scaling", "--quantity", "d2_at_unity", "--gamma", "0.3333333333333333", "--n-list",
                          "18:320", "--format", "json"});
  REQUIRE(d2.code == 0);
  const auto doc = nlohmann::json::parse(d2.out);
  CHECK(doc["fit"]["model"] == "log_law");
  CHECK_THAT(doc["fit"]["coefficient"].get<double>(), WithinRel(-3.0 / std::numbers::pi, 0.10));
  CHECK(doc["meta"]["skipped_odd_n"].size() == 151);
  CHECK(doc["fit"].contains("asymptote_check"));

  const auto gap = invoke({"scaling", "--quantity", "gap_at_unity", "--gamma", "0.3333333333333333", "--format", "json"});
  CHECK_THAT(nlohmann::json::parse(gap.out)["fit"]["coefficient"].get<double>(),
             WithinRel(std::numbers::pi / 6.0, 0.05));

  const auto xx = invoke({"scaling", "--quantity", "xx_gap", "--ell", "3", "--format", "json"});
  CHECK_THAT(nlohmann::json::parse(xx.out)["fit"]["coefficient"].get<double>(),
             WithinRel(6.0 * std::numbers::pi * std::numbers::pi, 0.10));

  const auto jump = invoke({"scaling", "--quantity", "crossing_jump", "--format", "json"});
  CHECK(nlohmann::json::parse(jump.out)["fit"]["coefficient"].get<double>() == Catch::Approx(-2.0));

  CHECK(invoke({"scaling", "--quantity", "entropy"}).code == 2);
  CHECK(invoke({"scaling", "--quantity", "gap_at_unity", "--gamma", "0.3", "--n-list", "10,20,30"}).code == 2);
}

TEST_CASE("oracle-compare command") {
  const auto ok = invoke({"oracle-compare", "--n-list", "2:6"});
  CHECK(ok.code == 0);
  CHECK(lines(ok.out).size() == 1 + 5 * 3 * 8);

  const auto bad = invoke({"oracle-compare", "--n-list", "4:6", "--corrupt-gauge"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("worst offender") != std::string::npos);

  ::setenv("XYCHAIN_MAX_N", "5", 1);
  CHECK(invoke({"oracle-compare", "--n", "6", "--gamma", "0.5", "--g", "0.1"}).code == 2);
  ::unsetenv("XYCHAIN_MAX_N");
}

TEST_CASE("untested oracle sizes are flagged", "[.slow]") {
  const auto r = invoke({"oracle-compare", "--n", "13", "--gamma", "0.5", "--g", "0.3", "--format", "json"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["meta"]["untested_sizes"] == nlohmann::json::array({13}));
  CHECK(doc["data"][0]["tested"] == false);
}

TEST_CASE("derivative and xx-levels commands") {
  const auto d = invoke({"derivative", "--n", "6", "--gamma", "0", "--g-grid", "-1:1:5", "--format", "json"});
  REQUIRE(d.code == 0);
  const auto doc = nlohmann::json::parse(d.out);
  CHECK(doc["meta"]["nudged_points"].get<int>() >= 3);
  CHECK(doc["data"][0]["nudged"] == true);
  CHECK(doc["data"][0]["g"].get<double>() == -1.0 + 1e-9);

  const auto x = invoke({"xx-levels", "--n", "8", "--g-grid", "-2:2:11"});
  REQUIRE(x.code == 0);
  CHECK(lines(x.out).size() == 1 + 11 * 9);
}

TEST_CASE("config file and precedence") {
  const auto dir = std::filesystem::temp_directory_path() / "xychain_cli_test";
  std::filesystem::create_directories(dir);
  const auto cfg = dir / "run.ini";
  std::ofstream(cfg) << "n=5\ngamma=0.5\ng=0.25\n";
  const auto from_file = invoke({"vacua", "--config", cfg.string()});
  const auto explicit_flags = invoke({"vacua", "--n", "5", "--gamma", "0.5", "--g", "0.25"});
  CHECK(from_file.code == 0);
  CHECK(from_file.out == explicit_flags.out);
  const auto override_g = invoke({"vacua", "--config", cfg.string(), "--g", "0.75"});
  CHECK(fields(lines(override_g.out)[1])[1] == "0.75");
}

TEST_CASE("determinism and file output") {
  const auto dir = std::filesystem::temp_directory_path() / "xychain_cli_test";
  std::filesystem::create_directories(dir);
  const auto a = (dir / "a.csv").string(), b = (dir / "b.csv").string();
  const std::vector<std::string> args{"vacua", "--n", "7", "--gamma", "0.25", "--g-grid", "-2:2:301"};
  auto first = args, second = args;
  first.insert(first.end(), {"--out", a});
  second.insert(second.end(), {"--out", b});
  REQUIRE(invoke(first).code == 0);
  REQUIRE(invoke(second).code == 0);
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) == invoke(args).out);
}

TEST_CASE("usage errors") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"nonsense"}).code == 2);
  CHECK(invoke({"vacua", "--format", "xml"}).code == 2);
  CHECK(invoke({"vacua", "--g-grid", "0:1"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("process exit codes") {
  const std::string tool = XYCHAIN_TOOL_PATH;
  auto status = [](const std::string& cmd) {
    const int raw = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status(tool + " vacua --n 4 --gamma 0.5 --g 0.1") == 0);
  CHECK(status(tool + " spectrum --n 1") == 2);
  CHECK(status(tool + " oracle-compare --n-list 3:4 --corrupt-gauge") == 1);
}
