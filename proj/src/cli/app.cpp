#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "xychain/cli.hpp"
#include "xychain/errors.hpp"

namespace xychain::cli {

namespace {

nlohmann::ordered_json params_json(const RunConfig& c) {
  nlohmann::ordered_json p = nlohmann::ordered_json::object();
  p["n"] = c.n_sites;
  p["gamma"] = c.gamma;
  p["g"] = c.field_g;
  p["j"] = c.coupling_j;
  if (c.g_grid) p["g_grid"] = {c.g_grid->start, c.g_grid->stop, c.g_grid->count};
  if (!c.n_list.empty()) p["n_list"] = c.n_list;
  if (!c.gamma_list.empty()) p["gamma_list"] = c.gamma_list;
  return p;
}

}  // namespace

void write_report(const RunConfig& config, const Report& report, std::ostream& out) {
  if (config.format == OutputFormat::csv) {
    report.table.write_csv(out);
    return;
  }
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  meta["command"] = config.command;
  meta["params"] = params_json(config);
  meta["version"] = kVersion;
  for (const auto& [key, value] : report.meta.items()) meta[key] = value;
  doc["meta"] = std::move(meta);
  doc["data"] = report.table.to_json();
  if (report.fit) doc["fit"] = *report.fit;
  out << doc.dump(2) << '\n';
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral toolkit for the XY spin ring", "xychain"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "flat key=value file; command-line flags win");
  app.require_subcommand(1, 1);

  RunConfig c;
  std::string grid, n_list, gamma_list, format = "csv";
  std::size_t max_levels = 0;
  auto* n_opt = app.add_option("--n", c.n_sites, "number of sites");
  auto* gamma_opt = app.add_option("--gamma", c.gamma, "anisotropy in [0, 1]");
  auto* g_opt = app.add_option("--g", c.field_g, "transverse field");
  app.add_option("--j", c.coupling_j, "coupling J > 0");
  auto* grid_opt = app.add_option("--g-grid", grid, "start:stop:count");
  app.add_option("--n-list", n_list, "a:b[:step] or a,b,c");
  app.add_option("--gamma-list", gamma_list, "x,y,z (oracle-compare)");
  app.add_option("--ell", c.ell, "forerunner index for xx_gap");
  app.add_option("--index", c.index, "crossing index for crossing_jump");
  app.add_option("--quantity", c.quantity, "d2_at_unity | gap_at_unity | xx_gap | crossing_jump");
  app.add_option("--step", c.step, "finite-difference step");
  auto* max_opt = app.add_option("--max-levels", max_levels, "keep the lowest levels per g");
  app.add_flag("--physical-only", c.physical_only, "drop unphysical levels");
  app.add_flag("--corrupt-gauge", c.corrupt_gauge)->group("");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", c.output_path, "output file (default stdout)");

  const std::pair<const char*, const char*> commands[] = {
      {"spectrum", "levels of both sectors over a g-grid"},
      {"vacua", "sector vacua, their difference and the winner"},
      {"crossings", "level crossings / vacua crossings"},
      {"scaling", "finite-size scaling of a gap quantity with a fit"},
      {"oracle-compare", "analytic vs exact-diagonalization spectra"},
      {"derivative", "second differences of the vacua over a g-grid"},
      {"xx-levels", "lowest n-fermion levels of the XX chain"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    c.command = app.get_subcommands().front()->get_name();
    c.n_given = n_opt->count() > 0;
    c.gamma_given = gamma_opt->count() > 0;
    c.g_given = g_opt->count() > 0;
    if (grid_opt->count() > 0) c.g_grid = parse_grid(grid);
    if (!n_list.empty()) c.n_list = parse_n_list(n_list);
    if (!gamma_list.empty()) c.gamma_list = parse_value_list(gamma_list);
    if (max_opt->count() > 0) c.max_levels = max_levels;
    c.format = format == "json" ? OutputFormat::json : OutputFormat::csv;

    const Report report = dispatch(c);
    std::ostringstream buffer;
    write_report(c, report, buffer);
    if (c.output_path.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(c.output_path, std::ios::binary);
      if (!file) throw ParameterError("cannot open output file '" + c.output_path + "'");
      file << buffer.str();
    }
    if (!report.message.empty()) err << report.message << '\n';
    return report.exit_code;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kMismatch;
  }
  return kUsageError;
}

}  // namespace xychain::cli
