// Command-line front end. Talks to the model only through the C API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dmec/dmec.h"

namespace {

enum Exit { kOk = 0, kIo = 1, kConfig = 2, kUnstable = 3, kValidation = 4 };

int exit_code(dmec_status s) {
  switch (s) {
    case DMEC_OK: return kOk;
    case DMEC_ERR_CONFIG:
    case DMEC_ERR_INVALID_ARGUMENT: return kConfig;
    case DMEC_ERR_UNSTABLE: return kUnstable;
    case DMEC_ERR_VALIDATION: return kValidation;
    default: return kIo;
  }
}

int report_failure(dmec_status s, const char* context) {
  std::cerr << "error: " << context << ": " << dmec_last_error() << "\n";
  return exit_code(s);
}

struct ScenarioDeleter {
  void operator()(dmec_scenario* s) const { dmec_scenario_free(s); }
};
using Scenario = std::unique_ptr<dmec_scenario, ScenarioDeleter>;

struct StringDeleter {
  void operator()(char* s) const { dmec_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

dmec_status open_scenario(const std::string& path, Scenario& out) {
  dmec_scenario* raw = nullptr;
  const auto s = path.empty() ? dmec_scenario_default(&raw) : dmec_scenario_from_file(path.c_str(), &raw);
  out.reset(raw);
  return s;
}

bool write_file(const std::string& path, const char* text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

int cmd_analytic(const std::string& config) {
  Scenario scenario;
  if (auto s = open_scenario(config, scenario); s != DMEC_OK) return report_failure(s, "config");
  char* raw = nullptr;
  const auto s = dmec_analytic_report(scenario.get(), &raw);
  OwnedString text(raw);
  if (s != DMEC_OK) return report_failure(s, "analytic");
  std::cout << text.get();
  return kOk;
}

int cmd_sweep(const std::string& config, std::optional<int> figure, const std::string& axis,
              const std::vector<double>& values, const std::string& out_path) {
  Scenario scenario;
  if (auto s = open_scenario(config, scenario); s != DMEC_OK) return report_failure(s, "config");
  char* raw = nullptr;
  dmec_status s;
  if (figure) {
    s = dmec_sweep_figure(scenario.get(), *figure, &raw);
  } else {
    s = dmec_sweep_axis(scenario.get(), axis.c_str(), values.data(), values.size(), &raw);
  }
  OwnedString csv(raw);
  if (s != DMEC_OK) return report_failure(s, "sweep");
  return write_file(out_path, csv.get()) ? kOk : kIo;
}

int cmd_validate(const std::string& config, std::uint64_t trials, std::uint64_t seed, const std::string& out_path) {
  Scenario scenario;
  if (auto s = open_scenario(config, scenario); s != DMEC_OK) return report_failure(s, "config");
  dmec_validation_options opts{trials, seed};
  char* raw_csv = nullptr;
  char* raw_summary = nullptr;
  const auto s = dmec_validate(scenario.get(), &opts, &raw_csv, &raw_summary);
  OwnedString csv(raw_csv);
  OwnedString summary(raw_summary);
  if (csv && !out_path.empty() && !write_file(out_path, csv.get())) return kIo;
  if (summary) std::cout << summary.get() << "\n";
  if (s != DMEC_OK && s != DMEC_ERR_VALIDATION) return report_failure(s, "validate");
  return exit_code(s);
}

int cmd_plot(const std::string& in_path, const std::string& out_path) {
  std::ifstream in(in_path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read '" << in_path << "'\n";
    return kIo;
  }
  std::stringstream text;
  text << in.rdbuf();
  char* raw = nullptr;
  const auto s = dmec_plot(text.str().c_str(), &raw);
  OwnedString svg(raw);
  if (s != DMEC_OK) return report_failure(s, "plot");
  return write_file(out_path, svg.get()) ? kOk : kIo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coupled vs decoupled access MEC offloading latency model"};
  app.require_subcommand(1);
  app.set_version_flag("--version", dmec_version());

  std::string config;
  auto* analytic = app.add_subcommand("analytic", "Closed-form association, coverage and latency report");
  analytic->add_option("--config", config, "Scenario file (defaults when omitted)");

  auto* sweep = app.add_subcommand("sweep", "Parameter sweep to CSV");
  int figure_number = 0;
  std::string axis;
  std::vector<double> values;
  std::string out_path;
  sweep->add_option("--config", config, "Scenario file (defaults when omitted)");
  auto* fig_opt = sweep->add_option("--figure", figure_number, "Figure grid: 2, 3, 4 or 5");
  auto* axis_opt = sweep->add_option("--axis", axis, "Config key to sweep");
  auto* values_opt = sweep->add_option("--values", values, "Comma-separated values in config units")->delimiter(',');
  sweep->add_option("--out", out_path, "Output CSV")->required();
  fig_opt->excludes(axis_opt);
  axis_opt->needs(values_opt);
  values_opt->needs(axis_opt);

  auto* validate = app.add_subcommand("validate", "Closed forms vs Monte Carlo");
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  validate->add_option("--config", config, "Scenario file (defaults when omitted)");
  validate->add_option("--trials", trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  validate->add_option("--seed", seed, "Base seed");
  validate->add_option("--out", out_path, "Report CSV");

  auto* plot = app.add_subcommand("plot", "SVG chart from a sweep CSV");
  std::string in_path;
  plot->add_option("--in", in_path, "Sweep CSV")->required();
  plot->add_option("--out", out_path, "Output SVG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfig;
  }

  if (analytic->parsed()) return cmd_analytic(config);
  if (sweep->parsed()) {
    if (fig_opt->count() == 0 && axis_opt->count() == 0) {
      std::cerr << "error: sweep needs --figure or --axis/--values\n";
      return kConfig;
    }
    return cmd_sweep(config, fig_opt->count() ? std::optional<int>(figure_number) : std::nullopt, axis, values,
                     out_path);
  }
  if (validate->parsed()) return cmd_validate(config, trials, seed, out_path);
  return cmd_plot(in_path, out_path);
}
