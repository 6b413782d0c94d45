// Batch driver for closed-loop load-frequency experiments: simulate one
// scenario, compare controllers on it, run the membership-shape optimizer,
// or recompute metrics from a stored trace.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hydrolfc/errors.hpp"
#include "hydrolfc/harness.hpp"
#include "hydrolfc/io.hpp"
#include "hydrolfc/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitDivergence = 2;
constexpr int kExitIo = 3;

struct CommonOptions {
  std::string scenario_file;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

hydrolfc::harness::Scenario load(const CommonOptions& opt) {
  auto sc = hydrolfc::harness::load_scenario(opt.scenario_file);
  if (opt.seed) sc.seed = *opt.seed;
  if (opt.threads) sc.threads = *opt.threads;
  return sc;
}

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("scenario", opt.scenario_file, "Scenario JSON file")
      ->required();
  cmd->add_option("--out", opt.out_dir, "Output directory");
  cmd->add_option("--seed", opt.seed, "Override the scenario seed");
  cmd->add_option("--threads", opt.threads,
                  "Fitness evaluation workers (0 = hardware)");
}

int run_simulate(const CommonOptions& opt) {
  const auto sc = load(opt);
  const auto artifacts = hydrolfc::harness::run_scenario(sc);
  hydrolfc::harness::write_run_artifacts(artifacts, opt.out_dir);
  std::cout << "controller: "
            << hydrolfc::harness::controller_name(artifacts.controller)
            << "\niae_hz_s: " << artifacts.report.iae_hz_s
            << "\nise_hz2_s: " << artifacts.report.ise_hz2_s
            << "\nitae_hz_s2: " << artifacts.report.itae_hz_s2
            << "\nartifacts: " << opt.out_dir << std::endl;
  return artifacts.diverged ? kExitDivergence : kExitOk;
}

int run_compare(const CommonOptions& opt, const std::string& controllers) {
  const auto sc = load(opt);
  std::vector<hydrolfc::harness::ControllerKind> kinds;
  std::size_t start = 0;
  while (start <= controllers.size()) {
    const auto pos = controllers.find(',', start);
    const std::string name =
        controllers.substr(start, pos == std::string::npos ? std::string::npos
                                                           : pos - start);
    if (!name.empty())
      kinds.push_back(hydrolfc::harness::controller_from_name(name));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  const auto artifacts = hydrolfc::harness::run_comparison(sc, kinds);
  hydrolfc::harness::write_comparison_artifacts(artifacts, opt.out_dir);
  std::cout << hydrolfc::io::comparison_to_text(artifacts.table)
            << "artifacts: " << opt.out_dir << std::endl;
  for (const auto& run : artifacts.runs) {
    if (run.diverged) return kExitDivergence;
  }
  return kExitOk;
}

int run_optimize(const CommonOptions& opt, std::optional<int> generations,
                 std::optional<double> screen_ratio) {
  auto sc = load(opt);
  if (generations) sc.ga.config.max_generations = *generations;
  if (screen_ratio) sc.ga.screen_ratio = *screen_ratio;
  sc.validate();
  auto kind = sc.controller;
  if (!hydrolfc::harness::controller_is_tuned(kind))
    kind = hydrolfc::harness::ControllerKind::kFuzzyPdGaDsnn;
  const auto result = hydrolfc::harness::optimize(sc, kind);
  hydrolfc::harness::write_optimize_artifacts(sc, result, opt.out_dir);
  std::cout << "best_j: " << result.best.j
            << "\ntrue_evaluations: " << result.true_evaluations
            << "\nartifacts: " << opt.out_dir << std::endl;
  return kExitOk;
}

int run_metrics(const std::string& trace_file, double settle_band,
                double tail_fraction, const std::string& out_file) {
  const auto trace = hydrolfc::io::load_trace_csv(trace_file);
  hydrolfc::metrics::MetricOptions options;
  options.settle_band_hz = settle_band;
  options.tail_fraction = tail_fraction;
  const auto report = hydrolfc::metrics::compute_report(trace, options);
  const auto text = hydrolfc::io::report_to_json(report, std::nullopt, false);
  if (out_file.empty() || out_file == "-") {
    std::cout << text;
  } else {
    hydrolfc::io::atomic_write(out_file, text);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Islanded small-hydro load-frequency control workbench"};
  app.set_version_flag("--version", std::string(hydrolfc::kVersion));
  app.require_subcommand(1);

  CommonOptions sim_opt;
  auto* simulate = app.add_subcommand(
      "simulate", "Run one scenario and write its artifacts");
  add_common(simulate, sim_opt);

  CommonOptions cmp_opt;
  std::string controllers;
  auto* compare = app.add_subcommand(
      "compare", "Run several controllers on one scenario");
  add_common(compare, cmp_opt);
  compare
      ->add_option("--controllers", controllers,
                   "Comma-separated controller list")
      ->required();

  CommonOptions opt_opt;
  std::optional<int> generations;
  std::optional<double> screen_ratio;
  auto* optimize = app.add_subcommand(
      "optimize", "Run the membership-shape optimizer for a scenario");
  add_common(optimize, opt_opt);
  optimize->add_option("--generations", generations,
                       "Override the generation budget");
  optimize->add_option("--screen-ratio", screen_ratio,
                       "Fraction of offspring simulated per generation");

  std::string trace_file;
  std::string metrics_out;
  double settle_band = 0.05;
  double tail_fraction = 0.1;
  auto* metrics_cmd = app.add_subcommand(
      "metrics", "Compute the performance report of a stored trace");
  metrics_cmd->add_option("trace", trace_file, "trace.csv file")->required();
  metrics_cmd->add_option("--settle-band", settle_band,
                          "Settling band in Hz");
  metrics_cmd->add_option("--tail-fraction", tail_fraction,
                          "Trailing fraction used for the steady-state error");
  metrics_cmd->add_option("--out", metrics_out,
                          "Report file ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (simulate->parsed()) return run_simulate(sim_opt);
    if (compare->parsed()) return run_compare(cmp_opt, controllers);
    if (optimize->parsed())
      return run_optimize(opt_opt, generations, screen_ratio);
    if (metrics_cmd->parsed())
      return run_metrics(trace_file, settle_band, tail_fraction, metrics_out);
  } catch (const hydrolfc::IoError& e) {
    std::cerr << "io error: " << e.what() << std::endl;
    return kExitIo;
  } catch (const hydrolfc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << std::endl;
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitConfig;
  }
  return kExitConfig;
}
