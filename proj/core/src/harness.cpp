#include "hydrolfc/harness.hpp"

#include <utility>

#include <json.hpp>

#include "hydrolfc/errors.hpp"
#include "hydrolfc/io.hpp"
#include "hydrolfc/version.hpp"

namespace hydrolfc::harness {

namespace {

using nlohmann::json;

std::string make_manifest(const Scenario& sc, const std::string& command,
                          ControllerKind kind) {
  Scenario echo = sc;
  echo.controller = kind;
  json manifest;
  manifest["version"] = std::string(kVersion);
  manifest["command"] = command;
  manifest["controller"] = controller_name(kind);
  manifest["scenario"] = json::parse(scenario_to_json(echo));
  return manifest.dump(2) + "\n";
}

json genes_to_json(const optim::FitnessRecord& best) {
  json j;
  j["genes"] = best.chromosome.genes;
  j["j"] = best.j;
  j["evaluated_by"] = best.evaluated_by == optim::EvalSource::kSimulation
                          ? "simulation"
                          : "surrogate";
  j["diverged"] = best.diverged;
  return j;
}

}  // namespace

optim::FitnessValue fitness(const Scenario& sc, const optim::Chromosome& c) {
  const auto objective =
      sim::make_fuzzy_ise_objective(sc.problem(), sc.scales, sc.fuzzy_gains);
  return objective(c);
}

optim::GaResult optimize(const Scenario& sc, ControllerKind kind) {
  const auto objective =
      sim::make_fuzzy_ise_objective(sc.problem(), sc.scales, sc.fuzzy_gains);
  const optim::GaConfig cfg = sc.ga_config();
  if (kind == ControllerKind::kFuzzyPdGa) return optim::ga_run(cfg, objective);
  return optim::ga_dsnn_run(cfg, objective, sc.ga.screen_ratio,
                            sc.ga.surrogate);
}

RunArtifacts run_scenario(const Scenario& sc) {
  return run_scenario(sc, sc.controller);
}

RunArtifacts run_scenario(const Scenario& sc, ControllerKind kind) {
  sc.validate();

  RunArtifacts artifacts;
  artifacts.controller = kind;
  artifacts.genes_used = sc.genes;
  if (controller_is_tuned(kind)) {
    artifacts.optimizer = optimize(sc, kind);
    artifacts.genes_used = artifacts.optimizer->best.chromosome;
  }

  auto outcome = sim::run_closed_loop(
      sc.problem(), sc.make_controller(kind, artifacts.genes_used));
  artifacts.diverged = outcome.diverged;
  artifacts.report = metrics::compute_report(outcome.trace, sc.metric_options);
  artifacts.efficiency =
      optim::efficiency(outcome.trace, plant::turbine_power_kw(sc.turbine));
  artifacts.trace = std::move(outcome.trace);
  artifacts.manifest_json = make_manifest(sc, "simulate", kind);
  return artifacts;
}

ComparisonArtifacts run_comparison(const Scenario& base,
                                   const std::vector<ControllerKind>& kinds) {
  if (kinds.size() < 2)
    throw ConfigError("comparison needs at least two controllers");

  ComparisonArtifacts artifacts;
  std::vector<metrics::NamedReport> reports;
  for (ControllerKind kind : kinds) {
    artifacts.runs.push_back(run_scenario(base, kind));
    reports.push_back({controller_name(kind), artifacts.runs.back().report});
  }
  artifacts.table = metrics::compare_reports(reports);

  json manifest;
  manifest["version"] = std::string(kVersion);
  manifest["command"] = "compare";
  json names = json::array();
  for (ControllerKind kind : kinds) names.push_back(controller_name(kind));
  manifest["controllers"] = std::move(names);
  manifest["scenario"] = json::parse(scenario_to_json(base));
  artifacts.manifest_json = manifest.dump(2) + "\n";
  return artifacts;
}

void write_run_artifacts(const RunArtifacts& artifacts,
                         const std::filesystem::path& dir) {
  io::atomic_write(dir / "trace.csv", io::trace_to_csv(artifacts.trace));
  io::atomic_write(dir / "report.json",
                   io::report_to_json(artifacts.report, artifacts.efficiency,
                                      artifacts.diverged));
  io::atomic_write(dir / "manifest.json", artifacts.manifest_json);
  io::atomic_write(
      dir / "plot.svg",
      io::render_line_plot_svg(
          std::string("Frequency deviation, ") +
              controller_name(artifacts.controller),
          "time [s]", "frequency deviation [Hz]",
          {{controller_name(artifacts.controller), artifacts.trace.t_s,
            artifacts.trace.f_err_hz}}));
  if (artifacts.optimizer) {
    io::atomic_write(dir / "ga_log.csv",
                     io::ga_log_to_csv(artifacts.optimizer->history));
    io::atomic_write(dir / "best_genes.json",
                     genes_to_json(artifacts.optimizer->best).dump(2) + "\n");
  }
}

void write_comparison_artifacts(const ComparisonArtifacts& artifacts,
                                const std::filesystem::path& dir) {
  io::atomic_write(dir / "comparison.csv",
                   io::comparison_to_csv(artifacts.table));
  io::atomic_write(dir / "comparison.txt",
                   io::comparison_to_text(artifacts.table));
  io::atomic_write(dir / "manifest.json", artifacts.manifest_json);

  std::vector<io::PlotSeries> series;
  for (const auto& run : artifacts.runs) {
    series.push_back({controller_name(run.controller), run.trace.t_s,
                      run.trace.f_err_hz});
  }
  io::atomic_write(dir / "plot.svg",
                   io::render_line_plot_svg("Frequency deviation comparison",
                                            "time [s]",
                                            "frequency deviation [Hz]",
                                            series));
  for (const auto& run : artifacts.runs) {
    write_run_artifacts(run, dir / "runs" / controller_name(run.controller));
  }
}

void write_optimize_artifacts(const Scenario& sc,
                              const optim::GaResult& result,
                              const std::filesystem::path& dir) {
  io::atomic_write(dir / "ga_log.csv", io::ga_log_to_csv(result.history));
  io::atomic_write(dir / "best_genes.json",
                   genes_to_json(result.best).dump(2) + "\n");
  ControllerKind kind = sc.controller;
  if (!controller_is_tuned(kind)) kind = ControllerKind::kFuzzyPdGaDsnn;
  io::atomic_write(dir / "manifest.json", make_manifest(sc, "optimize", kind));
}

}  // namespace hydrolfc::harness
