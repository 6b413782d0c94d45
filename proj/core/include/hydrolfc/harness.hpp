#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hydrolfc/scenario.hpp"

namespace hydrolfc::harness {

// Objective value of a chromosome on a scenario: integral of the squared
// frequency error of the closed loop under the fuzzy PD controller built
// from the chromosome; divergent runs return the configured penalty.
optim::FitnessValue fitness(const Scenario& sc, const optim::Chromosome& c);

// Runs the membership-shape search configured in the scenario, plain GA or
// surrogate-screened depending on `kind`.
optim::GaResult optimize(const Scenario& sc, ControllerKind kind);

struct RunArtifacts {
  ControllerKind controller = ControllerKind::kPd;
  metrics::SimTrace trace;
  metrics::MetricReport report;
  bool diverged = false;
  double efficiency = 0.0;
  std::optional<optim::GaResult> optimizer;
  optim::Chromosome genes_used;
  std::string manifest_json;
};

// Simulate the scenario's configured controller (GA kinds optimize first,
// then run the tuned controller on the same scenario).
RunArtifacts run_scenario(const Scenario& sc);
RunArtifacts run_scenario(const Scenario& sc, ControllerKind kind);

struct ComparisonArtifacts {
  std::vector<RunArtifacts> runs;
  metrics::ComparisonTable table;
  std::string manifest_json;
};

// Runs every controller against the same plant, events and seed.
ComparisonArtifacts run_comparison(const Scenario& base,
                                   const std::vector<ControllerKind>& kinds);

// Artifact writers; every file goes through an atomic write.
void write_run_artifacts(const RunArtifacts& artifacts,
                         const std::filesystem::path& dir);
void write_comparison_artifacts(const ComparisonArtifacts& artifacts,
                                const std::filesystem::path& dir);
void write_optimize_artifacts(const Scenario& sc,
                              const optim::GaResult& result,
                              const std::filesystem::path& dir);

}  // namespace hydrolfc::harness
