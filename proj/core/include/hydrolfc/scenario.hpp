#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hydrolfc/control.hpp"
#include "hydrolfc/fuzzy.hpp"
#include "hydrolfc/metrics.hpp"
#include "hydrolfc/optim.hpp"
#include "hydrolfc/plant.hpp"
#include "hydrolfc/sim.hpp"
#include "hydrolfc/surrogate.hpp"

namespace hydrolfc::harness {

enum class ControllerKind {
  kPd,
  kPidAdaptive,
  kFuzzyPd,
  kFuzzyPdGa,
  kFuzzyPdGaDsnn,
};

const char* controller_name(ControllerKind kind);
ControllerKind controller_from_name(const std::string& name);
bool controller_is_tuned(ControllerKind kind);

struct GaSettings {
  optim::GaConfig config;
  double screen_ratio = 0.3;
  surrogate::SurrogateConfig surrogate;
};

// One experiment: the plant, the active controller with the parameter
// blocks for every family, the load-step program and the run options.
// Parsed from a JSON scenario file; unknown keys are rejected.
struct Scenario {
  std::uint64_t seed = 1;
  int threads = 1;

  plant::PlantParams params;
  plant::TurbineRating turbine;
  plant::SlcLadder ladder;
  sim::SimOptions options;
  metrics::MetricOptions metric_options;
  std::vector<sim::LoadEvent> events;

  ControllerKind controller = ControllerKind::kPd;
  control::GainSet pd_gains;
  control::GainSet pid_gains;
  control::GainSet fuzzy_gains;
  fuzzy::UniverseScales scales;
  optim::Chromosome genes = optim::Chromosome::baseline();
  GaSettings ga;

  void validate() const;

  sim::ClosedLoopProblem problem() const;

  // Controller instance for `kind`; GA-tuned kinds take the genes to use.
  control::AnyController make_controller(ControllerKind kind,
                                         const optim::Chromosome& genes) const;
  control::AnyController make_controller() const;

  // GA configuration with the scenario seed and thread count applied.
  optim::GaConfig ga_config() const;
};

// Shipped defaults: the hand-tuned plant and controller parameter set used
// by the bundled scenario files.
Scenario default_scenario();

Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::filesystem::path& file);

// Canonical full echo of a scenario, every field explicit. Two scenarios
// that produce the same echo produce bit-identical runs.
std::string scenario_to_json(const Scenario& sc);

}  // namespace hydrolfc::harness
