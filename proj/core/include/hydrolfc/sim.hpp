#pragma once

#include <vector>

#include "hydrolfc/control.hpp"
#include "hydrolfc/metrics.hpp"
#include "hydrolfc/optim.hpp"
#include "hydrolfc/plant.hpp"

namespace hydrolfc::sim {

struct LoadEvent {
  double time_s = 0.0;
  double delta_kw = 0.0;
};

struct SimOptions {
  double horizon_s = 10.0;
  double pll_tau_s = 0.0;
  // A frequency excursion beyond this bound aborts the run as divergent.
  double blowup_df_pu = 0.5;
  // Objective value assigned to a divergent run.
  double divergence_penalty = 1e6;

  void validate() const;
};

// Everything the closed loop needs except the controller.
struct ClosedLoopProblem {
  plant::PlantParams params;
  plant::TurbineRating turbine;
  plant::SlcLadder ladder;
  std::vector<LoadEvent> events;
  SimOptions options;

  void validate() const;
};

struct SimOutcome {
  metrics::SimTrace trace;
  bool diverged = false;
};

// Fixed-step closed loop. Per sample: measure the frequency deviation,
// form the error against nominal, command the gate, record the trace row
// (the dump-load ladder absorbs the quantized generation surplus), then
// advance the plant. Load events are ideal steps snapped to the nearest
// sample boundary. The controller is taken by value so a run never
// mutates its caller's copy.
SimOutcome run_closed_loop(const ClosedLoopProblem& problem,
                           control::AnyController controller);

// Objective for membership-shape search: simulate the loop under a fuzzy
// PD controller built from the chromosome and return the integral of the
// squared frequency error; divergent runs return the configured penalty.
optim::Objective make_fuzzy_ise_objective(const ClosedLoopProblem& problem,
                                          const fuzzy::UniverseScales& scales,
                                          const control::GainSet& gains);

}  // namespace hydrolfc::sim
