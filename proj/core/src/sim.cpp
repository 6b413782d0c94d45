#include "hydrolfc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hydrolfc::sim {

void SimOptions::validate() const {
  if (!(horizon_s > 0.0)) throw std::domain_error("horizon_s must be > 0");
  if (!(pll_tau_s >= 0.0)) throw std::domain_error("pll_tau_s must be >= 0");
  if (!(blowup_df_pu > 0.0))
    throw std::domain_error("blowup_df_pu must be > 0");
  if (!(divergence_penalty >= 0.0))
    throw std::domain_error("divergence_penalty must be >= 0");
}

void ClosedLoopProblem::validate() const {
  params.validate();
  turbine.validate();
  ladder.validate();
  options.validate();
  double prev = 0.0;
  for (const auto& ev : events) {
    if (!(ev.time_s >= 0.0 && ev.time_s <= options.horizon_s))
      throw std::domain_error("load event outside [0, horizon]");
    if (ev.time_s < prev)
      throw std::domain_error("load events must be time-ordered");
    if (!std::isfinite(ev.delta_kw))
      throw std::domain_error("load event delta must be finite");
    prev = ev.time_s;
  }
}

SimOutcome run_closed_loop(const ClosedLoopProblem& problem,
                           control::AnyController controller) {
  problem.validate();
  const auto& p = problem.params;
  const plant::StepCoeffs coeffs(p);
  const double dt = p.dt_s;
  const auto steps =
      static_cast<std::size_t>(std::llround(problem.options.horizon_s / dt));

  // Balanced operating point: the turbine carries the base consumer load,
  // so every channel starts at its steady value and deviations start at 0.
  const double p_gen0 = plant::turbine_power_kw(problem.turbine);
  const double p_load0 = p_gen0;

  // Events snap to sample indices once, so applying them is exact.
  std::vector<std::pair<std::size_t, double>> event_steps;
  event_steps.reserve(problem.events.size());
  for (const auto& ev : problem.events) {
    event_steps.emplace_back(
        static_cast<std::size_t>(std::llround(ev.time_s / dt)), ev.delta_kw);
  }

  SimOutcome out;
  out.trace.reserve(steps + 1);

  plant::PlantState state;
  plant::FrequencySensor sensor(problem.options.pll_tau_s);
  std::size_t next_event = 0;
  double consumer_delta_kw = 0.0;

  for (std::size_t k = 0; k <= steps; ++k) {
    while (next_event < event_steps.size() &&
           event_steps[next_event].first <= k) {
      consumer_delta_kw += event_steps[next_event].second;
      ++next_event;
    }

    const double f_err_hz = sensor.measure(state, p);
    const double error_hz = -f_err_hz;  // reference minus measured
    const double gate = control::step_any(controller, error_hz, dt);

    const double p_gen = p_gen0 + plant::mechanical_power_pu(state) * p.p_base_kw;
    const double p_load = p_load0 + consumer_delta_kw;
    const auto slc = plant::slc_quantize(p_gen - p_load, problem.ladder);
    state.slc_code = slc.code;

    out.trace.push_back(state.t_s, f_err_hz, p_gen, p_load, slc.absorbed_kw);

    if (std::abs(state.df_pu) > problem.options.blowup_df_pu) {
      out.diverged = true;
      break;
    }
    if (k < steps) {
      state = plant::step_plant(state, gate, consumer_delta_kw / p.p_base_kw,
                                coeffs);
    }
  }
  return out;
}

optim::Objective make_fuzzy_ise_objective(const ClosedLoopProblem& problem,
                                          const fuzzy::UniverseScales& scales,
                                          const control::GainSet& gains) {
  problem.validate();
  scales.validate();
  gains.validate();
  return [problem, scales, gains](const optim::Chromosome& c) {
    c.validate();
    const auto system = fuzzy::make_system(c.genes, scales);
    SimOutcome outcome = run_closed_loop(
        problem, control::FuzzyPdController(system, gains));
    optim::FitnessValue value;
    value.diverged = outcome.diverged;
    value.j = outcome.diverged ? problem.options.divergence_penalty
                               : metrics::integral_squared_error(outcome.trace);
    return value;
  };
}

}  // namespace hydrolfc::sim
