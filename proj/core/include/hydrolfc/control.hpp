#pragma once

#include <variant>

#include "hydrolfc/fuzzy.hpp"

namespace hydrolfc::control {

struct Interval {
  double lo;
  double hi;

  double clamp(double x) const;
  void validate() const;
};

// Gains for all controller families plus their clamping boxes. A scenario
// fills the fields relevant to the chosen family; unused ones are ignored.
struct GainSet {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
  double mu = 0.0;  // gradient adaptation rate

  // Fuzzy scaling: error, error-rate and output gains.
  double ge = 1.0;
  double gce = 1.0;
  double gu = 1.0;

  Interval kp_bounds{0.0, 100.0};
  Interval ki_bounds{0.0, 100.0};
  Interval kd_bounds{0.0, 100.0};
  Interval output_bounds{-1.0, 1.0};

  void validate() const;
};

struct ControllerState {
  double prev_error = 0.0;
  double prev_prev_error = 0.0;
  double integral = 0.0;
  double prev_output = 0.0;
  double prev_measured = 0.0;
  double prev_output_delta = 0.0;
  double dy_du_sign = 1.0;
};

// Position-form PD law: u = kp*e + kd*de. Linear, unclamped.
double pd_step(double e, double de, const GainSet& g);

// Backward differences feeding the incremental law:
// proportional e(k)-e(k-1), integral e(k)*dt, derivative
// (e(k) - 2 e(k-1) + e(k-2)) / dt.
struct PidIncrements {
  double proportional;
  double integral;
  double derivative;
};

PidIncrements pid_increments(double e, const ControllerState& s, double dt);

struct PidStepResult {
  double u;
  ControllerState state;
};

// Incremental PID: u(k) = u(k-1) + kp*ep + ki*ei + kd*ed, with the output
// clamped to g.output_bounds. Clamping the accumulated output is the
// anti-windup for this form.
PidStepResult pid_incremental_step(double e, ControllerState s,
                                   const GainSet& g, double dt);

// Gradient gain adaptation: delta k = mu * e * dy_du * increment, per gain,
// clamped to the per-gain boxes. mu = 0 returns the gains unchanged.
GainSet adapt_gains(double e, double dy_du, GainSet g,
                    const PidIncrements& inc);

// Sign of dy/du estimated from the previous step, with a dead-band on the
// control increment: |delta_u| < 1e-9 holds the previous sign.
double estimate_sensitivity_sign(double delta_y, double delta_u,
                                 double held_sign);

struct FuzzyStepResult {
  double u;
  ControllerState state;
};

// Fuzzy PD: ec = (e - prev_error)/dt; inputs scaled by ge/gce and clamped
// to their universes; u = gu * infer(...). Output magnitude never exceeds
// gu * output-family PB center.
FuzzyStepResult fuzzy_pd_step(double e, ControllerState s,
                              const fuzzy::FuzzySystem& sys, const GainSet& g,
                              double dt);

// Stateful wrappers with the uniform (error, dt) -> gate command interface
// used by the closed-loop runner. All are value types; copying one forks
// its state.

class PdController {
 public:
  explicit PdController(const GainSet& g) : gains_(g) { g.validate(); }

  double step(double e, double dt);
  const GainSet& gains() const { return gains_; }

 private:
  GainSet gains_;
  ControllerState state_;
};

class AdaptivePidController {
 public:
  explicit AdaptivePidController(const GainSet& g) : gains_(g) {
    g.validate();
  }

  double step(double e, double dt);
  const GainSet& gains() const { return gains_; }

 private:
  GainSet gains_;
  ControllerState state_;
};

class FuzzyPdController {
 public:
  FuzzyPdController(fuzzy::FuzzySystem sys, const GainSet& g)
      : system_(std::move(sys)), gains_(g) {
    g.validate();
  }

  double step(double e, double dt);
  const GainSet& gains() const { return gains_; }
  const fuzzy::FuzzySystem& system() const { return system_; }

 private:
  fuzzy::FuzzySystem system_;
  GainSet gains_;
  ControllerState state_;
};

using AnyController =
    std::variant<PdController, AdaptivePidController, FuzzyPdController>;

double step_any(AnyController& c, double e, double dt);

}  // namespace hydrolfc::control
