#include "hydrolfc/control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hydrolfc::control {

namespace {

constexpr double kSensitivityDeadband = 1e-9;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw std::domain_error(what);
}

}  // namespace

double Interval::clamp(double x) const { return std::clamp(x, lo, hi); }

void Interval::validate() const {
  if (!(lo <= hi)) throw std::domain_error("interval must satisfy lo <= hi");
}

void GainSet::validate() const {
  for (double g : {kp, ki, kd, ge, gce, gu}) {
    if (!std::isfinite(g)) throw std::domain_error("gains must be finite");
  }
  if (!(mu >= 0.0) || !std::isfinite(mu))
    throw std::domain_error("adaptation rate mu must be >= 0");
  kp_bounds.validate();
  ki_bounds.validate();
  kd_bounds.validate();
  output_bounds.validate();
}

double pd_step(double e, double de, const GainSet& g) {
  require_finite(e, "pd_step: error must be finite");
  require_finite(de, "pd_step: error rate must be finite");
  return g.kp * e + g.kd * de;
}

PidIncrements pid_increments(double e, const ControllerState& s, double dt) {
  if (!(dt > 0.0)) throw std::domain_error("dt must be > 0");
  require_finite(e, "pid_increments: error must be finite");
  PidIncrements inc;
  inc.proportional = e - s.prev_error;
  inc.integral = e * dt;
  inc.derivative = (e - 2.0 * s.prev_error + s.prev_prev_error) / dt;
  return inc;
}

PidStepResult pid_incremental_step(double e, ControllerState s,
                                   const GainSet& g, double dt) {
  const PidIncrements inc = pid_increments(e, s, dt);
  const double raw = s.prev_output + g.kp * inc.proportional +
                     g.ki * inc.integral + g.kd * inc.derivative;
  const double u = g.output_bounds.clamp(raw);

  s.prev_prev_error = s.prev_error;
  s.prev_error = e;
  s.integral = g.output_bounds.clamp(s.integral + inc.integral);
  s.prev_output_delta = u - s.prev_output;
  s.prev_output = u;
  return {u, s};
}

GainSet adapt_gains(double e, double dy_du, GainSet g,
                    const PidIncrements& inc) {
  require_finite(e, "adapt_gains: error must be finite");
  require_finite(dy_du, "adapt_gains: sensitivity must be finite");
  if (g.mu == 0.0) return g;
  const double common = g.mu * e * dy_du;
  g.kp = g.kp_bounds.clamp(g.kp + common * inc.proportional);
  g.ki = g.ki_bounds.clamp(g.ki + common * inc.integral);
  g.kd = g.kd_bounds.clamp(g.kd + common * inc.derivative);
  return g;
}

double estimate_sensitivity_sign(double delta_y, double delta_u,
                                 double held_sign) {
  if (std::abs(delta_u) < kSensitivityDeadband) return held_sign;
  const double ratio_sign = (delta_y > 0.0 ? 1.0 : (delta_y < 0.0 ? -1.0 : 0.0)) *
                            (delta_u > 0.0 ? 1.0 : -1.0);
  return ratio_sign;
}

FuzzyStepResult fuzzy_pd_step(double e, ControllerState s,
                              const fuzzy::FuzzySystem& sys, const GainSet& g,
                              double dt) {
  if (!(dt > 0.0)) throw std::domain_error("dt must be > 0");
  require_finite(e, "fuzzy_pd_step: error must be finite");
  const double ec = (e - s.prev_error) / dt;

  const auto& ef = sys.error_family;
  const auto& ecf = sys.error_rate_family;
  const double e_in = std::clamp(g.ge * e, ef.lower(), ef.upper());
  const double ec_in = std::clamp(g.gce * ec, ecf.lower(), ecf.upper());
  const double u = g.gu * fuzzy::infer(e_in, ec_in, sys);

  s.prev_prev_error = s.prev_error;
  s.prev_error = e;
  s.prev_output_delta = u - s.prev_output;
  s.prev_output = u;
  return {u, s};
}

double PdController::step(double e, double dt) {
  if (!(dt > 0.0)) throw std::domain_error("dt must be > 0");
  const double de = (e - state_.prev_error) / dt;
  const double u = gains_.output_bounds.clamp(pd_step(e, de, gains_));
  state_.prev_prev_error = state_.prev_error;
  state_.prev_error = e;
  state_.prev_output_delta = u - state_.prev_output;
  state_.prev_output = u;
  return u;
}

double AdaptivePidController::step(double e, double dt) {
  const PidIncrements inc = pid_increments(e, state_, dt);

  // Measured output relative to the reference is -e; its change over the
  // last step paired with the last control increment gives the sign
  // estimate of dy/du.
  const double measured = -e;
  const double delta_y = measured - state_.prev_measured;
  const double sign = estimate_sensitivity_sign(
      delta_y, state_.prev_output_delta, state_.dy_du_sign);
  gains_ = adapt_gains(e, sign, gains_, inc);

  auto [u, next] = pid_incremental_step(e, state_, gains_, dt);
  next.prev_measured = measured;
  next.dy_du_sign = sign;
  state_ = next;
  return u;
}

double FuzzyPdController::step(double e, double dt) {
  auto [u, next] = fuzzy_pd_step(e, state_, system_, gains_, dt);
  const double clamped = gains_.output_bounds.clamp(u);
  next.prev_output_delta = clamped - state_.prev_output;
  next.prev_output = clamped;
  state_ = next;
  return clamped;
}

double step_any(AnyController& c, double e, double dt) {
  return std::visit([&](auto& ctl) { return ctl.step(e, dt); }, c);
}

}  // namespace hydrolfc::control
