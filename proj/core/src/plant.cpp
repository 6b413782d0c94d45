#include "hydrolfc/plant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hydrolfc::plant {

namespace {

bool all_finite(const PlantState& s) {
  return std::isfinite(s.df_pu) && std::isfinite(s.gov_pu) &&
         std::isfinite(s.water_lag_pu) && std::isfinite(s.t_s);
}

}  // namespace

void TurbineRating::validate() const {
  if (!(flow_m3s >= 0.0) || !std::isfinite(flow_m3s))
    throw std::domain_error("turbine flow rate must be >= 0");
  if (!(head_m >= 0.0) || !std::isfinite(head_m))
    throw std::domain_error("turbine head must be >= 0");
  if (!(efficiency >= 0.0 && efficiency <= 1.0))
    throw std::domain_error("turbine efficiency must lie in [0, 1]");
}

double turbine_power_kw(const TurbineRating& rating) {
  rating.validate();
  return rating.flow_m3s * rating.head_m * TurbineRating::kGravity *
         rating.efficiency;
}

void SlcLadder::validate() const {
  if (!(step_kw > 0.0) || !std::isfinite(step_kw))
    throw std::domain_error("dump-load step must be > 0");
  if (bits < 1 || bits > 24)
    throw std::domain_error("dump-load ladder bits must lie in [1, 24]");
}

SlcSetting slc_quantize(double surplus_kw, const SlcLadder& ladder) {
  ladder.validate();
  if (!std::isfinite(surplus_kw))
    throw std::domain_error("dump-load command must be finite");
  long long code = std::llround(surplus_kw / ladder.step_kw);
  code = std::clamp(code, 0ll, static_cast<long long>(ladder.max_code()));
  SlcSetting out;
  out.code = static_cast<int>(code);
  out.absorbed_kw = static_cast<double>(code) * ladder.step_kw;
  return out;
}

void PlantParams::validate() const {
  if (!(f_base_hz > 0.0)) throw std::domain_error("f_base_hz must be > 0");
  if (!(p_base_kw > 0.0)) throw std::domain_error("p_base_kw must be > 0");
  if (!(inertia_s > 0.0)) throw std::domain_error("inertia_s must be > 0");
  if (!(damping_pu >= 0.0)) throw std::domain_error("damping_pu must be >= 0");
  if (!(governor_tc_s > 0.0))
    throw std::domain_error("governor_tc_s must be > 0");
  if (!(water_tc_s > 0.0)) throw std::domain_error("water_tc_s must be > 0");
  if (!(dt_s > 0.0)) throw std::domain_error("dt_s must be > 0");
  // Guard the explicit per-block stepping against a step that under-samples
  // the fastest block.
  if (dt_s > governor_tc_s / 10.0)
    throw std::domain_error("dt_s must not exceed governor_tc_s / 10");
}

double mechanical_power_pu(const PlantState& s) {
  return 3.0 * s.water_lag_pu - 2.0 * s.gov_pu;
}

StepCoeffs::StepCoeffs(const PlantParams& p) {
  p.validate();
  dt_s_ = p.dt_s;
  gov_decay_ = std::exp(-p.dt_s / p.governor_tc_s);
  water_decay_ = std::exp(-p.dt_s / (0.5 * p.water_tc_s));
  const double two_h = 2.0 * p.inertia_s;
  freq_decay_ = std::exp(-p.damping_pu * p.dt_s / two_h);
  // Limit of (1 - exp(-D dt / 2H)) / D as D -> 0 is dt / 2H.
  freq_gain_ = p.damping_pu > 1e-12
                   ? (1.0 - freq_decay_) / p.damping_pu
                   : p.dt_s / two_h;
}

PlantState step_plant(const PlantState& s, double gate_pu,
                      double load_delta_pu, const StepCoeffs& c) {
  if (!all_finite(s) || !std::isfinite(gate_pu) ||
      !std::isfinite(load_delta_pu))
    throw std::domain_error("plant step requires finite state and inputs");

  const double power_pu = mechanical_power_pu(s);

  PlantState next;
  next.gov_pu = gate_pu + (s.gov_pu - gate_pu) * c.gov_decay();
  next.water_lag_pu = s.gov_pu + (s.water_lag_pu - s.gov_pu) * c.water_decay();
  next.df_pu =
      s.df_pu * c.freq_decay() + c.freq_gain() * (power_pu - load_delta_pu);
  next.slc_code = s.slc_code;
  next.t_s = s.t_s + c.dt_s();
  return next;
}

PlantState step_plant(const PlantState& s, double gate_pu,
                      double load_delta_pu, const PlantParams& p) {
  return step_plant(s, gate_pu, load_delta_pu, StepCoeffs(p));
}

FrequencySensor::FrequencySensor(double tau_s) : tau_s_(tau_s) {
  if (!(tau_s >= 0.0) || !std::isfinite(tau_s))
    throw std::domain_error("sensor lag must be >= 0");
}

double FrequencySensor::measure(const PlantState& s, const PlantParams& p) {
  if (!std::isfinite(s.df_pu))
    throw std::domain_error("frequency measurement requires finite state");
  const double exact_hz = p.f_base_hz * s.df_pu;
  if (tau_s_ <= 0.0) {
    value_hz_ = exact_hz;
  } else {
    value_hz_ += (1.0 - std::exp(-p.dt_s / tau_s_)) * (exact_hz - value_hz_);
  }
  return value_hz_;
}

double measure_frequency_hz(const PlantState& s, const PlantParams& p,
                            double pll_tau_s) {
  FrequencySensor sensor(pll_tau_s);
  return sensor.measure(s, p);
}

}  // namespace hydrolfc::plant
