#pragma once

namespace hydrolfc::plant {

// Nameplate rating of the hydro turbine. Output power follows the
// hydrostatic relation P = Q * h * g * ef, in kW for Q in m^3/s and h in m.
struct TurbineRating {
  double flow_m3s = 5.0;
  double head_m = 10.0;
  double efficiency = 0.91;

  static constexpr double kGravity = 9.81;  // m/s^2

  void validate() const;
};

double turbine_power_kw(const TurbineRating& rating);

// Binary ladder of switched dump-load resistor banks: `bits` stages with a
// common step weight, 0..446.25 kW in 1.75 kW steps at the defaults.
struct SlcLadder {
  double step_kw = 1.75;
  int bits = 8;

  int max_code() const { return (1 << bits) - 1; }
  double max_kw() const { return static_cast<double>(max_code()) * step_kw; }
  void validate() const;
};

struct SlcSetting {
  int code = 0;  // ladder switch word, 0..max_code
  double absorbed_kw = 0.0;
};

// Nearest-step quantization of a commanded surplus, saturating at both
// ends of the ladder. Quantization error is at most step_kw / 2 inside
// the unsaturated range.
SlcSetting slc_quantize(double surplus_kw, const SlcLadder& ladder);

struct PlantParams {
  double f_base_hz = 50.0;
  double p_base_kw = 500.0;
  double inertia_s = 3.0;    // H
  double damping_pu = 1.0;   // load self-regulation D
  double governor_tc_s = 0.2;
  double water_tc_s = 1.0;   // water column starting time Tw
  double dt_s = 1e-3;

  void validate() const;
};

// Deviation state around the balanced operating point. Frequency and power
// quantities are per-unit on f_base_hz / p_base_kw. slc_code is bookkeeping
// written by the harness loop; the step dynamics do not touch it.
struct PlantState {
  double df_pu = 0.0;
  double gov_pu = 0.0;
  double water_lag_pu = 0.0;
  int slc_code = 0;
  double t_s = 0.0;
};

// Mechanical power deviation of the water column transfer
// (1 - Tw s) / (1 + Tw/2 s), realized as 3*lag - 2*gate via partial
// fractions; the lag state is driven by the governor output.
double mechanical_power_pu(const PlantState& s);

// Per-step coefficients of the discretized blocks. Each first-order block
// is discretized exactly under a zero-order hold of its input, with inputs
// sampled at the start of the step.
class StepCoeffs {
 public:
  explicit StepCoeffs(const PlantParams& p);

  double dt_s() const { return dt_s_; }
  double gov_decay() const { return gov_decay_; }
  double water_decay() const { return water_decay_; }
  double freq_decay() const { return freq_decay_; }
  double freq_gain() const { return freq_gain_; }

 private:
  double dt_s_;
  double gov_decay_;
  double water_decay_;
  double freq_decay_;
  double freq_gain_;
};

// Advance one fixed step: governor lag driven by the gate command, water
// column lag driven by the governor, swing equation
// 2H d(df)/dt = dPm - dPload - D*df. Throws std::domain_error on
// non-finite inputs.
PlantState step_plant(const PlantState& s, double gate_pu,
                      double load_delta_pu, const StepCoeffs& c);
PlantState step_plant(const PlantState& s, double gate_pu,
                      double load_delta_pu, const PlantParams& p);

// Frequency-deviation measurement in Hz through an optional first-order
// lag (tau = 0 measures exactly). Each measure() call advances the filter
// by one plant step.
class FrequencySensor {
 public:
  explicit FrequencySensor(double tau_s = 0.0);

  double measure(const PlantState& s, const PlantParams& p);
  void reset() { value_hz_ = 0.0; }

 private:
  double tau_s_;
  double value_hz_ = 0.0;
};

// One-shot measurement from a cold-started sensor.
double measure_frequency_hz(const PlantState& s, const PlantParams& p,
                            double pll_tau_s);

}  // namespace hydrolfc::plant
