#pragma once

#include <string>
#include <vector>

namespace hydrolfc::metrics {

// Uniformly sampled closed-loop run. f_err_hz is the frequency deviation
// from nominal; the power channels are absolute kW.
struct SimTrace {
  std::vector<double> t_s;
  std::vector<double> f_err_hz;
  std::vector<double> p_gen_kw;
  std::vector<double> p_load_kw;
  std::vector<double> p_slc_kw;

  std::size_t size() const { return t_s.size(); }
  double dt() const;
  void reserve(std::size_t n);
  void push_back(double t, double f_err, double p_gen, double p_load,
                 double p_slc);
  void validate() const;
};

struct MetricReport {
  double overshoot_hz = 0.0;   // peak positive deviation
  double undershoot_hz = 0.0;  // magnitude of the peak negative deviation
  double settling_time_s = 0.0;
  bool settled = true;
  double sse_hz = 0.0;      // tail-mean absolute deviation
  double iae_hz_s = 0.0;
  double ise_hz2_s = 0.0;
  double itae_hz_s2 = 0.0;
};

struct MetricOptions {
  double settle_band_hz = 0.05;
  double tail_fraction = 0.1;

  void validate() const;
};

// Integrals use the left-rectangle rule over the trace's uniform step.
// Settling time and the ITAE time weight are measured from the disturbance
// instant: the first sample where the deviation becomes nonzero.
MetricReport compute_report(const SimTrace& trace,
                            const MetricOptions& options = {});

// Left-rectangle integral of the squared deviation; shared with the
// optimizer objective.
double integral_squared_error(const SimTrace& trace);

struct ComparisonRow {
  std::string metric;
  std::vector<double> values;
  std::vector<int> ranks;  // 1 = smallest value; ties share a rank
};

struct ComparisonTable {
  std::vector<std::string> names;
  std::vector<ComparisonRow> rows;
  // Name of the entry strictly smallest on IAE, ISE and ITAE at once;
  // empty when no entry dominates.
  std::string dominant;
};

struct NamedReport {
  std::string name;
  MetricReport report;
};

ComparisonTable compare_reports(const std::vector<NamedReport>& reports);

}  // namespace hydrolfc::metrics
