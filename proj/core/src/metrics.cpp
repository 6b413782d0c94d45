#include "hydrolfc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hydrolfc::metrics {

namespace {

constexpr double kOnsetEps = 1e-12;

// Index of the first sample with a visible deviation; size() if none.
std::size_t disturbance_index(const SimTrace& tr) {
  for (std::size_t k = 0; k < tr.size(); ++k) {
    if (std::abs(tr.f_err_hz[k]) > kOnsetEps) return k;
  }
  return tr.size();
}

}  // namespace

double SimTrace::dt() const {
  if (t_s.size() < 2) throw std::domain_error("trace needs >= 2 samples");
  return t_s[1] - t_s[0];
}

void SimTrace::reserve(std::size_t n) {
  t_s.reserve(n);
  f_err_hz.reserve(n);
  p_gen_kw.reserve(n);
  p_load_kw.reserve(n);
  p_slc_kw.reserve(n);
}

void SimTrace::push_back(double t, double f_err, double p_gen, double p_load,
                         double p_slc) {
  t_s.push_back(t);
  f_err_hz.push_back(f_err);
  p_gen_kw.push_back(p_gen);
  p_load_kw.push_back(p_load);
  p_slc_kw.push_back(p_slc);
}

void SimTrace::validate() const {
  const std::size_t n = t_s.size();
  if (n < 2) throw std::domain_error("trace needs >= 2 samples");
  if (f_err_hz.size() != n || p_gen_kw.size() != n || p_load_kw.size() != n ||
      p_slc_kw.size() != n)
    throw std::domain_error("trace channels must have equal length");
  const double step = t_s[1] - t_s[0];
  if (!(step > 0.0)) throw std::domain_error("trace time must increase");
  for (std::size_t k = 1; k < n; ++k) {
    const double d = t_s[k] - t_s[k - 1];
    if (!(d > 0.0) || std::abs(d - step) > 1e-6 * step)
      throw std::domain_error("trace time must be uniform and increasing");
  }
}

void MetricOptions::validate() const {
  if (!(settle_band_hz > 0.0))
    throw std::domain_error("settle band must be > 0");
  if (!(tail_fraction > 0.0 && tail_fraction <= 0.5))
    throw std::domain_error("tail fraction must lie in (0, 0.5]");
}

MetricReport compute_report(const SimTrace& trace,
                            const MetricOptions& options) {
  trace.validate();
  options.validate();

  const std::size_t n = trace.size();
  const std::size_t onset = disturbance_index(trace);
  const double t_onset = onset < n ? trace.t_s[onset] : trace.t_s.front();

  MetricReport rep;
  double peak_pos = 0.0;
  double peak_neg = 0.0;
  for (double e : trace.f_err_hz) {
    peak_pos = std::max(peak_pos, e);
    peak_neg = std::min(peak_neg, e);
  }
  rep.overshoot_hz = peak_pos;
  rep.undershoot_hz = -peak_neg;

  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double dt_k = trace.t_s[k + 1] - trace.t_s[k];
    const double e = trace.f_err_hz[k];
    const double ae = std::abs(e);
    rep.iae_hz_s += ae * dt_k;
    rep.ise_hz2_s += e * e * dt_k;
    rep.itae_hz_s2 += std::max(0.0, trace.t_s[k] - t_onset) * ae * dt_k;
  }

  // Last sample outside the band decides settling; the trace settles at the
  // following sample.
  std::size_t last_outside = n;  // n = never outside
  for (std::size_t k = n; k-- > 0;) {
    if (std::abs(trace.f_err_hz[k]) > options.settle_band_hz) {
      last_outside = k;
      break;
    }
  }
  if (last_outside == n) {
    rep.settled = true;
    rep.settling_time_s = 0.0;
  } else if (last_outside == n - 1) {
    rep.settled = false;
    rep.settling_time_s = trace.t_s.back() - t_onset;
  } else {
    rep.settled = true;
    rep.settling_time_s = trace.t_s[last_outside + 1] - t_onset;
  }

  const auto tail = std::max<std::size_t>(
      1, static_cast<std::size_t>(options.tail_fraction *
                                  static_cast<double>(n)));
  double tail_sum = 0.0;
  for (std::size_t k = n - tail; k < n; ++k)
    tail_sum += std::abs(trace.f_err_hz[k]);
  rep.sse_hz = tail_sum / static_cast<double>(tail);
  return rep;
}

double integral_squared_error(const SimTrace& trace) {
  trace.validate();
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < trace.size(); ++k) {
    const double e = trace.f_err_hz[k];
    acc += e * e * (trace.t_s[k + 1] - trace.t_s[k]);
  }
  return acc;
}

ComparisonTable compare_reports(const std::vector<NamedReport>& reports) {
  if (reports.size() < 2)
    throw std::domain_error("comparison needs >= 2 reports");

  ComparisonTable table;
  for (const auto& r : reports) table.names.push_back(r.name);

  const auto add_row = [&](const std::string& metric, auto getter) {
    ComparisonRow row;
    row.metric = metric;
    for (const auto& r : reports) row.values.push_back(getter(r.report));
    row.ranks.resize(row.values.size());
    for (std::size_t i = 0; i < row.values.size(); ++i) {
      int rank = 1;
      for (std::size_t j = 0; j < row.values.size(); ++j) {
        if (row.values[j] < row.values[i]) ++rank;
      }
      row.ranks[i] = rank;
    }
    table.rows.push_back(std::move(row));
  };

  add_row("overshoot_hz", [](const MetricReport& r) { return r.overshoot_hz; });
  add_row("undershoot_hz",
          [](const MetricReport& r) { return r.undershoot_hz; });
  add_row("settling_time_s",
          [](const MetricReport& r) { return r.settling_time_s; });
  add_row("sse_hz", [](const MetricReport& r) { return r.sse_hz; });
  add_row("iae_hz_s", [](const MetricReport& r) { return r.iae_hz_s; });
  add_row("ise_hz2_s", [](const MetricReport& r) { return r.ise_hz2_s; });
  add_row("itae_hz_s2", [](const MetricReport& r) { return r.itae_hz_s2; });

  // Dominance over the three integral measures.
  const std::size_t iae_row = 4, ise_row = 5, itae_row = 6;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    bool dominates = true;
    for (std::size_t j = 0; j < reports.size() && dominates; ++j) {
      if (j == i) continue;
      for (std::size_t m : {iae_row, ise_row, itae_row}) {
        if (!(table.rows[m].values[i] < table.rows[m].values[j])) {
          dominates = false;
          break;
        }
      }
    }
    if (dominates) {
      table.dominant = reports[i].name;
      break;
    }
  }
  return table;
}

}  // namespace hydrolfc::metrics
