#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hydrolfc/metrics.hpp"
#include "hydrolfc/optim.hpp"

namespace hydrolfc::io {

// Write-temp-then-rename so readers never observe a partial artifact.
void atomic_write(const std::filesystem::path& path,
                  const std::string& content);

std::string read_file(const std::filesystem::path& path);

std::string trace_to_csv(const metrics::SimTrace& trace);
metrics::SimTrace trace_from_csv(const std::string& text);
metrics::SimTrace load_trace_csv(const std::filesystem::path& path);

std::string report_to_json(const metrics::MetricReport& report,
                           std::optional<double> efficiency, bool diverged);

std::string ga_log_to_csv(const std::vector<optim::GenerationStats>& history);

std::string comparison_to_csv(const metrics::ComparisonTable& table);
std::string comparison_to_text(const metrics::ComparisonTable& table);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// Minimal standalone SVG line plot for batch artifacts.
std::string render_line_plot_svg(const std::string& title,
                                 const std::string& x_label,
                                 const std::string& y_label,
                                 const std::vector<PlotSeries>& series);

}  // namespace hydrolfc::io
