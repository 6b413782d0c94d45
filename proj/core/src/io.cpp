#include "hydrolfc/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hydrolfc/errors.hpp"

namespace hydrolfc::io {

namespace {

std::string fmt(double v, const char* spec = "%.12g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_double(const std::string& field, std::size_t line_no) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0')
    throw ConfigError("trace CSV line " + std::to_string(line_no) +
                      ": bad number '" + field + "'");
  return v;
}

constexpr const char* kTraceHeader = "t,f_err_hz,p_gen_kw,p_load_kw,p_slc_kw";

}  // namespace

void atomic_write(const std::filesystem::path& path,
                  const std::string& content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " +
                          path.parent_path().string() + ": " + ec.message());
  }
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " +
                        path.string() + ": " + ec.message());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string trace_to_csv(const metrics::SimTrace& trace) {
  std::string out;
  out.reserve(trace.size() * 64 + 64);
  out += kTraceHeader;
  out += '\n';
  for (std::size_t k = 0; k < trace.size(); ++k) {
    out += fmt(trace.t_s[k], "%.9g");
    out += ',';
    out += fmt(trace.f_err_hz[k]);
    out += ',';
    out += fmt(trace.p_gen_kw[k]);
    out += ',';
    out += fmt(trace.p_load_kw[k]);
    out += ',';
    out += fmt(trace.p_slc_kw[k]);
    out += '\n';
  }
  return out;
}

metrics::SimTrace trace_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader)
    throw ConfigError(std::string("trace CSV must start with header '") +
                      kTraceHeader + "'");
  metrics::SimTrace trace;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 5)
      throw ConfigError("trace CSV line " + std::to_string(line_no) +
                        ": expected 5 columns");
    trace.push_back(parse_double(fields[0], line_no),
                    parse_double(fields[1], line_no),
                    parse_double(fields[2], line_no),
                    parse_double(fields[3], line_no),
                    parse_double(fields[4], line_no));
  }
  try {
    trace.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid trace CSV: ") + e.what());
  }
  return trace;
}

metrics::SimTrace load_trace_csv(const std::filesystem::path& path) {
  return trace_from_csv(read_file(path));
}

std::string report_to_json(const metrics::MetricReport& report,
                           std::optional<double> efficiency, bool diverged) {
  nlohmann::json j;
  j["overshoot_hz"] = report.overshoot_hz;
  j["undershoot_hz"] = report.undershoot_hz;
  j["settling_time_s"] = report.settling_time_s;
  j["settled"] = report.settled;
  j["sse_hz"] = report.sse_hz;
  j["iae_hz_s"] = report.iae_hz_s;
  j["ise_hz2_s"] = report.ise_hz2_s;
  j["itae_hz_s2"] = report.itae_hz_s2;
  if (efficiency) j["efficiency"] = *efficiency;
  j["diverged"] = diverged;
  return j.dump(2) + "\n";
}

std::string ga_log_to_csv(const std::vector<optim::GenerationStats>& history) {
  std::string out = "generation,best_j,mean_j,true_evals\n";
  for (const auto& g : history) {
    out += std::to_string(g.generation);
    out += ',';
    out += fmt(g.best_j);
    out += ',';
    out += fmt(g.mean_j);
    out += ',';
    out += std::to_string(g.true_evaluations);
    out += '\n';
  }
  return out;
}

std::string comparison_to_csv(const metrics::ComparisonTable& table) {
  std::string out = "metric";
  for (const auto& n : table.names) out += ',' + n;
  out += '\n';
  for (const auto& row : table.rows) {
    out += row.metric;
    for (double v : row.values) out += ',' + fmt(v);
    out += '\n';
    out += row.metric + "_rank";
    for (int r : row.ranks) out += ',' + std::to_string(r);
    out += '\n';
  }
  out += "dominant," + (table.dominant.empty() ? std::string("none")
                                               : table.dominant);
  out += '\n';
  return out;
}

std::string comparison_to_text(const metrics::ComparisonTable& table) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{"metric"};
  header.insert(header.end(), table.names.begin(), table.names.end());
  cells.push_back(header);
  for (const auto& row : table.rows) {
    std::vector<std::string> line{row.metric};
    for (std::size_t i = 0; i < row.values.size(); ++i) {
      line.push_back(fmt(row.values[i], "%.6g") + " (" +
                     std::to_string(row.ranks[i]) + ")");
    }
    cells.push_back(std::move(line));
  }

  std::vector<std::size_t> widths(cells[0].size(), 0);
  for (const auto& line : cells)
    for (std::size_t c = 0; c < line.size(); ++c)
      widths[c] = std::max(widths[c], line[c].size());

  std::string out;
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      out += line[c];
      if (c + 1 < line.size())
        out += std::string(widths[c] - line[c].size() + 2, ' ');
    }
    out += '\n';
  }
  out += "dominant: " +
         (table.dominant.empty() ? std::string("none") : table.dominant);
  out += '\n';
  return out;
}

std::string render_line_plot_svg(const std::string& title,
                                 const std::string& x_label,
                                 const std::string& y_label,
                                 const std::vector<PlotSeries>& series) {
  constexpr int kWidth = 960;
  constexpr int kHeight = 540;
  constexpr int kLeft = 70;
  constexpr int kRight = 30;
  constexpr int kTop = 40;
  constexpr int kBottom = 55;
  constexpr std::size_t kMaxPoints = 2000;
  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                            "#ff7f0e", "#9467bd", "#8c564b"};

  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  bool first = true;
  for (const auto& s : series) {
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      if (first) {
        x_min = x_max = s.x[k];
        y_min = y_max = s.y[k];
        first = false;
      }
      x_min = std::min(x_min, s.x[k]);
      x_max = std::max(x_max, s.x[k]);
      y_min = std::min(y_min, s.y[k]);
      y_max = std::max(y_max, s.y[k]);
    }
  }
  if (x_max - x_min <= 0.0) x_max = x_min + 1.0;
  if (y_max - y_min <= 0.0) {
    y_min -= 0.5;
    y_max += 0.5;
  } else {
    const double pad = 0.05 * (y_max - y_min);
    y_min -= pad;
    y_max += pad;
  }

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto sx = [&](double x) {
    return kLeft + (x - x_min) / (x_max - x_min) * plot_w;
  };
  const auto sy = [&](double y) {
    return kTop + (y_max - y) / (y_max - y_min) * plot_h;
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(kWidth) + "\" height=\"" + std::to_string(kHeight) +
         "\" viewBox=\"0 0 " + std::to_string(kWidth) + " " +
         std::to_string(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + std::to_string(kWidth / 2) +
         "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" + title + "</text>\n";

  // Grid and tick labels.
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double fx = x_min + (x_max - x_min) * i / kTicks;
    const double fy = y_min + (y_max - y_min) * i / kTicks;
    svg += "<line x1=\"" + fmt(sx(fx), "%.2f") + "\" y1=\"" +
           std::to_string(kTop) + "\" x2=\"" + fmt(sx(fx), "%.2f") +
           "\" y2=\"" + fmt(kTop + plot_h, "%.2f") +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<line x1=\"" + std::to_string(kLeft) + "\" y1=\"" +
           fmt(sy(fy), "%.2f") + "\" x2=\"" + fmt(kLeft + plot_w, "%.2f") +
           "\" y2=\"" + fmt(sy(fy), "%.2f") +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + fmt(sx(fx), "%.2f") + "\" y=\"" +
           fmt(kTop + plot_h + 18, "%.2f") +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" + fmt(fx, "%.4g") + "</text>\n";
    svg += "<text x=\"" + std::to_string(kLeft - 8) + "\" y=\"" +
           fmt(sy(fy) + 4, "%.2f") +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">" + fmt(fy, "%.4g") + "</text>\n";
  }
  svg += "<rect x=\"" + std::to_string(kLeft) + "\" y=\"" +
         std::to_string(kTop) + "\" width=\"" + fmt(plot_w, "%.2f") +
         "\" height=\"" + fmt(plot_h, "%.2f") +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  svg += "<text x=\"" + fmt(kLeft + plot_w / 2, "%.2f") + "\" y=\"" +
         std::to_string(kHeight - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">" + x_label + "</text>\n";
  svg += "<text x=\"18\" y=\"" + fmt(kTop + plot_h / 2, "%.2f") +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 18 " +
         fmt(kTop + plot_h / 2, "%.2f") + ")\">" + y_label + "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto& ser = series[s];
    if (ser.x.empty()) continue;
    const std::size_t stride =
        std::max<std::size_t>(1, ser.x.size() / kMaxPoints);
    std::string points;
    for (std::size_t k = 0; k < ser.x.size(); k += stride) {
      points += fmt(sx(ser.x[k]), "%.2f");
      points += ',';
      points += fmt(sy(ser.y[k]), "%.2f");
      points += ' ';
    }
    // Always include the final sample.
    points += fmt(sx(ser.x.back()), "%.2f");
    points += ',';
    points += fmt(sy(ser.y.back()), "%.2f");
    svg += "<polyline fill=\"none\" stroke=\"" +
           std::string(kColors[s % std::size(kColors)]) +
           "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
    svg += "<text x=\"" + fmt(kLeft + plot_w - 8, "%.2f") + "\" y=\"" +
           fmt(kTop + 18 + 16 * static_cast<double>(s), "%.2f") +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"12\" fill=\"" +
           std::string(kColors[s % std::size(kColors)]) + "\">" + ser.label +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace hydrolfc::io
