#include "sigalloc/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sigalloc {
namespace {

constexpr const char* kCsvHeader = "method,step,time,residual,feasibility_gap,dispersion";

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string fmt17(double v) { return fmt("%.17g", v); }

// Label-sorted view of the series; records are already step-ordered.
std::vector<const MethodSeries*> by_label(std::span<const MethodSeries> series) {
  std::vector<const MethodSeries*> view;
  view.reserve(series.size());
  for (const MethodSeries& s : series) view.push_back(&s);
  std::sort(view.begin(), view.end(),
            [](const MethodSeries* a, const MethodSeries* b) { return a->label < b->label; });
  return view;
}

} // namespace

std::string csv_text(std::span<const MethodSeries> series) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const MethodSeries* s : by_label(series)) {
    for (const MetricsRecord& r : s->records) {
      out += s->label;
      out += ',';
      out += std::to_string(r.step);
      out += ',';
      out += fmt17(r.time);
      out += ',';
      out += fmt17(r.residual);
      out += ',';
      out += fmt17(r.feasibility_gap);
      out += ',';
      out += fmt17(r.dispersion);
      out += '\n';
    }
  }
  return out;
}

void write_csv(std::span<const MethodSeries> series, const std::filesystem::path& path) {
  write_text_file(csv_text(series), path);
}

std::vector<MethodSeries> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw std::invalid_argument("csv: unexpected header '" + line + "'");

  std::vector<MethodSeries> series;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::array<std::string, 6> field;
    std::size_t start = 0, idx = 0;
    for (; idx < 5; ++idx) {
      const std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) break;
      field[idx] = line.substr(start, comma - start);
      start = comma + 1;
    }
    if (idx != 5 || line.find(',', start) != std::string::npos) {
      throw std::invalid_argument("csv: line " + std::to_string(lineno) + ": expected 6 fields");
    }
    field[5] = line.substr(start);

    MetricsRecord rec;
    rec.step = std::strtol(field[1].c_str(), nullptr, 10);
    rec.time = std::strtod(field[2].c_str(), nullptr);
    rec.residual = std::strtod(field[3].c_str(), nullptr);
    rec.feasibility_gap = std::strtod(field[4].c_str(), nullptr);
    rec.dispersion = std::strtod(field[5].c_str(), nullptr);

    if (series.empty() || series.back().label != field[0]) {
      MethodSeries s;
      s.label = field[0];
      series.push_back(std::move(s));
    }
    series.back().records.push_back(rec);
  }
  return series;
}

std::vector<MethodSeries> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("csv: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

void write_state_csv(std::span<const MethodSeries> series, const std::filesystem::path& path) {
  std::string out = "method,agent,x\n";
  for (const MethodSeries* s : by_label(series)) {
    for (std::size_t i = 0; i < s->final_x.size(); ++i) {
      out += s->label;
      out += ',';
      out += std::to_string(i);
      out += ',';
      out += fmt17(s->final_x[i]);
      out += '\n';
    }
  }
  write_text_file(out, path);
}

void write_text_file(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

namespace {

// Chart geometry.
constexpr double kW = 960.0, kH = 600.0;
constexpr double kLeft = 80.0, kRight = 770.0, kTop = 50.0, kBottom = 545.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

// Largest "round" step (1/2/5 x 10^k) giving about five intervals.
double nice_step(double range) {
  if (!(range > 0.0)) return 1.0;
  const double raw = range / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  double nice = 10.0;
  if (frac <= 1.0) nice = 1.0;
  else if (frac <= 2.0) nice = 2.0;
  else if (frac <= 5.0) nice = 5.0;
  return nice * mag;
}

double metric_of(const MetricsRecord& r, int which) {
  switch (which) {
    case 0: return r.residual;
    case 1: return r.feasibility_gap;
    default: return r.dispersion;
  }
}

} // namespace

std::string render_svg(std::span<const MethodSeries> series, const SvgOptions& options) {
  int which = -1;
  if (options.metric == "residual") which = 0;
  else if (options.metric == "feasibility_gap") which = 1;
  else if (options.metric == "dispersion") which = 2;
  else throw std::invalid_argument("render_svg: unknown metric '" + options.metric + "'");

  const std::vector<const MethodSeries*> view = by_label(series);
  std::size_t total = 0;
  for (const MethodSeries* s : view) total += s->records.size();
  if (total == 0) throw std::invalid_argument("render_svg: no records to plot");

  // Data ranges. With log_y, non-positive values are clamped to the smallest
  // positive value present (noted in the legend).
  double tmin = std::numeric_limits<double>::infinity(), tmax = -tmin;
  double vmin = tmin, vmax = -tmin;
  double min_positive = tmin;
  bool clamped = false;
  for (const MethodSeries* s : view) {
    for (const MetricsRecord& r : s->records) {
      const double v = metric_of(r, which);
      tmin = std::min(tmin, r.time);
      tmax = std::max(tmax, r.time);
      vmin = std::min(vmin, v);
      vmax = std::max(vmax, v);
      if (v > 0.0) min_positive = std::min(min_positive, v);
    }
  }
  if (options.log_y) {
    if (!std::isfinite(min_positive)) min_positive = 1.0; // nothing positive: flat floor
    if (vmin <= 0.0) clamped = true;
    vmin = std::log10(min_positive);
    vmax = vmax > 0.0 ? std::log10(vmax) : vmin;
  }
  if (tmax <= tmin) tmax = tmin + 1.0;
  if (vmax <= vmin) {
    vmin -= 1.0;
    vmax += 1.0;
  }

  const auto px = [&](double t) { return kLeft + (t - tmin) / (tmax - tmin) * (kRight - kLeft); };
  const auto py = [&](double v) { return kBottom - (v - vmin) / (vmax - vmin) * (kBottom - kTop); };
  const auto yval = [&](double v) {
    if (!options.log_y) return v;
    return std::log10(std::max(v, std::pow(10.0, vmin)));
  };

  std::string svg;
  svg.reserve(1 << 16);
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"960\" height=\"600\" "
         "viewBox=\"0 0 960 600\" font-family=\"sans-serif\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"960\" height=\"600\" fill=\"#ffffff\"/>\n";
  svg += "<text x=\"425\" y=\"28\" font-size=\"17\" text-anchor=\"middle\">" + options.title + "</text>\n";

  // Grid and ticks.
  const auto hline = [&](double y, const char* color) {
    svg += "<line x1=\"" + fmt("%.2f", kLeft) + "\" y1=\"" + fmt("%.2f", y) + "\" x2=\"" +
           fmt("%.2f", kRight) + "\" y2=\"" + fmt("%.2f", y) + "\" stroke=\"" + color + "\" stroke-width=\"1\"/>\n";
  };
  const auto vline = [&](double x, const char* color) {
    svg += "<line x1=\"" + fmt("%.2f", x) + "\" y1=\"" + fmt("%.2f", kTop) + "\" x2=\"" + fmt("%.2f", x) +
           "\" y2=\"" + fmt("%.2f", kBottom) + "\" stroke=\"" + color + "\" stroke-width=\"1\"/>\n";
  };

  // x ticks (always linear time).
  {
    const double step = nice_step(tmax - tmin);
    for (double t = std::ceil(tmin / step) * step; t <= tmax + 1e-9 * step; t += step) {
      vline(px(t), "#e0e0e0");
      svg += "<text x=\"" + fmt("%.2f", px(t)) + "\" y=\"" + fmt("%.2f", kBottom + 18.0) +
             "\" font-size=\"12\" text-anchor=\"middle\">" + fmt("%g", t) + "</text>\n";
    }
  }
  // y ticks: decades when log, nice steps otherwise.
  if (options.log_y) {
    const int lo = static_cast<int>(std::ceil(vmin - 1e-9));
    const int hi = static_cast<int>(std::floor(vmax + 1e-9));
    const int decades = hi - lo;
    const int stride = decades > 8 ? (decades + 7) / 8 : 1;
    for (int p = lo; p <= hi; p += stride) {
      hline(py(p), "#e0e0e0");
      svg += "<text x=\"" + fmt("%.2f", kLeft - 8.0) + "\" y=\"" + fmt("%.2f", py(p) + 4.0) +
             "\" font-size=\"12\" text-anchor=\"end\">1e" + std::to_string(p) + "</text>\n";
    }
  } else {
    const double step = nice_step(vmax - vmin);
    for (double v = std::ceil(vmin / step) * step; v <= vmax + 1e-9 * step; v += step) {
      hline(py(v), "#e0e0e0");
      svg += "<text x=\"" + fmt("%.2f", kLeft - 8.0) + "\" y=\"" + fmt("%.2f", py(v) + 4.0) +
             "\" font-size=\"12\" text-anchor=\"end\">" + fmt("%g", v) + "</text>\n";
    }
  }

  // Axes.
  svg += "<line x1=\"" + fmt("%.2f", kLeft) + "\" y1=\"" + fmt("%.2f", kTop) + "\" x2=\"" + fmt("%.2f", kLeft) +
         "\" y2=\"" + fmt("%.2f", kBottom) + "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + fmt("%.2f", kLeft) + "\" y1=\"" + fmt("%.2f", kBottom) + "\" x2=\"" +
         fmt("%.2f", kRight) + "\" y2=\"" + fmt("%.2f", kBottom) + "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  svg += "<text x=\"425\" y=\"585\" font-size=\"13\" text-anchor=\"middle\">time</text>\n";
  svg += "<text x=\"20\" y=\"300\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 20 300)\">" +
         options.metric + (options.log_y ? std::string(" (log scale)") : std::string()) + "</text>\n";

  // Curves: decimated to a bounded point count so files stay small.
  for (std::size_t k = 0; k < view.size(); ++k) {
    const MethodSeries* s = view[k];
    if (s->records.empty()) continue;
    const std::size_t npts = s->records.size();
    const std::size_t stride = npts > 2000 ? (npts + 1999) / 2000 : 1;
    std::string points;
    for (std::size_t i = 0; i < npts; i += stride) {
      const MetricsRecord& r = s->records[i];
      points += fmt("%.2f", px(r.time)) + "," + fmt("%.2f", py(yval(metric_of(r, which)))) + " ";
    }
    const MetricsRecord& last = s->records.back();
    points += fmt("%.2f", px(last.time)) + "," + fmt("%.2f", py(yval(metric_of(last, which))));
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(kPalette[k % kPaletteSize]) +
           "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
  }

  // Legend.
  double ly = kTop + 10.0;
  for (std::size_t k = 0; k < view.size(); ++k) {
    svg += "<line x1=\"790\" y1=\"" + fmt("%.2f", ly - 4.0) + "\" x2=\"815\" y2=\"" + fmt("%.2f", ly - 4.0) +
           "\" stroke=\"" + std::string(kPalette[k % kPaletteSize]) + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"820\" y=\"" + fmt("%.2f", ly) + "\" font-size=\"12\">" + view[k]->label + "</text>\n";
    ly += 18.0;
  }
  if (options.log_y && clamped) {
    ly += 6.0;
    svg += "<text x=\"790\" y=\"" + fmt("%.2f", ly) + "\" font-size=\"10\" fill=\"#555555\">values &lt;= 0 clamped to " +
           fmt("%.3g", std::pow(10.0, vmin)) + "</text>\n";
  }

  svg += "</svg>\n";
  return svg;
}

double terminal_residual(const MethodSeries& s) {
  if (s.aborted || s.records.empty()) return std::numeric_limits<double>::infinity();
  const std::size_t n = s.records.size();
  const std::size_t tail = std::max<std::size_t>(1, n / 10);
  double sum = 0.0;
  for (std::size_t i = n - tail; i < n; ++i) sum += s.records[i].residual;
  return sum / static_cast<double>(tail);
}

std::string summary_text(const ExperimentResult& result, double demand) {
  std::string out;
  out += "oracle: lambda_star=" + fmt17(result.oracle.lambda_star) + " f_star=" + fmt17(result.oracle.f_star) +
         " kkt_residual=" + fmt("%.3e", result.oracle.residual_kkt) + " iterations=" +
         std::to_string(result.oracle.iterations) + "\n";
  out += "model: gradient Lipschitz bound L=" + fmt("%.6g", result.lipschitz);
  if (result.lipschitz > 0.0) out += " (1/L=" + fmt("%.6g", 1.0 / result.lipschitz) + ")";
  out += "\n";

  std::vector<const MethodSeries*> view;
  for (const MethodSeries& s : result.series) view.push_back(&s);
  std::sort(view.begin(), view.end(),
            [](const MethodSeries* a, const MethodSeries* b) { return a->label < b->label; });
  for (const MethodSeries* s : view) {
    out += "\nmethod " + s->label + "\n";
    out += "  records: " + std::to_string(s->records.size()) + "\n";
    out += s->converged ? "  converged: yes (step " + std::to_string(s->converged_step) + ")\n"
                        : "  converged: no\n";
    out += "  terminal residual: " + fmt17(terminal_residual(*s)) + "\n";
    double max_gap = 0.0;
    for (const MetricsRecord& r : s->records) max_gap = std::max(max_gap, r.feasibility_gap);
    out += "  max feasibility gap: " + fmt("%.3e", max_gap);
    if (demand != 0.0) out += " (" + fmt("%.3e", max_gap / std::fabs(demand)) + " of demand)";
    out += "\n";
    if (s->eta_warning && result.lipschitz > 0.0) {
      out += "  warning: eta exceeds 1/L=" + fmt("%.6g", 1.0 / result.lipschitz) +
             "; discrete steps may overshoot\n";
    }
    if (s->aborted) out += "  aborted: " + s->abort_message + "\n";
  }
  return out;
}

} // namespace sigalloc
