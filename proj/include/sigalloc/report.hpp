#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "sigalloc/experiment.hpp"

namespace sigalloc {

// Metrics CSV. Fixed header "method,step,time,residual,feasibility_gap,dispersion",
// one row per record, doubles at 17 significant digits (lossless round-trip),
// rows ordered by method label then step. Identical input => identical bytes.
void write_csv(std::span<const MethodSeries> series, const std::filesystem::path& path);
std::string csv_text(std::span<const MethodSeries> series);

// Inverse of write_csv for the fields it stores (labels and records; run
// metadata like final_x is not part of the format).
std::vector<MethodSeries> read_csv(const std::filesystem::path& path);
std::vector<MethodSeries> parse_csv(const std::string& text);

struct SvgOptions {
  bool log_y = true;
  std::string title = "residual";
  std::string metric = "residual"; // residual | feasibility_gap | dispersion
};

// Self-contained SVG 1.1 line chart, one polyline per series, fixed palette,
// legend with the series labels. With log_y, non-positive values are clamped
// to the smallest positive value present and the legend says so. Identical
// input => byte-identical output. Throws std::invalid_argument if no series
// has records or the metric name is unknown.
std::string render_svg(std::span<const MethodSeries> series, const SvgOptions& options);

// Final allocations, header "method,agent,x". Same ordering rules as the
// metrics CSV.
void write_state_csv(std::span<const MethodSeries> series, const std::filesystem::path& path);

// Mean residual over the last 10% of records; +inf for an aborted or empty
// series (no steady state to report).
double terminal_residual(const MethodSeries& s);

// Human-readable run summary: oracle numbers, then per-method convergence,
// terminal residual (mean over the last 10% of records), max feasibility
// gap, and any eta or abort notes. Deterministic text.
std::string summary_text(const ExperimentResult& result, double demand);

void write_text_file(const std::string& text, const std::filesystem::path& path);

} // namespace sigalloc
