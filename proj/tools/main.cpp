#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sigalloc/check.hpp"
#include "sigalloc/config.hpp"
#include "sigalloc/dynamics.hpp"
#include "sigalloc/experiment.hpp"
#include "sigalloc/report.hpp"

namespace fs = std::filesystem;
using namespace sigalloc;

namespace {

struct CommonOpts {
  std::string preset;
  std::string config_path;
  std::string outdir;
  std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--preset", opts.preset, "Built-in scenario name (fig1, fig2)");
  cmd->add_option("--config", opts.config_path, "Path to a config file");
  cmd->add_option("--set", opts.sets, "Override, key=value (repeatable)");
  cmd->add_option("--out", opts.outdir, "Output root (default $SIGALLOC_OUTDIR or ./out)");
}

ExperimentConfig resolve_config(const CommonOpts& opts) {
  if (opts.preset.empty() == opts.config_path.empty()) {
    throw ConfigError("pass exactly one of --preset or --config");
  }
  ExperimentConfig cfg =
      opts.preset.empty() ? load_config(opts.config_path) : load_preset(opts.preset);
  for (const std::string& s : opts.sets) apply_override(cfg, s);
  return cfg;
}

fs::path resolve_outdir(const CommonOpts& opts, const ExperimentConfig& cfg) {
  fs::path root;
  if (!opts.outdir.empty()) {
    root = opts.outdir;
  } else if (const char* env = std::getenv("SIGALLOC_OUTDIR"); env != nullptr && *env != '\0') {
    root = env;
  } else {
    root = "out";
  }
  std::string name = cfg.output_name;
  if (name.empty()) {
    char buf[32];
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    localtime_r(&now, &tm);
    std::strftime(buf, sizeof buf, "run-%Y%m%d-%H%M%S", &tm);
    name = buf;
  }
  const fs::path dir = root / name;
  fs::create_directories(dir);
  return dir;
}

bool has_records(const std::vector<MethodSeries>& series) {
  return std::any_of(series.begin(), series.end(),
                     [](const MethodSeries& s) { return !s.records.empty(); });
}

// Writes the standard artifact set and reports aborts. Returns the exit code.
int emit_outputs(const ExperimentResult& result, const ExperimentConfig& cfg, const fs::path& dir,
                 const std::string& metrics_name) {
  write_csv(result.series, dir / metrics_name);
  std::cout << "wrote " << (dir / metrics_name).string() << "\n";
  if (has_records(result.series)) {
    SvgOptions svg;
    svg.log_y = true;
    svg.metric = "residual";
    svg.title = "residual F(x) - F*";
    write_text_file(render_svg(result.series, svg), dir / "residual.svg");
    std::cout << "wrote " << (dir / "residual.svg").string() << "\n";
  }
  write_state_csv(result.series, dir / "state.csv");
  std::cout << "wrote " << (dir / "state.csv").string() << "\n";
  const std::string summary = summary_text(result, cfg.demand);
  write_text_file(summary, dir / "summary.txt");
  std::cout << "wrote " << (dir / "summary.txt").string() << "\n\n" << summary;

  for (const MethodSeries& s : result.series) {
    if (s.aborted) {
      std::cerr << "numerical abort in method '" << s.label << "': " << s.abort_message << "\n";
      return 3;
    }
  }
  return 0;
}

int cmd_run(const CommonOpts& opts) {
  ExperimentConfig cfg = resolve_config(opts);
  if (cfg.methods.empty()) throw ConfigError("config has no methods; add [methods] entries");
  const fs::path dir = resolve_outdir(opts, cfg);
  const ExperimentResult result = run_experiment(cfg);
  return emit_outputs(result, cfg, dir, "metrics.csv");
}

int cmd_compare(const CommonOpts& opts, const std::vector<std::string>& specs, double eta,
                const std::string& mode) {
  ExperimentConfig cfg = resolve_config(opts);
  if (specs.empty()) throw ConfigError("compare needs at least one --nl spec");
  cfg.methods.clear();
  for (const std::string& spec : specs) {
    MethodSpec m;
    m.label = spec;
    m.nl = parse_nonlinearity(spec);
    m.eta = eta;
    m.mode = mode.empty() ? cfg.mode : parse_mode(mode);
    cfg.methods.push_back(std::move(m));
  }
  const fs::path dir = resolve_outdir(opts, cfg);
  const ExperimentResult result = run_experiment(cfg);
  return emit_outputs(result, cfg, dir, "metrics.csv");
}

std::vector<double> parse_grid_list(const std::string& key, const std::string& csv) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = csv.find(',', start);
    const std::string tok = csv.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (tok.empty()) throw ConfigError("sweep " + key + ": empty value in list '" + csv + "'");
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size()) {
      throw ConfigError("sweep " + key + ": bad number '" + tok + "'");
    }
    out.push_back(v);
    if (comma == std::string::npos) return out;
    start = comma + 1;
  }
}

std::string grid_label(double alpha, double beta, double eta) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "a%g_b%g_e%g", alpha, beta, eta);
  return buf;
}

int cmd_sweep(const CommonOpts& opts, const std::string& alphas_csv, const std::string& betas_csv,
              const std::string& etas_csv) {
  ExperimentConfig cfg = resolve_config(opts);
  const std::vector<double> alphas = parse_grid_list("--alpha", alphas_csv);
  const std::vector<double> betas = parse_grid_list("--beta", betas_csv);
  const std::vector<double> etas = parse_grid_list("--eta", etas_csv);

  cfg.methods.clear();
  struct GridPoint {
    double alpha, beta, eta;
  };
  std::vector<GridPoint> points;
  for (const double a : alphas) {
    for (const double b : betas) {
      for (const double e : etas) {
        MethodSpec m;
        m.label = grid_label(a, b, e);
        try {
          m.nl = Nonlinearity::composite(a, b);
        } catch (const std::invalid_argument& ex) {
          throw ConfigError(std::string("sweep grid point ") + m.label + ": " + ex.what());
        }
        m.eta = e;
        m.mode = cfg.mode;
        cfg.methods.push_back(std::move(m));
        points.push_back(GridPoint{a, b, e});
      }
    }
  }

  const fs::path dir = resolve_outdir(opts, cfg);
  const ExperimentResult result = run_experiment(cfg);

  // Merged CSV with the grid coordinates as extra columns.
  std::string merged = "method,alpha,beta,eta,step,time,residual,feasibility_gap,dispersion\n";
  std::vector<std::size_t> order(result.series.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return result.series[a].label < result.series[b].label;
  });
  for (const std::size_t i : order) {
    const MethodSeries& s = result.series[i];
    const GridPoint& gp = points[i];
    char prefix[128];
    std::snprintf(prefix, sizeof prefix, "%s,%g,%g,%g,", s.label.c_str(), gp.alpha, gp.beta, gp.eta);
    for (const MetricsRecord& r : s.records) {
      char row[192];
      std::snprintf(row, sizeof row, "%ld,%.17g,%.17g,%.17g,%.17g\n", r.step, r.time, r.residual,
                    r.feasibility_gap, r.dispersion);
      merged += prefix;
      merged += row;
    }
  }
  write_text_file(merged, dir / "sweep.csv");
  std::cout << "wrote " << (dir / "sweep.csv").string() << "\n";
  return emit_outputs(result, cfg, dir, "metrics.csv");
}

int cmd_oracle(const CommonOpts& opts) {
  const ExperimentConfig cfg = resolve_config(opts);
  const Scenario scenario = build_scenario(cfg);
  const OracleSolution& sol = scenario.oracle;
  double x_lo = sol.x_star[0], x_hi = sol.x_star[0], sum = 0.0;
  for (const double v : sol.x_star) {
    x_lo = std::min(x_lo, v);
    x_hi = std::max(x_hi, v);
    sum += v;
  }
  std::printf("n            %zu\n", cfg.n);
  std::printf("demand       %.17g\n", cfg.demand);
  std::printf("lambda_star  %.17g\n", sol.lambda_star);
  std::printf("f_star       %.17g\n", sol.f_star);
  std::printf("kkt_residual %.3e\n", sol.residual_kkt);
  std::printf("iterations   %zu\n", sol.iterations);
  std::printf("x_star       min %.17g  max %.17g  mean %.17g\n", x_lo, x_hi,
              sum / static_cast<double>(cfg.n));
  return 0;
}

int cmd_check(std::uint64_t seed, long trials) {
  if (trials < 1) throw ConfigError("check: trials must be >= 1");
  const std::vector<CheckResult> results = run_property_checks(seed, trials);
  bool all_pass = true;
  std::printf("%-20s %8s  %s\n", "property", "trials", "result");
  for (const CheckResult& r : results) {
    std::printf("%-20s %8ld  %s\n", r.name.c_str(), r.trials, r.pass ? "pass" : "FAIL");
    if (!r.pass) {
      all_pass = false;
      std::printf("  %s (seed %llu)\n", r.detail.c_str(), static_cast<unsigned long long>(seed));
    }
  }
  return all_pass ? 0 : 1;
}

int cmd_preset(const std::string& name) {
  if (name.empty()) {
    for (const std::string& p : preset_names()) std::printf("%s\n", p.c_str());
    return 0;
  }
  std::fputs(preset_text(name).c_str(), stdout);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed resource allocation dynamics with signed-power edge flows"};
  app.require_subcommand(1);

  CommonOpts run_opts;
  CLI::App* run_cmd = app.add_subcommand("run", "Run every method of a config and emit metrics");
  add_common(run_cmd, run_opts);

  CommonOpts compare_opts;
  std::vector<std::string> compare_specs;
  double compare_eta = 0.2;
  std::string compare_mode;
  CLI::App* compare_cmd =
      app.add_subcommand("compare", "Run ad-hoc nonlinearities side by side on one scenario");
  add_common(compare_cmd, compare_opts);
  compare_cmd->add_option("--nl", compare_specs, "Nonlinearity spec (repeatable)");
  compare_cmd->add_option("--eta", compare_eta, "Gain shared by all compared methods");
  compare_cmd->add_option("--mode", compare_mode, "discrete, euler, or rk4 (default: config mode)");

  CommonOpts sweep_opts;
  std::string sweep_alphas = "0.3", sweep_betas = "1.7", sweep_etas = "0.1";
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Grid over composite alpha/beta/eta");
  add_common(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--alpha", sweep_alphas, "Comma list of alpha values");
  sweep_cmd->add_option("--beta", sweep_betas, "Comma list of beta values");
  sweep_cmd->add_option("--eta", sweep_etas, "Comma list of eta values");

  CommonOpts oracle_opts;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Print the centralized solution for a config");
  add_common(oracle_cmd, oracle_opts);

  std::uint64_t check_seed = 1;
  long check_trials = 20;
  CLI::App* check_cmd = app.add_subcommand("check", "Run the randomized property suite");
  check_cmd->add_option("--seed", check_seed, "Master seed for the property draws");
  check_cmd->add_option("--trials", check_trials, "Trials per property");

  std::string preset_name;
  CLI::App* preset_cmd = app.add_subcommand("preset", "List presets, or print one by name");
  preset_cmd->add_option("name", preset_name, "Preset to print");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run_cmd) return cmd_run(run_opts);
    if (*compare_cmd) return cmd_compare(compare_opts, compare_specs, compare_eta, compare_mode);
    if (*sweep_cmd) return cmd_sweep(sweep_opts, sweep_alphas, sweep_betas, sweep_etas);
    if (*oracle_cmd) return cmd_oracle(oracle_opts);
    if (*check_cmd) return cmd_check(check_seed, check_trials);
    if (*preset_cmd) return cmd_preset(preset_name);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const IntegratorError& e) {
    std::cerr << "numerical abort at step " << e.step << ": " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
