#include "sigalloc/config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace sigalloc {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (value.empty() || end != value.c_str() + value.size() || errno == ERANGE) {
    throw ConfigError("key '" + key + "': expected a number, got '" + value + "'");
  }
  return v;
}

long parse_long(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(value.c_str(), &end, 10);
  if (value.empty() || end != value.c_str() + value.size() || errno == ERANGE) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + value + "'");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (value.empty() || end != value.c_str() + value.size() || errno == ERANGE) {
    throw ConfigError("key '" + key + "': expected an unsigned integer, got '" + value + "'");
  }
  return static_cast<std::uint64_t>(v);
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "yes" || value == "1") return true;
  if (value == "false" || value == "no" || value == "0") return false;
  throw ConfigError("key '" + key + "': expected true/false, got '" + value + "'");
}

// Method line: <label> <nonlinearity-spec> <eta> [mode]. Returns whether the
// mode was given explicitly (otherwise the caller fills in the run default).
bool parse_method(const std::string& value, StepMode fallback, MethodSpec& out) {
  const std::vector<std::string> t = tokens(value);
  if (t.size() < 3 || t.size() > 4) {
    throw ConfigError("method '" + value + "': expected <label> <nonlinearity> <eta> [mode]");
  }
  out.label = t[0];
  out.nl = parse_nonlinearity(t[1]);
  out.eta = parse_double("method eta", t[2]);
  if (t.size() == 4) {
    out.mode = parse_mode(t[3]);
    return true;
  }
  out.mode = fallback;
  return false;
}

// Shared by the file parser and the --set path. `inherits` (parser only)
// tracks methods that should pick up the final top-level mode.
void assign(ExperimentConfig& cfg, const std::string& key, const std::string& value,
            std::vector<char>* inherits) {
  if (key == "n") {
    const long v = parse_long(key, value);
    if (v < 1) throw ConfigError("key 'n': must be >= 1");
    cfg.n = static_cast<std::size_t>(v);
  } else if (key == "demand") {
    cfg.demand = parse_double(key, value);
  } else if (key == "master_seed") {
    cfg.master_seed = parse_u64(key, value);
  } else if (key == "steps") {
    cfg.steps = parse_long(key, value);
  } else if (key == "mode") {
    cfg.mode = parse_mode(value);
    if (inherits == nullptr) {
      for (MethodSpec& m : cfg.methods) m.mode = cfg.mode;
    }
  } else if (key == "h") {
    cfg.h = parse_double(key, value);
  } else if (key == "record_every") {
    cfg.record_every = parse_long(key, value);
  } else if (key == "cost.a_lo") {
    cfg.cost.a_lo = parse_double(key, value);
  } else if (key == "cost.a_hi") {
    cfg.cost.a_hi = parse_double(key, value);
  } else if (key == "cost.c_lin_lo") {
    cfg.cost.c_lin_lo = parse_double(key, value);
  } else if (key == "cost.c_lin_hi") {
    cfg.cost.c_lin_hi = parse_double(key, value);
  } else if (key == "cost.penalty") {
    if (value == "none") cfg.cost.penalty.kind = PenaltyKind::None;
    else if (value == "power") cfg.cost.penalty.kind = PenaltyKind::Power;
    else if (value == "log_smooth") cfg.cost.penalty.kind = PenaltyKind::LogSmooth;
    else throw ConfigError("key 'cost.penalty': expected none/power/log_smooth, got '" + value + "'");
  } else if (key == "cost.sigma") {
    cfg.cost.penalty.sigma = parse_double(key, value);
  } else if (key == "cost.rho") {
    cfg.cost.penalty.rho = parse_double(key, value);
  } else if (key == "cost.c") {
    cfg.cost.penalty.c = static_cast<int>(parse_long(key, value));
  } else if (key == "cost.lower") {
    cfg.cost.penalty.lower = parse_double(key, value);
  } else if (key == "cost.upper") {
    cfg.cost.penalty.upper = parse_double(key, value);
  } else if (key == "graph.p") {
    cfg.graph.p = parse_double(key, value);
  } else if (key == "graph.weights") {
    if (value == "unit") cfg.graph.weights = WeightKind::Unit;
    else if (value == "uniform") cfg.graph.weights = WeightKind::UniformRandom;
    else throw ConfigError("key 'graph.weights': expected unit/uniform, got '" + value + "'");
  } else if (key == "graph.count") {
    const long v = parse_long(key, value);
    if (v < 1) throw ConfigError("key 'graph.count': must be >= 1");
    cfg.graph.count = static_cast<std::size_t>(v);
  } else if (key == "graph.dwell") {
    cfg.graph.dwell = parse_double(key, value);
  } else if (key == "graph.split_components") {
    cfg.graph.split_components = parse_bool(key, value);
  } else if (key == "oracle.feas_tol") {
    cfg.oracle.feas_tol = parse_double(key, value);
  } else if (key == "oracle.grad_tol") {
    cfg.oracle.grad_tol = parse_double(key, value);
  } else if (key == "oracle.max_iterations") {
    const long v = parse_long(key, value);
    if (v < 1) throw ConfigError("key 'oracle.max_iterations': must be >= 1");
    cfg.oracle.max_iterations = static_cast<std::size_t>(v);
  } else if (key == "output.name") {
    cfg.output_name = value;
  } else if (key == "method") {
    MethodSpec m;
    const bool explicit_mode = parse_method(value, cfg.mode, m);
    cfg.methods.push_back(std::move(m));
    if (inherits != nullptr) inherits->push_back(explicit_mode ? 0 : 1);
  } else if (key == "eta") {
    if (cfg.methods.empty()) throw ConfigError("key 'eta': config has no methods to retune");
    const double v = parse_double(key, value);
    for (MethodSpec& m : cfg.methods) m.eta = v;
  } else if (key == "alpha" || key == "beta") {
    const double v = parse_double(key, value);
    std::size_t touched = 0;
    for (MethodSpec& m : cfg.methods) {
      if (m.nl.kind() != FlowKind::CompositeSignum) continue;
      try {
        m.nl = key == "alpha" ? Nonlinearity::composite(v, m.nl.beta())
                              : Nonlinearity::composite(m.nl.alpha(), v);
      } catch (const std::invalid_argument& e) {
        throw ConfigError("key '" + key + "': " + e.what());
      }
      ++touched;
    }
    if (touched == 0) throw ConfigError("key '" + key + "': no composite method to retune");
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

} // namespace

Nonlinearity parse_nonlinearity(const std::string& spec) {
  const std::vector<std::string> parts = split(spec, ':');
  const std::string& kind = parts[0];
  try {
    if (kind == "linear" && parts.size() == 1) return Nonlinearity::linear();
    if (kind == "composite" && parts.size() == 3) {
      return Nonlinearity::composite(parse_double("alpha", parts[1]), parse_double("beta", parts[2]));
    }
    if (kind == "finite_time" && parts.size() == 2) {
      return Nonlinearity::finite_time(parse_double("nu", parts[1]));
    }
    if (kind == "saturated" && parts.size() == 2) {
      return Nonlinearity::saturated(parse_double("delta", parts[1]));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError("nonlinearity '" + spec + "': " + e.what());
  }
  throw ConfigError("nonlinearity '" + spec +
                    "': expected linear, composite:<alpha>:<beta>, finite_time:<nu>, or saturated:<delta>");
}

StepMode parse_mode(const std::string& name) {
  if (name == "discrete") return StepMode::Discrete;
  if (name == "euler") return StepMode::ContinuousEuler;
  if (name == "rk4") return StepMode::ContinuousRk4;
  throw ConfigError("mode '" + name + "': expected discrete, euler, or rk4");
}

const char* mode_name(StepMode mode) {
  switch (mode) {
    case StepMode::Discrete: return "discrete";
    case StepMode::ContinuousEuler: return "euler";
    case StepMode::ContinuousRk4: return "rk4";
  }
  return "?";
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::vector<char> inherits; // parallels cfg.methods
  std::istringstream in(text);
  std::string line;
  std::string section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "cost" && section != "graph" && section != "methods" && section != "oracle" &&
          section != "output") {
        throw ConfigError("line " + std::to_string(lineno) + ": unknown section [" + section + "]");
      }
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    std::string full;
    if (section.empty()) full = key;
    else if (section == "methods") full = key; // only `method` lives here
    else full = section + "." + key;
    if (section == "methods" && key != "method") {
      throw ConfigError("line " + std::to_string(lineno) + ": [methods] only accepts `method` entries");
    }
    try {
      assign(cfg, full, value, &inherits);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  for (std::size_t i = 0; i < cfg.methods.size(); ++i) {
    if (inherits[i]) cfg.methods[i].mode = cfg.mode;
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void apply_override(ExperimentConfig& cfg, const std::string& assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override '" + assignment + "': expected key=value");
  }
  assign(cfg, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)), nullptr);
}

namespace {

const char kFig1[] = R"(# Four-method comparison on a static random network (50 agents, demand 3000).
n = 50
demand = 3000
master_seed = 42
steps = 100000
mode = euler
h = 1e-3

[cost]
a_lo = 0
a_hi = 0.3
c_lin_lo = 0
c_lin_hi = 10
penalty = log_smooth
sigma = 1
rho = 1
lower = 20
upper = 105

[graph]
p = 0.2
weights = unit
count = 1
dwell = 1

[methods]
method = composite composite:0.3:1.7 0.2
method = linear linear 0.2
method = finite_time finite_time:0.7 0.2
method = saturated saturated:1 0.2

[output]
name = fig1
)";

const char kFig2[] = R"(# Composite-parameter grid on a switching schedule: six snapshots, each one
# disconnected on its own, with a connected six-graph union; one second dwell.
n = 50
demand = 3000
master_seed = 7
steps = 60000
mode = euler
h = 1e-3

[cost]
a_lo = 0
a_hi = 0.3
c_lin_lo = 0
c_lin_hi = 10
penalty = log_smooth
sigma = 1
rho = 1
lower = 20
upper = 105

[graph]
p = 0.2
weights = unit
count = 6
dwell = 1
split_components = true

[methods]
method = a0.3_b1.0 composite:0.3:1.0 0.1
method = a0.3_b1.4 composite:0.3:1.4 0.1
method = a0.3_b1.7 composite:0.3:1.7 0.1
method = a0.6_b1.7 composite:0.6:1.7 0.1
method = a1.0_b1.7 composite:1.0:1.7 0.1

[output]
name = fig2
)";

} // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"fig1", "fig2"};
  return names;
}

std::string preset_text(const std::string& name) {
  if (name == "fig1") return kFig1;
  if (name == "fig2") return kFig2;
  throw ConfigError("unknown preset '" + name + "' (have: fig1, fig2)");
}

ExperimentConfig load_preset(const std::string& name) { return parse_config(preset_text(name)); }

} // namespace sigalloc
