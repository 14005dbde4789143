#include "fde/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "fde/errors.hpp"
#include "fde/grid.hpp"

namespace fde {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc{} || ptr != end) throw ConfigError(key + ": not a number: '" + v + "'");
  return x;
}

std::size_t to_size(const std::string& key, const std::string& v) {
  std::size_t x = 0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError(key + ": not a non-negative integer: '" + v + "'");
  }
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key + ": not a boolean: '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string list(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += num(xs[i]);
  }
  return s;
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& v)>;
using Getter = std::function<std::string(const RunConfig&)>;

struct Entry {
  std::string key;
  Setter set;
  Getter get;
};

#define FDE_REAL(KEY, FIELD)                                                                  \
  Entry{KEY, [](RunConfig& c, const std::string& k, const std::string& v) {                  \
          c.FIELD = to_double(k, v);                                                          \
        },                                                                                    \
        [](const RunConfig& c) { return num(c.FIELD); }}
#define FDE_SIZE(KEY, FIELD)                                                                  \
  Entry{KEY, [](RunConfig& c, const std::string& k, const std::string& v) {                  \
          c.FIELD = to_size(k, v);                                                            \
        },                                                                                    \
        [](const RunConfig& c) { return std::to_string(c.FIELD); }}
#define FDE_INT(KEY, FIELD)                                                                   \
  Entry{KEY, [](RunConfig& c, const std::string& k, const std::string& v) {                  \
          c.FIELD = static_cast<int>(to_size(k, v));                                          \
        },                                                                                    \
        [](const RunConfig& c) { return std::to_string(c.FIELD); }}
#define FDE_BOOL(KEY, FIELD)                                                                  \
  Entry{KEY, [](RunConfig& c, const std::string& k, const std::string& v) {                  \
          c.FIELD = to_bool(k, v);                                                            \
        },                                                                                    \
        [](const RunConfig& c) { return std::string(c.FIELD ? "true" : "false"); }}

const std::vector<Entry>& table() {
  static const std::vector<Entry> entries = {
      FDE_REAL("problem.n", n),
      FDE_REAL("problem.m", m),
      Entry{"problem.dimension_mode",
            [](RunConfig& c, const std::string& k, const std::string& v) {
              if (v == "strict") c.dimension = DimensionMode::strict;
              else if (v == "relaxed") c.dimension = DimensionMode::relaxed;
              else throw ConfigError(k + ": expected strict|relaxed, got '" + v + "'");
            },
            [](const RunConfig& c) {
              return std::string(c.dimension == DimensionMode::strict ? "strict" : "relaxed");
            }},
      FDE_REAL("tail.l", tail.l),
      FDE_REAL("tail.c_lo", tail.c_lo),
      FDE_REAL("tail.c_hi", tail.c_hi),
      FDE_REAL("tail.amp", tail.amp),
      Entry{"tail.range",
            [](RunConfig& c, const std::string& k, const std::string& v) {
              if (v == "theorem") c.range = TailRange::theorem;
              else if (v == "relaxed") c.range = TailRange::relaxed;
              else throw ConfigError(k + ": expected theorem|relaxed, got '" + v + "'");
            },
            [](const RunConfig& c) { return to_string(c.range); }},
      FDE_SIZE("grid.n_cells", n_cells),
      FDE_REAL("grid.r_max", r_max),
      FDE_REAL("grid.ratio", ratio),
      FDE_REAL("solver.dt_init", solver.dt_init),
      FDE_REAL("solver.dt_max", solver.dt_max),
      FDE_REAL("solver.newton_tol", solver.newton_tol),
      FDE_INT("solver.newton_max_iter", solver.newton_max_iter),
      FDE_REAL("solver.t_end", solver.t_end),
      Entry{"solver.boundary",
            [](RunConfig& c, const std::string& k, const std::string& v) {
              try {
                c.solver.boundary = boundary_mode_from_string(v);
              } catch (const DomainError& e) {
                throw ConfigError(k + ": " + e.what());
              }
            },
            [](const RunConfig& c) { return to_string(c.solver.boundary); }},
      FDE_REAL("solver.output_stride", solver.output_stride),
      FDE_BOOL("solver.adaptive", solver.adaptive),
      FDE_BOOL("solver.parallel", solver.parallel),
      FDE_INT("solver.max_halvings", solver.max_halvings),
      FDE_REAL("fit.t_lo", window.t_lo),
      FDE_REAL("fit.t_hi", window.t_hi),
      FDE_REAL("fit.r_probe", r_probe),
      FDE_BOOL("fit.boundary_gate", boundary_gate),
      Entry{"rates.l_list",
            [](RunConfig& c, const std::string& k, const std::string& v) {
              c.l_list = to_list(k, v);
            },
            [](const RunConfig& c) { return list(c.l_list); }},
      FDE_REAL("barriers.a_start", barriers.a_start),
      FDE_REAL("barriers.margin", barriers.margin),
      FDE_INT("barriers.max_iterations", barriers.max_iterations),
      FDE_REAL("barriers.sigma0_scale", sigma0_scale),
      FDE_REAL("verify.fd_step", verify.fd_step),
      FDE_REAL("verify.mu_perturbation", verify.mu_perturbation),
      FDE_SIZE("verify.random_points", verify.random_points),
      Entry{"transform.direction",
            [](RunConfig& c, const std::string& k, const std::string& v) {
              if (v == "to_rescaled") c.transform.direction = TransformDirection::to_rescaled;
              else if (v == "from_rescaled") c.transform.direction = TransformDirection::from_rescaled;
              else if (v == "to_fujita") c.transform.direction = TransformDirection::to_fujita;
              else throw ConfigError(k + ": expected to_rescaled|from_rescaled|to_fujita");
            },
            [](const RunConfig& c) { return to_string(c.transform.direction); }},
      FDE_REAL("transform.T", transform.T),
      FDE_REAL("transform.radius", transform.radius),
      FDE_REAL("transform.time", transform.time),
      FDE_REAL("transform.value", transform.value),
      Entry{"output.dir",
            [](RunConfig& c, const std::string&, const std::string& v) { c.out_dir = v; },
            [](const RunConfig& c) { return c.out_dir; }},
  };
  return entries;
}

#undef FDE_REAL
#undef FDE_SIZE
#undef FDE_INT
#undef FDE_BOOL

const Entry& find(const std::string& key) {
  for (const auto& e : table()) {
    if (e.key == key) return e;
  }
  throw ConfigError("unknown config key '" + key + "'");
}

}  // namespace

std::string to_string(TransformDirection d) {
  switch (d) {
    case TransformDirection::to_rescaled: return "to_rescaled";
    case TransformDirection::from_rescaled: return "from_rescaled";
    case TransformDirection::to_fujita: return "to_fujita";
  }
  return "?";
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& e : table()) k.push_back(e.key);
    return k;
  }();
  return keys;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  find(key).set(cfg, key, value);
}

RunConfig parse_config(const std::string& text, RunConfig base) {
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) {
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    try {
      apply_setting(base, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

void validate(const RunConfig& cfg) {
  const ProblemParams p = make_params(cfg.n, cfg.m, cfg.dimension);
  validate_tail(p, cfg.tail, cfg.range);
  for (double l : cfg.l_list) {
    TailSpec t = cfg.tail;
    t.l = l;
    validate_tail(p, t, cfg.range);
  }
  const Grid g = make_grid(p, cfg.r_max, cfg.n_cells, cfg.ratio);
  SolverConfig sc = cfg.solver;
  sc.probes = {cfg.r_probe};
  validate(sc, g);
  if (!(cfg.r_probe <= cfg.r_max / 4.0)) {
    throw ConfigError("fit.r_probe must not exceed grid.r_max/4");
  }
  if (!(cfg.window.t_lo >= 0.0 && cfg.window.t_lo < cfg.window.t_hi &&
        cfg.window.t_hi <= cfg.solver.t_end)) {
    throw ConfigError("fit window must satisfy 0 <= t_lo < t_hi <= solver.t_end");
  }
  if (!(cfg.sigma0_scale > 0.0)) throw ConfigError("barriers.sigma0_scale must be positive");
  if (!(cfg.barriers.margin > 0.0 && cfg.barriers.margin < 1.0)) {
    throw ConfigError("barriers.margin must lie in (0,1)");
  }
  if (!(cfg.barriers.a_start > 0.0)) throw ConfigError("barriers.a_start must be positive");
  if (!(cfg.verify.fd_step > 0.0)) throw ConfigError("verify.fd_step must be positive");
  if (!(cfg.transform.T > 0.0)) throw ConfigError("transform.T must be positive");
}

std::string serialize(const RunConfig& cfg) {
  std::string s;
  for (const auto& e : table()) s += e.key + " = " + e.get(cfg) + "\n";
  return s;
}

RateTableConfig rate_table_config(const RunConfig& cfg) {
  RateTableConfig rc;
  rc.tail = cfg.tail;
  rc.r_max = cfg.r_max;
  rc.n_cells = cfg.n_cells;
  rc.ratio = cfg.ratio;
  rc.solver = cfg.solver;
  rc.window = cfg.window;
  rc.r_probe = cfg.r_probe;
  rc.barriers = cfg.barriers;
  rc.barriers.range = cfg.range;
  rc.boundary_gate = cfg.boundary_gate;
  return rc;
}

}  // namespace fde
