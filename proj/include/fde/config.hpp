#pragma once

#include <string>
#include <vector>

#include "fde/barriers.hpp"
#include "fde/params.hpp"
#include "fde/rates.hpp"
#include "fde/solver.hpp"

// Flat key=value run configuration with dotted section keys, e.g.
//
//   problem.n = 6
//   grid.n_cells = 800
//   rates.l_list = 4.6, 4.8, 5.0, 5.1
//
// '#' starts a comment. Unknown and repeated keys are errors.

namespace fde {

enum class TransformDirection { to_rescaled, from_rescaled, to_fujita };

struct TransformInput {
  TransformDirection direction = TransformDirection::to_rescaled;
  double T = 1.0;
  double radius = 1.0;
  double time = 0.0;
  double value = 1.0;
};

struct VerifyConfig {
  double fd_step = 1e-3;
  double mu_perturbation = 0.0;  // added to mu before the mu(1-m)=2 check
  std::size_t random_points = 1000;
};

struct RunConfig {
  double n = 6.0;
  double m = 0.2;
  DimensionMode dimension = DimensionMode::strict;
  TailSpec tail{5.0, 0.5, 0.5, 1.0};
  TailRange range = TailRange::theorem;
  double r_max = 40.0;
  std::size_t n_cells = 800;
  double ratio = 1.02;
  SolverConfig solver;
  FitWindow window;
  double r_probe = 5.0;
  bool boundary_gate = true;
  std::vector<double> l_list{4.6, 4.8, 5.0, 5.1};
  BuildOptions barriers;
  double sigma0_scale = 1.0;  // != 1 tampers the built sigma0 (negative control)
  VerifyConfig verify;
  TransformInput transform;
  std::string out_dir = "out";
};

/// Every key accepted by the parser, in a fixed order.
const std::vector<std::string>& config_keys();

/// Sets one key. Throws ConfigError for unknown keys or unparsable values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Parses "key=value" text. Throws ConfigError on syntax errors, unknown or
/// duplicate keys.
RunConfig parse_config(const std::string& text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

/// Checks every module precondition (params, tail, grid, solver, fit window).
/// Throws DomainError / ConfigError.
void validate(const RunConfig& cfg);

/// Key = value lines for every key, values in %.17g.
std::string serialize(const RunConfig& cfg);

RateTableConfig rate_table_config(const RunConfig& cfg);

std::string to_string(TransformDirection d);

}  // namespace fde
