// fde_lab: batch front-end for the fast diffusion extinction laboratory.
//
//   fde_lab <rates|barriers|solve|verify|transform|table> [--config FILE] [--out DIR]
//           [--relaxed-l] [--seed N] [--set key=value ...]

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fde/cli.hpp"
#include "fde/config.hpp"
#include "fde/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Fast diffusion extinction laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  bool relaxed = false;
  long long seed = 0;  // reserved; every algorithm is deterministic
  std::vector<std::string> overrides;

  for (const auto& name : fde::command_names()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "key=value config file");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_flag("--relaxed-l", relaxed, "accept mu+2 < l < n instead of mu+2 < l <= L");
    sub->add_option("--seed", seed, "reserved, unused");
    sub->add_option("--set", overrides, "override one key, e.g. --set grid.n_cells=400");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fde::exit_invalid;
  }
  (void)seed;

  fde::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = fde::load_config(config_path);
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw fde::ConfigError("--set expects key=value, got " + kv);
      fde::apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
  } catch (const fde::Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return fde::exit_invalid;
  }
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (relaxed) cfg.range = fde::TailRange::relaxed;

  const std::string cmd = app.get_subcommands().front()->get_name();
  return fde::run_command(cmd, cfg, std::cout);
}
