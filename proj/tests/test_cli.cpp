#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "fde/cli.hpp"
#include "fde/config.hpp"
#include "fde/errors.hpp"
#include "fde/params.hpp"

using namespace fde;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir =
      fs::temp_directory_path() / ("fde_cli_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  return dir;
}

int lab(const std::string& args) {
  const std::string cmd = std::string(FDE_LAB_EXE) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// key -> value of a key = value sidecar
std::map<std::string, std::string> sidecar(const fs::path& p) {
  std::map<std::string, std::string> out;
  std::istringstream in(slurp(p));
  for (std::string line; std::getline(in, line);) {
    const auto eq = line.find(" = ");
    if (eq != std::string::npos) out[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return out;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(item);
  return out;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("config text parsing") {
    const RunConfig c = parse_config(
        "# reference\n"
        "problem.n = 6\n"
        "grid.n_cells = 400   # coarse\n"
        "\n"
        "rates.l_list = 4.8, 5.0\n"
        "solver.boundary = pin_barrier_mid\n"
        "fit.boundary_gate = false\n");
    CHECK(c.n == 6.0);
    CHECK(c.n_cells == 400);
    CHECK(c.l_list == std::vector<double>{4.8, 5.0});
    CHECK(c.solver.boundary == BoundaryMode::pin_barrier_mid);
    CHECK_FALSE(c.boundary_gate);
    CHECK(c.m == 0.2);

    CHECK_THROWS_AS(parse_config("grid.cells = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("problem.n = 6\nproblem.n = 7\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("problem.n 6\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("problem.n = six\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("solver.boundary = periodic\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/fde.cfg"), ConfigError);
    try {
      (void)parse_config("problem.n = 6\n\nbogus = 1\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }

  TEST_CASE("serialize round trip") {
    RunConfig c;
    c.m = 0.25;
    c.r_max = 123.456789012345;
    c.l_list = {4.7, 4.9};
    c.range = TailRange::relaxed;
    c.transform.direction = TransformDirection::to_fujita;
    c.out_dir = "elsewhere";
    const std::string text = serialize(c);
    CHECK(serialize(parse_config(text)) == text);
    CHECK(parse_config(text).r_max == c.r_max);
    CHECK(config_keys().size() == static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')));
  }

  TEST_CASE("config validation") {
    RunConfig c;
    CHECK_NOTHROW(validate(c));
    c.r_probe = 15.0;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = {};
    c.window = FitWindow{1.0, 5.0};
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = {};
    c.l_list = {4.4};
    CHECK_THROWS_AS(validate(c), DomainError);
    c = {};
    c.m = 0.55;
    CHECK_THROWS_AS(validate(c), DomainError);
    c = {};
    c.sigma0_scale = 0.0;
    CHECK_THROWS_AS(validate(c), ConfigError);
  }

  TEST_CASE("run_command maps errors to exit codes") {
    std::ostringstream log;
    RunConfig c;
    c.out_dir = scratch("dispatch").string();
    CHECK(run_command("nonsense", c, log) == exit_invalid);
    c.tail.l = 4.4;
    CHECK(run_command("table", c, log) == exit_invalid);
  }

  TEST_CASE("exit codes of the executable") {
    const std::string out = " --out " + scratch("codes").string();
    CHECK(lab("") == exit_invalid);
    CHECK(lab("bogus") == exit_invalid);
    CHECK(lab("table --set nope=1" + out) == exit_invalid);
    CHECK(lab("barriers" + out) == exit_ok);
    CHECK(lab("barriers --set tail.l=4.4" + out) == exit_invalid);
    CHECK(lab("barriers --set problem.m=0.55" + out) == exit_invalid);
    CHECK(lab("barriers --set tail.l=5.5 --set rates.l_list=5.5" + out) == exit_invalid);
    CHECK(lab("barriers --set barriers.sigma0_scale=2" + out) == exit_failure);
  }

  TEST_CASE("relaxed range beyond L") {
    const fs::path dir = scratch("relaxed");
    const int code =
        lab("barriers --relaxed-l --set tail.l=5.5 --set rates.l_list=5.5 --out " + dir.string());
    auto meta = sidecar(dir / "metadata.txt");
    CHECK(meta["config.tail.range"] == "relaxed");
    CHECK(meta["sub.certificate_passed"] == "1");
    CHECK(meta["super.certificate_passed"] == "1");
    // the initial ordering of the super barrier is only guaranteed up to L
    CHECK(std::stod(meta["sub.ordering_max_violation"]) <= 1e-12);
    CHECK(std::stod(meta["super.ordering_max_violation"]) > 1e-12);
    CHECK(code == exit_failure);
  }

  TEST_CASE("verify suite") {
    const fs::path a = scratch("verify_a");
    CHECK(lab("verify --out " + a.string()) == exit_ok);
    const std::string csv = slurp(a / "verify.csv");
    CHECK(csv.rfind("property,value,tolerance,passed\n", 0) == 0);
    CHECK(csv.find(",0\n") == std::string::npos);

    CHECK(lab("verify --set verify.mu_perturbation=1e-6 --out " + scratch("verify_p").string()) ==
          exit_failure);

    RunConfig c;
    auto residual = [&](double h) {
      c.verify.fd_step = h;
      for (const auto& r : run_verify_suite(c)) {
        if (r.name == "operators.fd_residual") return r.value;
      }
      return std::nan("");
    };
    const double ratio = residual(1e-3) / residual(5e-4);
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
  }

  TEST_CASE("transform round trip through the executable") {
    const fs::path a = scratch("transform_a");
    REQUIRE(lab("transform --set transform.T=2 --set transform.radius=0.7 --set transform.time=0.5 "
                "--set transform.value=3 --out " + a.string()) == exit_ok);
    std::istringstream in(slurp(a / "transform.csv"));
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == "x,t,v");
    const auto f = split(row);
    REQUIRE(f.size() == 3);

    const fs::path b = scratch("transform_b");
    REQUIRE(lab("transform --set transform.direction=from_rescaled --set transform.T=2 "
                "--set transform.radius=" + f[0] + " --set transform.time=" + f[1] +
                " --set transform.value=" + f[2] + " --out " + b.string()) == exit_ok);
    std::istringstream back(slurp(b / "transform.csv"));
    std::getline(back, header);
    std::getline(back, row);
    CHECK(header == "y,tau,u");
    const auto g = split(row);
    REQUIRE(g.size() == 3);
    CHECK(std::abs(std::stod(g[0]) - 0.7) < 1e-12 * 0.7);
    CHECK(std::abs(std::stod(g[1]) - 0.5) < 1e-12);
    CHECK(std::abs(std::stod(g[2]) - 3.0) < 1e-12 * 3.0);

    CHECK(lab("transform --set transform.T=2 --set transform.time=2 --out " +
              scratch("transform_c").string()) == exit_invalid);
  }

  TEST_CASE("exponent table") {
    const fs::path dir = scratch("table");
    REQUIRE(lab("table --out " + dir.string()) == exit_ok);
    std::istringstream in(slurp(dir / "exponents.csv"));
    std::string line;
    std::getline(in, line);
    CHECK(line == "l,kappa,alpha_minus,alpha_plus,gamma,lambda,theta");
    int rows = 0;
    bool saw_reference = false;
    while (std::getline(in, line)) {
      ++rows;
      const auto f = split(line);
      REQUIRE(f.size() == 7);
      if (std::stod(f[0]) == 5.0) {
        saw_reference = true;
        CHECK(std::abs(std::stod(f[1]) - 0.2) < 1e-12);
        CHECK(std::abs(std::stod(f[2]) - 0.5) < 1e-12);
        CHECK(std::abs(std::stod(f[3]) - 0.8) < 1e-12);
        CHECK(std::abs(std::stod(f[4]) - 0.5) < 1e-12);
        CHECK(std::abs(std::stod(f[5]) - 0.5) < 1e-12);
        CHECK(std::abs(std::stod(f[6]) - 14.5 / 7.0) < 1e-12);
      }
    }
    CHECK(rows == 4);
    CHECK(saw_reference);
  }

  TEST_CASE("solve output is reproducible") {
    const fs::path a = scratch("solve_a");
    const fs::path b = scratch("solve_b");
    const std::string args = "solve --set solver.t_end=1 --set fit.t_lo=0.2 --set fit.t_hi=1 --out ";
    CHECK(lab(args + a.string()) == exit_ok);
    CHECK(lab(args + b.string()) == exit_ok);
    for (const char* name : {"solution.csv", "sup_norm.csv", "probe_0.csv", "log_sup_norm.dat"}) {
      CAPTURE(name);
      const std::string x = slurp(a / name);
      CHECK_FALSE(x.empty());
      CHECK(x == slurp(b / name));
    }
    auto meta = sidecar(a / "metadata.txt");
    CHECK(meta.count("run.timestamp") == 1);
    CHECK(meta["solve.sup_off_origin"] == "0");
    CHECK(std::stod(meta["sandwich.max_excess_over_10x_error"]) <= 0.0);
    CHECK(slurp(a / "solution.csv").rfind("t,r,v\n", 0) == 0);
  }
}
