#include "fde/io.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "fde/errors.hpp"

namespace fde {

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw Error("cannot create directory " + path.parent_path().string());
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw Error("write failed: " + path.string());
}

std::string solution_csv(const RadialSolution& sol) {
  std::string s = "t,r,v\n";
  for (std::size_t k = 0; k < sol.times.size(); ++k) {
    const std::string t = fmt17(sol.times[k]);
    for (std::size_t i = 0; i < sol.r.size(); ++i) {
      s += t + ',' + fmt17(sol.r[i]) + ',' + fmt17(sol.fields[k][i]) + '\n';
    }
  }
  return s;
}

std::string sup_norm_csv(const RadialSolution& sol) {
  std::string s = "t,sup_norm\n";
  for (std::size_t k = 0; k < sol.times.size(); ++k) {
    s += fmt17(sol.times[k]) + ',' + fmt17(sol.sup_norm[k]) + '\n';
  }
  return s;
}

std::string probe_csv(const RadialSolution& sol, std::size_t index) {
  std::string s = "t,r_probe,gap\n";
  const std::string r = fmt17(sol.probe_radii.at(index));
  const auto& gap = sol.probe_gap.at(index);
  for (std::size_t k = 0; k < sol.times.size(); ++k) {
    s += fmt17(sol.times[k]) + ',' + r + ',' + fmt17(gap[k]) + '\n';
  }
  return s;
}

std::string certificate_csv(const CertificateReport& cert) {
  std::string s = "xi,A_psi\n";
  for (std::size_t i = 0; i < cert.xi.size(); ++i) {
    if (cert.a_psi[i] != cert.a_psi[i]) continue;
    s += fmt17(cert.xi[i]) + ',' + fmt17(cert.a_psi[i]) + '\n';
  }
  return s;
}

std::string two_column(const std::string& title, std::span<const double> x,
                       std::span<const double> y) {
  std::string s = "# " + title + "\n";
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    s += fmt17(x[i]) + ' ' + fmt17(y[i]) + '\n';
  }
  return s;
}

std::string metadata_sidecar(const std::map<std::string, std::string>& entries) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
  std::ostringstream os;
  os << "run.timestamp = " << stamp << '\n';
  for (const auto& [k, v] : entries) os << k << " = " << v << '\n';
  return os.str();
}

}  // namespace fde
