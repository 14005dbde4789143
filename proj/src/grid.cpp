#include "fde/grid.hpp"

#include <cmath>

#include "fde/errors.hpp"

namespace fde {

Grid make_grid(const ProblemParams& p, double r_max, std::size_t n_cells, double ratio) {
  if (!(r_max > 0.0) || !std::isfinite(r_max)) throw DomainError("grid: r_max must be positive");
  if (n_cells < 2) throw DomainError("grid: need at least two cells");
  if (!(ratio >= 1.0 && ratio <= 1.05)) throw DomainError("grid: ratio must lie in [1, 1.05]");

  std::vector<double> nodes(n_cells + 1);
  nodes[0] = 0.0;
  const auto N = static_cast<double>(n_cells);
  const double h0 = ratio == 1.0 ? r_max / N : r_max * (ratio - 1.0) / (std::pow(ratio, N) - 1.0);
  double h = h0;
  for (std::size_t i = 1; i <= n_cells; ++i) {
    nodes[i] = nodes[i - 1] + h;
    h *= ratio;
  }
  nodes.back() = r_max;
  Grid g = make_grid_from_nodes(p, std::move(nodes));
  g.ratio = ratio;
  return g;
}

Grid make_grid_from_nodes(const ProblemParams& p, std::vector<double> nodes) {
  if (nodes.size() < 3 || nodes.front() != 0.0) {
    throw DomainError("grid: need at least three nodes starting at r = 0");
  }
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (!(nodes[i] > nodes[i - 1])) throw DomainError("grid: nodes must be strictly increasing");
  }
  Grid g;
  g.r = std::move(nodes);
  const std::size_t N = g.r.size() - 1;
  g.r_max = g.r.back();
  g.ratio = (g.r[2] - g.r[1]) / (g.r[1] - g.r[0]);
  g.face.resize(N);
  g.face_area.resize(N);
  g.inv_dr.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    g.face[i] = 0.5 * (g.r[i] + g.r[i + 1]);
    g.face_area[i] = std::pow(g.face[i], p.n - 1.0);
    g.inv_dr[i] = 1.0 / (g.r[i + 1] - g.r[i]);
  }
  g.volume.resize(N + 1);
  auto vol = [&](double a, double b) { return (std::pow(b, p.n) - std::pow(a, p.n)) / p.n; };
  g.volume[0] = vol(0.0, g.face[0]);
  for (std::size_t i = 1; i < N; ++i) g.volume[i] = vol(g.face[i - 1], g.face[i]);
  g.volume[N] = vol(g.face[N - 1], g.r_max);
  g.outer_area = std::pow(g.r_max, p.n - 1.0);
  return g;
}

}  // namespace fde
