#pragma once

#include <cstddef>
#include <vector>

#include "fde/params.hpp"

namespace fde {

/// Vertex-centred radial grid: nodes r_0 = 0 < r_1 < ... < r_N = r_max with
/// widths growing by `ratio`, control volumes bounded by node midpoints and
/// weighted by r^{n-1}.
struct Grid {
  double r_max = 0.0;
  double ratio = 1.0;
  std::vector<double> r;          // N+1 nodes
  std::vector<double> face;       // N midpoints r_{i+1/2}
  std::vector<double> face_area;  // r_{i+1/2}^{n-1}
  std::vector<double> inv_dr;     // 1/(r_{i+1} - r_i)
  std::vector<double> volume;     // N+1 control volumes, int r^{n-1} dr
  double outer_area = 0.0;        // r_max^{n-1}

  [[nodiscard]] std::size_t n_cells() const { return face.size(); }
  [[nodiscard]] std::size_t n_nodes() const { return r.size(); }
};

/// Throws DomainError unless r_max > 0, n_cells >= 2 and ratio in [1, 1.05].
Grid make_grid(const ProblemParams& p, double r_max, std::size_t n_cells, double ratio = 1.02);

/// Grid with explicitly given nodes (first must be 0, strictly increasing).
Grid make_grid_from_nodes(const ProblemParams& p, std::vector<double> nodes);

}  // namespace fde
