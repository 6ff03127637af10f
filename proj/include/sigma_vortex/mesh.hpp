#pragma once

#include <cstdint>
#include <vector>

#include "sigma_vortex/grid.hpp"

namespace sigma_vortex {

/// Finite-volume view of a grid: control volumes, symmetric flux links and
/// outer-boundary weights.
struct FvMesh {
  enum class Kind { radial, disk };

  struct Link {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    double coeff = 0.0;  // face length / node distance
  };

  Kind kind = Kind::radial;
  std::vector<Point2> points;
  std::vector<double> radius;
  std::vector<double> volume;
  std::vector<Link> links;
  /// Boundary arc length / R_max at each node; sums to 2 pi.
  std::vector<double> boundary;
  /// Quadrature weights for integrals over B_{R_max}, independent of the
  /// control volumes (trapezoid in the graded variable on radial grids).
  std::vector<double> quadrature;
  double r_max = 0.0;
  /// Radial grids keep links in order (k, k + 1), which the tridiagonal
  /// solver relies on.
  std::size_t size() const noexcept { return points.size(); }
};

FvMesh make_mesh(const RadialGrid& grid);
FvMesh make_mesh(const DiskGrid& grid);

}  // namespace sigma_vortex
