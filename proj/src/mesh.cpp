#include "sigma_vortex/mesh.hpp"

#include <numbers>

namespace sigma_vortex {

FvMesh make_mesh(const RadialGrid& grid) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  FvMesh mesh;
  mesh.kind = FvMesh::Kind::radial;
  mesh.r_max = grid.r_max();
  const std::size_t n = grid.size();
  const auto& r = grid.nodes();
  mesh.radius = r;
  mesh.points.reserve(n);
  for (double x : r) mesh.points.push_back({x, 0.0});
  mesh.volume.resize(n);
  mesh.quadrature.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    mesh.volume[k] = two_pi * grid.cell_weights()[k];
    mesh.quadrature[k] = two_pi * grid.trapezoid_weights()[k];
  }
  mesh.links.reserve(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double coeff = two_pi * grid.edges()[k + 1] / (r[k + 1] - r[k]);
    mesh.links.push_back({static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k + 1), coeff});
  }
  mesh.boundary.assign(n, 0.0);
  mesh.boundary.back() = two_pi;
  return mesh;
}

FvMesh make_mesh(const DiskGrid& grid) {
  FvMesh mesh;
  mesh.kind = FvMesh::Kind::disk;
  mesh.r_max = grid.r_max();
  mesh.points = grid.points();
  mesh.radius.reserve(grid.size());
  for (const Point2& p : mesh.points) mesh.radius.push_back(norm(p));
  mesh.volume = grid.cell_areas();
  mesh.quadrature = grid.cell_areas();
  mesh.links.reserve(grid.faces().size());
  for (const auto& face : grid.faces()) {
    mesh.links.push_back({face.a, face.b, face.length / grid.h()});
  }
  mesh.boundary.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    mesh.boundary[k] = grid.boundary_arc()[k] / grid.r_max();
  }
  return mesh;
}

}  // namespace sigma_vortex
