#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "sigma_vortex/config.hpp"
#include "sigma_vortex/geometry.hpp"

namespace sigma_vortex {

/// r = core * sinh(xi) on a uniform xi grid: spacing ~ core * dxi near the
/// origin (uniform), ~ r * dxi once r >> core (logarithmic).
struct RadialGrading {
  double core = 0.01;
};

/// Nodes 0 = r_0 < r_1 < ... < r_n = R_max. Two weight sets integrate
/// f(r) r dr over [0, R_max]:
///  - cell_weights: control-volume measure (r_{k+1/2}^2 - r_{k-1/2}^2) / 2,
///    exact for f = 1 and the measure the finite-volume solver conserves;
///  - trapezoid_weights: trapezoid rule in the graded variable xi, spectrally
///    accurate for smooth integrands that decay at R_max.
class RadialGrid {
 public:
  static RadialGrid graded(double r_max, std::size_t node_count, RadialGrading grading = {});

  std::size_t size() const noexcept { return nodes_.size(); }
  double r_max() const noexcept { return nodes_.back(); }
  double core() const noexcept { return core_; }
  double xi_step() const noexcept { return xi_step_; }

  const std::vector<double>& nodes() const noexcept { return nodes_; }
  /// Control-volume edges: edges[k] and edges[k+1] bound node k.
  const std::vector<double>& edges() const noexcept { return edges_; }
  const std::vector<double>& cell_weights() const noexcept { return cell_weights_; }
  const std::vector<double>& trapezoid_weights() const noexcept { return trapezoid_weights_; }

  double integrate(const std::vector<double>& values) const;  // trapezoid, sum f r dr

 private:
  double core_ = 0.0;
  double xi_step_ = 0.0;
  std::vector<double> nodes_;
  std::vector<double> edges_;
  std::vector<double> cell_weights_;
  std::vector<double> trapezoid_weights_;
};

/// Radial grid for a configuration whose poles and zeros all sit at the origin.
RadialGrid build_radial_grid(const VortexConfig& config, double r_max, std::size_t node_count,
                             RadialGrading grading = {});

struct DiskGridOptions {
  std::size_t max_nodes = 4'000'000;
  /// Enforce h <= varrho / 8 and R_max >= 4 r0.
  bool enforce_resolution = true;
};

/// Cartesian nodes (i h, j h) whose cell [x -+ h/2] x [y -+ h/2] meets the
/// open disk B_{R_max}(0). Cell areas, face lengths and the boundary arc are
/// clipped exactly to the disk.
class DiskGrid {
 public:
  struct Face {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    double length = 0.0;  // part of the shared cell face inside the disk
  };

  static DiskGrid cartesian(double r_max, double h, std::size_t max_nodes = 4'000'000);

  std::size_t size() const noexcept { return points_.size(); }
  double h() const noexcept { return h_; }
  double r_max() const noexcept { return r_max_; }

  const std::vector<Point2>& points() const noexcept { return points_; }
  const std::vector<double>& cell_areas() const noexcept { return areas_; }
  const std::vector<Face>& faces() const noexcept { return faces_; }
  /// Arc length of the outer circle inside each cell (0 for interior cells).
  const std::vector<double>& boundary_arc() const noexcept { return boundary_arc_; }
  const std::vector<std::uint32_t>& boundary_nodes() const noexcept { return boundary_nodes_; }

  Box cell_box(std::size_t k) const;
  /// Index of the node at integer lattice coordinates, or -1.
  long find(long i, long j) const;
  long nearest_node(Point2 p) const;
  std::pair<long, long> lattice(std::size_t k) const { return lattice_[k]; }

  /// Offsets applied to pole/zero positions by build_disk_grid (poles first).
  const std::vector<Point2>& snap_offsets() const noexcept { return snap_offsets_; }
  const VortexConfig* snapped_config() const noexcept {
    return has_config_ ? &snapped_ : nullptr;
  }

 private:
  friend DiskGrid build_disk_grid(const VortexConfig&, double, double, DiskGridOptions);

  double h_ = 0.0;
  double r_max_ = 0.0;
  std::vector<Point2> points_;
  std::vector<std::pair<long, long>> lattice_;
  std::vector<double> areas_;
  std::vector<Face> faces_;
  std::vector<double> boundary_arc_;
  std::vector<std::uint32_t> boundary_nodes_;
  std::unordered_map<std::int64_t, std::uint32_t> index_;
  std::vector<Point2> snap_offsets_;
  VortexConfig snapped_;
  bool has_config_ = false;
};

/// Estimated node count for a disk grid, used by the memory guard.
std::size_t estimate_disk_nodes(double r_max, double h);

DiskGrid build_disk_grid(const VortexConfig& config, double r_max, double h,
                         DiskGridOptions options = {});

}  // namespace sigma_vortex
