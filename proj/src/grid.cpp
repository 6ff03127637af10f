#include "sigma_vortex/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace sigma_vortex {
namespace {

std::int64_t lattice_key(long i, long j) {
  return (static_cast<std::int64_t>(i) << 32) ^ static_cast<std::int64_t>(static_cast<std::uint32_t>(j));
}

}  // namespace

RadialGrid RadialGrid::graded(double r_max, std::size_t node_count, RadialGrading grading) {
  if (node_count < 3) throw Error(ErrorKind::grid, "radial grid needs at least 3 nodes");
  if (!(r_max > 0.0)) throw Error(ErrorKind::grid, "radial grid needs R_max > 0");
  if (!(grading.core > 0.0)) throw Error(ErrorKind::grid, "radial grading core must be positive");

  RadialGrid grid;
  grid.core_ = grading.core;
  const std::size_t n = node_count - 1;
  const double xi_max = std::asinh(r_max / grading.core);
  grid.xi_step_ = xi_max / static_cast<double>(n);

  grid.nodes_.resize(node_count);
  std::vector<double> jacobian(node_count);  // dr/dxi
  for (std::size_t k = 0; k <= n; ++k) {
    const double xi = grid.xi_step_ * static_cast<double>(k);
    grid.nodes_[k] = grading.core * std::sinh(xi);
    jacobian[k] = grading.core * std::cosh(xi);
  }
  grid.nodes_.front() = 0.0;
  grid.nodes_.back() = r_max;

  grid.edges_.resize(node_count + 1);
  grid.edges_.front() = 0.0;
  grid.edges_.back() = r_max;
  for (std::size_t k = 1; k <= n; ++k) {
    grid.edges_[k] = 0.5 * (grid.nodes_[k - 1] + grid.nodes_[k]);
  }

  grid.cell_weights_.resize(node_count);
  grid.trapezoid_weights_.resize(node_count);
  for (std::size_t k = 0; k <= n; ++k) {
    const double lo = grid.edges_[k];
    const double hi = grid.edges_[k + 1];
    grid.cell_weights_[k] = 0.5 * (hi - lo) * (hi + lo);
    const double end_factor = (k == 0 || k == n) ? 0.5 : 1.0;
    grid.trapezoid_weights_[k] = end_factor * grid.xi_step_ * grid.nodes_[k] * jacobian[k];
  }
  return grid;
}

double RadialGrid::integrate(const std::vector<double>& values) const {
  if (values.size() != size()) throw Error(ErrorKind::grid, "field size mismatch");
  double sum = 0.0;
  for (std::size_t k = 0; k < size(); ++k) sum += trapezoid_weights_[k] * values[k];
  return sum;
}

RadialGrid build_radial_grid(const VortexConfig& config, double r_max, std::size_t node_count,
                             RadialGrading grading) {
  if (!config.all_at_origin()) {
    throw Error(ErrorKind::grid, "radial path requires coincident vortices at the origin");
  }
  if (r_max < 4.0 * config.r0()) {
    std::ostringstream msg;
    msg << "R_max = " << r_max << " is below 4 r0 = " << 4.0 * config.r0();
    throw Error(ErrorKind::grid, msg.str());
  }
  return RadialGrid::graded(r_max, node_count, grading);
}

std::size_t estimate_disk_nodes(double r_max, double h) {
  const double span = r_max / h + 1.0;
  return static_cast<std::size_t>(std::numbers::pi * span * span);
}

DiskGrid DiskGrid::cartesian(double r_max, double h, std::size_t max_nodes) {
  if (!(h > 0.0) || !(r_max > h)) throw Error(ErrorKind::grid, "disk grid needs 0 < h < R_max");
  const std::size_t estimate = estimate_disk_nodes(r_max, h);
  if (estimate > max_nodes) {
    std::ostringstream msg;
    msg << "disk grid memory guard: about " << estimate << " nodes exceeds the cap of "
        << max_nodes << " (raise h or the cap)";
    throw Error(ErrorKind::grid, msg.str());
  }

  DiskGrid grid;
  grid.h_ = h;
  grid.r_max_ = r_max;
  const long reach = static_cast<long>(std::ceil(r_max / h + 0.5)) + 1;
  grid.points_.reserve(estimate);

  // Row-major in (j, i) so that node order is deterministic.
  for (long j = -reach; j <= reach; ++j) {
    for (long i = -reach; i <= reach; ++i) {
      const Point2 p{static_cast<double>(i) * h, static_cast<double>(j) * h};
      const Box box{p.x - 0.5 * h, p.x + 0.5 * h, p.y - 0.5 * h, p.y + 0.5 * h};
      if (min_distance({}, box) >= r_max) continue;
      const double area = box_disk_area(box, r_max);
      if (!(area > 0.0)) continue;
      const auto index = static_cast<std::uint32_t>(grid.points_.size());
      grid.index_.emplace(lattice_key(i, j), index);
      grid.points_.push_back(p);
      grid.lattice_.emplace_back(i, j);
      grid.areas_.push_back(area);
      const double arc =
          max_distance({}, box) > r_max ? circle_arc_in_box({}, r_max, box) : 0.0;
      grid.boundary_arc_.push_back(arc);
      if (arc > 0.0) grid.boundary_nodes_.push_back(index);
    }
  }

  for (std::size_t k = 0; k < grid.points_.size(); ++k) {
    const auto [i, j] = grid.lattice_[k];
    const Point2 p = grid.points_[k];
    // East and north neighbours; the shared face is perpendicular to the link.
    const long east = grid.find(i + 1, j);
    if (east >= 0) {
      const double x = p.x + 0.5 * h;
      const double len = segment_disk_length({x, p.y - 0.5 * h}, {x, p.y + 0.5 * h}, r_max);
      if (len > 0.0) {
        grid.faces_.push_back({static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(east), len});
      }
    }
    const long north = grid.find(i, j + 1);
    if (north >= 0) {
      const double y = p.y + 0.5 * h;
      const double len = segment_disk_length({p.x - 0.5 * h, y}, {p.x + 0.5 * h, y}, r_max);
      if (len > 0.0) {
        grid.faces_.push_back({static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(north), len});
      }
    }
  }
  return grid;
}

Box DiskGrid::cell_box(std::size_t k) const {
  const Point2 p = points_[k];
  return {p.x - 0.5 * h_, p.x + 0.5 * h_, p.y - 0.5 * h_, p.y + 0.5 * h_};
}

long DiskGrid::find(long i, long j) const {
  const auto it = index_.find(lattice_key(i, j));
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

long DiskGrid::nearest_node(Point2 p) const {
  return find(std::lround(p.x / h_), std::lround(p.y / h_));
}

DiskGrid build_disk_grid(const VortexConfig& config, double r_max, double h,
                         DiskGridOptions options) {
  if (options.enforce_resolution) {
    if (h > config.varrho() / 8.0) {
      std::ostringstream msg;
      msg << "h too coarse for cutoff annulus: h = " << h << " > varrho/8 = " << config.varrho() / 8.0;
      throw Error(ErrorKind::grid, msg.str());
    }
    if (r_max < 4.0 * config.r0()) {
      std::ostringstream msg;
      msg << "R_max = " << r_max << " is below 4 r0 = " << 4.0 * config.r0();
      throw Error(ErrorKind::grid, msg.str());
    }
  }
  DiskGrid grid = DiskGrid::cartesian(r_max, h, options.max_nodes);

  std::vector<Point2> snapped;
  for (const auto* group : {&config.poles(), &config.zeros()}) {
    for (const Center& c : *group) {
      const Point2 lattice{std::round(c.position.x / h) * h, std::round(c.position.y / h) * h};
      grid.snap_offsets_.push_back(lattice - c.position);
      snapped.push_back(lattice);
    }
  }
  grid.snapped_ = config.with_positions(snapped);
  grid.has_config_ = true;
  return grid;
}

}  // namespace sigma_vortex
