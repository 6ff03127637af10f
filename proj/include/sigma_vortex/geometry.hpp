#pragma once

#include "sigma_vortex/types.hpp"

namespace sigma_vortex {

/// Axis-aligned rectangle [x0, x1] x [y0, y1].
struct Box {
  double x0 = 0.0;
  double x1 = 0.0;
  double y0 = 0.0;
  double y1 = 0.0;
};

/// Area of box intersected with the disk of radius `radius` about the origin.
double box_disk_area(const Box& box, double radius);

/// Length of the circle |x - center| = radius lying inside the box.
double circle_arc_in_box(Point2 center, double radius, const Box& box);

/// Length of the segment [a, b] inside the disk of radius `radius` about the
/// origin.
double segment_disk_length(Point2 a, Point2 b, double radius);

/// Smallest and largest distance from `p` to points of the box.
double min_distance(Point2 p, const Box& box);
double max_distance(Point2 p, const Box& box);

}  // namespace sigma_vortex
