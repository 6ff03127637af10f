#include "sigma_vortex/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace sigma_vortex {
namespace {

// Antiderivative of sqrt(R^2 - x^2) on [-R, R].
double half_chord_integral(double x, double radius) {
  x = std::clamp(x, -radius, radius);
  const double s = std::sqrt(std::max(0.0, radius * radius - x * x));
  return 0.5 * (x * s + radius * radius * std::asin(x / radius));
}

}  // namespace

double box_disk_area(const Box& box, double radius) {
  const double xa = std::max(box.x0, -radius);
  const double xb = std::min(box.x1, radius);
  if (!(xb > xa)) return 0.0;

  // Break [xa, xb] where the vertical extent of the disk crosses y0 or y1;
  // between breaks the clipped height is one closed form.
  std::vector<double> cuts{xa, xb};
  for (double y : {box.y0, box.y1}) {
    if (std::abs(y) < radius) {
      const double xc = std::sqrt(radius * radius - y * y);
      for (double c : {-xc, xc}) {
        if (c > xa && c < xb) cuts.push_back(c);
      }
    }
  }
  std::sort(cuts.begin(), cuts.end());

  double area = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    if (!(b > a)) continue;
    const double xm = 0.5 * (a + b);
    const double sm = std::sqrt(std::max(0.0, radius * radius - xm * xm));
    const bool top_clipped = box.y1 < sm;     // upper limit is y1, else +s
    const bool bottom_clipped = box.y0 > -sm;  // lower limit is y0, else -s
    const double hi = top_clipped ? box.y1 : sm;
    const double lo = bottom_clipped ? box.y0 : -sm;
    if (!(hi > lo)) continue;
    const double chord = half_chord_integral(b, radius) - half_chord_integral(a, radius);
    const double upper = top_clipped ? box.y1 * (b - a) : chord;
    const double lower = bottom_clipped ? box.y0 * (b - a) : -chord;
    area += upper - lower;
  }
  return area;
}

double circle_arc_in_box(Point2 center, double radius, const Box& box) {
  if (!(radius > 0.0)) return 0.0;
  const double tau = 2.0 * std::numbers::pi;
  std::vector<double> angles;
  const auto add_vertical = [&](double x) {
    const double c = (x - center.x) / radius;
    if (std::abs(c) < 1.0) {
      const double a = std::acos(c);
      angles.push_back(a);
      angles.push_back(tau - a);
    }
  };
  const auto add_horizontal = [&](double y) {
    const double s = (y - center.y) / radius;
    if (std::abs(s) < 1.0) {
      const double a = std::asin(s);
      angles.push_back(a < 0.0 ? a + tau : a);
      angles.push_back(std::numbers::pi - a);
    }
  };
  add_vertical(box.x0);
  add_vertical(box.x1);
  add_horizontal(box.y0);
  add_horizontal(box.y1);

  const auto inside = [&](double theta) {
    const double x = center.x + radius * std::cos(theta);
    const double y = center.y + radius * std::sin(theta);
    return x >= box.x0 && x <= box.x1 && y >= box.y0 && y <= box.y1;
  };
  if (angles.empty()) return inside(0.0) ? tau * radius : 0.0;

  std::sort(angles.begin(), angles.end());
  double arc = 0.0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double a = angles[i];
    const double b = (i + 1 < angles.size()) ? angles[i + 1] : angles.front() + tau;
    if (b - a <= 0.0) continue;
    if (inside(0.5 * (a + b))) arc += b - a;
  }
  return arc * radius;
}

double segment_disk_length(Point2 a, Point2 b, double radius) {
  const Point2 d = b - a;
  const double len2 = d.x * d.x + d.y * d.y;
  if (len2 == 0.0) return 0.0;
  // |a + t d|^2 = R^2 solved for t, clipped to [0, 1].
  const double bq = a.x * d.x + a.y * d.y;
  const double cq = a.x * a.x + a.y * a.y - radius * radius;
  const double disc = bq * bq - len2 * cq;
  if (disc <= 0.0) return 0.0;
  const double root = std::sqrt(disc);
  const double t0 = std::max(0.0, (-bq - root) / len2);
  const double t1 = std::min(1.0, (-bq + root) / len2);
  return t1 > t0 ? (t1 - t0) * std::sqrt(len2) : 0.0;
}

double min_distance(Point2 p, const Box& box) {
  const double dx = std::max({box.x0 - p.x, 0.0, p.x - box.x1});
  const double dy = std::max({box.y0 - p.y, 0.0, p.y - box.y1});
  return std::hypot(dx, dy);
}

double max_distance(Point2 p, const Box& box) {
  const double dx = std::max(std::abs(p.x - box.x0), std::abs(p.x - box.x1));
  const double dy = std::max(std::abs(p.y - box.y0), std::abs(p.y - box.y1));
  return std::hypot(dx, dy);
}

}  // namespace sigma_vortex
