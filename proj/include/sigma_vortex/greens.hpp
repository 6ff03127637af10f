#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sigma_vortex/geometry.hpp"
#include "sigma_vortex/types.hpp"

namespace sigma_vortex {

/// Decay tag |F(x)| <= c2 |x|^{-beta} for sources without compact support.
struct SourceTail {
  double beta = 0.0;
  double c2 = 0.0;
};

/// Piecewise-constant source on square cells. weight[k] is the part of the
/// cell's area that carries F (smaller than (2 half)^2 for clipped cells).
struct SourceField {
  std::vector<Point2> centers;
  std::vector<double> half;
  std::vector<double> weight;
  std::vector<double> value;
  /// F = 0 outside this radius (infinite when only a tail tag is known).
  double support_radius = 0.0;
  std::optional<SourceTail> tail;

  double mass = 0.0;
  Point2 moment{};
  double l1 = 0.0;
  double linf = 0.0;

  std::size_t size() const noexcept { return centers.size(); }
  /// Recompute the cached moments after editing values.
  void refresh();

  /// Uniform lattice of spacing h covering [-extent, extent]^2.
  static SourceField lattice(const std::function<double(Point2)>& f, double extent, double h);
  /// Nested square rings: spacing h on [-inner, inner]^2, doubling spacing
  /// and extent for each further level.
  static SourceField nested(const std::function<double(Point2)>& f, double h, double inner,
                            int levels);
};

/// Exact integral of ln|z - t| over the box [x0, x1] x [y0, y1].
double box_log_integral(const Box& box, Point2 t);

/// (Gamma * F)(x) with Gamma = -(1/2 pi) ln|x|. Cells within three spacings of
/// a target use the exact cell integral of ln; the rest use the midpoint rule.
std::vector<double> gamma_convolve(const SourceField& source, const std::vector<Point2>& targets,
                                   int threads = 1);

/// Points on the given radii at golden-angle increments (deterministic).
std::vector<Point2> ring_targets(const std::vector<double>& radii, double phase = 0.0);

struct Lemma21Report {
  std::vector<double> radii;
  std::vector<double> values;
  /// |Gamma * F| |x| / (R ||F||_1); the bound says <= 1.
  std::vector<double> ratios;
  double max_ratio = 0.0;
  double sup_norm = 0.0;
  /// ||F||_1 + R ln R ||F||_inf, applicable for R >= e.
  double global_bound = 0.0;
  bool global_applicable = false;
  bool decay_pass = false;
  bool global_pass = false;
  bool pass = false;
};

/// Radii at or below 4R are skipped. Throws precondition on a nonzero mean.
Lemma21Report check_lemma21(const SourceField& source, const std::vector<double>& radii,
                            int threads = 1);

struct Lemma22Report {
  std::vector<double> radii;
  std::vector<double> values;
  std::vector<double> envelope;
  double exponent = 0.0;
  double slope = 0.0;
  double envelope_constant = 0.0;
  bool pass = false;
};

/// Envelope |Gamma * F| |x|^{(beta-2)/(beta-1)} must not grow (log-log slope <= 0.05).
Lemma22Report check_lemma22(const SourceField& source, const std::vector<double>& radii,
                            int threads = 1);

/// Random zero-mean source supported in B_R: a few seeded Gaussian bumps of
/// both signs, with the mean removed on the support.
SourceField random_compact_source(std::uint64_t seed, double radius, double h);

/// chi_{B_rho(a)} - chi_{B_rho(-a)} with exact box/disk overlap weights.
SourceField dipole_source(Point2 a, double rho, double h);

/// -2 (1 - 1/R_s) on the unit disk, |x|^{-3} on 1 <= |x| <= R_s (mean zero),
/// on nested rings around [-2, 2]^2 reaching R_s = 2^levels. Tail tag (3, 1).
SourceField tail_source(double h, int levels);
/// Exact radial Newton potential of tail_source's continuum profile at r >= 1.
double tail_source_potential(double r, double r_s);

}  // namespace sigma_vortex
