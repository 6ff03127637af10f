#pragma once

#include <vector>

#include "sigma_vortex/config.hpp"
#include "sigma_vortex/grid.hpp"
#include "sigma_vortex/profiles.hpp"

namespace sigma_vortex {

struct SingularOptions {
  /// Test hook: flips the sign of the beta * Laplacian(v3) term in g_beta.
  bool flip_bump_term = false;
  /// Relative tolerance of the mass identity on the exact cell integrals;
  /// <= 0 disables the check.
  double mass_tolerance = 1e-4;
};

/// Closed-form evaluation of the singular decomposition for one (config, beta).
class SingularModel {
 public:
  struct Sample {
    double v1 = 0.0;
    double v2 = 0.0;
    /// v2 - v1 with coincident pole/zero singularities cancelled; +inf at a
    /// net pole, -inf at a net zero.
    double shift = 0.0;
    double v3 = 0.0;
    double log_k = 0.0;  // beta * v3
    double g = 0.0;
  };

  SingularModel(const VortexConfig& config, double beta, SingularOptions options = {});

  Sample at(Point2 x) const;
  /// Radial density of g1 (or g2) for a center of multiplicity `mult`.
  double annulus_density(double dist, int mult) const;

  /// Integral of g over B_r(0) for configurations with every center at the
  /// origin (Dirac masses excluded).
  double radial_mass(double r) const;

  /// Integral of g over a square cell, to near machine precision.
  double cell_mass(const Box& box) const;

  /// 2 pi (2(N - M) - beta).
  double expected_mass() const;

  const VortexConfig& config() const noexcept { return config_; }
  double beta() const noexcept { return beta_; }
  double bump_sign() const noexcept { return bump_sign_; }
  const CutoffProfile& cutoff() const noexcept { return cutoff_; }
  const BumpProfile& bump() const noexcept { return bump_; }
  const SingularOptions& options() const noexcept { return options_; }

 private:
  VortexConfig config_;
  double beta_;
  double bump_sign_ = 1.0;
  SingularOptions options_;
  CutoffProfile cutoff_;
  BumpProfile bump_;
};

/// Node samplings on a radial or disk grid.
struct SingularData {
  double beta = 0.0;
  std::vector<Point2> points;
  std::vector<double> radius;
  std::vector<double> v1;
  std::vector<double> v2;
  std::vector<double> shift;
  std::vector<double> v3;
  std::vector<double> log_k;
  std::vector<double> g;
  std::vector<double> u0;
  /// Exact integral of g over each control volume.
  std::vector<double> cell_g;
  double expected_mass = 0.0;
  double cell_mass = 0.0;     // sum of cell_g
  /// Node values against the grid quadrature. Only first-order accurate
  /// across the kinks of g1 at t = 1/2 and t = 1; a diagnostic.
  double sampled_mass = 0.0;
  double r0 = 0.0;
  int net_charge = 0;
};

SingularData assemble(const SingularModel& model, const RadialGrid& grid);
SingularData assemble(const SingularModel& model, const DiskGrid& grid);

/// max |v3(x) + ln|x| + c0| |x| over samples with |x| >= 2 r0.
double check_v3_farfield(const SingularData& data, double c0);

/// Smallest c1 with e^{-2(N-M)c1} |x|^{-beta} <= K_beta <= e^{2(N-M)c1} |x|^{-beta}
/// over the samples with |x| >= 2 r0.
double measure_c1(const SingularData& data);

}  // namespace sigma_vortex
