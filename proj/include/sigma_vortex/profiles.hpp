#pragma once

#include <array>
#include <functional>
#include <vector>

namespace sigma_vortex {

/// Cutoff rho(t): ln t on (0, 1/2], 0 on [1, inf), and on (1/2, 1) the
/// quintic matching value, slope and curvature of ln t at 1/2 and of 0 at 1.
class CutoffProfile {
 public:
  struct Value {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
  };

  /// Solves the Hermite system and checks the blend is increasing on a
  /// 10^4-point sample; throws if it is not.
  CutoffProfile();

  Value eval(double t) const;
  /// t * rho'(t); equals 1 on (0, 1/2] and 0 on [1, inf).
  double t_slope(double t) const;
  /// rho''(t) + rho'(t) / t, the radial Laplacian in the scaled variable.
  double radial_laplacian(double t) const;

  const std::array<double, 6>& blend_coefficients() const noexcept { return coeffs_; }
  double min_blend_slope() const noexcept { return min_slope_; }

 private:
  std::array<double, 6> coeffs_{};
  double min_slope_ = 0.0;
};

/// Radial bump eta0 supported in [0, 1], normalised so that the integral of
/// eta0(r) r dr over [0, 1] is 1.
class BumpProfile {
 public:
  using Shape = std::function<double(double)>;

  /// A exp(-1 / (1 - r^2)).
  static BumpProfile standard();

  /// Any non-increasing shape on [0, 1); normalised here.
  explicit BumpProfile(Shape shape);

  double eval(double r) const;
  double amplitude() const noexcept { return amplitude_; }

  /// W(r) = int_0^r eta0(s) s ds.
  double mass_fraction(double r) const;
  /// int_0^r (-ln s) eta0(s) s ds.
  double log_moment(double r) const;
  double c0() const noexcept { return c0_; }

  /// v3(r) = (Gamma * eta0)(r) - c0 = -W(r) ln r - log_moment(r); equals
  /// -ln r - c0 for r >= 1 and 0 at the origin.
  double newton_potential(double r) const;
  /// dv3/dr = -W(r) / r.
  double newton_potential_slope(double r) const;

 private:
  double panel_integral(double a, double b, bool log_weight) const;

  Shape shape_;
  double amplitude_ = 1.0;
  // Cumulative mass and log moment at uniform panel ends on [0, 1].
  std::vector<double> mass_table_;
  std::vector<double> log_table_;
  double c0_ = 0.0;
};

/// Adaptive Gauss-Kronrod on [a, b] to near machine precision.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b);

}  // namespace sigma_vortex
