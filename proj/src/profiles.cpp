#include "sigma_vortex/profiles.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>

#include "sigma_vortex/types.hpp"

namespace sigma_vortex {
namespace {

constexpr int kPanels = 1024;

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b) {
  if (!(b > a)) return 0.0;
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-14, &error);
}

CutoffProfile::CutoffProfile() {
  constexpr double a = 0.5;
  // Rows: value, slope, curvature at t = 1/2 then at t = 1.
  Eigen::Matrix<double, 6, 6> system;
  Eigen::Matrix<double, 6, 1> rhs;
  for (int row = 0; row < 6; ++row) {
    const double t = row < 3 ? a : 1.0;
    const int order = row % 3;
    for (int p = 0; p < 6; ++p) {
      double entry = 0.0;
      if (order == 0) {
        entry = std::pow(t, p);
      } else if (order == 1) {
        entry = p >= 1 ? p * std::pow(t, p - 1) : 0.0;
      } else {
        entry = p >= 2 ? p * (p - 1) * std::pow(t, p - 2) : 0.0;
      }
      system(row, p) = entry;
    }
  }
  rhs << std::log(a), 1.0 / a, -1.0 / (a * a), 0.0, 0.0, 0.0;
  const Eigen::Matrix<double, 6, 1> c = system.fullPivLu().solve(rhs);
  for (int p = 0; p < 6; ++p) coeffs_[p] = c(p);

  min_slope_ = std::numeric_limits<double>::infinity();
  constexpr int samples = 10000;
  for (int i = 1; i < samples; ++i) {
    const double t = a + (1.0 - a) * static_cast<double>(i) / samples;
    min_slope_ = std::min(min_slope_, eval(t).d1);
  }
  if (!(min_slope_ > 0.0)) {
    throw Error(ErrorKind::domain, "cutoff blend is not increasing on (1/2, 1)");
  }
}

CutoffProfile::Value CutoffProfile::eval(double t) const {
  if (!(t > 0.0)) throw Error(ErrorKind::domain, "cutoff profile needs t > 0");
  if (t <= 0.5) return {std::log(t), 1.0 / t, -1.0 / (t * t)};
  if (t >= 1.0) return {0.0, 0.0, 0.0};
  const auto& c = coeffs_;
  const double value = c[0] + t * (c[1] + t * (c[2] + t * (c[3] + t * (c[4] + t * c[5]))));
  const double d1 = c[1] + t * (2 * c[2] + t * (3 * c[3] + t * (4 * c[4] + t * 5 * c[5])));
  const double d2 = 2 * c[2] + t * (6 * c[3] + t * (12 * c[4] + t * 20 * c[5]));
  return {value, d1, d2};
}

double CutoffProfile::t_slope(double t) const {
  if (t <= 0.5) return 1.0;
  if (t >= 1.0) return 0.0;
  return t * eval(t).d1;
}

double CutoffProfile::radial_laplacian(double t) const {
  if (t <= 0.5 || t >= 1.0) return 0.0;
  const Value v = eval(t);
  return v.d2 + v.d1 / t;
}

BumpProfile BumpProfile::standard() {
  return BumpProfile([](double r) { return r < 1.0 ? std::exp(-1.0 / (1.0 - r * r)) : 0.0; });
}

BumpProfile::BumpProfile(Shape shape) : shape_(std::move(shape)) {
  const double raw = integrate_adaptive([&](double r) { return shape_(r) * r; }, 0.0, 1.0);
  if (!(raw > 0.0)) throw Error(ErrorKind::domain, "bump profile has no mass");
  amplitude_ = 1.0 / raw;

  mass_table_.assign(kPanels + 1, 0.0);
  log_table_.assign(kPanels + 1, 0.0);
  for (int i = 0; i < kPanels; ++i) {
    const double a = static_cast<double>(i) / kPanels;
    const double b = static_cast<double>(i + 1) / kPanels;
    mass_table_[i + 1] = mass_table_[i] + panel_integral(a, b, false);
    log_table_[i + 1] = log_table_[i] + panel_integral(a, b, true);
  }
  c0_ = log_table_.back();
  if (!(c0_ > 0.0)) throw Error(ErrorKind::domain, "bump profile gives c0 <= 0");
}

double BumpProfile::panel_integral(double a, double b, bool log_weight) const {
  if (!(b > a)) return 0.0;
  const auto f = [&](double s) { return (log_weight ? -std::log(s) : 1.0) * eval(s) * s; };
  // s ln s is not polynomial-like next to the origin.
  if (log_weight && a == 0.0) {
    boost::math::quadrature::tanh_sinh<double> endpoint_rule;
    const std::function<double(double)> g = f;
    return endpoint_rule.integrate(g, a, b);
  }
  return boost::math::quadrature::gauss<double, 20>::integrate(f, a, b);
}

double BumpProfile::eval(double r) const {
  if (r < 0.0 || r >= 1.0) return 0.0;
  return amplitude_ * shape_(r);
}

double BumpProfile::mass_fraction(double r) const {
  if (r <= 0.0) return 0.0;
  if (r >= 1.0) return 1.0;
  const int i = std::min(static_cast<int>(r * kPanels), kPanels - 1);
  return mass_table_[i] + panel_integral(static_cast<double>(i) / kPanels, r, false);
}

double BumpProfile::log_moment(double r) const {
  if (r <= 0.0) return 0.0;
  if (r >= 1.0) return c0_;
  const int i = std::min(static_cast<int>(r * kPanels), kPanels - 1);
  return log_table_[i] + panel_integral(static_cast<double>(i) / kPanels, r, true);
}

double BumpProfile::newton_potential(double r) const {
  if (r <= 0.0) return 0.0;
  if (r >= 1.0) return -std::log(r) - c0_;
  return -mass_fraction(r) * std::log(r) - log_moment(r);
}

double BumpProfile::newton_potential_slope(double r) const {
  if (r <= 0.0) return 0.0;
  return -mass_fraction(r) / r;
}

}  // namespace sigma_vortex
