#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "sigma_vortex/solver.hpp"

using namespace sigma_vortex;

namespace {

VortexConfig double_pole(std::optional<double> r0 = std::nullopt) {
  RawConfig raw;
  raw.poles = {{0, 0}, {0, 0}};
  raw.r0 = r0;
  return validate_config(raw);
}

RadialSetup coarse(std::size_t nodes = 1000) {
  RadialSetup s;
  s.nodes = nodes;
  return s;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

std::vector<double> random_field(std::mt19937_64& rng, std::size_t n, double center, double spread) {
  std::normal_distribution<double> normal(center, spread);
  std::vector<double> w(n);
  for (double& x : w) x = normal(rng);
  return w;
}

}  // namespace

TEST_CASE("nonlinearity bounds and slope identity") {
  const Problem p = radial_problem(double_pole(), 3.0, coarse(200));
  for (std::size_t k = 0; k < p.size(); ++k) {
    for (double w : {-40.0, -3.0, 0.0, 2.5, 40.0}) {
      const double f = p.rhs().value(k, w);
      const double s = p.rhs().slope(k, w);
      REQUIRE(f >= 0.0);
      REQUIRE(f <= 4.0);
      REQUIRE(s >= 0.0);
      REQUIRE(s <= 1.0);
      REQUIRE(s == doctest::Approx(f * (1.0 - f / 4.0)).epsilon(1e-9).scale(1.0));
    }
  }
  // At the pole node the weight is saturated.
  CHECK(p.rhs().value(0, -100.0) == 4.0);
}

TEST_CASE("far-field closure derivatives") {
  const FarField far(3.0, 0.8684, 1e4);
  for (double w : {-5.0, 0.0, 3.0, 12.0}) {
    const double t = 1e-6;
    CHECK(far.flux_slope(w) == doctest::Approx((far.flux(w + t) - far.flux(w - t)) / (2 * t)).epsilon(1e-6));
    CHECK(far.flux(w) == doctest::Approx((far.potential(w + t) - far.potential(w - t)) / (2 * t)).epsilon(1e-6));
    CHECK(far.flux(w) > 0.0);
  }
  CHECK_THROWS_AS(FarField(2.0, 0.8684, 1e4), Error);
}

TEST_CASE("discrete energy gradient equals the residual") {
  std::mt19937_64 rng(7);
  for (bool radial : {true, false}) {
    const Problem p = radial ? radial_problem(double_pole(), 3.0, coarse(400))
                             : disk_problem(double_pole(2.0), 3.0, {8.0, 0.125, {1'000'000, false}, {}});
    for (int trial = 0; trial < 8; ++trial) {
      const std::vector<double> w = random_field(rng, p.size(), -0.5, 0.5);
      const std::vector<double> dir = random_field(rng, p.size(), 0.0, 1.0);
      const std::vector<double> n = p.residual(w);
      double directional = 0.0;
      for (std::size_t k = 0; k < p.size(); ++k) directional += n[k] * dir[k];
      const double t = 1e-5;
      std::vector<double> plus = w;
      std::vector<double> minus = w;
      for (std::size_t k = 0; k < p.size(); ++k) {
        plus[k] += t * dir[k];
        minus[k] -= t * dir[k];
      }
      const double fd = (energy_eval(p, plus).value - energy_eval(p, minus).value) / (2 * t);
      REQUIRE(std::abs(fd - directional) <= 1e-6 * std::abs(directional));
    }
  }
}

TEST_CASE("constant-shift derivative of the energy is the total defect") {
  const Problem p = radial_problem(double_pole(), 3.0, coarse(400));
  const std::vector<double> w(p.size(), 0.3);
  const double t = 1e-5;
  std::vector<double> plus = w;
  std::vector<double> minus = w;
  for (auto& x : plus) x += t;
  for (auto& x : minus) x -= t;
  const double fd = (energy_eval(p, plus).value - energy_eval(p, minus).value) / (2 * t);
  CHECK(fd == doctest::Approx(energy_eval(p, w).constraint_defect).epsilon(1e-6));
}

TEST_CASE("flux quantization for the double pole") {
  for (double beta : {2.5, 3.0, 3.5}) {
    const SolveResult r = solve_radial(double_pole(), beta);
    const double mu = 2 * std::numbers::pi * (4.0 - beta);
    REQUIRE(r.converged);
    CHECK(std::abs(r.domain_mass + r.tail_mass - mu) <= 1e-3 * mu);
    CHECK(std::abs(r.mass_defect) <= 1e-3 * mu);
    // Independent quadrature of f plus the exterior tail.
    CHECK(std::abs(r.quadrature_mass + r.tail_mass - mu) <= 1e-3 * mu);
    CHECK(r.residual <= 1e-10);
  }
}

TEST_CASE("converged b_beta values") {
  // Frozen from this solver at R = 1e4, 4000 nodes; guards regressions.
  CHECK(solve_radial(double_pole(), 3.0).b_beta == doctest::Approx(-0.0835891).epsilon(1e-6));
  CHECK(solve_radial(double_pole(), 2.5).b_beta == doctest::Approx(-0.8042211).epsilon(1e-6));
}

TEST_CASE("newton and monotone limits agree") {
  const Problem p = radial_problem(double_pole(), 3.0, coarse());
  const SolveResult newton = solve(p);
  SolveOptions mono;
  mono.method = Method::monotone;
  const SolveResult monotone = solve(p, mono);
  REQUIRE(newton.converged);
  REQUIRE(monotone.converged);
  CHECK(max_diff(newton.field, monotone.field) <= 1e-8);

  SolveOptions hybrid;
  hybrid.method = Method::hybrid;
  CHECK(max_diff(solve(p, hybrid).field, newton.field) <= 1e-8);
}

TEST_CASE("exact solution is a fixed point of the monotone iteration") {
  const Problem p = radial_problem(double_pole(), 3.0, coarse());
  NewtonOptions tight;
  tight.tol = 1e-13;
  const SolveResult exact = newton_solve(p, std::vector<double>(p.size(), p.balancing_constant()), tight);
  MonotoneOptions options;
  options.tol = 1e-10;
  options.trust_start = true;
  const SolveResult again = monotone_iterate(p, exact.field, Direction::from_above, options);
  CHECK(again.converged);
  CHECK(again.iterations == 1);
}

TEST_CASE("newton converges quadratically from a monotone warm start") {
  const Problem p = radial_problem(double_pole(), 3.0, coarse());
  const Bracket b = bracket_about(p, std::vector<double>(p.size(), p.balancing_constant()));
  MonotoneOptions warm_step;
  warm_step.max_iterations = 1;
  warm_step.tol = 0.0;
  const SolveResult warm = monotone_iterate(p, b.super, Direction::from_above, warm_step);
  NewtonOptions options;
  options.tol = 1e-14;
  const SolveResult r = newton_solve(p, warm.field, options);
  std::vector<double> res;
  for (const auto& h : r.history) {
    if (h.kind == "newton" && h.residual > 1e-14) res.push_back(h.residual);
  }
  REQUIRE(res.size() >= 3);
  // Classic order estimate from the last three residuals above roundoff.
  const std::size_t last = res.size() - 1;
  const double order = std::log(res[last] / res[last - 1]) / std::log(res[last - 1] / res[last - 2]);
  CHECK(order >= 1.7);
}

TEST_CASE("monotone iteration rejects a start that is not a super-solution") {
  const Problem p = radial_problem(double_pole(), 3.0, coarse(200));
  const std::vector<double> low(p.size(), -10.0);
  CHECK(supersolution_violation(p, low) > 0.0);
  CHECK_THROWS_WITH_AS(monotone_iterate(p, low, Direction::from_above),
                       doctest::Contains("super"), Error);
}

TEST_CASE("two-sided squeeze and comparison") {
  const Problem p = radial_problem(double_pole(), 3.5, coarse());
  const Bracket b = bracket_about(p, std::vector<double>(p.size(), p.balancing_constant()));
  for (std::size_t k = 0; k < p.size(); ++k) REQUIRE(b.sub[k] <= b.super[k] + 1e-8);
  MonotoneOptions options;
  options.tol = 1e-10;
  const SqueezeResult sq = squeeze(p, b.sub, b.super, options);
  CHECK(sq.gap <= 1e-6);
  const SolveResult newton = solve(p);
  for (std::size_t k = 0; k < p.size(); ++k) {
    REQUIRE(sq.from_below.field[k] <= newton.field[k] + 1e-8);
    REQUIRE(newton.field[k] <= sq.from_above.field[k] + 1e-8);
  }
}

TEST_CASE("energy is locally minimal at the solution") {
  const Problem p = radial_problem(double_pole(), 3.0, coarse(400));
  const SolveResult r = solve(p);
  const double base = energy_eval(p, r.field).value;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> center(-2.0, 1.0);
  for (int trial = 0; trial < 8; ++trial) {
    const double c = std::pow(10.0, center(rng));
    for (double sign : {-1.0, 1.0}) {
      std::vector<double> w = r.field;
      for (std::size_t k = 0; k < w.size(); ++k) {
        const double s = (r.radius[k] - c) / c;
        w[k] += sign * 1e-2 * std::exp(-s * s);
      }
      REQUIRE(energy_eval(p, w).value >= base);
    }
  }
}

TEST_CASE("second-order convergence in the radial node count") {
  std::vector<double> b;
  for (std::size_t n : {1000, 2000, 4000}) b.push_back(solve_radial(double_pole(), 3.0, coarse(n)).b_beta);
  const double order = std::log2((b[0] - b[1]) / (b[1] - b[2]));
  CHECK(order >= 1.7);
  CHECK(order <= 2.3);
}

TEST_CASE("truncation radius barely moves b_beta") {
  RadialSetup near;
  RadialSetup far;
  far.r_max = 2e4;
  // Same step in the graded variable, so only the truncation changes.
  far.nodes = static_cast<std::size_t>(std::lround(3999 * std::asinh(2e6) / std::asinh(1e6))) + 1;
  const double a = solve_radial(double_pole(), 3.0, near).b_beta;
  const double c = solve_radial(double_pole(), 3.0, far).b_beta;
  CHECK(std::abs(a - c) <= 1e-3);
}

TEST_CASE("radial and disk solves agree") {
  const VortexConfig cfg = double_pole(2.0);
  const SolveResult radial = solve_radial(cfg, 3.0);
  DiskSetup disk;
  disk.r_max = 8.0;
  const SolveResult planar = solve_disk(cfg, 3.0, disk);
  REQUIRE(planar.converged);
  CHECK(std::abs(radial.b_beta - planar.b_beta) <= 5e-3);
  CHECK(std::abs(planar.mass_defect) <= 1e-6);
}

TEST_CASE("method names") {
  CHECK(parse_method("hybrid") == Method::hybrid);
  CHECK(to_string(Method::monotone) == "monotone");
  CHECK_THROWS_AS(parse_method("secant"), Error);
}
