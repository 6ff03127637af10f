#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sigma_vortex/singular.hpp"

using namespace sigma_vortex;

namespace {

VortexConfig double_pole() {
  RawConfig raw;
  raw.poles = {{0, 0}, {0, 0}};
  return validate_config(raw);
}

constexpr double kC0 = 0.8683999435950424007;

}  // namespace

TEST_CASE("radial mass identity across the admissible interval") {
  const VortexConfig cfg = double_pole();
  const RadialGrid grid = build_radial_grid(cfg, 1e4, 4000);
  for (int i = 1; i <= 20; ++i) {
    const double beta = 2.0 + 2.0 * i / 21.0;
    const SingularData data = assemble(SingularModel(cfg, beta), grid);
    const double expected = 2 * std::numbers::pi * (4.0 - beta);
    CHECK(std::abs(data.cell_mass - expected) / expected < 1e-10);
    CHECK(std::abs(data.sampled_mass - expected) / expected < 5e-3);
  }
}

TEST_CASE("radial samplings") {
  const VortexConfig cfg = double_pole();
  const RadialGrid grid = build_radial_grid(cfg, 1e4, 4000);
  const SingularData data = assemble(SingularModel(cfg, 3.0), grid);
  CHECK(data.v1.front() == -std::numeric_limits<double>::infinity());
  CHECK(data.shift.front() == std::numeric_limits<double>::infinity());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    REQUIRE(data.v1[k] <= 0.0);
    REQUIRE(data.v2[k] == 0.0);
    REQUIRE(data.v3[k] <= 0.0);
    if (data.radius[k] >= data.r0) REQUIRE(data.g[k] == 0.0);
    if (data.radius[k] >= 0.5) REQUIRE(data.v1[k] == 0.0);
  }
  CHECK(check_v3_farfield(data, kC0) < 1e-9);
  CHECK(check_v3_farfield(data, kC0) <= 3.0 * data.r0);
  CHECK(measure_c1(data) == doctest::Approx(3.0 * kC0 / 4.0).epsilon(1e-9));

  // u0 + 2 mult ln r stays bounded at the pole: -v1 = -2 * 2 ln(r / varrho)
  // inside varrho / 2.
  for (std::size_t k = 1; k < 40; ++k) {
    const double r = data.radius[k];
    REQUIRE(std::abs(data.u0[k] + 4.0 * std::log(r) - 4.0 * std::log(0.5) - 3.0 * data.v3[k]) < 1e-12);
  }
}

TEST_CASE("K_beta decreases in beta outside the unit disk") {
  const VortexConfig cfg = double_pole();
  const SingularModel a(cfg, 2.5);
  const SingularModel b(cfg, 3.5);
  for (double r : {1.0, 1.5, 10.0, 1e3}) {
    CHECK(b.at({r, 0}).log_k <= a.at({r, 0}).log_k);
  }
}

TEST_CASE("sign fault breaks the mass identity") {
  const VortexConfig cfg = double_pole();
  const RadialGrid grid = build_radial_grid(cfg, 1e4, 2000);
  SingularOptions fault;
  fault.flip_bump_term = true;
  CHECK_THROWS_WITH(assemble(SingularModel(cfg, 3.0, fault), grid),
                    doctest::Contains("quadrature under-resolved"));
}

TEST_CASE("disk cell integrals of g") {
  RawConfig raw;
  raw.poles = {{0.5, 0.0}, {-0.5, 0.0}, {0.0, 1.5}};
  raw.varrho = 0.4;
  raw.r0 = 3.0;
  const VortexConfig cfg = validate_config(raw);
  const DiskGrid grid = build_disk_grid(cfg, 12.0, 0.05);
  const SingularModel model(*grid.snapped_config(), 4.0);
  const SingularData data = assemble(model, grid);
  CHECK(std::abs(data.cell_mass - data.expected_mass) / data.expected_mass < 1e-9);
  CHECK(std::abs(data.sampled_mass - data.expected_mass) / data.expected_mass < 0.2);

  const Box box{0.62, 0.71, -0.05, 0.04};
  // Fine midpoint rule on the box as an independent check.
  const int n = 400;
  double brute = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Point2 p{box.x0 + (i + 0.5) * 0.09 / n, box.y0 + (j + 0.5) * 0.09 / n};
      brute += model.at(p).g;
    }
  }
  brute *= 0.09 * 0.09 / (double(n) * n);
  CHECK(model.cell_mass(box) == doctest::Approx(brute).epsilon(1e-5));
}
