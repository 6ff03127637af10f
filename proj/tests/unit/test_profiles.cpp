#include <cmath>

#include "doctest.h"
#include "sigma_vortex/profiles.hpp"
#include "sigma_vortex/types.hpp"

using namespace sigma_vortex;

// Reference values below were computed once with 40-digit arithmetic
// (independent Hermite solve in rationals, tanh-sinh quadrature for eta0).

TEST_CASE("cutoff profile pieces") {
  const CutoffProfile rho;
  CHECK(rho.eval(0.25).value == doctest::Approx(std::log(0.25)).epsilon(1e-15));
  CHECK(rho.eval(2.0).value == 0.0);
  CHECK_THROWS_AS(rho.eval(0.0), Error);
  CHECK_THROWS_AS(rho.eval(-1.0), Error);

  const auto blend = rho.eval(0.75);
  CHECK(blend.value == doctest::Approx(-0.2059485902799726547).epsilon(1e-13));
  CHECK(blend.d1 == doctest::Approx(1.786801927099794910).epsilon(1e-13));
  CHECK(blend.d2 == doctest::Approx(-5.0).epsilon(1e-12));
  CHECK(rho.min_blend_slope() > 0.0);
}

TEST_CASE("cutoff profile is C2 at the joints") {
  const CutoffProfile rho;
  for (double t : {0.5, 1.0}) {
    const auto lo = rho.eval(t - 1e-9);
    const auto hi = rho.eval(t + 1e-9);
    CHECK(std::abs(lo.value - hi.value) < 1e-8);
    CHECK(std::abs(lo.d1 - hi.d1) < 1e-7);
    CHECK(std::abs(lo.d2 - hi.d2) < 1e-6);
  }
  for (int i = 1; i < 1000; ++i) {
    const double t = 0.5 + 0.5 * i / 1000.0;
    REQUIRE(rho.eval(t).value <= 0.0);
    REQUIRE(rho.eval(t).d1 > 0.0);
  }
  CHECK(rho.radial_laplacian(0.3) == 0.0);
  CHECK(rho.t_slope(0.3) == 1.0);
}

TEST_CASE("standard bump profile") {
  const BumpProfile eta = BumpProfile::standard();
  CHECK(eta.amplitude() == doctest::Approx(13.46842098743079272).epsilon(1e-12));
  CHECK(std::abs(eta.mass_fraction(1.0) - 1.0) < 1e-10);
  CHECK(std::abs(integrate_adaptive([&](double r) { return eta.eval(r) * r; }, 0.0, 1.0) - 1.0) < 1e-10);
  CHECK(eta.eval(1.5) == 0.0);
  CHECK(eta.c0() == doctest::Approx(0.8683999435950424007).epsilon(1e-12));

  CHECK(eta.mass_fraction(0.25) == doctest::Approx(0.1498951155122325186).epsilon(1e-12));
  CHECK(eta.mass_fraction(0.5) == doctest::Approx(0.5351135477572499182).epsilon(1e-12));
  CHECK(eta.mass_fraction(0.75) == doctest::Approx(0.9234795948222461977).epsilon(1e-12));
  CHECK(eta.newton_potential(0.25) == doctest::Approx(-0.07619139739630518223).epsilon(1e-11));
  CHECK(eta.newton_potential(0.5) == doctest::Approx(-0.2891957807870741620).epsilon(1e-11));
  CHECK(eta.newton_potential(0.75) == doctest::Approx(-0.5856912628999781595).epsilon(1e-11));
  CHECK(eta.newton_potential(2.0) == doctest::Approx(-1.561547124154987710).epsilon(1e-13));
  CHECK(eta.newton_potential(0.0) == 0.0);

  double prev = eta.eval(0.0);
  for (int i = 1; i <= 200; ++i) {
    const double v = eta.eval(i / 200.0);
    REQUIRE(v <= prev);
    prev = v;
  }
}

TEST_CASE("v3 is continuous across the unit circle and non-positive") {
  const BumpProfile eta = BumpProfile::standard();
  CHECK(eta.newton_potential(1.0 - 1e-9) == doctest::Approx(-eta.c0()).epsilon(1e-8));
  for (int i = 0; i <= 300; ++i) REQUIRE(eta.newton_potential(i / 100.0) <= 0.0);
}
