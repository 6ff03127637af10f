#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sigma_vortex/config.hpp"

using namespace sigma_vortex;

namespace {

std::string error_text(const RawConfig& raw, ValidationOptions options = {}) {
  try {
    validate_config(raw, options);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("coincident poles merge into one center") {
  RawConfig raw;
  raw.poles = {{0, 0}, {0, 0}};
  raw.varrho = 0.5;
  const VortexConfig cfg = validate_config(raw);
  REQUIRE(cfg.poles().size() == 1);
  CHECK(cfg.poles()[0].multiplicity == 2);
  CHECK(cfg.pole_count() == 2);
  CHECK(cfg.beta_interval().first == 2.0);
  CHECK(cfg.beta_interval().second == 4.0);
  CHECK(cfg.beta0() == 3.0);
  CHECK(cfg.all_at_origin());
  CHECK(cfg.r0() == doctest::Approx(4.0 * std::numbers::e));
}

TEST_CASE("net charge one leaves no admissible beta") {
  RawConfig raw;
  raw.poles = {{0, 0}};
  CHECK(error_text(raw).find("beta interval empty") == 0);
  raw.poles = {{0, 0}, {1, 0}, {2, 0}};
  raw.zeros = {{3, 0}, {4, 0}};
  CHECK(error_text(raw).find("beta interval empty") == 0);
}

TEST_CASE("disjoint cutoff balls") {
  RawConfig raw;
  raw.poles = {{0, 0}, {0.3, 0}};
  raw.varrho = 0.15;
  CHECK(validate_config(raw).varrho() == 0.15);
  raw.varrho = 0.4;
  CHECK(error_text(raw).find("separation violation") == 0);
  // 2 * 0.2 = 0.4 > 0.3 also overlaps.
  raw.varrho = 0.2;
  CHECK(error_text(raw).find("separation violation") == 0);

  ValidationOptions shrink;
  shrink.auto_shrink_varrho = true;
  CHECK(validate_config(raw, shrink).varrho() == doctest::Approx(0.15));

  raw.varrho.reset();
  CHECK(validate_config(raw).varrho() == doctest::Approx(0.15));
}

TEST_CASE("pole and zero at the same point only need the global cap") {
  RawConfig raw;
  raw.poles = {{1, 1}, {1, 1}, {0, 0}};
  raw.zeros = {{1, 1}};
  const VortexConfig cfg = validate_config(raw);
  CHECK(cfg.net_charge() == 2);
  CHECK(cfg.varrho() == 0.5);
}

TEST_CASE("r0 default and override") {
  RawConfig raw;
  raw.poles = {{20, 0}, {-20, 0}};
  CHECK(validate_config(raw).r0() == doctest::Approx(41.0));
  raw.r0 = 3.0;
  CHECK(error_text(raw).find("r0 = 3") == 0);
  raw.poles = {{0, 0}, {0, 0}};
  raw.r0 = 2.0;
  CHECK(validate_config(raw).r0() == 2.0);
  raw.r0 = 1.0;
  CHECK(error_text(raw) == "r0 must exceed 1");
}

TEST_CASE("validation is idempotent") {
  RawConfig raw;
  raw.poles = {{0, 0}, {0.3, 0}, {0.3, 0}, {-1, 2}};
  raw.zeros = {{2, 2}};
  const VortexConfig once = validate_config(raw);
  const VortexConfig twice = validate_config(once.to_raw());
  CHECK(once == twice);
}

TEST_CASE("beta must lie in the open interval") {
  RawConfig raw;
  raw.poles = {{0, 0}, {0, 0}};
  const VortexConfig cfg = validate_config(raw);
  CHECK(make_beta(cfg, 3.0).beta0 == 3.0);
  CHECK_THROWS_WITH_AS(make_beta(cfg, 4.0), doctest::Contains("beta out of open interval"), Error);
  CHECK_THROWS_AS(make_beta(cfg, 2.0), Error);
}
