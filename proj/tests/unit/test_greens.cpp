#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "sigma_vortex/greens.hpp"
#include "sigma_vortex/profiles.hpp"

using namespace sigma_vortex;

namespace {

double brute_box(const Box& b, Point2 t, int n) {
  const double dx = (b.x1 - b.x0) / n;
  const double dy = (b.y1 - b.y0) / n;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = b.x0 + (i + 0.5) * dx - t.x;
      const double y = b.y0 + (j + 0.5) * dy - t.y;
      sum += 0.5 * std::log(x * x + y * y);
    }
  }
  return sum * dx * dy;
}

// Newton's theorem: outside both disks the dipole acts as two point charges.
double dipole_exact(Point2 x, Point2 a, double rho) {
  const double plus = std::hypot(x.x - a.x, x.y - a.y);
  const double minus = std::hypot(x.x + a.x, x.y + a.y);
  return -(rho * rho / 2.0) * (std::log(plus) - std::log(minus));
}

}  // namespace

TEST_CASE("box integral of the logarithm") {
  CHECK(box_log_integral({-0.5, 0.5, -0.5, 0.5}, {0, 0}) ==
        doctest::Approx(-1.0611754268825244).epsilon(1e-13));
  const Box b{0.2, 1.3, -0.7, 0.4};
  for (Point2 t : {Point2{0.5, 0.0}, Point2{1.3, 0.4}, Point2{3.0, -2.0}, Point2{-0.4, 0.9}}) {
    CHECK(box_log_integral(b, t) == doctest::Approx(brute_box(b, t, 2000)).epsilon(1e-5));
  }
  // Additivity over a split box.
  const Point2 t{0.31, -0.12};
  CHECK(box_log_integral(b, t) == doctest::Approx(box_log_integral({0.2, 0.7, -0.7, 0.4}, t) +
                                                  box_log_integral({0.7, 1.3, -0.7, 0.4}, t))
                                      .epsilon(1e-13));
}

TEST_CASE("zero source has zero potential") {
  const SourceField zero = SourceField::lattice([](Point2) { return 0.0; }, 1.0, 0.1);
  for (double v : gamma_convolve(zero, ring_targets({0.3, 5.0, 50.0}))) CHECK(v == 0.0);
  const Lemma21Report rep = check_lemma21(zero, {5.0, 10.0});
  CHECK(rep.max_ratio == 0.0);
  CHECK(rep.pass);
}

TEST_CASE("potential of the normalised bump") {
  const BumpProfile bump = BumpProfile::standard();
  const SourceField src = SourceField::lattice(
      [&](Point2 p) { return bump.eval(std::hypot(p.x, p.y)); }, 1.0, 0.01);
  CHECK(src.mass == doctest::Approx(2 * std::numbers::pi).epsilon(1e-6));
  const std::vector<double> radii{1.0, 1.5, 3.0, 10.0, 100.0};
  const std::vector<double> values = gamma_convolve(src, ring_targets(radii));
  for (std::size_t i = 0; i < radii.size(); ++i) {
    CHECK(values[i] == doctest::Approx(-std::log(radii[i])).epsilon(1e-5).scale(1.0));
  }
  const std::vector<double> inner = gamma_convolve(src, {{0.0, 0.0}, {0.5, 0.0}});
  CHECK(inner[0] == doctest::Approx(bump.newton_potential(0.0) + bump.c0()).epsilon(1e-4));
  CHECK(inner[1] == doctest::Approx(bump.newton_potential(0.5) + bump.c0()).epsilon(1e-4));
}

TEST_CASE("dipole matches the exact potential") {
  const Point2 a{1.0, 0.0};
  const SourceField dip = dipole_source(a, 0.5, 0.02);
  CHECK(std::abs(dip.mass) <= 1e-12);
  const std::vector<Point2> targets = ring_targets({3.0, 10.0, 40.0, 200.0}, 0.3);
  const std::vector<double> values = gamma_convolve(dip, targets);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const double exact = dipole_exact(targets[i], a, 0.5);
    CHECK(std::abs(values[i] - exact) <= 1e-3 * std::abs(exact));
  }
}

TEST_CASE("dipole against a brute-force point cloud") {
  // Independent oracle: 1e6 uniform samples in each disk.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double rho = 0.5;
  const Point2 x{10.0, 0.0};
  const int n = 1'000'000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = rho * std::sqrt(u(rng));
    const double t = 2 * std::numbers::pi * u(rng);
    const double dx = r * std::cos(t);
    const double dy = r * std::sin(t);
    sum += std::log(std::hypot(x.x - 1.0 - dx, x.y - dy)) - std::log(std::hypot(x.x + 1.0 + dx, x.y + dy));
  }
  const double brute = -(rho * rho / 2.0) * sum / n;
  const double grid = gamma_convolve(dipole_source({1.0, 0.0}, rho, 0.02), {x})[0];
  CHECK(std::abs(grid - brute) <= 1e-3 * std::abs(brute));
}

TEST_CASE("convolution is linear") {
  const SourceField a = random_compact_source(5, 1.0, 0.05);
  const SourceField b = random_compact_source(6, 1.0, 0.05);
  REQUIRE(a.size() == b.size());
  SourceField c = a;
  for (std::size_t k = 0; k < c.size(); ++k) c.value[k] = 2.0 * a.value[k] - 3.0 * b.value[k];
  c.refresh();
  const std::vector<Point2> t = ring_targets({0.5, 2.0, 8.0});
  const auto va = gamma_convolve(a, t);
  const auto vb = gamma_convolve(b, t);
  const auto vc = gamma_convolve(c, t);
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(vc[i] == doctest::Approx(2.0 * va[i] - 3.0 * vb[i]).epsilon(1e-12).scale(1e-12));
  }
}

TEST_CASE("potential is harmonic outside the support") {
  const SourceField src = random_compact_source(9, 1.0, 0.05);
  const double h = 1e-2;
  for (Point2 p : {Point2{3.0, 0.5}, Point2{-2.0, 4.0}, Point2{0.0, -6.0}}) {
    const auto v = gamma_convolve(src, {p, {p.x + h, p.y}, {p.x - h, p.y}, {p.x, p.y + h}, {p.x, p.y - h}});
    const double lap = (v[1] + v[2] + v[3] + v[4] - 4 * v[0]) / (h * h);
    const double scale = (std::abs(v[1] - v[2]) + std::abs(v[3] - v[4])) / (2 * h);
    CHECK(std::abs(lap) <= 1e-3 * scale + 1e-9);
  }
}

TEST_CASE("compact zero-mean decay bound") {
  for (std::uint64_t seed = 1; seed <= 16; ++seed) {
    const double radius = 1.0 + (seed % 4) * 0.25;
    const SourceField src = random_compact_source(seed, radius, 0.05);
    CHECK(std::abs(src.mass) <= 1e-10 * src.l1);
    std::vector<double> radii;
    for (int k = 0; k <= 64; ++k) radii.push_back(4.0 * radius * std::pow(25.0, k / 64.0));
    const Lemma21Report rep = check_lemma21(src, radii);
    CHECK(rep.radii.size() == 64);  // r = 4R is skipped
    CHECK(rep.max_ratio <= 1.0);
    CHECK(rep.global_pass);
    CHECK(rep.pass);
  }
}

TEST_CASE("decay bound rejects a source with nonzero mean") {
  const SourceField src = SourceField::lattice([](Point2 p) { return p.x * p.x + p.y * p.y < 1 ? 1.0 : 0.0; }, 1.0, 0.05);
  CHECK_THROWS_WITH_AS(check_lemma21(src, {10.0}), doctest::Contains("mean"), Error);
}

TEST_CASE("slowly decaying source keeps a bounded envelope") {
  const SourceField src = tail_source(0.05, 20);
  REQUIRE(src.tail.has_value());
  std::vector<double> radii;
  for (int k = 0; k < 24; ++k) radii.push_back(10.0 * std::pow(20.0, k / 23.0));
  const Lemma22Report rep = check_lemma22(src, radii);
  CHECK(rep.exponent == doctest::Approx(0.5));
  CHECK(rep.pass);

  // log-log slope of |Gamma * F| lies between -1 and -(beta - 2)/(beta - 1).
  std::vector<double> lr, lv;
  for (std::size_t i = 0; i < rep.radii.size(); ++i) {
    lr.push_back(std::log(rep.radii[i]));
    lv.push_back(std::log(std::abs(rep.values[i])));
  }
  const double n = static_cast<double>(lr.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lr.size(); ++i) {
    sx += lr[i];
    sy += lv[i];
    sxx += lr[i] * lr[i];
    sxy += lr[i] * lv[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope >= -1.05);
  CHECK(slope <= -0.5);

  SourceField scaled = src;
  for (double& v : scaled.value) v *= 10.0;
  scaled.refresh();
  const Lemma22Report rep10 = check_lemma22(scaled, radii);
  CHECK(rep10.envelope_constant == doctest::Approx(10.0 * rep.envelope_constant).epsilon(1e-10));
}

TEST_CASE("envelope exponent and inadmissible tails") {
  SourceField src = tail_source(0.1, 8);
  src.tail = SourceTail{2.1, 1.0};
  CHECK(check_lemma22(src, {20.0, 40.0}).exponent == doctest::Approx(0.1 / 1.1));
  src.tail = SourceTail{2.0, 1.0};
  CHECK_THROWS_WITH_AS(check_lemma22(src, {20.0}), doctest::Contains("inadmissible"), Error);
  src.tail.reset();
  CHECK_THROWS_AS(check_lemma22(src, {20.0}), Error);
}

TEST_CASE("slowly decaying source against its closed form") {
  const int levels = 20;
  const SourceField src = tail_source(0.05, levels);
  const double r_s = std::ldexp(1.0, levels);
  CHECK(std::abs(src.mass) <= 1e-9 * src.l1);
  const std::vector<double> radii{4.0, 16.0, 100.0, 1000.0};
  const auto values = gamma_convolve(src, ring_targets(radii));
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double exact = tail_source_potential(radii[i], r_s);
    CHECK(std::abs(values[i] - exact) <= 1e-3 * std::abs(exact));
  }
}
