#include "sigma_vortex/singular.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace sigma_vortex {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// The arc length behaves like sqrt(r - a) next to a tangency radius; the
// substitution r = a + (b - a)(1 - cos theta) / 2 makes the pieces smooth.
double integrate_piece(const std::function<double(double)>& f, double a, double b) {
  if (!(b > a)) return 0.0;
  const double half = 0.5 * (b - a);
  const auto mapped = [&](double theta) {
    return f(a + half * (1.0 - std::cos(theta))) * half * std::sin(theta);
  };
  return boost::math::quadrature::gauss<double, 30>::integrate(mapped, 0.0, std::numbers::pi);
}

// Radii at which the arc length of circles about `c` inside `box` has a kink.
std::vector<double> arc_breaks(Point2 c, const Box& box) {
  std::vector<double> out = {min_distance(c, box), max_distance(c, box)};
  for (double x : {box.x0, box.x1}) {
    for (double y : {box.y0, box.y1}) out.push_back(distance(c, {x, y}));
  }
  if (c.y >= box.y0 && c.y <= box.y1) {
    out.push_back(std::abs(c.x - box.x0));
    out.push_back(std::abs(c.x - box.x1));
  }
  if (c.x >= box.x0 && c.x <= box.x1) {
    out.push_back(std::abs(c.y - box.y0));
    out.push_back(std::abs(c.y - box.y1));
  }
  return out;
}

// Integral over the box of a radial density about c supported in [lo, hi].
double radial_over_box(Point2 c, const Box& box, const std::function<double(double)>& density,
                       double lo, double hi, std::vector<double> extra_breaks) {
  lo = std::max(lo, min_distance(c, box));
  hi = std::min(hi, max_distance(c, box));
  if (!(hi > lo)) return 0.0;
  std::vector<double> breaks = arc_breaks(c, box);
  breaks.insert(breaks.end(), extra_breaks.begin(), extra_breaks.end());
  breaks.push_back(lo);
  breaks.push_back(hi);
  std::sort(breaks.begin(), breaks.end());
  const auto integrand = [&](double r) { return density(r) * circle_arc_in_box(c, r, box); };
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = std::max(breaks[i], lo);
    const double b = std::min(breaks[i + 1], hi);
    sum += integrate_piece(integrand, a, b);
  }
  return sum;
}

}  // namespace

SingularModel::SingularModel(const VortexConfig& config, double beta, SingularOptions options)
    : config_(config),
      beta_(make_beta(config, beta).beta),
      bump_sign_(options.flip_bump_term ? -1.0 : 1.0),
      options_(options),
      bump_(BumpProfile::standard()) {}

double SingularModel::annulus_density(double dist, int mult) const {
  const double t = dist / config_.varrho();
  if (t <= 0.5 || t >= 1.0) return 0.0;
  return -2.0 * mult * cutoff_.radial_laplacian(t) / (config_.varrho() * config_.varrho());
}

SingularModel::Sample SingularModel::at(Point2 x) const {
  Sample s;
  double singular = 0.0;  // net multiplicity (poles positive) located exactly at x
  for (const auto* group : {&config_.poles(), &config_.zeros()}) {
    for (const Center& c : *group) {
      const double sign = c.kind == CenterKind::pole ? 1.0 : -1.0;
      const double d = distance(x, c.position);
      if (d == 0.0) {
        singular += sign * c.multiplicity;
        (sign > 0 ? s.v1 : s.v2) = -kInf;
        continue;
      }
      const double term = 2.0 * c.multiplicity * cutoff_.eval(d / config_.varrho()).value;
      if (sign > 0) {
        if (s.v1 != -kInf) s.v1 += term;
        s.shift -= term;
      } else {
        if (s.v2 != -kInf) s.v2 += term;
        s.shift += term;
      }
      s.g += sign * annulus_density(d, c.multiplicity);
    }
  }
  if (singular > 0) s.shift = kInf;
  if (singular < 0) s.shift = -kInf;

  const double r = norm(x);
  s.v3 = bump_.newton_potential(r);
  s.log_k = beta_ * s.v3;
  s.g -= bump_sign_ * beta_ * bump_.eval(r);
  return s;
}

double SingularModel::radial_mass(double r) const {
  if (!config_.all_at_origin()) {
    throw Error(ErrorKind::precondition, "radial_mass needs every center at the origin");
  }
  const double tslope = r > 0.0 ? cutoff_.t_slope(r / config_.varrho()) : 1.0;
  const double charge = 2.0 * config_.net_charge() * (1.0 - tslope);
  return kTwoPi * (charge - bump_sign_ * beta_ * bump_.mass_fraction(r));
}

double SingularModel::cell_mass(const Box& box) const {
  const double rho = config_.varrho();
  double sum = 0.0;
  for (const auto* group : {&config_.poles(), &config_.zeros()}) {
    for (const Center& c : *group) {
      const double sign = c.kind == CenterKind::pole ? 1.0 : -1.0;
      const auto density = [&](double d) { return annulus_density(d, c.multiplicity); };
      sum += sign * radial_over_box(c.position, box, density, 0.5 * rho, rho, {});
    }
  }
  const auto bump = [&](double r) { return bump_.eval(r); };
  sum -= bump_sign_ * beta_ * radial_over_box({}, box, bump, 0.0, 1.0, {});
  return sum;
}

double SingularModel::expected_mass() const {
  return kTwoPi * (2.0 * config_.net_charge() - beta_);
}

namespace {

void fill_samples(const SingularModel& model, SingularData& data) {
  const std::size_t n = data.points.size();
  data.beta = model.beta();
  data.radius.resize(n);
  data.v1.resize(n);
  data.v2.resize(n);
  data.shift.resize(n);
  data.v3.resize(n);
  data.log_k.resize(n);
  data.g.resize(n);
  data.u0.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto s = model.at(data.points[k]);
    data.radius[k] = norm(data.points[k]);
    data.v1[k] = s.v1;
    data.v2[k] = s.v2;
    data.shift[k] = s.shift;
    data.v3[k] = s.v3;
    data.log_k[k] = s.log_k;
    data.g[k] = s.g;
    data.u0[k] = s.shift + s.log_k;
  }
  data.expected_mass = model.expected_mass();
  data.r0 = model.config().r0();
  data.net_charge = model.config().net_charge();
}

void check_mass(const SingularModel& model, const SingularData& data) {
  const double tol = model.options().mass_tolerance;
  if (!(tol > 0.0)) return;
  const double rel = std::abs(data.cell_mass - data.expected_mass) / std::abs(data.expected_mass);
  if (rel > tol) {
    std::ostringstream msg;
    msg << "quadrature under-resolved: integral of g_beta = " << data.cell_mass
        << " vs 2 pi (2(N-M) - beta) = " << data.expected_mass << " (relative defect " << rel
        << "); use a smaller h or more radial nodes";
    throw Error(ErrorKind::quadrature, msg.str());
  }
}

}  // namespace

SingularData assemble(const SingularModel& model, const RadialGrid& grid) {
  if (!model.config().all_at_origin()) {
    throw Error(ErrorKind::grid, "radial path requires coincident vortices at the origin");
  }
  SingularData data;
  data.points.reserve(grid.size());
  for (double r : grid.nodes()) data.points.push_back({r, 0.0});
  fill_samples(model, data);

  data.cell_g.resize(grid.size());
  const auto& edges = grid.edges();
  double below = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double above = model.radial_mass(edges[k + 1]);
    data.cell_g[k] = above - below;
    below = above;
    data.cell_mass += data.cell_g[k];
  }
  data.sampled_mass = kTwoPi * grid.integrate(data.g);
  check_mass(model, data);
  return data;
}

SingularData assemble(const SingularModel& model, const DiskGrid& grid) {
  if (grid.r_max() <= model.config().r0()) {
    throw Error(ErrorKind::grid, "disk grid must contain B_r0 so that g_beta is fully resolved");
  }
  SingularData data;
  data.points = grid.points();
  fill_samples(model, data);

  // g vanishes outside the cutoff annuli and the unit disk.
  std::vector<std::pair<Point2, double>> supports = {{{}, 1.0}};
  for (const auto* group : {&model.config().poles(), &model.config().zeros()}) {
    for (const Center& c : *group) supports.push_back({c.position, model.config().varrho()});
  }
  data.cell_g.assign(grid.size(), 0.0);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Box box = grid.cell_box(k);
    const bool touches = std::any_of(supports.begin(), supports.end(), [&](const auto& s) {
      return min_distance(s.first, box) < s.second;
    });
    if (touches) data.cell_g[k] = model.cell_mass(box);
    data.cell_mass += data.cell_g[k];
    data.sampled_mass += grid.cell_areas()[k] * data.g[k];
  }
  check_mass(model, data);
  return data;
}

double check_v3_farfield(const SingularData& data, double c0) {
  double worst = 0.0;
  for (std::size_t k = 0; k < data.radius.size(); ++k) {
    const double r = data.radius[k];
    if (r < 2.0 * data.r0) continue;
    worst = std::max(worst, std::abs(data.v3[k] + std::log(r) + c0) * r);
  }
  return worst;
}

double measure_c1(const SingularData& data) {
  double worst = 0.0;
  for (std::size_t k = 0; k < data.radius.size(); ++k) {
    const double r = data.radius[k];
    if (r < 2.0 * data.r0) continue;
    worst = std::max(worst, std::abs(data.log_k[k] + data.beta * std::log(r)));
  }
  return worst / (2.0 * data.net_charge);
}

}  // namespace sigma_vortex
