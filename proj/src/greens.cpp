#include "sigma_vortex/greens.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

namespace sigma_vortex {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// F(x, y) with d^2 F / dx dy = ln sqrt(x^2 + y^2) and F(0, y) = F(x, 0) = 0.
double corner_log(double x, double y) {
  if (x == 0.0 || y == 0.0) return 0.0;
  const double xx = x * x;
  const double yy = y * y;
  return 0.5 * (x * y * std::log(xx + yy) - 3.0 * x * y + xx * std::atan(y / x) +
                yy * std::atan(x / y));
}

void require_zero_mean(const SourceField& source) {
  if (std::abs(source.mass) > 1e-10 * source.l1) {
    std::ostringstream msg;
    msg << "source must have zero mean: integral " << source.mass << " vs L1 norm " << source.l1;
    throw Error(ErrorKind::precondition, msg.str());
  }
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxy / sxx;
}

Box cell_box(Point2 c, double half) { return {c.x - half, c.x + half, c.y - half, c.y + half}; }

void add_cell(SourceField& s, Point2 c, double half, double weight, double value) {
  if (!(weight > 0.0)) return;
  s.centers.push_back(c);
  s.half.push_back(half);
  s.weight.push_back(weight);
  s.value.push_back(value);
}

// Cell-centred lattice of spacing h on [-extent, extent]^2, skipping cells
// inside [-hole, hole]^2.
template <class Visit>
void for_each_cell(double extent, double h, double hole, Visit visit) {
  const long n = std::lround(extent / h);
  for (long j = -n; j < n; ++j) {
    for (long i = -n; i < n; ++i) {
      const Point2 c{(static_cast<double>(i) + 0.5) * h, (static_cast<double>(j) + 0.5) * h};
      if (std::abs(c.x) < hole && std::abs(c.y) < hole) continue;
      visit(c, 0.5 * h);
    }
  }
}

}  // namespace

void SourceField::refresh() {
  mass = 0.0;
  moment = {};
  l1 = 0.0;
  linf = 0.0;
  for (std::size_t k = 0; k < size(); ++k) {
    const double m = value[k] * weight[k];
    mass += m;
    moment.x += m * centers[k].x;
    moment.y += m * centers[k].y;
    l1 += std::abs(m);
    linf = std::max(linf, std::abs(value[k]));
  }
}

SourceField SourceField::lattice(const std::function<double(Point2)>& f, double extent, double h) {
  if (!(h > 0.0 && extent > 0.0)) throw Error(ErrorKind::grid, "source lattice needs h, extent > 0");
  SourceField s;
  for_each_cell(extent, h, 0.0, [&](Point2 c, double half) {
    const double v = f(c);
    if (v != 0.0) {
      add_cell(s, c, half, 4.0 * half * half, v);
      s.support_radius = std::max(s.support_radius, max_distance({}, cell_box(c, half)));
    }
  });
  s.refresh();
  return s;
}

SourceField SourceField::nested(const std::function<double(Point2)>& f, double h, double inner,
                                int levels) {
  if (levels < 1) throw Error(ErrorKind::grid, "nested source needs at least one level");
  if (std::lround(inner / h) % 2 != 0) {
    throw Error(ErrorKind::grid, "nested source needs an even number of cells per half-width");
  }
  SourceField s;
  for (int level = 0; level < levels; ++level) {
    const double scale = std::ldexp(1.0, level);
    for_each_cell(inner * scale, h * scale, level == 0 ? 0.0 : 0.5 * inner * scale,
                  [&](Point2 c, double half) {
                    const double v = f(c);
                    if (v != 0.0) {
                      add_cell(s, c, half, 4.0 * half * half, v);
                      s.support_radius = std::max(s.support_radius, max_distance({}, cell_box(c, half)));
                    }
                  });
  }
  s.refresh();
  return s;
}

double box_log_integral(const Box& box, Point2 t) {
  const double x0 = box.x0 - t.x;
  const double x1 = box.x1 - t.x;
  const double y0 = box.y0 - t.y;
  const double y1 = box.y1 - t.y;
  return corner_log(x1, y1) - corner_log(x0, y1) - corner_log(x1, y0) + corner_log(x0, y0);
}

std::vector<double> gamma_convolve(const SourceField& source, const std::vector<Point2>& targets,
                                   int threads) {
  std::vector<double> out(targets.size(), 0.0);
  const auto evaluate = [&](std::size_t t) {
    const Point2 x = targets[t];
    double sum = 0.0;
    for (std::size_t k = 0; k < source.size(); ++k) {
      const double d = distance(x, source.centers[k]);
      const double half = source.half[k];
      if (d < 6.0 * half) {
        const double area = 4.0 * half * half;
        sum += source.value[k] * (source.weight[k] / area) *
               box_log_integral(cell_box(source.centers[k], half), x);
      } else {
        sum += source.value[k] * source.weight[k] * std::log(d);
      }
    }
    out[t] = -sum / kTwoPi;
  };
  const int count = std::max(1, std::min<int>(threads, static_cast<int>(targets.size())));
  if (count == 1) {
    for (std::size_t t = 0; t < targets.size(); ++t) evaluate(t);
    return out;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < count; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t t = static_cast<std::size_t>(w); t < targets.size(); t += count) evaluate(t);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

std::vector<Point2> ring_targets(const std::vector<double>& radii, double phase) {
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Point2> out;
  out.reserve(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double a = phase + golden * static_cast<double>(i);
    out.push_back({radii[i] * std::cos(a), radii[i] * std::sin(a)});
  }
  return out;
}

Lemma21Report check_lemma21(const SourceField& source, const std::vector<double>& radii,
                            int threads) {
  require_zero_mean(source);
  const double r = source.support_radius;
  Lemma21Report rep;
  for (double x : radii) {
    if (x > 4.0 * r) rep.radii.push_back(x);
  }
  std::vector<Point2> targets = ring_targets(rep.radii);
  const std::size_t far_count = targets.size();
  // Sup-norm probe: a 21 x 21 lattice over the support.
  for (int j = -10; j <= 10; ++j) {
    for (int i = -10; i <= 10; ++i) targets.push_back({0.1 * i * r, 0.1 * j * r});
  }
  const std::vector<double> values = gamma_convolve(source, targets, threads);
  rep.decay_pass = true;
  for (std::size_t i = 0; i < far_count; ++i) {
    rep.values.push_back(values[i]);
    const double ratio = source.l1 > 0.0 ? std::abs(values[i]) * rep.radii[i] / (r * source.l1) : 0.0;
    rep.ratios.push_back(ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    if (ratio > 1.0) rep.decay_pass = false;
  }
  for (double v : values) rep.sup_norm = std::max(rep.sup_norm, std::abs(v));
  rep.global_applicable = r >= std::numbers::e;
  rep.global_bound = source.l1 + r * std::log(r) * source.linf;
  rep.global_pass = !rep.global_applicable || rep.sup_norm <= rep.global_bound;
  rep.pass = rep.decay_pass && rep.global_pass;
  return rep;
}

Lemma22Report check_lemma22(const SourceField& source, const std::vector<double>& radii,
                            int threads) {
  if (!source.tail) throw Error(ErrorKind::precondition, "source has no tail tag (c2, beta)");
  const double beta = source.tail->beta;
  if (!(beta > 2.0)) throw Error(ErrorKind::domain, "inadmissible tail exponent: beta must exceed 2");
  require_zero_mean(source);
  if (radii.size() < 2) throw Error(ErrorKind::precondition, "need at least two sample radii");
  Lemma22Report rep;
  rep.radii = radii;
  rep.exponent = (beta - 2.0) / (beta - 1.0);
  rep.values = gamma_convolve(source, ring_targets(radii), threads);
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double e = std::abs(rep.values[i]) * std::pow(radii[i], rep.exponent);
    rep.envelope.push_back(e);
    rep.envelope_constant = std::max(rep.envelope_constant, e);
    lx.push_back(std::log(radii[i]));
    ly.push_back(std::log(std::max(e, 1e-300)));
  }
  rep.slope = fit_slope(lx, ly);
  rep.pass = rep.slope <= 0.05;
  return rep;
}

SourceField random_compact_source(std::uint64_t seed, double radius, double h) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  struct Bump {
    Point2 c;
    double width;
    double amp;
  };
  std::vector<Bump> bumps(4 + rng() % 3);
  for (Bump& b : bumps) {
    const double rr = 0.6 * radius * std::sqrt(unit(rng));
    const double th = kTwoPi * unit(rng);
    b.c = {rr * std::cos(th), rr * std::sin(th)};
    b.width = (0.15 + 0.25 * unit(rng)) * radius;
    b.amp = 2.0 * unit(rng) - 1.0;
  }
  SourceField s;
  for_each_cell(radius, h, 0.0, [&](Point2 c, double half) {
    if (max_distance({}, cell_box(c, half)) > radius) return;
    double v = 0.0;
    for (const Bump& b : bumps) {
      const Point2 d = c - b.c;
      v += b.amp * std::exp(-(d.x * d.x + d.y * d.y) / (b.width * b.width));
    }
    add_cell(s, c, half, 4.0 * half * half, v);
  });
  s.refresh();
  double area = 0.0;
  for (double w : s.weight) area += w;
  const double mean = s.mass / area;
  for (double& v : s.value) v -= mean;
  s.support_radius = radius;
  s.refresh();
  return s;
}

SourceField dipole_source(Point2 a, double rho, double h) {
  SourceField s;
  const double extent = std::ceil((norm(a) + rho) / h + 1.0) * h;
  for_each_cell(extent, h, 0.0, [&](Point2 c, double half) {
    const Box box = cell_box(c, half);
    const double plus = box_disk_area({box.x0 - a.x, box.x1 - a.x, box.y0 - a.y, box.y1 - a.y}, rho);
    const double minus = box_disk_area({box.x0 + a.x, box.x1 + a.x, box.y0 + a.y, box.y1 + a.y}, rho);
    // The balls are disjoint, so a cell meets at most one of them.
    if (plus > 0.0) add_cell(s, c, half, plus, 1.0);
    if (minus > 0.0) add_cell(s, c, half, minus, -1.0);
  });
  s.support_radius = norm(a) + rho;
  s.refresh();
  return s;
}

SourceField tail_source(double h, int levels) {
  const double inner = 2.0;
  const double r_s = inner * std::ldexp(1.0, levels - 1);
  SourceField s;
  std::vector<double> disk_part;
  for (int level = 0; level < levels; ++level) {
    const double scale = std::ldexp(1.0, level);
    for_each_cell(inner * scale, h * scale, level == 0 ? 0.0 : 0.5 * inner * scale,
                  [&](Point2 c, double half) {
                    const Box box = cell_box(c, half);
                    const double in_unit = box_disk_area(box, 1.0);
                    const double in_support = box_disk_area(box, r_s);
                    if (!(in_support > 0.0)) return;
                    const double r = std::max(norm(c), 1.0);
                    add_cell(s, c, half, in_support, (in_support - in_unit) / (r * r * r));
                    disk_part.push_back(in_unit);
                  });
  }
  // Choose the unit-disk level so that the discrete mean is zero.
  double tail_mass = 0.0;
  double disk_area = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    tail_mass += s.value[k];
    disk_area += disk_part[k];
  }
  const double level_in_disk = -tail_mass / disk_area;
  for (std::size_t k = 0; k < s.size(); ++k) {
    s.value[k] = (s.value[k] + level_in_disk * disk_part[k]) / s.weight[k];
  }
  s.support_radius = r_s;
  s.tail = SourceTail{3.0, 1.0};
  s.refresh();
  return s;
}

double tail_source_potential(double r, double r_s) {
  if (r < 1.0 || r > r_s) throw Error(ErrorKind::domain, "closed form holds for 1 <= r <= R_s");
  return -1.0 / r - std::log(r) / r_s + (std::log(r_s) + 1.0) / r_s;
}

}  // namespace sigma_vortex
