// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "sigma_vortex/asymptotics.hpp"
#include "sigma_vortex/greens.hpp"

using namespace sigma_vortex;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

VortexConfig double_pole() {
  RawConfig raw;
  raw.poles = {{0, 0}, {0, 0}};
  return validate_config(raw);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome flux_quantization() {
  Outcome out{true, ""};
  for (double beta : {2.5, 3.0, 3.5}) {
    const auto t0 = std::chrono::steady_clock::now();
    const SolveResult r = solve_radial(double_pole(), beta);
    const double secs = seconds_since(t0);
    const double mu = 2 * std::numbers::pi * (4.0 - beta);
    const double rel = std::abs(r.domain_mass + r.tail_mass - mu) / mu;
    out.pass = out.pass && r.converged && rel <= 1e-3 && secs <= 60.0;
    out.detail += fmt("beta %.1f rel %.2e (%.2fs) ", beta, rel, secs);
  }
  return out;
}

Outcome endpoint(Endpoint end) {
  const auto t0 = std::chrono::steady_clock::now();
  const SweepRecord rec = sweep_endpoints(double_pole(), {1e-1, 1e-2, 1e-3, 1e-4}, end);
  const double secs = seconds_since(t0);
  Outcome out;
  out.pass = rec.pass() && secs <= 600.0;
  out.detail = fmt("band %.3f (limit 2), ", rec.band);
  for (const SweepPoint& p : rec.points) out.detail += fmt("eps %.0e ratio %.3f, ", p.epsilon, p.b_over_logeps);
  out.detail += std::string("trend ") + (rec.ratio_pass ? "ok" : "wrong") + fmt(" (%.1fs)", secs);
  return out;
}

Outcome decay() {
  const SolveResult r = solve_radial(double_pole(), 3.0);
  const DecayFit fit = fit_decay(r, 1e2, 1e3);
  return {fit.pass && fit.slope <= -0.45, fmt("slope %.4f (limit -0.45)", fit.slope)};
}

Outcome squeeze_uniqueness() {
  const auto t0 = std::chrono::steady_clock::now();
  const VortexConfig cfg = double_pole();
  RadialSetup setup;
  setup.nodes = 1000;
  const Problem anchor_problem = radial_problem(cfg, cfg.beta0(), setup);
  const SolveResult anchor = solve(anchor_problem);
  const ShiftConstants constants = compute_shift_constants(anchor_problem, anchor);
  const Problem p = radial_problem(cfg, 3.5, setup);
  const ShiftConstruction sc = supersub_construct(p, anchor, constants);
  MonotoneOptions options;
  options.tol = 1e-10;
  const SqueezeResult sq = squeeze(p, sc.sub, sc.super, options);
  const double secs = seconds_since(t0);
  const bool converged = sq.from_above.converged && sq.from_below.converged;
  return {converged && sq.gap <= 1e-6 && secs <= 30.0,
          fmt("gap %.2e after %.0f iterations (%.2fs)", sq.gap, sq.from_above.iterations, secs)};
}

Outcome compact_bound() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  bool pass = true;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> radius_draw(1.0, 2.0);
  for (int i = 0; i < 16; ++i) {
    const double radius = radius_draw(rng);
    const SourceField src = random_compact_source(100 + i, radius, 0.05);
    std::vector<double> radii;
    for (int k = 1; k <= 64; ++k) radii.push_back(4.0 * radius * (1.0 + 9.0 * k / 64.0));
    const Lemma21Report rep = check_lemma21(src, radii);
    worst = std::max(worst, rep.max_ratio);
    pass = pass && rep.decay_pass && rep.radii.size() == 64;
  }
  const double secs = seconds_since(t0);
  return {pass && secs <= 120.0, fmt("max ratio %.4f (limit 1) (%.2fs)", worst, secs)};
}

Outcome tail_envelope() {
  const SourceField src = tail_source(0.05, 20);
  std::vector<double> radii;
  for (int k = 0; k < 24; ++k) radii.push_back(10.0 * std::pow(20.0, k / 23.0));
  const Lemma22Report rep = check_lemma22(src, radii);
  return {rep.pass, fmt("envelope slope %.4f (limit 0.05)", rep.slope)};
}

Outcome bracket_property() {
  const VortexConfig cfg = double_pole();
  const double beta0 = cfg.beta0();
  const Problem anchor_problem = radial_problem(cfg, beta0);
  const SolveResult anchor = solve(anchor_problem);
  const ShiftConstants constants = compute_shift_constants(anchor_problem, anchor);
  Outcome out{true, ""};
  for (double beta : {beta0 - 0.5, beta0, beta0 + 0.5}) {
    const Problem p = radial_problem(cfg, beta);
    const SolveResult sol = solve(p);
    const ShiftConstruction sc = supersub_construct(p, anchor, constants);
    double violation = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      violation = std::max({violation, sc.sub[k] - sol.field[k], sol.field[k] - sc.super[k]});
    }
    out.pass = out.pass && sol.converged && violation <= 0.0;
    out.detail += fmt("beta %.1f violation %.1e ", beta, violation);
  }
  return out;
}

Outcome discretization_order() {
  std::vector<double> b;
  for (std::size_t n : {1000, 2000, 4000}) {
    RadialSetup setup;
    setup.nodes = n;
    b.push_back(solve_radial(double_pole(), 3.0, setup).b_beta);
  }
  const double order = std::log2((b[0] - b[1]) / (b[1] - b[2]));
  return {order >= 1.7 && order <= 2.3, fmt("observed order %.3f (range [1.7, 2.3])", order)};
}

Outcome energy_consistency() {
  const Problem p = radial_problem(double_pole(), 3.0);
  std::mt19937_64 rng(8);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<double> w(p.size());
    std::vector<double> dir(p.size());
    for (auto& x : w) x = -0.5 + 0.5 * normal(rng);
    for (auto& x : dir) x = normal(rng);
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
    worst = std::max(worst, std::abs(fd - directional) / std::abs(directional));
  }
  return {worst <= 1e-6, fmt("max relative gradient mismatch %.2e (limit 1e-6)", worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"flux quantization", flux_quantization},
      {"upper endpoint asymptotics", [] { return endpoint(Endpoint::upper); }},
      {"lower endpoint asymptotics", [] { return endpoint(Endpoint::lower); }},
      {"decay bound", decay},
      {"two-sided squeeze", squeeze_uniqueness},
      {"compact source bound", compact_bound},
      {"tail source envelope", tail_envelope},
      {"bracket property", bracket_property},
      {"discretization order", discretization_order},
      {"energy consistency", energy_consistency},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("criterion %2zu %-28s %s  %s\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
