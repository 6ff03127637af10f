#include "sigma_vortex/asymptotics.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

namespace sigma_vortex {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - fit.intercept - fit.slope * x[i];
    ss += e * e;
  }
  fit.rms = std::sqrt(ss / n);
  return fit;
}

double exterior_slope(double beta) { return (beta - 2.0) / (beta - 1.0); }

}  // namespace

TailEstimate extrapolate_tail(const std::vector<double>& radius, const std::vector<double>& integrand,
                              double r_max, double r_min) {
  const double lo = std::max(r_min, 0.1 * r_max);
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t k = 0; k < radius.size(); ++k) {
    if (radius[k] < lo || radius[k] > r_max || !(integrand[k] > 0.0)) continue;
    x.push_back(std::log(radius[k]));
    y.push_back(std::log(integrand[k]));
  }
  if (x.size() < 3) {
    throw Error(ErrorKind::quadrature, "tail extrapolation unstable: too few samples; increase R_max");
  }
  const LineFit fit = least_squares(x, y);
  TailEstimate tail;
  tail.slope = fit.slope;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double model = std::exp(fit.intercept + fit.slope * x[i]);
    tail.fit_residual = std::max(tail.fit_residual, std::abs(std::exp(y[i]) / model - 1.0));
  }
  if (tail.fit_residual > 0.1 || !(fit.slope < -2.0)) {
    std::ostringstream msg;
    msg << "tail extrapolation unstable (fit residual " << tail.fit_residual << ", slope "
        << fit.slope << "); increase R_max";
    throw Error(ErrorKind::quadrature, msg.str());
  }
  const double e = -fit.slope - 2.0;
  tail.value = kTwoPi * std::exp(fit.intercept) * std::pow(r_max, -e) / e;
  return tail;
}

ShiftConstants compute_shift_constants(const Problem& anchor_problem, const SolveResult& anchor) {
  const SingularData& data = anchor_problem.data();
  const FvMesh& mesh = anchor_problem.mesh();
  const std::size_t n = anchor_problem.size();
  ShiftConstants c;
  c.beta0 = data.net_charge + 1.0;
  c.upper = 2.0 * data.net_charge;
  c.r0 = data.r0;
  c.net_charge = data.net_charge;
  if (std::abs(data.beta - c.beta0) > 1e-12) {
    throw Error(ErrorKind::precondition, "anchor must be solved at beta0 = N - M + 1");
  }
  if (!anchor.converged) throw Error(ErrorKind::precondition, "anchor solve did not converge");
  const std::vector<double>& v = anchor.field;

  std::vector<double> d1_integrand(n, 0.0);
  std::vector<double> d2_integrand(n, 0.0);
  double d1 = 0.0;
  double d2 = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    c.sup_norm = std::max(c.sup_norm, std::abs(v[k]));
    if (std::isfinite(data.v1[k])) {
      d1_integrand[k] = 4.0 * std::exp(data.log_k[k] + v[k] - data.v1[k]);
      d1 += mesh.quadrature[k] * d1_integrand[k];
      if (data.radius[k] <= data.r0) c.core_integral += mesh.quadrature[k] * std::exp(-data.v1[k]);
    }
    // f with K_{2(N-M)} at the anchor field.
    const double l = c.upper * data.v3[k] + data.shift[k] + v[k];
    if (l == std::numeric_limits<double>::infinity()) {
      d2_integrand[k] = 4.0;
    } else if (std::isfinite(l)) {
      d2_integrand[k] = 4.0 / (1.0 + std::exp(-l));
    }
    d2 += mesh.quadrature[k] * d2_integrand[k];
    if (data.radius[k] >= 2.0 * data.r0) c.c1 = std::max(c.c1, std::abs(data.v3[k] + std::log(data.radius[k])));
  }
  c.tail_d1 = extrapolate_tail(data.radius, d1_integrand, mesh.r_max, 2.0 * data.r0);
  c.tail_d2 = extrapolate_tail(data.radius, d2_integrand, mesh.r_max, 2.0 * data.r0);
  c.d1 = d1 + c.tail_d1.value;
  c.d2 = d2 + c.tail_d2.value;
  c.d3 = 4.0 * std::exp(c.sup_norm) * ((c.beta0 - 2.0) * c.core_integral + kTwoPi);
  c.b_beta0 = anchor.b_beta;
  const double eb = std::exp(c.b_beta0);
  c.d4 = std::exp(-2.0 * c.net_charge * c.c1) / (c.net_charge - 1.0) * eb *
         std::pow(2.0 * c.r0, 2.0 - c.beta0) / (1.0 + 2.0 * (c.beta0 - 2.0) * eb);
  for (double d : {c.d1, c.d2, c.d3, c.d4}) {
    if (!(d > 0.0) || !std::isfinite(d)) throw Error(ErrorKind::quadrature, "shift constant is not positive");
  }
  return c;
}

std::string to_string(ShiftFormula formula) {
  switch (formula) {
    case ShiftFormula::tau0: return "tau-0";
    case ShiftFormula::tau1: return "tau-1";
    case ShiftFormula::tau2: return "tau-2";
    case ShiftFormula::tau3: return "tau-3";
  }
  return "?";
}

double shift_tau(ShiftFormula formula, double beta, const ShiftConstants& c) {
  double a = 0.0;
  switch (formula) {
    case ShiftFormula::tau0: a = std::log(c.upper - beta) + std::log(kTwoPi / c.d1); break;
    case ShiftFormula::tau1: a = std::log(c.upper - beta) + std::log(kTwoPi / c.d2); break;
    case ShiftFormula::tau2: a = std::log(beta - 2.0) + std::log(kTwoPi * (c.beta0 - 2.0) / c.d3); break;
    case ShiftFormula::tau3: a = std::log(beta - 2.0) - std::log(c.d4); break;
  }
  return std::min(0.0, a);
}

ShiftConstruction supersub_construct(const Problem& problem, const SolveResult& anchor,
                                     const ShiftConstants& constants, const BracketOptions& options) {
  if (anchor.field.size() != problem.size()) {
    throw Error(ErrorKind::precondition, "anchor and problem grids differ");
  }
  ShiftConstruction out;
  out.beta = problem.data().beta;
  const bool upper_half = out.beta >= constants.beta0;
  out.sub_formula = upper_half ? ShiftFormula::tau0 : ShiftFormula::tau2;
  out.super_formula = upper_half ? ShiftFormula::tau1 : ShiftFormula::tau3;
  out.tau_sub = shift_tau(out.sub_formula, out.beta, constants);
  out.tau_super = shift_tau(out.super_formula, out.beta, constants);

  std::vector<double> reference(problem.size());
  for (std::size_t k = 0; k < reference.size(); ++k) reference[k] = anchor.field[k] + out.tau_sub;
  BracketOptions one_side = options;
  one_side.build_super = false;
  Bracket below = bracket_about(problem, reference, one_side);
  for (std::size_t k = 0; k < reference.size(); ++k) reference[k] = anchor.field[k] + out.tau_super;
  one_side.build_super = true;
  one_side.build_sub = false;
  Bracket above = bracket_about(problem, reference, one_side);
  out.sub = std::move(below.sub);
  out.pad_sub = below.pad_sub;
  out.super = std::move(above.super);
  out.pad_super = above.pad_super;
  return out;
}

BbetaEstimate extract_bbeta(const SolveResult& result, double r_in, double r_out) {
  if (!(r_in >= 0.0 && r_out > r_in) || r_out > result.r_max) {
    std::ostringstream msg;
    msg << "annulus outside grid: [" << r_in << ", " << r_out << "] vs R_max = " << result.r_max;
    throw Error(ErrorKind::grid, msg.str());
  }
  double num = 0.0;
  double den = 0.0;
  std::vector<double> lr;
  std::vector<double> vals;
  for (std::size_t k = 0; k < result.field.size(); ++k) {
    const double r = result.radius[k];
    if (r < r_in || r > r_out) continue;
    num += result.weights[k] * result.field[k];
    den += result.weights[k];
    if (r >= 0.5 * (r_in + r_out)) {
      lr.push_back(std::log(r));
      vals.push_back(result.field[k]);
    }
  }
  if (!(den > 0.0)) throw Error(ErrorKind::grid, "annulus contains no grid nodes");
  BbetaEstimate est;
  est.value = num / den;
  for (std::size_t k = 0; k < result.field.size(); ++k) {
    const double r = result.radius[k];
    if (r < r_in || r > r_out) continue;
    est.spread = std::max(est.spread, std::abs(result.field[k] - est.value));
  }
  if (lr.size() >= 2 && result.beta > 2.0) {
    // Remaining drift if v - b ~ r^{-p} with the slowest admissible p.
    const LineFit fit = least_squares(lr, vals);
    est.tail = std::abs(fit.slope) / exterior_slope(result.beta);
  }
  est.uncertainty = est.spread + est.tail;
  return est;
}

DecayFit fit_decay(const SolveResult& result, double r_in, double r_out, double noise_floor) {
  return fit_decay(result, result.b_beta, r_in, r_out, noise_floor);
}

DecayFit fit_decay(const SolveResult& result, double b, double r_in, double r_out, double noise_floor) {
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t k = 0; k < result.field.size(); ++k) {
    const double r = result.radius[k];
    if (r < r_in || r > r_out) continue;
    const double dev = std::abs(result.field[k] - b);
    if (dev < noise_floor) {
      std::ostringstream msg;
      msg << "window too far out: |v - b| = " << dev << " at r = " << r << " is below the noise floor";
      throw Error(ErrorKind::precondition, msg.str());
    }
    x.push_back(std::log(r));
    y.push_back(std::log(dev));
  }
  if (x.size() < 3) throw Error(ErrorKind::grid, "decay window holds fewer than 3 nodes");
  const LineFit fit = least_squares(x, y);
  DecayFit out;
  out.slope = fit.slope;
  out.intercept = fit.intercept;
  out.residual = fit.rms;
  out.threshold = -exterior_slope(result.beta) + 0.05;
  out.pass = out.slope <= out.threshold;
  out.r_in = r_in;
  out.r_out = r_out;
  return out;
}

std::string to_string(Endpoint endpoint) { return endpoint == Endpoint::upper ? "upper" : "lower"; }

Endpoint parse_endpoint(const std::string& name) {
  if (name == "upper") return Endpoint::upper;
  if (name == "lower") return Endpoint::lower;
  throw Error(ErrorKind::config, "unknown endpoint '" + name + "' (upper|lower)");
}

void grade_sweep(SweepRecord& record) {
  std::vector<const SweepPoint*> by_eps;
  record.complete = !record.points.empty();
  for (const auto& p : record.points) {
    if (!p.ok) record.complete = false;
    by_eps.push_back(&p);
  }
  std::sort(by_eps.begin(), by_eps.end(),
            [](const SweepPoint* a, const SweepPoint* b) { return a->epsilon > b->epsilon; });
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  bool shrinking = true;
  double previous = std::numeric_limits<double>::infinity();
  for (const SweepPoint* p : by_eps) {
    if (!p->ok) continue;
    lo = std::min(lo, p->offset);
    hi = std::max(hi, p->offset);
    const double distance = std::abs(p->b_over_logeps - 1.0);
    if (distance > previous) shrinking = false;
    previous = distance;
  }
  record.band = hi - lo;
  record.band_pass = record.complete && record.band <= 2.0;
  const bool closer = by_eps.size() >= 2 &&
                      std::abs(by_eps.back()->b_over_logeps - 1.0) <
                          std::abs(by_eps.front()->b_over_logeps - 1.0);
  record.ratio_pass = record.complete && shrinking && closer;
}

SweepRecord sweep_endpoints(const VortexConfig& config, const std::vector<double>& epsilons,
                            Endpoint endpoint, const RadialSetup& setup, int threads) {
  const double upper = 2.0 * config.net_charge();
  SweepRecord record;
  record.endpoint = endpoint;
  record.points.resize(epsilons.size());
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0)) throw Error(ErrorKind::config, "sweep epsilons must be positive");
    record.points[i].epsilon = epsilons[i];
    record.points[i].beta = endpoint == Endpoint::upper ? upper - epsilons[i] : 2.0 + epsilons[i];
  }
  std::ostringstream grid;
  grid << "radial n=" << setup.nodes << " R=" << setup.r_max << " core=" << setup.core;

  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    for (std::size_t i = next++; i < record.points.size(); i = next++) {
      SweepPoint& p = record.points[i];
      p.grid = grid.str();
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const SolveResult r = solve_radial(config, p.beta, setup);
        if (!r.converged) throw Error(ErrorKind::solver, "solve did not converge");
        p.b_beta = r.b_beta;
        p.b_over_logeps = r.b_beta / std::log(p.epsilon);
        p.offset = std::abs(r.b_beta - std::log(p.epsilon));
        p.mass_defect = r.mass_defect;
        try {
          p.decay_slope = fit_decay(r, 1e-2 * r.r_max, 1e-1 * r.r_max).slope;
        } catch (const Error&) {
          p.decay_slope = std::numeric_limits<double>::quiet_NaN();
        }
        p.ok = true;
      } catch (const std::exception& e) {
        p.ok = false;
        p.error = e.what();
      }
      p.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  const int count = std::max(1, std::min<int>(threads, static_cast<int>(epsilons.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::sort(record.points.begin(), record.points.end(),
            [](const SweepPoint& a, const SweepPoint& b) { return a.beta < b.beta; });
  grade_sweep(record);
  return record;
}

}  // namespace sigma_vortex
