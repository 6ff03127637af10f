#pragma once

#include <string>
#include <vector>

#include "sigma_vortex/solver.hpp"

namespace sigma_vortex {

/// Power-law tail of a radial integrand, fitted as C r^s over the outer
/// decade of the grid and integrated analytically over |x| > R_max.
struct TailEstimate {
  double value = 0.0;
  double slope = 0.0;
  double fit_residual = 0.0;  // max relative deviation of the fit
};

/// Throws when the fit is unstable (residual > 10%) or not integrable.
TailEstimate extrapolate_tail(const std::vector<double>& radius, const std::vector<double>& integrand,
                              double r_max, double r_min);

struct ShiftConstants {
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
  double d4 = 0.0;
  double c1 = 0.0;
  double b_beta0 = 0.0;
  double sup_norm = 0.0;     // ||v_beta0||_inf
  double core_integral = 0.0;  // int_{B_r0} e^{-v1}, pole nodes excluded
  TailEstimate tail_d1;
  TailEstimate tail_d2;
  double beta0 = 0.0;
  double upper = 0.0;  // 2(N - M)
  double r0 = 0.0;
  int net_charge = 0;
};

/// d1 and d3 involve e^{-v1}, which is not integrable at a pole; they are
/// evaluated on the grid with the pole nodes left out and so depend on the
/// resolution there. d2 and d4 are finite.
ShiftConstants compute_shift_constants(const Problem& anchor_problem, const SolveResult& anchor);

enum class ShiftFormula { tau0, tau1, tau2, tau3 };
std::string to_string(ShiftFormula formula);

/// The four negative-part shift formulas.
double shift_tau(ShiftFormula formula, double beta, const ShiftConstants& constants);

struct ShiftConstruction {
  double beta = 0.0;
  ShiftFormula sub_formula = ShiftFormula::tau0;
  ShiftFormula super_formula = ShiftFormula::tau1;
  double tau_sub = 0.0;
  double tau_super = 0.0;
  std::vector<double> sub;
  std::vector<double> super;
  double pad_sub = 0.0;
  double pad_super = 0.0;
};

/// Sub/super-solutions v_beta0 + tau_beta + (correction) + padding for the
/// problem at beta, built on the anchor's grid.
ShiftConstruction supersub_construct(const Problem& problem, const SolveResult& anchor,
                                     const ShiftConstants& constants,
                                     const BracketOptions& options = {});

struct BbetaEstimate {
  double value = 0.0;
  double uncertainty = 0.0;
  double spread = 0.0;  // max deviation over the annulus
  double tail = 0.0;    // remaining drift beyond r_out at the slowest allowed decay
};

/// Quadrature average of the field over r_in <= |x| <= r_out.
BbetaEstimate extract_bbeta(const SolveResult& result, double r_in, double r_out);

struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;   // rms of the log-log fit
  double threshold = 0.0;  // -(beta - 2)/(beta - 1) + 0.05
  bool pass = false;
  double r_in = 0.0;
  double r_out = 0.0;
};

/// Least-squares slope of log|v - b| against log r on [r_in, r_out], with b
/// the far-field limit of the result.
DecayFit fit_decay(const SolveResult& result, double r_in, double r_out, double noise_floor = 1e-9);
DecayFit fit_decay(const SolveResult& result, double b, double r_in, double r_out,
                   double noise_floor = 1e-9);

enum class Endpoint { upper, lower };
std::string to_string(Endpoint endpoint);
Endpoint parse_endpoint(const std::string& name);

struct SweepPoint {
  double beta = 0.0;
  double epsilon = 0.0;
  double b_beta = 0.0;
  double b_over_logeps = 0.0;
  double offset = 0.0;  // |b - ln eps|
  double decay_slope = 0.0;
  double mass_defect = 0.0;
  double runtime = 0.0;
  std::string grid;
  bool ok = false;
  std::string error;
};

struct SweepRecord {
  Endpoint endpoint = Endpoint::upper;
  std::vector<SweepPoint> points;  // sorted by beta
  double band = 0.0;               // max - min of |b - ln eps|
  bool band_pass = false;          // band <= 2
  bool ratio_pass = false;         // |b / ln eps - 1| shrinks monotonically as eps decreases
  bool complete = false;
  bool pass() const { return complete && band_pass && ratio_pass; }
};

SweepRecord sweep_endpoints(const VortexConfig& config, const std::vector<double>& epsilons,
                            Endpoint endpoint, const RadialSetup& setup = {}, int threads = 1);

/// Verdicts of a sweep recomputed from its points.
void grade_sweep(SweepRecord& record);

}  // namespace sigma_vortex
