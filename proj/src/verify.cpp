#include "sigma_vortex/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sigma_vortex/asymptotics.hpp"
#include "sigma_vortex/greens.hpp"

namespace sigma_vortex {
namespace {

VortexConfig reference_config() {
  RawConfig raw;
  raw.poles = {{0.0, 0.0}, {0.0, 0.0}};
  return validate_config(raw);
}

std::string format(double x) {
  std::ostringstream out;
  out.precision(3);
  out << x;
  return out.str();
}

SuiteResult mass_identity(const VerifyOptions& options) {
  SuiteResult r;
  r.name = "mass_identity";
  const VortexConfig cfg = reference_config();
  RadialSetup setup;
  setup.nodes = options.radial_nodes;
  setup.singular.flip_bump_term = options.inject_g_sign_fault;
  try {
    const RadialGrid grid = build_radial_grid(cfg, setup.r_max, setup.nodes, {setup.core});
    double worst = 0.0;
    for (int i = 1; i <= 20; ++i) {
      const double beta = 2.0 + 2.0 * i / 21.0;
      const SingularModel model(cfg, beta, setup.singular);
      const SingularData data = assemble(model, grid);
      worst = std::max(worst, std::abs(data.cell_mass - data.expected_mass) / data.expected_mass);
    }
    const SolveResult sol = solve_radial(cfg, 3.0, setup);
    const double mass = sol.domain_mass + sol.tail_mass;
    const double defect = std::abs(mass - sol.expected_mass) / sol.expected_mass;
    r.metrics = {{"source_mass_rel_defect", worst}, {"solution_mass_rel_defect", defect}};
    r.pass = sol.converged && worst <= 1e-6 && defect <= 1e-3;
    r.summary = "source " + format(worst) + ", solution " + format(defect);
  } catch (const std::exception& e) {
    r.pass = false;
    r.summary = e.what();
  }
  return r;
}

SuiteResult lemma21(const VerifyOptions& options) {
  SuiteResult r;
  r.name = "lemma21";
  double worst = 0.0;
  bool pass = true;
  for (int i = 0; i < 16; ++i) {
    const double radius = 1.0 + i / 15.0;
    const SourceField src = random_compact_source(options.seed * 1000 + i, radius, 0.05);
    std::vector<double> radii;
    for (int k = 1; k <= 64; ++k) radii.push_back(4.0 * radius * (1.0 + 9.0 * k / 64.0));
    const Lemma21Report rep = check_lemma21(src, radii, options.threads);
    worst = std::max(worst, rep.max_ratio);
    pass = pass && rep.pass && rep.radii.size() == 64;
  }
  const SourceField dip = dipole_source({1.0, 0.0}, 0.5, 0.05);
  const Lemma21Report rep = check_lemma21(dip, {10.0, 20.0, 40.0}, options.threads);
  r.metrics = {{"random_max_ratio", worst}, {"dipole_max_ratio", rep.max_ratio}};
  r.pass = pass && rep.pass;
  r.summary = "max ratio " + format(std::max(worst, rep.max_ratio)) + " (bound 1)";
  return r;
}

SuiteResult lemma22(const VerifyOptions& options) {
  SuiteResult r;
  r.name = "lemma22";
  const SourceField src = tail_source(0.05, 20);
  std::vector<double> radii;
  for (int k = 0; k < 24; ++k) radii.push_back(10.0 * std::pow(20.0, k / 23.0));
  const Lemma22Report rep = check_lemma22(src, radii, options.threads);
  r.metrics = {{"slope", rep.slope}, {"envelope_constant", rep.envelope_constant}};
  r.pass = rep.pass;
  r.summary = "envelope slope " + format(rep.slope) + " (limit 0.05)";
  return r;
}

SuiteResult bracket(const VerifyOptions& options) {
  SuiteResult r;
  r.name = "bracket";
  const VortexConfig cfg = reference_config();
  RadialSetup setup;
  setup.nodes = options.radial_nodes;
  try {
    const double beta0 = cfg.beta0();
    const Problem anchor_problem = radial_problem(cfg, beta0, setup);
    const SolveResult anchor = solve(anchor_problem);
    const ShiftConstants constants = compute_shift_constants(anchor_problem, anchor);
    bool pass = true;
    double worst = 0.0;
    Json per_beta = Json::array();
    for (double beta : {beta0 - 0.5, beta0, beta0 + 0.5}) {
      const Problem p = radial_problem(cfg, beta, setup);
      const SolveResult sol = solve(p);
      const ShiftConstruction sc = supersub_construct(p, anchor, constants);
      double violation = 0.0;
      for (std::size_t k = 0; k < p.size(); ++k) {
        violation = std::max({violation, sc.sub[k] - sol.field[k], sol.field[k] - sc.super[k]});
      }
      worst = std::max(worst, violation);
      pass = pass && sol.converged && violation <= 1e-8;
      per_beta.push_back({{"beta", beta},
                          {"tau_sub", sc.tau_sub},
                          {"tau_super", sc.tau_super},
                          {"pad_sub", sc.pad_sub},
                          {"pad_super", sc.pad_super},
                          {"violation", violation}});
    }
    r.metrics = {{"cases", per_beta}, {"worst_violation", worst}};
    r.pass = pass;
    r.summary = "worst ordering violation " + format(worst);
  } catch (const std::exception& e) {
    r.summary = e.what();
  }
  return r;
}

SuiteResult comparison(const VerifyOptions& options) {
  SuiteResult r;
  r.name = "comparison";
  const VortexConfig cfg = reference_config();
  RadialSetup setup;
  setup.nodes = options.radial_nodes;
  try {
    const double beta = 3.0;
    const Problem p = radial_problem(cfg, beta, setup);
    const SolveResult newton = solve(p);
    const Bracket b = bracket_about(p, std::vector<double>(p.size(), p.balancing_constant()));
    MonotoneOptions mono;
    mono.tol = 1e-11;
    const SqueezeResult sq = squeeze(p, b.sub, b.super, mono);
    double cross = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      cross = std::max(cross, std::abs(sq.from_above.field[k] - newton.field[k]));
    }
    r.metrics = {{"squeeze_gap", sq.gap}, {"newton_vs_monotone", cross}};
    r.pass = newton.converged && sq.from_above.converged && sq.gap <= 1e-6 && cross <= 1e-8;
    r.summary = "gap " + format(sq.gap) + ", newton vs monotone " + format(cross);
  } catch (const std::exception& e) {
    r.summary = e.what();
  }
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"mass_identity", "lemma21", "lemma22", "bracket",
                                              "comparison"};
  return names;
}

std::vector<SuiteResult> run_verification(const VerifyOptions& options) {
  for (const auto& s : options.suites) {
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end()) {
      throw Error(ErrorKind::config, "unknown suite '" + s + "'");
    }
  }
  const auto wanted = [&](const std::string& name) {
    return options.suites.empty() ||
           std::find(options.suites.begin(), options.suites.end(), name) != options.suites.end();
  };
  std::vector<SuiteResult> out;
  if (wanted("mass_identity")) out.push_back(mass_identity(options));
  if (wanted("lemma21")) out.push_back(lemma21(options));
  if (wanted("lemma22")) out.push_back(lemma22(options));
  if (wanted("bracket")) out.push_back(bracket(options));
  if (wanted("comparison")) out.push_back(comparison(options));
  return out;
}

Json to_json(const std::vector<SuiteResult>& results) {
  Json suites = Json::array();
  bool all = true;
  for (const auto& r : results) {
    suites.push_back({{"name", r.name}, {"pass", r.pass}, {"summary", r.summary}, {"metrics", r.metrics}});
    all = all && r.pass;
  }
  return {{"pass", all}, {"suites", suites}};
}

}  // namespace sigma_vortex
