#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "sigma_vortex/asymptotics.hpp"
#include "sigma_vortex/greens.hpp"
#include "sigma_vortex/io.hpp"
#include "sigma_vortex/verify.hpp"

namespace sv = sigma_vortex;

namespace {

struct Globals {
  std::string config;
  std::string out = "out";
  int threads = 0;
  std::uint64_t seed = 1;
  bool quiet = false;
};

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SIGMA_VORTEX_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

sv::RunFile load(const Globals& g) {
  if (g.config.empty()) throw sv::Error(sv::ErrorKind::config, "--config is required");
  return sv::load_run_file(g.config);
}

sv::RunManifest manifest_for(const std::string& sub, const Globals& g) {
  sv::RunManifest m;
  m.subcommand = sub;
  m.seed = g.seed;
  m.wall_clock = sv::utc_timestamp();
  return m;
}

void say(const Globals& g, const std::string& text) {
  if (!g.quiet) std::cout << text << "\n";
}

struct SolveArgs {
  std::optional<double> beta;
  std::optional<double> rmax;
  std::optional<double> tol;
  std::optional<double> h;
  std::optional<std::size_t> nodes;
  std::string method;
  bool radial = false;
};

int cmd_solve(const Globals& g, const SolveArgs& a) {
  const sv::RunFile run = load(g);
  const sv::VortexConfig cfg = sv::validate_config(run.raw);
  const auto beta = a.beta ? a.beta : run.beta;
  if (!beta) throw sv::Error(sv::ErrorKind::config, "beta missing (config key or --beta)");
  sv::make_beta(cfg, *beta);

  sv::SolveOptions options;
  if (!a.method.empty()) {
    options.method = sv::parse_method(a.method);
  } else if (run.method) {
    options.method = *run.method;
  }
  if (a.tol) {
    options.tol = *a.tol;
  } else if (run.tol) {
    options.tol = *run.tol;
  }

  sv::RunManifest m = manifest_for("solve", g);
  m.config = sv::to_json(cfg);
  m.solver = {{"method", sv::to_string(options.method)}, {"tol", options.tol}, {"beta", *beta}};

  const auto t0 = std::chrono::steady_clock::now();
  sv::SolveResult res;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> columns;
  if (a.radial) {
    sv::RadialSetup setup;
    if (auto r = a.rmax ? a.rmax : run.rmax) setup.r_max = *r;
    if (auto n = a.nodes ? a.nodes : run.radial_nodes) setup.nodes = *n;
    if (run.core) setup.core = *run.core;
    m.grid = {{"kind", "radial"}, {"rmax", setup.r_max}, {"nodes", setup.nodes}, {"core", setup.core}};
    res = sv::solve_radial(cfg, *beta, setup, options);
    columns = {"r", "v"};
    for (std::size_t k = 0; k < res.field.size(); ++k) rows.push_back({res.radius[k], res.field[k]});
  } else {
    sv::DiskSetup setup;
    if (auto r = a.rmax ? a.rmax : run.rmax) setup.r_max = *r;
    if (auto h = a.h ? a.h : run.h) setup.h = *h;
    const sv::Problem p = sv::disk_problem(cfg, *beta, setup);
    m.grid = {{"kind", "disk"}, {"rmax", p.mesh().r_max}, {"nodes", p.size()}};
    res = sv::solve(p, options);
    columns = {"x", "y", "v"};
    for (std::size_t k = 0; k < res.field.size(); ++k) {
      rows.push_back({p.mesh().points[k].x, p.mesh().points[k].y, res.field[k]});
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const sv::OutputDir out(g.out);
  m.outputs = {"result.json", "field.csv"};
  sv::Json history = sv::Json::array();
  for (const auto& h : res.history) {
    history.push_back({{"kind", h.kind}, {"step", h.step}, {"residual", h.residual}, {"update", h.update}});
  }
  sv::Json result = {{"beta", res.beta},
                     {"b_beta", res.b_beta},
                     {"residual", res.residual},
                     {"mass_defect", res.mass_defect},
                     {"domain_mass", res.domain_mass},
                     {"tail_mass", res.tail_mass},
                     {"expected_mass", res.expected_mass},
                     {"iterations", res.iterations},
                     {"converged", res.converged},
                     {"runtime_seconds", seconds}};
  try {
    const sv::BbetaEstimate est = sv::extract_bbeta(res, 10.0 * res.r0, 0.5 * res.r_max);
    result["annulus_b_beta"] = {{"value", est.value}, {"uncertainty", est.uncertainty}};
  } catch (const sv::Error& e) {
    result["annulus_b_beta"] = {{"error", e.what()}};
  }
  if (a.radial) {
    try {
      const double hi = std::min(1e3, 0.1 * res.r_max);
      const sv::DecayFit fit = sv::fit_decay(res, 0.1 * hi, hi);
      result["decay_fit"] = {{"r_in", fit.r_in}, {"r_out", fit.r_out}, {"slope", fit.slope},
                             {"threshold", fit.threshold}, {"pass", fit.pass}};
    } catch (const sv::Error& e) {
      result["decay_fit"] = {{"error", e.what()}};
    }
  }
  result["history"] = history;
  result["manifest"] = m.to_json();
  out.write_json("result.json", result);
  out.write_text("field.csv", sv::format_csv(m, columns, rows));

  std::ostringstream msg;
  msg.precision(10);
  msg << "b_beta = " << res.b_beta << "  residual = " << res.residual
      << "  mass_defect = " << res.mass_defect << "  iterations = " << res.iterations
      << (res.converged ? "  converged" : "  NOT converged");
  say(g, msg.str());
  return res.converged ? 0 : 2;
}

struct SweepArgs {
  std::string endpoint = "upper";
  std::vector<double> epsilons{1e-1, 1e-2, 1e-3, 1e-4};
  bool radial = false;
};

int cmd_sweep(const Globals& g, const SweepArgs& a) {
  const sv::RunFile run = load(g);
  const sv::VortexConfig cfg = sv::validate_config(run.raw);
  if (!cfg.all_at_origin()) {
    throw sv::Error(sv::ErrorKind::config, "sweep uses the radial path: radial path requires coincident vortices");
  }
  sv::RadialSetup setup;
  if (run.rmax) setup.r_max = *run.rmax;
  if (run.radial_nodes) setup.nodes = *run.radial_nodes;
  if (run.core) setup.core = *run.core;
  const sv::Endpoint endpoint = sv::parse_endpoint(a.endpoint);
  const sv::SweepRecord rec = sv::sweep_endpoints(cfg, a.epsilons, endpoint, setup, resolve_threads(g.threads));

  sv::RunManifest m = manifest_for("sweep", g);
  m.config = sv::to_json(cfg);
  m.grid = {{"kind", "radial"}, {"rmax", setup.r_max}, {"nodes", setup.nodes}, {"core", setup.core}};
  m.solver = {{"endpoint", a.endpoint}, {"epsilons", a.epsilons}};
  m.outputs = {"sweep.csv", "verdict.json"};
  std::vector<std::vector<double>> rows;
  sv::Json points = sv::Json::array();
  for (const auto& p : rec.points) {
    rows.push_back({p.beta, p.epsilon, p.b_beta, p.b_over_logeps, p.decay_slope, p.mass_defect});
    points.push_back({{"beta", p.beta}, {"ok", p.ok}, {"error", p.error}, {"offset", p.offset},
                      {"runtime_seconds", p.runtime}, {"grid", p.grid}});
  }
  const sv::OutputDir out(g.out);
  out.write_text("sweep.csv", sv::format_csv(m, {"beta", "epsilon", "b_beta", "b_over_logeps", "decay_slope",
                                                 "mass_defect"}, rows));
  out.write_json("verdict.json", {{"endpoint", a.endpoint},
                                  {"complete", rec.complete},
                                  {"band", rec.band},
                                  {"band_pass", rec.band_pass},
                                  {"ratio_pass", rec.ratio_pass},
                                  {"pass", rec.pass()},
                                  {"points", points},
                                  {"manifest", m.to_json()}});
  std::ostringstream msg;
  for (const auto& p : rec.points) {
    msg << "beta = " << p.beta << "  b_beta = " << p.b_beta << "  b/ln(eps) = " << p.b_over_logeps
        << (p.ok ? "" : "  FAILED: " + p.error) << "\n";
  }
  msg << "band = " << rec.band << (rec.band_pass ? " PASS" : " FAIL")
      << "  ratio trend " << (rec.ratio_pass ? "PASS" : "FAIL");
  say(g, msg.str());
  return rec.complete ? 0 : 2;
}

struct VerifyArgs {
  std::vector<std::string> suites;
  std::string inject;
};

int cmd_verify(const Globals& g, const VerifyArgs& a) {
  sv::VerifyOptions options;
  options.suites = a.suites;
  options.seed = g.seed;
  options.threads = resolve_threads(g.threads);
  if (!a.inject.empty()) {
    if (a.inject != "g-sign") throw sv::Error(sv::ErrorKind::config, "unknown fault '" + a.inject + "' (g-sign)");
    options.inject_g_sign_fault = true;
  }
  const auto results = sv::run_verification(options);
  sv::RunManifest m = manifest_for("verify", g);
  m.solver = {{"suites", a.suites}, {"inject", a.inject}};
  m.outputs = {"verify.json"};
  sv::Json report = sv::to_json(results);
  report["manifest"] = m.to_json();
  sv::OutputDir(g.out).write_json("verify.json", report);
  bool all = true;
  std::ostringstream msg;
  for (const auto& r : results) {
    msg << (r.pass ? "PASS  " : "FAIL  ") << r.name << "  " << r.summary << "\n";
    all = all && r.pass;
  }
  if (!g.quiet) std::cout << msg.str();
  return all ? 0 : 3;
}

struct ConvolveArgs {
  std::string source;
  std::string targets;
  std::vector<double> radii;
  double h = 0.0;
};

int cmd_convolve(const Globals& g, const ConvolveArgs& a) {
  if (!(a.h > 0.0)) throw sv::Error(sv::ErrorKind::config, "--spacing (source cell size) must be positive");
  sv::SourceField src;
  for (const auto& row : sv::read_csv(a.source)) {
    if (row.size() < 3) throw sv::Error(sv::ErrorKind::io, "source rows need x, y, value[, weight]");
    src.centers.push_back({row[0], row[1]});
    src.half.push_back(0.5 * a.h);
    src.weight.push_back(row.size() > 3 ? row[3] : a.h * a.h);
    src.value.push_back(row[2]);
    src.support_radius = std::max(src.support_radius, sv::norm({row[0], row[1]}) + a.h);
  }
  src.refresh();
  std::vector<sv::Point2> targets;
  if (!a.targets.empty()) {
    for (const auto& row : sv::read_csv(a.targets)) {
      if (row.size() < 2) throw sv::Error(sv::ErrorKind::io, "target rows need x, y");
      targets.push_back({row[0], row[1]});
    }
  } else {
    targets = sv::ring_targets(a.radii);
  }
  if (targets.empty()) throw sv::Error(sv::ErrorKind::config, "no targets (--targets or --radii)");
  const auto values = sv::gamma_convolve(src, targets, resolve_threads(g.threads));
  sv::RunManifest m = manifest_for("convolve", g);
  m.grid = {{"source", a.source}, {"cells", src.size()}, {"h", a.h}};
  m.outputs = {"convolve.csv"};
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < targets.size(); ++i) rows.push_back({targets[i].x, targets[i].y, values[i]});
  sv::OutputDir(g.out).write_text("convolve.csv", sv::format_csv(m, {"x", "y", "value"}, rows));
  say(g, "wrote " + std::to_string(rows.size()) + " targets");
  return 0;
}

int cmd_dump(const Globals& g, const SolveArgs& a) {
  const sv::RunFile run = load(g);
  const sv::VortexConfig cfg = sv::validate_config(run.raw);
  const auto beta = a.beta ? a.beta : run.beta;
  if (!beta) throw sv::Error(sv::ErrorKind::config, "beta missing (config key or --beta)");
  sv::RunManifest m = manifest_for("dump-singular", g);
  m.config = sv::to_json(cfg);
  m.solver = {{"beta", *beta}};
  m.outputs = {"singular.csv"};
  std::vector<std::vector<double>> rows;
  std::vector<std::string> columns;
  const auto emit = [&](const sv::SingularData& d, bool radial) {
    for (std::size_t k = 0; k < d.v1.size(); ++k) {
      std::vector<double> row;
      if (radial) {
        row.push_back(d.radius[k]);
      } else {
        row.push_back(d.points[k].x);
        row.push_back(d.points[k].y);
      }
      for (double v : {d.v1[k], d.v2[k], d.v3[k], std::exp(d.log_k[k]), d.g[k], d.u0[k]}) row.push_back(v);
      rows.push_back(std::move(row));
    }
  };
  if (a.radial) {
    sv::RadialSetup setup;
    if (auto r = a.rmax ? a.rmax : run.rmax) setup.r_max = *r;
    if (auto n = a.nodes ? a.nodes : run.radial_nodes) setup.nodes = *n;
    if (run.core) setup.core = *run.core;
    const sv::Problem p = sv::radial_problem(cfg, *beta, setup);
    m.grid = {{"kind", "radial"}, {"rmax", setup.r_max}, {"nodes", setup.nodes}};
    columns = {"r", "v1", "v2", "v3", "K_beta", "g_beta", "u0"};
    emit(p.data(), true);
  } else {
    sv::DiskSetup setup;
    if (auto r = a.rmax ? a.rmax : run.rmax) setup.r_max = *r;
    if (auto h = a.h ? a.h : run.h) setup.h = *h;
    const sv::Problem p = sv::disk_problem(cfg, *beta, setup);
    m.grid = {{"kind", "disk"}, {"rmax", p.mesh().r_max}, {"nodes", p.size()}};
    columns = {"x", "y", "v1", "v2", "v3", "K_beta", "g_beta", "u0"};
    emit(p.data(), false);
  }
  sv::OutputDir(g.out).write_text("singular.csv", sv::format_csv(m, columns, rows));
  say(g, "wrote " + std::to_string(rows.size()) + " samples");
  return 0;
}

int exit_code(const sv::Error& e) {
  switch (e.kind()) {
    case sv::ErrorKind::config:
    case sv::ErrorKind::domain:
      return 1;
    default:
      return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vortex equation solver and verification harness", "sigma-vortex"};
  app.set_version_flag("--version", sv::tool_version());
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "Run file (key = value)");
  app.add_option("--out", g.out, "Output directory");
  app.add_option("--threads", g.threads, "Worker threads (default: SIGMA_VORTEX_THREADS or 1)");
  app.add_option("--seed", g.seed, "Seed for randomized checks");
  app.add_flag("--quiet", g.quiet, "Suppress console output");

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Solve for v_beta and write result.json and field.csv");
  solve->add_option("--beta", solve_args.beta, "Exponent in (2, 2(N - M)); default N - M + 1");
  solve->add_option("--rmax", solve_args.rmax, "Truncation radius");
  solve->add_option("--tol", solve_args.tol, "Scaled residual tolerance");
  solve->add_option("--spacing", solve_args.h, "2D grid spacing");
  solve->add_option("--nodes", solve_args.nodes, "Radial node count");
  solve->add_option("--method", solve_args.method, "Iteration")->check(CLI::IsMember({"monotone", "newton", "hybrid"}));
  solve->add_flag("--radial", solve_args.radial, "Use the radial solver (coincident vortices)");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "b_beta near an endpoint of the beta interval");
  sweep->add_option("--endpoint", sweep_args.endpoint, "Which end of the beta interval")->check(CLI::IsMember({"upper", "lower"}));
  sweep->add_option("--epsilons", sweep_args.epsilons, "Distances from the endpoint, comma separated")->delimiter(',');
  sweep->add_flag("--radial", sweep_args.radial, "Radial path (the only one supported)");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Run the invariant suites");
  verify->add_option("--suite", verify_args.suites)->check(CLI::IsMember(sv::suite_names()));
  verify->add_option("--inject-fault", verify_args.inject, "Mutation hook (g-sign)");

  ConvolveArgs convolve_args;
  auto* convolve = app.add_subcommand("convolve", "Log-kernel convolution of a source CSV");
  convolve->add_option("--source", convolve_args.source, "CSV of x, y, value[, weight]")->required();
  convolve->add_option("--spacing", convolve_args.h, "Source cell size")->required();
  convolve->add_option("--targets", convolve_args.targets, "CSV of x, y");
  convolve->add_option("--radii", convolve_args.radii, "Ring radii for golden-angle targets")->delimiter(',');

  SolveArgs dump_args;
  auto* dump = app.add_subcommand("dump-singular", "Write v1, v2, v3, K_beta, g_beta, u0 samples");
  dump->add_option("--beta", dump_args.beta, "Exponent");
  dump->add_option("--rmax", dump_args.rmax, "Truncation radius");
  dump->add_option("--spacing", dump_args.h, "2D grid spacing");
  dump->add_option("--nodes", dump_args.nodes, "Radial node count");
  dump->add_flag("--radial", dump_args.radial);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*solve) return cmd_solve(g, solve_args);
    if (*sweep) return cmd_sweep(g, sweep_args);
    if (*verify) return cmd_verify(g, verify_args);
    if (*convolve) return cmd_convolve(g, convolve_args);
    if (*dump) return cmd_dump(g, dump_args);
  } catch (const sv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
