#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sigma_vortex/asymptotics.hpp"
#include "sigma_vortex/greens.hpp"
#include "sigma_vortex/io.hpp"
#include "sigma_vortex/verify.hpp"

namespace py = pybind11;
using namespace sigma_vortex;

namespace {

using PointList = std::vector<std::pair<double, double>>;

VortexConfig make_config(const PointList& poles, const PointList& zeros, std::optional<double> varrho,
                         std::optional<double> r0) {
  RawConfig raw;
  for (const auto& [x, y] : poles) raw.poles.push_back({x, y});
  for (const auto& [x, y] : zeros) raw.zeros.push_back({x, y});
  raw.varrho = varrho;
  raw.r0 = r0;
  return validate_config(raw);
}

py::dict result_dict(const SolveResult& r) {
  py::dict d;
  d["field"] = r.field;
  d["radius"] = r.radius;
  d["b_beta"] = r.b_beta;
  d["residual"] = r.residual;
  d["domain_mass"] = r.domain_mass;
  d["tail_mass"] = r.tail_mass;
  d["expected_mass"] = r.expected_mass;
  d["mass_defect"] = r.mass_defect;
  d["iterations"] = r.iterations;
  d["converged"] = r.converged;
  d["r_max"] = r.r_max;
  d["r0"] = r.r0;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Solver and verification harness for the gauged sigma-model vortex equation";

  py::register_exception<Error>(m, "SigmaVortexError", PyExc_ValueError);

  m.def("version", &tool_version);

  m.def(
      "beta_range",
      [](const PointList& poles, const PointList& zeros) {
        const VortexConfig cfg = make_config(poles, zeros, std::nullopt, std::nullopt);
        return py::make_tuple(2.0, 2.0 * cfg.net_charge(), cfg.beta0(), cfg.r0());
      },
      py::arg("poles"), py::arg("zeros") = PointList{});

  m.def(
      "solve_radial",
      [](const PointList& poles, double beta, double r_max, std::size_t nodes, const std::string& method,
         double tol) {
        RadialSetup setup;
        setup.r_max = r_max;
        setup.nodes = nodes;
        SolveOptions options;
        options.method = parse_method(method);
        options.tol = tol;
        const VortexConfig cfg = make_config(poles, {}, std::nullopt, std::nullopt);
        SolveResult r;
        {
          py::gil_scoped_release release;
          r = solve_radial(cfg, beta, setup, options);
        }
        return result_dict(r);
      },
      py::arg("poles"), py::arg("beta"), py::arg("r_max") = 1e4, py::arg("nodes") = 4000,
      py::arg("method") = "newton", py::arg("tol") = 1e-10);

  m.def(
      "solve_disk",
      [](const PointList& poles, const PointList& zeros, double beta, double r_max, double h,
         std::optional<double> r0) {
        DiskSetup setup;
        setup.r_max = r_max;
        setup.h = h;
        const SolveResult r = solve_disk(make_config(poles, zeros, std::nullopt, r0), beta, setup);
        return result_dict(r);
      },
      py::arg("poles"), py::arg("zeros") = PointList{}, py::arg("beta") = 3.0, py::arg("r_max") = 0.0,
      py::arg("h") = 0.0, py::arg("r0") = std::nullopt);

  m.def(
      "sweep",
      [](const PointList& poles, const std::vector<double>& epsilons, const std::string& endpoint,
         std::size_t nodes) {
        RadialSetup setup;
        setup.nodes = nodes;
        const SweepRecord rec = sweep_endpoints(make_config(poles, {}, std::nullopt, std::nullopt), epsilons,
                                                parse_endpoint(endpoint), setup);
        py::list points;
        for (const SweepPoint& p : rec.points) {
          py::dict d;
          d["beta"] = p.beta;
          d["epsilon"] = p.epsilon;
          d["b_beta"] = p.b_beta;
          d["b_over_logeps"] = p.b_over_logeps;
          d["decay_slope"] = p.decay_slope;
          d["ok"] = p.ok;
          points.append(d);
        }
        py::dict out;
        out["points"] = points;
        out["band"] = rec.band;
        out["band_pass"] = rec.band_pass;
        out["ratio_pass"] = rec.ratio_pass;
        out["pass"] = rec.pass();
        return out;
      },
      py::arg("poles"), py::arg("epsilons"), py::arg("endpoint") = "upper", py::arg("nodes") = 4000);

  m.def(
      "box_log_integral",
      [](double x0, double x1, double y0, double y1, double tx, double ty) {
        return box_log_integral({x0, x1, y0, y1}, {tx, ty});
      },
      py::arg("x0"), py::arg("x1"), py::arg("y0"), py::arg("y1"), py::arg("tx") = 0.0, py::arg("ty") = 0.0);

  m.def(
      "verify",
      [](const std::vector<std::string>& suites, std::uint64_t seed) {
        VerifyOptions options;
        options.suites = suites;
        options.seed = seed;
        return to_json(run_verification(options)).dump();
      },
      py::arg("suites") = std::vector<std::string>{}, py::arg("seed") = 1,
      "Runs the verification suites and returns the report as a JSON string.");
}
