#include "sigma_vortex/solver.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace sigma_vortex {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// sigma(l) and sigma(l) (1 - sigma(l)) without overflow.
double logistic(double l) {
  if (l >= 0.0) return 1.0 / (1.0 + std::exp(-l));
  const double e = std::exp(l);
  return e / (1.0 + e);
}

double logistic_slope(double l) {
  const double e = std::exp(-std::abs(l));
  return e / ((1.0 + e) * (1.0 + e));
}

double softplus(double l) { return std::max(l, 0.0) + std::log1p(std::exp(-std::abs(l))); }

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

void check_value(double f, double slope) {
  if (!(f >= 0.0 && f <= 4.0) || !(slope >= 0.0 && slope <= 1.0)) {
    std::ostringstream msg;
    msg << "nonlinearity out of bounds: f = " << f << ", df/dv = " << slope;
    throw Error(ErrorKind::solver, msg.str());
  }
}

// History grows with every iteration of long monotone runs; keep a sparse log.
bool keep_record(int step) { return step <= 20 || step % 100 == 0; }

}  // namespace

double NonlinearRHS::value(std::size_t k, double w) const {
  const double c = data_->log_k[k] + data_->shift[k];
  double f = 0.0;
  if (c == kInf) {
    f = 4.0;
  } else if (c == -kInf) {
    f = 0.0;
  } else {
    f = 4.0 * logistic(c + w);
  }
  if (!(f >= 0.0 && f <= 4.0)) check_value(f, 0.0);
  return f;
}

double NonlinearRHS::slope(std::size_t k, double w) const {
  const double c = data_->log_k[k] + data_->shift[k];
  if (!std::isfinite(c)) return 0.0;
  const double s = 4.0 * logistic_slope(c + w);
  if (!(s >= 0.0 && s <= 1.0)) check_value(2.0, s);
  return s;
}

double NonlinearRHS::primitive(std::size_t k, double w) const {
  const double c = data_->log_k[k] + data_->shift[k];
  if (c == kInf) return 4.0 * w;
  if (c == -kInf) return 0.0;
  return 4.0 * softplus(c + w);
}

double NonlinearRHS::max_slope(std::size_t k, double lo, double hi) const {
  const double c = data_->log_k[k] + data_->shift[k];
  if (!std::isfinite(c)) return 0.0;
  const double a = c + lo;
  const double b = c + hi;
  if (a <= 0.0 && b >= 0.0) return 1.0;
  const double nearest = b < 0.0 ? b : a;
  return 4.0 * logistic_slope(nearest);
}

FarField::FarField(double beta, double c0, double r_max)
    : eps_(beta - 2.0), log_two_a_(std::log(8.0) - beta * c0), log_r_(std::log(r_max)) {
  if (!(eps_ > 0.0)) throw Error(ErrorKind::domain, "far-field closure needs beta > 2");
}

double FarField::x_of(double w) const { return std::exp(log_two_a_ + w - eps_ * log_r_); }

double FarField::flux(double w) const {
  const double x = x_of(w);
  return x / (std::sqrt(eps_ * eps_ + x) + eps_);
}

double FarField::flux_slope(double w) const {
  const double x = x_of(w);
  return 0.5 * x / std::sqrt(eps_ * eps_ + x);
}

double FarField::potential(double w) const {
  const double g = flux(w);
  return 2.0 * g - 2.0 * eps_ * std::log1p(0.5 * g / eps_);
}

double FarField::limit(double w) const { return w - 2.0 * std::log1p(0.5 * flux(w) / eps_); }

Problem::Problem(FvMesh mesh, SingularData data, double c0)
    : mesh_(std::move(mesh)),
      data_(std::move(data)),
      rhs_(data_),
      far_(data_.beta, c0, mesh_.r_max) {
  if (data_.g.size() != mesh_.size()) {
    throw Error(ErrorKind::grid, "singular data and mesh sizes differ");
  }
  link_sum_.assign(mesh_.size(), 0.0);
  for (const auto& link : mesh_.links) {
    link_sum_[link.a] += link.coeff;
    link_sum_[link.b] += link.coeff;
  }
}

std::vector<double> Problem::apply_laplacian(const std::vector<double>& w) const {
  std::vector<double> out(size(), 0.0);
  for (const auto& link : mesh_.links) {
    const double flow = link.coeff * (w[link.a] - w[link.b]);
    out[link.a] += flow;
    out[link.b] -= flow;
  }
  return out;
}

std::vector<double> Problem::residual(const std::vector<double>& w) const {
  std::vector<double> out = apply_laplacian(w);
  for (std::size_t k = 0; k < size(); ++k) {
    out[k] += mesh_.volume[k] * rhs_.value(k, w[k]) - data_.cell_g[k];
    if (mesh_.boundary[k] > 0.0) out[k] += mesh_.boundary[k] * far_.flux(w[k]);
  }
  return out;
}

double Problem::scaled_residual(const std::vector<double>& w) const {
  const std::vector<double> n = residual(w);
  double worst = 0.0;
  for (std::size_t k = 0; k < size(); ++k) {
    const double scale = link_sum_[k] + mesh_.volume[k] + mesh_.boundary[k];
    worst = std::max(worst, std::abs(n[k]) / scale);
  }
  return worst;
}

double Problem::domain_mass(const std::vector<double>& w) const {
  double m = 0.0;
  for (std::size_t k = 0; k < size(); ++k) m += mesh_.volume[k] * rhs_.value(k, w[k]);
  return m;
}

double Problem::tail_mass(const std::vector<double>& w) const {
  double m = 0.0;
  for (std::size_t k = 0; k < size(); ++k) {
    if (mesh_.boundary[k] > 0.0) m += mesh_.boundary[k] * far_.flux(w[k]);
  }
  return m;
}

double Problem::quadrature_mass(const std::vector<double>& w) const {
  double m = 0.0;
  for (std::size_t k = 0; k < size(); ++k) m += mesh_.quadrature[k] * rhs_.value(k, w[k]);
  return m;
}

double Problem::far_limit(const std::vector<double>& w) const {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < size(); ++k) {
    if (mesh_.boundary[k] <= 0.0) continue;
    num += mesh_.boundary[k] * far_.limit(w[k]);
    den += mesh_.boundary[k];
  }
  return num / den;
}

double Problem::balancing_constant() const {
  const double target = data_.cell_mass;
  const auto excess = [&](double c) {
    const std::vector<double> w(size(), c);
    return domain_mass(w) + tail_mass(w) - target;
  };
  double lo = -10.0;
  double hi = 10.0;
  while (excess(lo) > 0.0) {
    lo *= 2.0;
    if (lo < -1e4) throw Error(ErrorKind::solver, "no mass-balancing constant (pole mass too large)");
  }
  while (excess(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e4) throw Error(ErrorKind::solver, "no mass-balancing constant");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-14 * (1.0 + std::abs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> Problem::solve_shifted(const std::vector<double>& d,
                                           const std::vector<double>& rhs) const {
  const std::size_t n = size();
  if (mesh_.kind == FvMesh::Kind::radial) {
    // Thomas algorithm; links are (k, k + 1) in order.
    std::vector<double> diag(n);
    std::vector<double> upper(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) diag[k] = link_sum_[k] + d[k];
    for (const auto& link : mesh_.links) upper[link.a] = -link.coeff;
    std::vector<double> c(n);
    std::vector<double> x(n);
    double denom = diag[0];
    if (!(denom > 0.0)) throw Error(ErrorKind::solver, "singular tridiagonal system");
    c[0] = upper[0] / denom;
    x[0] = rhs[0] / denom;
    for (std::size_t k = 1; k < n; ++k) {
      denom = diag[k] - upper[k - 1] * c[k - 1];
      if (!(denom > 0.0)) throw Error(ErrorKind::solver, "singular tridiagonal system");
      c[k] = upper[k] / denom;
      x[k] = (rhs[k] - upper[k - 1] * x[k - 1]) / denom;
    }
    for (std::size_t k = n - 1; k-- > 0;) x[k] -= c[k] * x[k + 1];
    return x;
  }

  using Sparse = Eigen::SparseMatrix<double>;
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(n + 2 * mesh_.links.size());
  for (std::size_t k = 0; k < n; ++k) {
    entries.emplace_back(static_cast<int>(k), static_cast<int>(k), link_sum_[k] + d[k]);
  }
  for (const auto& link : mesh_.links) {
    entries.emplace_back(static_cast<int>(link.a), static_cast<int>(link.b), -link.coeff);
    entries.emplace_back(static_cast<int>(link.b), static_cast<int>(link.a), -link.coeff);
  }
  Sparse matrix(static_cast<int>(n), static_cast<int>(n));
  matrix.setFromTriplets(entries.begin(), entries.end());
  Eigen::ConjugateGradient<Sparse, Eigen::Lower | Eigen::Upper> cg;
  cg.setTolerance(1e-10);
  cg.setMaxIterations(50000);
  cg.compute(matrix);
  if (cg.info() != Eigen::Success) throw Error(ErrorKind::solver, "linear solver setup failed");
  const Eigen::Map<const Eigen::VectorXd> b(rhs.data(), static_cast<Eigen::Index>(n));
  const Eigen::VectorXd x = cg.solve(b);
  if (cg.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "conjugate gradient did not converge (error " << cg.error() << " after "
        << cg.iterations() << " iterations)";
    throw Error(ErrorKind::solver, msg.str());
  }
  return {x.data(), x.data() + n};
}

EnergyValue energy_eval(const Problem& problem, const std::vector<double>& w) {
  const FvMesh& mesh = problem.mesh();
  const SingularData& data = problem.data();
  double value = 0.0;
  for (const auto& link : mesh.links) {
    const double d = w[link.a] - w[link.b];
    value += 0.5 * link.coeff * d * d;
  }
  for (std::size_t k = 0; k < problem.size(); ++k) {
    value += mesh.volume[k] * problem.rhs().primitive(k, w[k]) - data.cell_g[k] * w[k];
    if (mesh.boundary[k] > 0.0) value += mesh.boundary[k] * problem.far_field().potential(w[k]);
  }
  const double defect = problem.domain_mass(w) + problem.tail_mass(w) - problem.expected_mass();
  return {value, defect};
}

Method parse_method(const std::string& name) {
  if (name == "monotone") return Method::monotone;
  if (name == "newton") return Method::newton;
  if (name == "hybrid") return Method::hybrid;
  throw Error(ErrorKind::config, "unknown method '" + name + "' (monotone|newton|hybrid)");
}

std::string to_string(Method method) {
  switch (method) {
    case Method::monotone: return "monotone";
    case Method::newton: return "newton";
    case Method::hybrid: return "hybrid";
  }
  return "?";
}

void summarize(const Problem& problem, SolveResult& result) {
  const auto& w = result.field;
  result.radius = problem.mesh().radius;
  result.weights = problem.mesh().quadrature;
  result.r_max = problem.mesh().r_max;
  result.r0 = problem.data().r0;
  result.beta = problem.data().beta;
  result.b_beta = problem.far_limit(w);
  result.residual = problem.scaled_residual(w);
  result.domain_mass = problem.domain_mass(w);
  result.tail_mass = problem.tail_mass(w);
  result.quadrature_mass = problem.quadrature_mass(w);
  result.expected_mass = problem.expected_mass();
  result.mass_defect = result.domain_mass + result.tail_mass - result.expected_mass;
}

namespace {

// Diagonal of the monotone shift for a bracket [lo, hi] (nodewise).
std::vector<double> shift_diagonal(const Problem& problem, const std::vector<double>& lo,
                                   const std::vector<double>& hi,
                                   const std::optional<double>& uniform) {
  const FvMesh& mesh = problem.mesh();
  std::vector<double> d(problem.size());
  for (std::size_t k = 0; k < problem.size(); ++k) {
    const double lambda = uniform ? *uniform : problem.rhs().max_slope(k, lo[k], hi[k]);
    d[k] = mesh.volume[k] * lambda;
    if (mesh.boundary[k] > 0.0) d[k] += mesh.boundary[k] * problem.far_field().flux_slope(hi[k]);
  }
  return d;
}

// One step of (L + D) w_new = D w - (N(w) - L w).
std::vector<double> monotone_step(const Problem& problem, const std::vector<double>& w,
                                  const std::vector<double>& d) {
  // Increment form: (L + D) delta = -N(w) keeps the sign of delta exact up to
  // the accuracy of N rather than of w.
  std::vector<double> rhs = problem.residual(w);
  for (double& x : rhs) x = -x;
  std::vector<double> next = problem.solve_shifted(d, rhs);
  for (std::size_t k = 0; k < w.size(); ++k) next[k] += w[k];
  return next;
}

// Index of the first node where the step goes the wrong way, or -1.
long wrong_way(const std::vector<double>& before, const std::vector<double>& after, double sign,
               double tol) {
  for (std::size_t k = 0; k < before.size(); ++k) {
    if (sign * (after[k] - before[k]) > tol * std::max(1.0, std::abs(before[k]))) {
      return static_cast<long>(k);
    }
  }
  return -1;
}

[[noreturn]] void not_monotone(int iteration, long node) {
  std::ostringstream msg;
  msg << "not a valid super/sub-solution at discrete level (iteration " << iteration << ", node "
      << node << ")";
  throw Error(ErrorKind::solver, msg.str());
}

}  // namespace

double supersolution_violation(const Problem& problem, const std::vector<double>& w) {
  const std::vector<double> n = problem.residual(w);
  double worst = 0.0;
  for (std::size_t k = 0; k < n.size(); ++k) {
    const double scale = problem.link_sum()[k] + problem.mesh().volume[k] + problem.mesh().boundary[k];
    worst = std::max(worst, -n[k] / scale);
  }
  return worst;
}

double subsolution_violation(const Problem& problem, const std::vector<double>& w) {
  const std::vector<double> n = problem.residual(w);
  double worst = 0.0;
  for (std::size_t k = 0; k < n.size(); ++k) {
    const double scale = problem.link_sum()[k] + problem.mesh().volume[k] + problem.mesh().boundary[k];
    worst = std::max(worst, n[k] / scale);
  }
  return worst;
}

SolveResult monotone_iterate(const Problem& problem, const std::vector<double>& start,
                             Direction direction, const MonotoneOptions& options) {
  const bool above = direction == Direction::from_above;
  if (!above && !options.bound) {
    throw Error(ErrorKind::precondition,
                "iteration from below needs an upper bound for the boundary closure slope");
  }
  if (!options.trust_start) {
    const double violation = above ? supersolution_violation(problem, start)
                                   : subsolution_violation(problem, start);
    if (violation > 1e-9) {
      std::ostringstream msg;
      msg << "start is not a " << (above ? "super" : "sub") << "-solution (violation "
          << violation << ")";
      throw Error(ErrorKind::precondition, msg.str());
    }
  }
  const std::vector<double> minus_inf(problem.size(), -kInf);

  SolveResult result;
  result.field = start;
  for (int it = 1; it <= options.max_iterations; ++it) {
    const std::vector<double>& w = result.field;
    const std::vector<double>& lo = above ? (options.bound ? *options.bound : minus_inf) : w;
    const std::vector<double>& hi = above ? w : *options.bound;
    const std::vector<double> d = shift_diagonal(problem, lo, hi, options.uniform_lambda);
    std::vector<double> next;
    try {
      next = monotone_step(problem, w, d);
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << e.what() << " (monotone iteration " << it << ")";
      throw Error(ErrorKind::solver, msg.str());
    }
    const long bad = wrong_way(w, next, above ? 1.0 : -1.0, options.monotonicity_tol);
    if (bad >= 0) not_monotone(it, bad);
    const double update = max_abs_diff(w, next);
    result.field = std::move(next);
    result.iterations = it;
    if (keep_record(it)) result.history.push_back({above ? "monotone-above" : "monotone-below", it, 0.0, update});
    if (update <= options.tol) {
      result.converged = true;
      break;
    }
  }
  summarize(problem, result);
  result.history.push_back({above ? "monotone-above" : "monotone-below", result.iterations,
                            result.residual, 0.0});
  return result;
}

SqueezeResult squeeze(const Problem& problem, const std::vector<double>& sub,
                      const std::vector<double>& super, const MonotoneOptions& options) {
  if (!options.trust_start) {
    if (supersolution_violation(problem, super) > 1e-9) {
      throw Error(ErrorKind::precondition, "upper start is not a super-solution");
    }
    if (subsolution_violation(problem, sub) > 1e-9) {
      throw Error(ErrorKind::precondition, "lower start is not a sub-solution");
    }
  }
  SqueezeResult out;
  std::vector<double> hi = super;
  std::vector<double> lo = sub;
  for (std::size_t k = 0; k < hi.size(); ++k) {
    if (lo[k] > hi[k] + 1e-12 * std::max(1.0, std::abs(hi[k]))) {
      throw Error(ErrorKind::precondition, "sub-solution lies above the super-solution");
    }
  }
  int it = 0;
  double gap = max_abs_diff(hi, lo);
  while (gap > options.tol && it < options.max_iterations) {
    ++it;
    const std::vector<double> d = shift_diagonal(problem, lo, hi, options.uniform_lambda);
    std::vector<double> next_hi = monotone_step(problem, hi, d);
    std::vector<double> next_lo = monotone_step(problem, lo, d);
    const long bad_hi = wrong_way(hi, next_hi, 1.0, options.monotonicity_tol);
    if (bad_hi >= 0) not_monotone(it, bad_hi);
    const long bad_lo = wrong_way(lo, next_lo, -1.0, options.monotonicity_tol);
    if (bad_lo >= 0) not_monotone(it, bad_lo);
    hi = std::move(next_hi);
    lo = std::move(next_lo);
    gap = max_abs_diff(hi, lo);
    if (keep_record(it)) {
      out.from_above.history.push_back({"squeeze", it, 0.0, gap});
    }
  }
  out.from_above.field = std::move(hi);
  out.from_below.field = std::move(lo);
  out.from_above.iterations = out.from_below.iterations = it;
  out.from_above.converged = out.from_below.converged = gap <= options.tol;
  summarize(problem, out.from_above);
  summarize(problem, out.from_below);
  out.gap = gap;
  return out;
}

SolveResult newton_solve(const Problem& problem, const std::vector<double>& start,
                         const NewtonOptions& options) {
  const FvMesh& mesh = problem.mesh();
  SolveResult result;
  std::vector<double> w = start;
  double res = problem.scaled_residual(w);
  result.history.push_back({"newton", 0, res, 0.0});
  int it = 0;
  bool stalled = false;
  double last_update = kInf;
  // The scaled residual is lenient on the huge far-field cells, so the
  // Newton correction itself must also drop below tol.
  while ((res > options.tol || last_update > options.tol) && it < options.max_iterations) {
    ++it;
    const std::vector<double> n = problem.residual(w);
    std::vector<double> d(problem.size());
    std::vector<double> rhs(problem.size());
    for (std::size_t k = 0; k < problem.size(); ++k) {
      d[k] = mesh.volume[k] * problem.rhs().slope(k, w[k]);
      if (mesh.boundary[k] > 0.0) d[k] += mesh.boundary[k] * problem.far_field().flux_slope(w[k]);
      rhs[k] = -n[k];
    }
    const std::vector<double> step = problem.solve_shifted(d, rhs);
    const double e0 = energy_eval(problem, w).value;
    const double descent = std::inner_product(n.begin(), n.end(), step.begin(), 0.0);

    double alpha = 1.0;
    bool accepted = false;
    std::vector<double> trial(w.size());
    double trial_res = res;
    for (int halving = 0; halving <= options.max_halvings; ++halving) {
      for (std::size_t k = 0; k < w.size(); ++k) trial[k] = w[k] + alpha * step[k];
      trial_res = problem.scaled_residual(trial);
      const double e1 = energy_eval(problem, trial).value;
      if (e1 <= e0 + 1e-4 * alpha * descent || trial_res < res) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      stalled = true;
      break;
    }
    double update = 0.0;
    for (double s : step) update = std::max(update, std::abs(alpha * s));
    w = trial;
    res = trial_res;
    last_update = update;
    result.history.push_back({"newton", it, res, update});
  }

  if (stalled) {
    // Fixed-point continuation with the global slope bound (df/dv <= 1).
    MonotoneOptions fallback;
    fallback.tol = options.tol;
    fallback.uniform_lambda = 1.0;
    fallback.trust_start = true;
    fallback.monotonicity_tol = kInf;
    fallback.max_iterations = 20000;
    std::vector<double> upper = w;
    for (double& x : upper) x += 1.0;
    fallback.bound = upper;
    SolveResult tail = monotone_iterate(problem, w, Direction::from_below, fallback);
    result.history.push_back({"newton-stalled", it, res, 0.0});
    result.history.insert(result.history.end(), tail.history.begin(), tail.history.end());
    w = tail.field;
    it += tail.iterations;
  }

  result.field = std::move(w);
  result.iterations = it;
  summarize(problem, result);
  result.converged = result.residual <= options.tol && last_update <= options.tol;
  return result;
}

Bracket bracket_about(const Problem& problem, const std::vector<double>& reference,
                      const BracketOptions& options) {
  const FvMesh& mesh = problem.mesh();
  const std::size_t n = problem.size();
  const std::vector<double> n_ref = problem.residual(reference);
  Bracket out;
  out.defect = std::accumulate(n_ref.begin(), n_ref.end(), 0.0);

  // The defect T is spread with weights nu that leave each node room to absorb
  // its share once the constant is pushed far enough. An unfavourable T < 0 for
  // the super-solution goes to the boundary, where the flux is unbounded; an
  // unfavourable T > 0 for the sub-solution is spread over V f + b G, whose
  // total always exceeds T.
  const auto correction_for = [&](bool super) {
    std::vector<double> nu(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      if (super && out.defect < 0.0) {
        nu[k] = mesh.boundary[k];
      } else if (!super && out.defect > 0.0) {
        nu[k] = mesh.volume[k] * problem.rhs().value(k, reference[k]) +
                mesh.boundary[k] * problem.far_field().flux(reference[k]);
      } else {
        nu[k] = mesh.volume[k] * problem.rhs().slope(k, reference[k]);
      }
    }
    const double total = std::accumulate(nu.begin(), nu.end(), 0.0);
    if (!(total > 0.0)) throw Error(ErrorKind::solver, "reference field has no active nodes");
    std::vector<double> rhs(n);
    for (std::size_t k = 0; k < n; ++k) rhs[k] = -n_ref[k] + out.defect * nu[k] / total;
    // L is singular on constants; pin the last node (the right-hand side sums to 0).
    std::vector<double> pin(n, 0.0);
    pin[n - 1] = 1.0;
    return problem.solve_shifted(pin, rhs);
  };

  const auto search = [&](bool super, const std::vector<double>& phi, double& pad) {
    const auto [mn, mx] = std::minmax_element(phi.begin(), phi.end());
    const double base = super ? -*mn : -*mx;
    std::vector<double> w(n);
    for (pad = 0.0;;) {
      const double c = super ? base + pad : base - pad;
      for (std::size_t k = 0; k < n; ++k) w[k] = reference[k] + phi[k] + c;
      const double violation =
          super ? supersolution_violation(problem, w) : subsolution_violation(problem, w);
      if (violation <= options.slack) return w;
      pad = pad == 0.0 ? 0.125 : 2.0 * pad;
      if (pad > options.pad_cap) {
        std::ostringstream msg;
        msg << "construction failed at this resolution (" << (super ? "super" : "sub")
            << "-solution still violated by " << violation << " at padding cap "
            << options.pad_cap << ")";
        throw Error(ErrorKind::solver, msg.str());
      }
    }
  };
  if (options.build_super) {
    out.correction = correction_for(true);
    out.super = search(true, out.correction, out.pad_super);
  }
  if (options.build_sub) out.sub = search(false, correction_for(false), out.pad_sub);
  return out;
}

SolveResult solve(const Problem& problem, const SolveOptions& options) {
  const std::vector<double> start(problem.size(), problem.balancing_constant());
  NewtonOptions newton;
  newton.tol = options.tol;
  switch (options.method) {
    case Method::newton: return newton_solve(problem, start, newton);
    case Method::monotone: {
      const Bracket bracket = bracket_about(problem, start);
      MonotoneOptions mono;
      mono.tol = options.tol;
      SqueezeResult sq = squeeze(problem, bracket.sub, bracket.super, mono);
      SolveResult out = std::move(sq.from_above);
      out.converged = out.converged && out.residual <= std::max(options.tol, 1e-8);
      return out;
    }
    case Method::hybrid: {
      const Bracket bracket = bracket_about(problem, start);
      MonotoneOptions mono;
      mono.tol = 1e-2;
      mono.max_iterations = 200;
      const SqueezeResult sq = squeeze(problem, bracket.sub, bracket.super, mono);
      std::vector<double> mid(problem.size());
      for (std::size_t k = 0; k < mid.size(); ++k) {
        mid[k] = 0.5 * (sq.from_above.field[k] + sq.from_below.field[k]);
      }
      SolveResult out = newton_solve(problem, mid, newton);
      out.history.insert(out.history.begin(), sq.from_above.history.begin(), sq.from_above.history.end());
      out.iterations += sq.from_above.iterations;
      return out;
    }
  }
  throw Error(ErrorKind::config, "unknown method");
}

Problem radial_problem(const VortexConfig& config, double beta, const RadialSetup& setup) {
  const RadialGrid grid = build_radial_grid(config, setup.r_max, setup.nodes, {setup.core});
  const SingularModel model(config, beta, setup.singular);
  SingularData data = assemble(model, grid);
  return Problem(make_mesh(grid), std::move(data), model.bump().c0());
}

SolveResult solve_radial(const VortexConfig& config, double beta, const RadialSetup& setup,
                         const SolveOptions& options) {
  return solve(radial_problem(config, beta, setup), options);
}

Problem disk_problem(const VortexConfig& config, double beta, const DiskSetup& setup) {
  const double r_max = setup.r_max > 0.0 ? setup.r_max : 4.0 * config.r0();
  const double h = setup.h > 0.0 ? setup.h : config.varrho() / 8.0;
  const DiskGrid grid = build_disk_grid(config, r_max, h, setup.grid);
  const SingularModel model(*grid.snapped_config(), beta, setup.singular);
  SingularData data = assemble(model, grid);
  return Problem(make_mesh(grid), std::move(data), model.bump().c0());
}

SolveResult solve_disk(const VortexConfig& config, double beta, const DiskSetup& setup,
                       const SolveOptions& options) {
  return solve(disk_problem(config, beta, setup), options);
}

}  // namespace sigma_vortex
