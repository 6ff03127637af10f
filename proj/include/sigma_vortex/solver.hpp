#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sigma_vortex/mesh.hpp"
#include "sigma_vortex/singular.hpp"

namespace sigma_vortex {

/// f(x, v) = 4 K e^{v2 + v} / (e^{v1} + K e^{v2 + v}), evaluated as
/// 4 sigmoid(ln K + v2 - v1 + v).
class NonlinearRHS {
 public:
  explicit NonlinearRHS(const SingularData& data) : data_(&data) {}

  double value(std::size_t k, double w) const;
  /// df/dv = f (1 - f / 4).
  double slope(std::size_t k, double w) const;
  /// Antiderivative 4 ln(1 + e^{ln K + v2 - v1 + v}) (4 v at pole nodes).
  double primitive(std::size_t k, double w) const;
  /// max of df/dv over [lo, hi]; either end may be infinite.
  double max_slope(std::size_t k, double lo, double hi) const;

 private:
  const SingularData* data_;
};

/// Exterior closure on |x| = R. Outside R_max, v2 = v1 = 0 and
/// K = e^{-beta c0} r^{-beta}, so the remainder solves the radial Liouville
/// equation (r v')' = A r^{1-beta} e^v with A = 4 e^{-beta c0}. Its decaying
/// solutions give the outward flux 2 pi R v'(R) = -2 pi G(v(R)) with
///   G(v) = sqrt(eps^2 + x) - eps,  x = 2 A e^v R^{-eps},  eps = beta - 2.
class FarField {
 public:
  FarField(double beta, double c0, double r_max);

  /// Mass of f outside B_R per unit 2 pi.
  double flux(double w) const;
  double flux_slope(double w) const;
  /// Antiderivative of flux in w.
  double potential(double w) const;
  /// lim_{r -> inf} v(r) for the exterior solution with v(R) = w.
  double limit(double w) const;

  double eps() const noexcept { return eps_; }

 private:
  double x_of(double w) const;

  double eps_;
  double log_two_a_;
  double log_r_;
};

/// Discrete problem: residual
///   N_k(w) = sum_j a_kj (w_k - w_j) + V_k f_k(w_k) - int_{cell k} g + b_k G(w_k),
/// the gradient of the convex energy I_h.
class Problem {
 public:
  Problem(FvMesh mesh, SingularData data, double c0);

  const FvMesh& mesh() const noexcept { return mesh_; }
  const SingularData& data() const noexcept { return data_; }
  const NonlinearRHS& rhs() const noexcept { return rhs_; }
  const FarField& far_field() const noexcept { return far_; }
  std::size_t size() const noexcept { return mesh_.size(); }

  std::vector<double> residual(const std::vector<double>& w) const;
  /// max_k |N_k| / (sum_j a_kj + V_k + b_k): a pointwise residual in units of w.
  double scaled_residual(const std::vector<double>& w) const;
  /// Mass of f over the control volumes and the exterior tail.
  double domain_mass(const std::vector<double>& w) const;
  double tail_mass(const std::vector<double>& w) const;
  /// Mass of f with the independent quadrature weights.
  double quadrature_mass(const std::vector<double>& w) const;
  double expected_mass() const noexcept { return data_.expected_mass; }
  /// Far-field limit b, weighted over the boundary nodes.
  double far_limit(const std::vector<double>& w) const;
  /// Constant c that balances the total mass.
  double balancing_constant() const;

  const std::vector<double>& link_sum() const noexcept { return link_sum_; }

  /// Solve (L + diag(d)) x = rhs.
  std::vector<double> solve_shifted(const std::vector<double>& d,
                                    const std::vector<double>& rhs) const;
  /// Apply the discrete Laplacian part L.
  std::vector<double> apply_laplacian(const std::vector<double>& w) const;

 private:
  FvMesh mesh_;
  SingularData data_;
  NonlinearRHS rhs_;
  FarField far_;
  std::vector<double> link_sum_;
};

struct EnergyValue {
  double value = 0.0;
  /// sum f + tail - mass of g.
  double constraint_defect = 0.0;
};

/// I_h(w) = 1/2 w^T L w + sum_k V_k F_k(w_k) - sum_k (int_cell g) w_k + sum_k b_k Psi(w_k).
EnergyValue energy_eval(const Problem& problem, const std::vector<double>& w);

enum class Method { monotone, newton, hybrid };
enum class Direction { from_above, from_below };

Method parse_method(const std::string& name);
std::string to_string(Method method);

struct IterationRecord {
  std::string kind;
  int step = 0;
  double residual = 0.0;
  double update = 0.0;
};

struct SolveResult {
  std::vector<double> field;
  std::vector<double> radius;
  /// Quadrature weights of the grid (integrals over B_{R_max}).
  std::vector<double> weights;
  double r_max = 0.0;
  double r0 = 0.0;
  double beta = 0.0;
  double b_beta = 0.0;
  double residual = 0.0;
  double domain_mass = 0.0;
  double tail_mass = 0.0;
  double quadrature_mass = 0.0;
  double expected_mass = 0.0;
  /// domain_mass + tail_mass - expected_mass.
  double mass_defect = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<IterationRecord> history;
};

struct MonotoneOptions {
  double tol = 1e-10;
  int max_iterations = 200000;
  /// Other side of the bracket (required from below, optional from above).
  std::optional<std::vector<double>> bound;
  /// Replace the nodewise slope bound of f by this constant (>= 1 is safe).
  std::optional<double> uniform_lambda;
  double monotonicity_tol = 1e-9;
  /// Skip the super/sub check of the start field.
  bool trust_start = false;
};

SolveResult monotone_iterate(const Problem& problem, const std::vector<double>& start,
                             Direction direction, const MonotoneOptions& options = {});

struct NewtonOptions {
  double tol = 1e-10;
  int max_iterations = 100;
  int max_halvings = 20;
};

SolveResult newton_solve(const Problem& problem, const std::vector<double>& start,
                         const NewtonOptions& options = {});

/// Fills the mass and far-field summaries of a result from its field.
void summarize(const Problem& problem, SolveResult& result);

struct SolveOptions {
  Method method = Method::newton;
  double tol = 1e-10;
};

/// Solve from the mass-balancing constant start.
SolveResult solve(const Problem& problem, const SolveOptions& options = {});

struct RadialSetup {
  double r_max = 1e4;
  std::size_t nodes = 4000;
  double core = 0.01;
  SingularOptions singular;
};

Problem radial_problem(const VortexConfig& config, double beta, const RadialSetup& setup = {});
SolveResult solve_radial(const VortexConfig& config, double beta, const RadialSetup& setup = {},
                         const SolveOptions& options = {});

struct DiskSetup {
  double r_max = 0.0;  // 0 means 4 r0
  double h = 0.0;      // 0 means varrho / 8
  DiskGridOptions grid;
  SingularOptions singular;
};

Problem disk_problem(const VortexConfig& config, double beta, const DiskSetup& setup = {});
SolveResult solve_disk(const VortexConfig& config, double beta, const DiskSetup& setup = {},
                       const SolveOptions& options = {});

}  // namespace sigma_vortex

namespace sigma_vortex {

/// Discrete sub- and super-solutions about a reference field w_ref:
///   w = w_ref + phi + c,   L phi = -N(w_ref) + T nu,
/// where T = sum_k N_k(w_ref) and nu is proportional to V f'(w_ref), so that
/// N(w) = V (f(w) - f(w_ref)) + b (G(w) - G(w_ref)) + T nu. The constant c is
/// -max(phi) - pad (sub) or -min(phi) + pad (super), with pad raised until
/// the inequalities hold at every node.
struct Bracket {
  std::vector<double> sub;
  std::vector<double> super;
  std::vector<double> correction;  // phi
  double pad_sub = 0.0;
  double pad_super = 0.0;
  double defect = 0.0;  // T
};

struct BracketOptions {
  double pad_cap = 50.0;
  /// Nodewise slack on the scaled residual when checking the inequalities.
  double slack = 1e-9;
  bool build_super = true;
  bool build_sub = true;
};

/// Throws "construction failed at this resolution" if the pad exceeds the cap.
Bracket bracket_about(const Problem& problem, const std::vector<double>& reference,
                      const BracketOptions& options = {});

/// Largest violation of N(w) >= 0 (super) or N(w) <= 0 (sub) in scaled units.
double supersolution_violation(const Problem& problem, const std::vector<double>& w);
double subsolution_violation(const Problem& problem, const std::vector<double>& w);

struct SqueezeResult {
  SolveResult from_above;
  SolveResult from_below;
  double gap = 0.0;  // sup |from_above - from_below|
};

/// Runs the iterations from both ends together; each uses the other's
/// current iterate as its bracket. Stops when the gap is <= tol.
SqueezeResult squeeze(const Problem& problem, const std::vector<double>& sub,
                      const std::vector<double>& super, const MonotoneOptions& options = {});

}  // namespace sigma_vortex
