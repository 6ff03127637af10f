#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sigma_vortex/types.hpp"

namespace sigma_vortex {

enum class CenterKind { pole, zero };

/// A distinct Dirac location. Coincident input points are merged into one
/// center carrying their count as multiplicity.
struct Center {
  Point2 position;
  int multiplicity = 1;
  CenterKind kind = CenterKind::pole;

  friend bool operator==(const Center&, const Center&) = default;
};

/// Unvalidated input as read from a config file or built by hand.
struct RawConfig {
  std::vector<Point2> poles;
  std::vector<Point2> zeros;
  std::optional<double> varrho;
  std::optional<double> r0;
};

struct ValidationOptions {
  /// Shrink a user-supplied cutoff radius until the balls are disjoint
  /// instead of rejecting the configuration.
  bool auto_shrink_varrho = false;
};

class VortexConfig {
 public:
  const std::vector<Center>& poles() const noexcept { return poles_; }
  const std::vector<Center>& zeros() const noexcept { return zeros_; }

  /// N and M counted with multiplicity.
  int pole_count() const noexcept { return pole_count_; }
  int zero_count() const noexcept { return zero_count_; }
  int net_charge() const noexcept { return pole_count_ - zero_count_; }

  double varrho() const noexcept { return varrho_; }
  double r0() const noexcept { return r0_; }

  /// Open admissible interval (2, 2(N-M)).
  std::pair<double, double> beta_interval() const noexcept {
    return {2.0, 2.0 * net_charge()};
  }
  double beta0() const noexcept { return net_charge() + 1.0; }

  /// True when every pole and zero sits at the origin (radial symmetry).
  bool all_at_origin() const noexcept;

  /// Expanded point lists with the resolved varrho and r0, suitable for
  /// feeding back through validate_config.
  RawConfig to_raw() const;

  /// Copy with every center moved by the given offsets (same order as
  /// poles() followed by zeros()); used by grid snapping.
  VortexConfig with_positions(const std::vector<Point2>& positions) const;

  friend bool operator==(const VortexConfig&, const VortexConfig&) = default;

 private:
  friend VortexConfig validate_config(const RawConfig&, ValidationOptions);

  std::vector<Center> poles_;
  std::vector<Center> zeros_;
  int pole_count_ = 0;
  int zero_count_ = 0;
  double varrho_ = 0.5;
  double r0_ = 0.0;
};

VortexConfig validate_config(const RawConfig& raw, ValidationOptions options = {});

/// Admissible nonlinearity exponent for a configuration.
struct BetaParam {
  double beta = 0.0;
  double beta0 = 0.0;
  double upper = 0.0;  // 2(N-M)
};

BetaParam make_beta(const VortexConfig& config, double beta);

/// Default enclosing radius: max(4e, 2 max|center| + 1).
double default_r0(const std::vector<Point2>& points);

}  // namespace sigma_vortex
