#include "sigma_vortex/config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace sigma_vortex {
namespace {

std::vector<Center> merge(const std::vector<Point2>& points, CenterKind kind) {
  std::vector<Center> centers;
  for (const Point2& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorKind::config, "non-finite vortex coordinate");
    }
    auto it = std::find_if(centers.begin(), centers.end(),
                           [&](const Center& c) { return c.position == p; });
    if (it == centers.end()) {
      centers.push_back({p, 1, kind});
    } else {
      ++it->multiplicity;
    }
  }
  return centers;
}

}  // namespace

double default_r0(const std::vector<Point2>& points) {
  double reach = 0.0;
  for (const Point2& p : points) reach = std::max(reach, norm(p));
  return std::max(4.0 * std::numbers::e, 2.0 * reach + 1.0);
}

bool VortexConfig::all_at_origin() const noexcept {
  const auto at_origin = [](const Center& c) { return c.position == Point2{}; };
  return std::all_of(poles_.begin(), poles_.end(), at_origin) &&
         std::all_of(zeros_.begin(), zeros_.end(), at_origin);
}

RawConfig VortexConfig::to_raw() const {
  RawConfig raw;
  for (const Center& c : poles_) raw.poles.insert(raw.poles.end(), c.multiplicity, c.position);
  for (const Center& c : zeros_) raw.zeros.insert(raw.zeros.end(), c.multiplicity, c.position);
  raw.varrho = varrho_;
  raw.r0 = r0_;
  return raw;
}

VortexConfig VortexConfig::with_positions(const std::vector<Point2>& positions) const {
  if (positions.size() != poles_.size() + zeros_.size()) {
    throw Error(ErrorKind::config, "position count does not match center count");
  }
  VortexConfig copy = *this;
  for (std::size_t i = 0; i < poles_.size(); ++i) copy.poles_[i].position = positions[i];
  for (std::size_t j = 0; j < zeros_.size(); ++j) {
    copy.zeros_[j].position = positions[poles_.size() + j];
  }
  return copy;
}

VortexConfig validate_config(const RawConfig& raw, ValidationOptions options) {
  VortexConfig cfg;
  cfg.poles_ = merge(raw.poles, CenterKind::pole);
  cfg.zeros_ = merge(raw.zeros, CenterKind::zero);
  cfg.pole_count_ = static_cast<int>(raw.poles.size());
  cfg.zero_count_ = static_cast<int>(raw.zeros.size());

  if (cfg.net_charge() < 2) {
    std::ostringstream msg;
    msg << "beta interval empty: N-M = " << cfg.net_charge() << " but N-M >= 2 is required";
    throw Error(ErrorKind::config, msg.str());
  }

  // A pole and a zero may share a location; they are still separate centers
  // for the cutoff balls, so only distinct positions constrain varrho.
  std::vector<Point2> distinct;
  std::vector<Point2> all;
  for (const auto* group : {&cfg.poles_, &cfg.zeros_}) {
    for (const Center& c : *group) {
      all.push_back(c.position);
      if (std::find(distinct.begin(), distinct.end(), c.position) == distinct.end()) {
        distinct.push_back(c.position);
      }
    }
  }
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    for (std::size_t j = i + 1; j < distinct.size(); ++j) {
      min_gap = std::min(min_gap, distance(distinct[i], distinct[j]));
    }
  }
  const double admissible = std::min(0.5, 0.5 * min_gap);

  if (raw.varrho) {
    const double requested = *raw.varrho;
    if (!(requested > 0.0 && requested < 1.0)) {
      throw Error(ErrorKind::config, "varrho must lie in (0, 1)");
    }
    if (2.0 * requested > min_gap) {
      if (!options.auto_shrink_varrho) {
        std::ostringstream msg;
        msg << "separation violation: varrho = " << requested
            << " but the closest distinct centers are " << min_gap << " apart (need >= 2 varrho)";
        throw Error(ErrorKind::config, msg.str());
      }
      cfg.varrho_ = 0.5 * min_gap;
    } else {
      cfg.varrho_ = requested;
    }
  } else {
    cfg.varrho_ = admissible;
  }

  double reach = 0.0;
  for (const Point2& p : all) reach = std::max(reach, norm(p));
  if (raw.r0) {
    cfg.r0_ = *raw.r0;
    // The bump profile lives in the unit ball, so r0 must at least cover it.
    if (!(cfg.r0_ > 1.0)) throw Error(ErrorKind::config, "r0 must exceed 1");
    if (reach + cfg.varrho_ > cfg.r0_) {
      std::ostringstream msg;
      msg << "r0 = " << cfg.r0_ << " does not enclose every cutoff ball (need >= "
          << reach + cfg.varrho_ << ")";
      throw Error(ErrorKind::config, msg.str());
    }
  } else {
    cfg.r0_ = default_r0(all);
  }
  return cfg;
}

BetaParam make_beta(const VortexConfig& config, double beta) {
  const auto [lo, hi] = config.beta_interval();
  if (!(beta > lo && beta < hi)) {
    std::ostringstream msg;
    msg << "beta out of open interval: beta = " << beta << " not in (" << lo << ", " << hi << ")";
    throw Error(ErrorKind::domain, msg.str());
  }
  return {beta, config.beta0(), hi};
}

}  // namespace sigma_vortex
