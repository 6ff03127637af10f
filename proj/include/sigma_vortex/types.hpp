#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace sigma_vortex {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

/// Broad failure classes. The CLI maps `config` and `domain` to exit code 1
/// and everything raised during a solve to exit code 2.
enum class ErrorKind {
  config,
  domain,
  grid,
  quadrature,
  precondition,
  solver,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sigma_vortex
