#pragma once

#include <stdexcept>
#include <vector>

#include "ffplan/types.hpp"

namespace ffplan {

struct Circle {
  Vec2 center = Vec2::Zero();
  double radius = 0.0;
};

/// Axis-aligned workspace with circular obstacles. `inflation` (the robot
/// radius) is added to every obstacle for point checks.
struct ObstacleWorld {
  Vec2 lo = Vec2::Zero();
  Vec2 hi = Vec2::Ones();
  std::vector<Circle> obstacles;
  double inflation = 0.0;

  bool in_bounds(const Vec2& p) const {
    return p.x() >= lo.x() && p.x() <= hi.x() && p.y() >= lo.y() && p.y() <= hi.y();
  }

  /// Signed distance to the nearest inflated obstacle boundary
  /// (negative inside an inflated obstacle). Bounds are not included.
  double clearance(const Vec2& p) const {
    double d = std::numeric_limits<double>::infinity();
    for (const Circle& c : obstacles) {
      d = std::min(d, (p - c.center).norm() - (c.radius + inflation));
    }
    return d;
  }

  bool point_free(const Vec2& p) const {
    return in_bounds(p) && clearance(p) >= 0.0;
  }

  void validate() const {
    if (!(hi.x() > lo.x()) || !(hi.y() > lo.y())) {
      throw std::invalid_argument("world bounds degenerate");
    }
    if (inflation < 0.0) throw std::invalid_argument("negative inflation");
    for (const Circle& c : obstacles) {
      if (!(c.radius > 0.0)) throw std::invalid_argument("obstacle radius must be > 0");
    }
  }
};

}  // namespace ffplan
