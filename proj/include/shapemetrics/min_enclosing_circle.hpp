#pragma once

#include <span>

#include "shapemetrics/types.hpp"

namespace shapemetrics {

struct Circle {
  Point center;
  double radius = 0.0;

  /// Membership with a small absolute/relative slack for rounding.
  bool contains(const Point& p, double slack = 1e-9) const noexcept;
};

/// Smallest circle containing every point (randomized incremental, expected
/// linear time). The visiting order comes from a fixed internal seed, so the
/// result is a deterministic function of the input sequence.
/// Throws std::invalid_argument on empty input.
Circle min_enclosing_circle(std::span<const Point> points);

/// Circle with segment ab as diameter.
Circle circle_from(const Point& a, const Point& b) noexcept;

/// Circumcircle of abc; falls back to the widest pair for collinear input.
Circle circle_from(const Point& a, const Point& b, const Point& c) noexcept;

}  // namespace shapemetrics
