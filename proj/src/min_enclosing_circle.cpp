#include "shapemetrics/min_enclosing_circle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "shapemetrics/random.hpp"

namespace shapemetrics {

namespace {
constexpr std::uint64_t kShuffleSeed = 0x5eed'c1c1'e0f0'ba11ULL;
}

bool Circle::contains(const Point& p, double slack) const noexcept {
  const double d = std::hypot(p.x - center.x, p.y - center.y);
  return d <= radius + slack * std::max(1.0, radius);
}

Circle circle_from(const Point& a, const Point& b) noexcept {
  const Point c{(a.x + b.x) / 2.0, (a.y + b.y) / 2.0};
  return {c, std::hypot(a.x - b.x, a.y - b.y) / 2.0};
}

Circle circle_from(const Point& a, const Point& b, const Point& c) noexcept {
  const double bx = b.x - a.x, by = b.y - a.y;
  const double cx = c.x - a.x, cy = c.y - a.y;
  const double d = 2.0 * (bx * cy - by * cx);
  const double scale = std::max({std::abs(bx), std::abs(by), std::abs(cx), std::abs(cy), 1.0});
  if (std::abs(d) <= 1e-12 * scale * scale) {
    Circle best = circle_from(a, b);
    for (const Circle& cand : {circle_from(a, c), circle_from(b, c)})
      if (cand.radius > best.radius) best = cand;
    return best;
  }
  const double b2 = bx * bx + by * by;
  const double c2 = cx * cx + cy * cy;
  const double ux = (cy * b2 - by * c2) / d;
  const double uy = (bx * c2 - cx * b2) / d;
  return {{a.x + ux, a.y + uy}, std::hypot(ux, uy)};
}

Circle min_enclosing_circle(std::span<const Point> points) {
  if (points.empty()) throw std::invalid_argument("min_enclosing_circle: empty point list");

  std::vector<Point> p(points.begin(), points.end());
  Rng rng(kShuffleSeed);
  shuffle(std::span<Point>(p), rng);

  Circle c{p[0], 0.0};
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (c.contains(p[i])) continue;
    c = {p[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (c.contains(p[j])) continue;
      c = circle_from(p[i], p[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (c.contains(p[k])) continue;
        c = circle_from(p[i], p[j], p[k]);
      }
    }
  }
  return c;
}

}  // namespace shapemetrics
