#include "shapemetrics/rasterizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace shapemetrics {

void validate_points(std::span<const Point> points) {
  if (points.empty()) throw std::invalid_argument("empty input");
  for (const Point& p : points)
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw std::invalid_argument("non-finite input");
}

void validate_grid(const GridSpec& grid) {
  if (grid.bins_x < 1 || grid.bins_y < 1)
    throw std::invalid_argument("grid bins must be >= 1");
  if (grid.bins_x > GridSpec::kMaxBins || grid.bins_y > GridSpec::kMaxBins)
    throw std::invalid_argument("grid bins must be <= " + std::to_string(GridSpec::kMaxBins));
}

BinaryImage::BinaryImage(std::size_t width, std::size_t height, Range range_x, Range range_y)
    : width_(width), height_(height), range_x_(range_x), range_y_(range_y),
      pixels_(width * height, 0) {}

std::size_t BinaryImage::white_count() const noexcept {
  return static_cast<std::size_t>(kernels::active_kernels().moment_sums(view()).count);
}

BinaryImage BinaryImage::padded(std::size_t border) const {
  BinaryImage out(width_ + 2 * border, height_ + 2 * border, range_x_, range_y_);
  for (std::size_t r = 0; r < height_; ++r)
    std::copy_n(pixels_.begin() + static_cast<std::ptrdiff_t>(r * width_), width_,
                out.pixels_.begin() + static_cast<std::ptrdiff_t>((r + border) * out.width_ + border));
  return out;
}

namespace {

Range padded_range(double lo, double hi) {
  if (lo == hi) return {lo - 0.5, hi + 0.5};
  return {lo, hi};
}

void validate_window(const BinningWindow& w) {
  const auto ok = [](const Range& r) {
    return std::isfinite(r.min) && std::isfinite(r.max) && r.min < r.max;
  };
  if (!ok(w.x) || !ok(w.y)) throw std::invalid_argument("binning window must be finite with min < max");
}

BinaryImage bin_points(std::span<const Point> points, const GridSpec& grid,
                       const BinningWindow& window) {
  std::vector<double> xs(points.size());
  std::vector<double> ys(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    xs[i] = points[i].x;
    ys[i] = points[i].y;
  }
  std::vector<std::int32_t> ix(points.size());
  std::vector<std::int32_t> iy(points.size());
  const auto& k = kernels::active_kernels();
  k.bin_indices(xs, window.x.min, window.x.extent(), grid.bins_x, ix);
  k.bin_indices(ys, window.y.min, window.y.extent(), grid.bins_y, iy);

  BinaryImage image(static_cast<std::size_t>(grid.bins_x), static_cast<std::size_t>(grid.bins_y),
                    window.x, window.y);
  for (std::size_t i = 0; i < points.size(); ++i)
    image.set(static_cast<std::size_t>(ix[i]), static_cast<std::size_t>(iy[i]));
  return image;
}

}  // namespace

BinningWindow data_window(std::span<const Point> points) {
  validate_points(points);
  double xmin = points[0].x, xmax = points[0].x;
  double ymin = points[0].y, ymax = points[0].y;
  for (const Point& p : points) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  return {padded_range(xmin, xmax), padded_range(ymin, ymax)};
}

BinningWindow union_window(std::span<const PointSet> sets) {
  if (sets.empty()) throw std::invalid_argument("empty input");
  validate_points(sets[0]);
  double xmin = sets[0][0].x, xmax = xmin, ymin = sets[0][0].y, ymax = ymin;
  for (const PointSet& s : sets) {
    validate_points(s);
    for (const Point& p : s) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  }
  return {padded_range(xmin, xmax), padded_range(ymin, ymax)};
}

BinaryImage rasterize(std::span<const Point> points, const GridSpec& grid) {
  validate_grid(grid);
  return bin_points(points, grid, data_window(points));
}

BinaryImage rasterize(std::span<const Point> points, const GridSpec& grid,
                      const BinningWindow& window) {
  validate_points(points);
  validate_grid(grid);
  validate_window(window);
  std::vector<Point> inside;
  inside.reserve(points.size());
  for (const Point& p : points)
    if (window.x.contains(p.x) && window.y.contains(p.y)) inside.push_back(p);
  if (inside.empty()) throw std::invalid_argument("no points inside binning window");
  return bin_points(inside, grid, window);
}

}  // namespace shapemetrics
