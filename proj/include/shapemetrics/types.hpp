#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "shapemetrics/kernels/kernels.hpp"

namespace shapemetrics {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Ordered (x, y) observations. Must be nonempty with finite coordinates to
/// be rasterized; see validate_points().
using PointSet = std::vector<Point>;

/// Throws std::invalid_argument("empty input") or ("non-finite input").
void validate_points(std::span<const Point> points);

struct Range {
  double min = 0.0;
  double max = 0.0;

  double extent() const noexcept { return max - min; }
  bool contains(double v) const noexcept { return v >= min && v <= max; }
  friend bool operator==(const Range&, const Range&) = default;
};

struct GridSpec {
  int bins_x = 100;
  int bins_y = 100;

  static constexpr int kMaxBins = 32768;
};

void validate_grid(const GridSpec& grid);

/// Width x height grid of {0,1} pixels, row-major, row 0 = smallest y.
/// Remembers the data ranges it was binned from.
class BinaryImage {
 public:
  BinaryImage() = default;
  BinaryImage(std::size_t width, std::size_t height, Range range_x = {}, Range range_y = {});

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  const Range& range_x() const noexcept { return range_x_; }
  const Range& range_y() const noexcept { return range_y_; }

  bool at(std::size_t col, std::size_t row) const noexcept {
    return pixels_[row * width_ + col] != 0;
  }
  void set(std::size_t col, std::size_t row, bool white = true) noexcept {
    pixels_[row * width_ + col] = white ? 1 : 0;
  }

  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  kernels::ImageView view() const noexcept { return {pixels_, width_, height_}; }

  std::size_t white_count() const noexcept;

  /// Copy surrounded by `border` black pixels on every side.
  BinaryImage padded(std::size_t border) const;

  friend bool operator==(const BinaryImage&, const BinaryImage&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  Range range_x_;
  Range range_y_;
  std::vector<std::uint8_t> pixels_;
};

}  // namespace shapemetrics
