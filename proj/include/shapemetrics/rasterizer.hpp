#pragma once

// Scatter data to binary image: a uniform 2D histogram followed by a
// "count > 0" threshold.

#include <span>

#include "shapemetrics/types.hpp"

namespace shapemetrics {

/// Axis ranges a histogram is binned over.
struct BinningWindow {
  Range x;
  Range y;
};

/// Per-axis [min, max] of the data. An axis with min == max is padded to
/// [min - 0.5, max + 0.5].
BinningWindow data_window(std::span<const Point> points);

/// Smallest window covering every point of every set, padded like data_window.
BinningWindow union_window(std::span<const PointSet> sets);

/// Bins over the data's own window. Pixel (i, j) is white iff at least one
/// point falls in x-bin i and y-bin j; points on the upper edge belong to
/// the last bin.
BinaryImage rasterize(std::span<const Point> points, const GridSpec& grid);

/// Bins over a caller-supplied window. Points outside it are dropped;
/// throws if none remain.
BinaryImage rasterize(std::span<const Point> points, const GridSpec& grid,
                      const BinningWindow& window);

}  // namespace shapemetrics
