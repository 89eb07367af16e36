#pragma once

// Seven shape descriptors of a binary image. All white pixels are treated
// as a single shape, connected or not.

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "shapemetrics/min_enclosing_circle.hpp"
#include "shapemetrics/types.hpp"

namespace shapemetrics {

inline constexpr std::size_t kMetricCount = 7;

/// Column order used everywhere: CSV, JSON, tree features, usage counts.
inline constexpr std::array<std::string_view, kMetricCount> kMetricNames{
    "white_ei", "black_ei", "sp", "eccentricity", "eig1", "eig2", "circularity"};

using FeatureRow = std::array<double, kMetricCount>;

struct MetricVector {
  double white_ei = 0.0;
  double black_ei = 0.0;
  double sp = 0.0;
  double eccentricity = 0.0;
  double eig1 = 0.0;
  double eig2 = 0.0;
  double circularity = 0.0;

  FeatureRow to_array() const noexcept {
    return {white_ei, black_ei, sp, eccentricity, eig1, eig2, circularity};
  }
  friend bool operator==(const MetricVector&, const MetricVector&) = default;
};

enum class EccentricityForm {
  eigen_ratio,  // eig1 / eig2
  axis_ratio,   // sqrt(eig1 / eig2), the ratio of axis lengths
};

enum class CircularityForm {
  perimeter_squared_over_area,  // P^2 / (4 pi A), >= 1 for digital shapes
  area_over_perimeter_squared,  // 4 pi A / P^2, the reciprocal
};

struct MetricOptions {
  EccentricityForm eccentricity = EccentricityForm::eigen_ratio;
  CircularityForm circularity = CircularityForm::perimeter_squared_over_area;
};

/// White pixel indices (col, row), shifted so the shape's bounding box starts
/// at (0, 0), in row-major order. Any translation of the shape on the canvas
/// yields the same list.
std::vector<Point> foreground_pixels(const BinaryImage& img);

struct EncircledHistogram {
  double white = 0.0;
  double black = 0.0;
};

/// White = white pixel count. Black = area of the axis-aligned square of side
/// 2r around the shape's minimum enclosing circle, minus white, floored at 0.
EncircledHistogram encircled_histogram(const BinaryImage& img);

double shape_proportion(double white_ei, double black_ei);

struct Eigenvalues {
  double first = 0.0;
  double second = 0.0;
};

/// Descending eigenvalues of the population covariance of white pixel
/// coordinates plus I/12 (each pixel is a unit square).
Eigenvalues covariance_eigenvalues(const BinaryImage& img);

double eccentricity(double eig1, double eig2, EccentricityForm form = EccentricityForm::eigen_ratio);

/// Crack length: unit edges between a white pixel and a black pixel or the
/// image border.
double perimeter(const BinaryImage& img);

double circularity(const BinaryImage& img,
                   CircularityForm form = CircularityForm::perimeter_squared_over_area);

MetricVector metric_vector(const BinaryImage& img, const MetricOptions& options = {});

}  // namespace shapemetrics
