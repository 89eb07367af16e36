#include "shapemetrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace shapemetrics {

namespace {

kernels::MomentSums require_shape(const BinaryImage& img) {
  const auto m = kernels::active_kernels().moment_sums(img.view());
  if (m.count == 0) throw std::invalid_argument("empty shape");
  return m;
}

// n^2 * population variance, exact and translation invariant.
double scaled_central(std::int64_t n, std::int64_t s_ab, std::int64_t s_a, std::int64_t s_b) {
  const __int128 v = static_cast<__int128>(n) * s_ab - static_cast<__int128>(s_a) * s_b;
  return static_cast<double>(v);
}

Eigenvalues eigenvalues_from(const kernels::MomentSums& m) {
  const double n2 = static_cast<double>(m.count) * static_cast<double>(m.count);
  constexpr double kPixel = 1.0 / 12.0;
  const double cxx = scaled_central(m.count, m.sum_xx, m.sum_x, m.sum_x) / n2 + kPixel;
  const double cyy = scaled_central(m.count, m.sum_yy, m.sum_y, m.sum_y) / n2 + kPixel;
  const double cxy = scaled_central(m.count, m.sum_xy, m.sum_x, m.sum_y) / n2;

  const double mean = (cxx + cyy) / 2.0;
  const double half_diff = (cxx - cyy) / 2.0;
  const double radius = std::hypot(half_diff, cxy);
  const double first = mean + radius;
  if (radius == 0.0) return {first, first};
  // det / first avoids cancellation in mean - radius.
  const double second = std::min(first, (cxx * cyy - cxy * cxy) / first);
  return {first, second};
}

double crack_perimeter(const BinaryImage& img, std::int64_t white) {
  const std::int64_t pairs = kernels::active_kernels().adjacent_white_pairs(img.view());
  return static_cast<double>(4 * white - 2 * pairs);
}

double circularity_from(double p, double area, CircularityForm form) {
  const double ratio = p * p / (4.0 * std::numbers::pi * area);
  return form == CircularityForm::perimeter_squared_over_area ? ratio : 1.0 / ratio;
}

}  // namespace

std::vector<Point> foreground_pixels(const BinaryImage& img) {
  std::size_t min_col = img.width(), min_row = img.height();
  for (std::size_t r = 0; r < img.height(); ++r)
    for (std::size_t c = 0; c < img.width(); ++c)
      if (img.at(c, r)) {
        min_col = std::min(min_col, c);
        min_row = std::min(min_row, r);
      }
  std::vector<Point> out;
  for (std::size_t r = min_row; r < img.height(); ++r)
    for (std::size_t c = min_col; c < img.width(); ++c)
      if (img.at(c, r))
        out.push_back({static_cast<double>(c - min_col), static_cast<double>(r - min_row)});
  return out;
}

EncircledHistogram encircled_histogram(const BinaryImage& img) {
  const std::vector<Point> pixels = foreground_pixels(img);
  if (pixels.empty()) throw std::invalid_argument("empty shape");
  const Circle c = min_enclosing_circle(pixels);
  const double white = static_cast<double>(pixels.size());
  const double side = 2.0 * c.radius;
  return {white, std::max(0.0, side * side - white)};
}

double shape_proportion(double white_ei, double black_ei) {
  if (!(white_ei > 0.0)) throw std::invalid_argument("shape_proportion: white_ei must be > 0");
  if (black_ei < 0.0) throw std::invalid_argument("shape_proportion: black_ei must be >= 0");
  return white_ei / (white_ei + black_ei);
}

Eigenvalues covariance_eigenvalues(const BinaryImage& img) {
  return eigenvalues_from(require_shape(img));
}

double eccentricity(double eig1, double eig2, EccentricityForm form) {
  if (!(eig2 > 0.0)) throw std::invalid_argument("eccentricity: eig2 must be > 0");
  if (eig1 < eig2) throw std::invalid_argument("eccentricity: eig1 must be >= eig2");
  const double ratio = eig1 / eig2;
  return form == EccentricityForm::eigen_ratio ? ratio : std::sqrt(ratio);
}

double perimeter(const BinaryImage& img) {
  return crack_perimeter(img, require_shape(img).count);
}

double circularity(const BinaryImage& img, CircularityForm form) {
  const auto m = require_shape(img);
  return circularity_from(crack_perimeter(img, m.count), static_cast<double>(m.count), form);
}

MetricVector metric_vector(const BinaryImage& img, const MetricOptions& options) {
  const auto m = require_shape(img);
  const EncircledHistogram ei = encircled_histogram(img);
  const Eigenvalues eig = eigenvalues_from(m);
  MetricVector v;
  v.white_ei = ei.white;
  v.black_ei = ei.black;
  v.sp = shape_proportion(ei.white, ei.black);
  v.eig1 = eig.first;
  v.eig2 = eig.second;
  v.eccentricity = eccentricity(eig.first, eig.second, options.eccentricity);
  v.circularity =
      circularity_from(crack_perimeter(img, m.count), static_cast<double>(m.count), options.circularity);
  return v;
}

}  // namespace shapemetrics
