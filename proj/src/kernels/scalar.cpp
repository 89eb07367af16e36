#include "impl.hpp"

#include <algorithm>
#include <cmath>

namespace shapemetrics::kernels::scalar {

void bin_indices(std::span<const double> values, double lo, double extent, std::int32_t bins,
                 std::span<std::int32_t> out) {
  const double nbins = static_cast<double>(bins);
  const double last = static_cast<double>(bins - 1);
  for (std::size_t i = 0; i < values.size(); ++i) {
    double t = (values[i] - lo) / extent;
    t = t * nbins;
    t = std::floor(t);
    t = std::min(std::max(t, 0.0), last);
    out[i] = static_cast<std::int32_t>(t);
  }
}

MomentSums moment_sums(ImageView image) {
  MomentSums m;
  for (std::size_t y = 0; y < image.height; ++y) {
    const std::uint8_t* row = image.pixels.data() + y * image.width;
    std::int64_t count = 0;
    std::int64_t sx = 0;
    std::int64_t sxx = 0;
    for (std::size_t x = 0; x < image.width; ++x) {
      if (row[x]) {
        const auto xi = static_cast<std::int64_t>(x);
        ++count;
        sx += xi;
        sxx += xi * xi;
      }
    }
    const auto yi = static_cast<std::int64_t>(y);
    m.count += count;
    m.sum_x += sx;
    m.sum_xx += sxx;
    m.sum_y += yi * count;
    m.sum_yy += yi * yi * count;
    m.sum_xy += yi * sx;
  }
  return m;
}

std::int64_t adjacent_white_pairs(ImageView image) {
  std::int64_t pairs = 0;
  const std::size_t w = image.width;
  for (std::size_t y = 0; y < image.height; ++y) {
    const std::uint8_t* row = image.pixels.data() + y * w;
    for (std::size_t x = 0; x + 1 < w; ++x) pairs += row[x] & row[x + 1];
    if (y + 1 < image.height) {
      const std::uint8_t* next = row + w;
      for (std::size_t x = 0; x < w; ++x) pairs += row[x] & next[x];
    }
  }
  return pairs;
}

}  // namespace shapemetrics::kernels::scalar
