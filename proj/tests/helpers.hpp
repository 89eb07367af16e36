#pragma once

#include <cmath>
#include <vector>

#include "shapemetrics/cart.hpp"
#include "shapemetrics/random.hpp"
#include "shapemetrics/types.hpp"

namespace testing {

using namespace shapemetrics;

inline BinaryImage random_image(Rng& rng, std::size_t w, std::size_t h, double density) {
  BinaryImage img(w, h);
  for (std::size_t r = 0; r < h; ++r)
    for (std::size_t c = 0; c < w; ++c)
      if (rng.uniform() < density) img.set(c, r);
  return img;
}

/// Image with exactly the listed white pixels.
inline BinaryImage image_of(std::size_t w, std::size_t h, const std::vector<std::pair<int, int>>& white) {
  BinaryImage img(w, h);
  for (auto [c, r] : white) img.set(static_cast<std::size_t>(c), static_cast<std::size_t>(r));
  return img;
}

inline BinaryImage filled_disk(int radius) {
  const int size = 2 * radius + 3;
  BinaryImage img(static_cast<std::size_t>(size), static_cast<std::size_t>(size));
  const int c = radius + 1;
  for (int r = 0; r < size; ++r)
    for (int x = 0; x < size; ++x)
      if ((x - c) * (x - c) + (r - c) * (r - c) <= radius * radius)
        img.set(static_cast<std::size_t>(x), static_cast<std::size_t>(r));
  return img;
}

/// Rounds to a multiple of 2^-20 so shifts by integers and scalings by
/// powers of two are exact in double precision.
inline PointSet dyadic(const PointSet& pts) {
  PointSet out;
  for (const Point& p : pts) out.push_back({std::round(p.x * 0x1p20) * 0x1p-20, std::round(p.y * 0x1p20) * 0x1p-20});
  return out;
}

/// Random dataset; `levels` > 0 quantizes features to force value ties.
inline LabeledDataset random_dataset(Rng& rng, std::size_t rows, int classes, int levels = 0) {
  LabeledDataset d;
  for (int c = 0; c < classes; ++c) d.class_names.push_back("c" + std::to_string(c));
  for (std::size_t i = 0; i < rows; ++i) {
    FeatureRow row;
    const int label = static_cast<int>(rng.below(static_cast<std::uint64_t>(classes)));
    for (std::size_t f = 0; f < kMetricCount; ++f) {
      double v = rng.normal() + (f == 0 ? 0.7 * label : 0.0);
      if (levels > 0) v = std::round(v * levels / 2.0);
      row[f] = v;
    }
    d.add(row, label);
  }
  return d;
}

}  // namespace testing
