#pragma once

// Data-parallel inner loops used by the rasterizer and the shape metrics.
//
// Every kernel has a scalar reference implementation. Vector variants are
// selected at runtime from the host CPU and must produce bitwise-identical
// results: the binning kernel performs the same IEEE operations in the same
// order, and the image kernels accumulate in exact integer arithmetic.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace shapemetrics::kernels {

/// Row-major view of a {0,1} pixel grid. Row 0 holds the smallest y-bin.
struct ImageView {
  std::span<const std::uint8_t> pixels;
  std::size_t width = 0;
  std::size_t height = 0;
};

/// Raw (uncentered) first and second moments of the white pixel indices.
struct MomentSums {
  std::int64_t count = 0;
  std::int64_t sum_x = 0;
  std::int64_t sum_y = 0;
  std::int64_t sum_xx = 0;
  std::int64_t sum_yy = 0;
  std::int64_t sum_xy = 0;

  friend bool operator==(const MomentSums&, const MomentSums&) = default;
};

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  std::string_view name;

  // out[i] = clamp(floor((values[i] - lo) / extent * bins), 0, bins - 1)
  void (*bin_indices)(std::span<const double> values, double lo, double extent,
                      std::int32_t bins, std::span<std::int32_t> out);

  MomentSums (*moment_sums)(ImageView image);

  // Number of 4-adjacent (horizontal + vertical) white/white pixel pairs.
  std::int64_t (*adjacent_white_pairs)(ImageView image);
};

bool isa_supported(Isa isa) noexcept;

/// Table for a specific instruction set. Throws if the ISA was not compiled
/// in or the CPU lacks it.
const KernelTable& kernels_for(Isa isa);

/// Best table for this CPU. The environment variable SHAPEMETRICS_ISA
/// ("scalar" or "avx2") forces a choice.
const KernelTable& active_kernels();

/// All tables usable on this machine, scalar first.
std::vector<Isa> supported_isas();

std::string_view isa_name(Isa isa) noexcept;

}  // namespace shapemetrics::kernels
