#pragma once

#include "shapemetrics/kernels/kernels.hpp"

namespace shapemetrics::kernels {

namespace scalar {
void bin_indices(std::span<const double> values, double lo, double extent, std::int32_t bins,
                 std::span<std::int32_t> out);
MomentSums moment_sums(ImageView image);
std::int64_t adjacent_white_pairs(ImageView image);
}  // namespace scalar

#if defined(SHAPEMETRICS_HAVE_AVX2)
namespace avx2 {
void bin_indices(std::span<const double> values, double lo, double extent, std::int32_t bins,
                 std::span<std::int32_t> out);
MomentSums moment_sums(ImageView image);
std::int64_t adjacent_white_pairs(ImageView image);
}  // namespace avx2
#endif

}  // namespace shapemetrics::kernels
