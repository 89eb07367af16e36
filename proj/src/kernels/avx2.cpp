// Compiled with -mavx2; only reached after a runtime CPU check.
#include "impl.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <cstring>

namespace shapemetrics::kernels::avx2 {

namespace {

inline std::int64_t hsum_epi64(__m256i v) {
  alignas(32) std::int64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

// Sum of bytes; inputs are 0/1 so the 8-byte SAD groups cannot overflow.
inline std::int64_t sum_bytes(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
  std::size_t i = 0;
  __m256i acc = _mm256_setzero_si256();
  const __m256i zero = _mm256_setzero_si256();
  for (; i + 32 <= n; i += 32) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(_mm256_and_si256(va, vb), zero));
  }
  std::int64_t total = hsum_epi64(acc);
  for (; i < n; ++i) total += a[i] & b[i];
  return total;
}

}  // namespace

void bin_indices(std::span<const double> values, double lo, double extent, std::int32_t bins,
                 std::span<std::int32_t> out) {
  const double nbins = static_cast<double>(bins);
  const double last = static_cast<double>(bins - 1);
  const __m256d vlo = _mm256_set1_pd(lo);
  const __m256d vext = _mm256_set1_pd(extent);
  const __m256d vbins = _mm256_set1_pd(nbins);
  const __m256d vzero = _mm256_setzero_pd();
  const __m256d vlast = _mm256_set1_pd(last);
  std::size_t i = 0;
  const std::size_t n = values.size();
  for (; i + 4 <= n; i += 4) {
    __m256d t = _mm256_loadu_pd(values.data() + i);
    t = _mm256_div_pd(_mm256_sub_pd(t, vlo), vext);
    t = _mm256_mul_pd(t, vbins);
    t = _mm256_floor_pd(t);
    t = _mm256_min_pd(_mm256_max_pd(t, vzero), vlast);
    _mm_storeu_si128(reinterpret_cast<__m128i*>(out.data() + i), _mm256_cvttpd_epi32(t));
  }
  for (; i < n; ++i) {
    double t = (values[i] - lo) / extent;
    t = t * nbins;
    t = std::floor(t);
    t = std::min(std::max(t, 0.0), last);
    out[i] = static_cast<std::int32_t>(t);
  }
}

MomentSums moment_sums(ImageView image) {
  MomentSums m;
  const __m256i step = _mm256_set1_epi64x(4);
  const __m256i zero = _mm256_setzero_si256();
  for (std::size_t y = 0; y < image.height; ++y) {
    const std::uint8_t* row = image.pixels.data() + y * image.width;
    __m256i vcount = _mm256_setzero_si256();
    __m256i vsx = _mm256_setzero_si256();
    __m256i vsxx = _mm256_setzero_si256();
    __m256i xs = _mm256_setr_epi64x(0, 1, 2, 3);
    std::size_t x = 0;
    for (; x + 4 <= image.width; x += 4) {
      std::int32_t packed;
      std::memcpy(&packed, row + x, sizeof(packed));
      const __m256i p = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(packed));
      const __m256i mask = _mm256_sub_epi64(zero, p);  // 0 or all ones
      vcount = _mm256_add_epi64(vcount, p);
      vsx = _mm256_add_epi64(vsx, _mm256_and_si256(mask, xs));
      vsxx = _mm256_add_epi64(vsxx, _mm256_and_si256(mask, _mm256_mul_epu32(xs, xs)));
      xs = _mm256_add_epi64(xs, step);
    }
    std::int64_t count = hsum_epi64(vcount);
    std::int64_t sx = hsum_epi64(vsx);
    std::int64_t sxx = hsum_epi64(vsxx);
    for (; x < image.width; ++x) {
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
    if (w > 1) pairs += sum_bytes(row, row + 1, w - 1);
    if (y + 1 < image.height) pairs += sum_bytes(row, row + w, w);
  }
  return pairs;
}

}  // namespace shapemetrics::kernels::avx2
