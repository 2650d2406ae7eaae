// AVX2 variants of the scan kernels. Compiled with -mavx2 only (no -mfma):
// the scans are pure add/sub chains evaluated in the same order as the
// scalar reference, so results are bit-identical and runtime-switchable.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "lsap/kernels.hpp"

namespace lsap::kernels {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Lane {
  double value;
  std::int64_t index;
};

// Resolves the four per-lane running maxima into one (value, index) pair.
// Lanes hold the first (lowest-index) occurrence of their own maximum, so
// picking the smallest index among value-ties is globally correct.
inline void resolve_lanes(__m256d vbest, __m256i vidx, double& best, std::int64_t& best_idx) {
  alignas(32) double v[4];
  alignas(32) std::int64_t id[4];
  _mm256_store_pd(v, vbest);
  _mm256_store_si256(reinterpret_cast<__m256i*>(id), vidx);
  for (int lane = 0; lane < 4; ++lane) {
    if (v[lane] > best || (v[lane] == best && best_idx >= 0 && id[lane] < best_idx)) {
      best = v[lane];
      best_idx = id[lane];
    }
  }
}

ScanResult exchange_scan_avx2(const double* primary, const double* cross,
                              const std::int32_t* map, std::int64_t stride,
                              const double* current, double self_benefit,
                              std::int32_t skip, std::int32_t n, double eps) {
  const __m256d vself = _mm256_set1_pd(self_benefit);
  const __m256d vneginf = _mm256_set1_pd(kNegInf);
  const __m256i vstride = _mm256_set1_epi64x(stride);
  const __m256i vskip = _mm256_set1_epi64x(skip);
  __m256i vk = _mm256_setr_epi64x(0, 1, 2, 3);
  const __m256i vfour = _mm256_set1_epi64x(4);

  __m256d vbest = vneginf;
  __m256i vbest_idx = _mm256_setzero_si256();

  const std::int32_t full = n & ~3;
  for (std::int32_t k = 0; k < full; k += 4) {
    const __m128i map32 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(map + k));
    const __m256i map64 = _mm256_cvtepi32_epi64(map32);
    // map and stride both fit in 32 bits, so the low-word multiply is exact.
    const __m256i gather_idx = _mm256_mul_epu32(map64, vstride);
    const __m256d vgather = _mm256_i64gather_pd(cross, gather_idx, 8);

    const __m256d vprimary = _mm256_loadu_pd(primary + k);
    const __m256d vcurrent = _mm256_loadu_pd(current + k);
    __m256d vdelta = _mm256_add_pd(_mm256_sub_pd(vprimary, vself),
                                   _mm256_sub_pd(vgather, vcurrent));

    const __m256i skip_mask = _mm256_cmpeq_epi64(vk, vskip);
    vdelta = _mm256_blendv_pd(vdelta, vneginf, _mm256_castsi256_pd(skip_mask));

    const __m256d gt = _mm256_cmp_pd(vdelta, vbest, _CMP_GT_OQ);
    vbest = _mm256_blendv_pd(vbest, vdelta, gt);
    vbest_idx = _mm256_blendv_epi8(vbest_idx, vk, _mm256_castpd_si256(gt));
    vk = _mm256_add_epi64(vk, vfour);
  }

  double best = kNegInf;
  std::int64_t best_idx = -1;
  resolve_lanes(vbest, vbest_idx, best, best_idx);

  for (std::int32_t k = full; k < n; ++k) {
    if (k == skip) continue;
    const double d = (primary[k] - self_benefit) +
                     (cross[static_cast<std::int64_t>(map[k]) * stride] - current[k]);
    if (d > best) {
      best = d;
      best_idx = k;
    }
  }

  if (best_idx < 0 || !(best > eps)) return {};
  return {best, static_cast<std::int32_t>(best_idx)};
}

MaxResult argmax_avx2(const double* values, std::int32_t n) {
  if (n <= 0) return {};
  __m256d vbest = _mm256_set1_pd(kNegInf);
  __m256i vbest_idx = _mm256_setzero_si256();
  __m256i vk = _mm256_setr_epi64x(0, 1, 2, 3);
  const __m256i vfour = _mm256_set1_epi64x(4);

  const std::int32_t full = n & ~3;
  for (std::int32_t k = 0; k < full; k += 4) {
    const __m256d v = _mm256_loadu_pd(values + k);
    const __m256d gt = _mm256_cmp_pd(v, vbest, _CMP_GT_OQ);
    vbest = _mm256_blendv_pd(vbest, v, gt);
    vbest_idx = _mm256_blendv_epi8(vbest_idx, vk, _mm256_castpd_si256(gt));
    vk = _mm256_add_epi64(vk, vfour);
  }

  double best = kNegInf;
  std::int64_t best_idx = -1;
  resolve_lanes(vbest, vbest_idx, best, best_idx);

  for (std::int32_t k = full; k < n; ++k) {
    if (values[k] > best) {
      best = values[k];
      best_idx = k;
    }
  }
  if (best_idx < 0) {
    // All lanes stayed at -inf: n < 4 handled above, all-(-inf) input here.
    best_idx = 0;
    best = values[0];
    for (std::int32_t k = 1; k < n; ++k) {
      if (values[k] > best) {
        best = values[k];
        best_idx = k;
      }
    }
  }
  return {best, static_cast<std::int32_t>(best_idx)};
}

MaxResult net_scan_avx2(const double* row, const double* prices,
                        std::int32_t n, std::int32_t skip) {
  const __m256d vneginf = _mm256_set1_pd(kNegInf);
  const __m256i vskip = _mm256_set1_epi64x(skip);
  __m256i vk = _mm256_setr_epi64x(0, 1, 2, 3);
  const __m256i vfour = _mm256_set1_epi64x(4);
  __m256d vbest = vneginf;
  __m256i vbest_idx = _mm256_setzero_si256();

  const std::int32_t full = n & ~3;
  for (std::int32_t k = 0; k < full; k += 4) {
    __m256d v = _mm256_sub_pd(_mm256_loadu_pd(row + k), _mm256_loadu_pd(prices + k));
    const __m256i skip_mask = _mm256_cmpeq_epi64(vk, vskip);
    v = _mm256_blendv_pd(v, vneginf, _mm256_castsi256_pd(skip_mask));
    const __m256d gt = _mm256_cmp_pd(v, vbest, _CMP_GT_OQ);
    vbest = _mm256_blendv_pd(vbest, v, gt);
    vbest_idx = _mm256_blendv_epi8(vbest_idx, vk, _mm256_castpd_si256(gt));
    vk = _mm256_add_epi64(vk, vfour);
  }

  double best = kNegInf;
  std::int64_t best_idx = -1;
  resolve_lanes(vbest, vbest_idx, best, best_idx);

  for (std::int32_t k = full; k < n; ++k) {
    if (k == skip) continue;
    const double d = row[k] - prices[k];
    if (d > best) {
      best = d;
      best_idx = k;
    }
  }
  if (best_idx < 0) return {};
  return {best, static_cast<std::int32_t>(best_idx)};
}

}  // namespace

bool avx2_supported() { return __builtin_cpu_supports("avx2"); }

const KernelSet avx2_kernels{exchange_scan_avx2, argmax_avx2, net_scan_avx2, "avx2"};

}  // namespace lsap::kernels

#endif  // x86_64
