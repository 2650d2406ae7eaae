// NEON variants of the scan kernels (aarch64). Two lanes per step; the
// gathers become per-lane loads. Operation order matches the scalar
// reference so results stay bit-identical.

#if defined(__aarch64__)

#include <arm_neon.h>

#include <limits>

#include "lsap/kernels.hpp"

namespace lsap::kernels {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline void resolve_lanes(float64x2_t vbest, int64x2_t vidx, double& best,
                          std::int64_t& best_idx) {
  const double v[2] = {vgetq_lane_f64(vbest, 0), vgetq_lane_f64(vbest, 1)};
  const std::int64_t id[2] = {vgetq_lane_s64(vidx, 0), vgetq_lane_s64(vidx, 1)};
  for (int lane = 0; lane < 2; ++lane) {
    if (v[lane] > best || (v[lane] == best && best_idx >= 0 && id[lane] < best_idx)) {
      best = v[lane];
      best_idx = id[lane];
    }
  }
}

inline float64x2_t load_pair(double a, double b) {
  const double tmp[2] = {a, b};
  return vld1q_f64(tmp);
}

ScanResult exchange_scan_neon(const double* primary, const double* cross,
                              const std::int32_t* map, std::int64_t stride,
                              const double* current, double self_benefit,
                              std::int32_t skip, std::int32_t n, double eps) {
  const float64x2_t vself = vdupq_n_f64(self_benefit);
  const float64x2_t vneginf = vdupq_n_f64(kNegInf);
  const int64x2_t vskip = vdupq_n_s64(skip);
  const int64x2_t vtwo = vdupq_n_s64(2);
  const std::int64_t k_init[2] = {0, 1};
  int64x2_t vk = vld1q_s64(k_init);

  float64x2_t vbest = vneginf;
  int64x2_t vbest_idx = vdupq_n_s64(0);

  const std::int32_t full = n & ~1;
  for (std::int32_t k = 0; k < full; k += 2) {
    const float64x2_t vgather =
        load_pair(cross[static_cast<std::int64_t>(map[k]) * stride],
                  cross[static_cast<std::int64_t>(map[k + 1]) * stride]);
    const float64x2_t vprimary = vld1q_f64(primary + k);
    const float64x2_t vcurrent = vld1q_f64(current + k);
    float64x2_t vdelta =
        vaddq_f64(vsubq_f64(vprimary, vself), vsubq_f64(vgather, vcurrent));

    const uint64x2_t skip_mask = vceqq_s64(vk, vskip);
    vdelta = vbslq_f64(skip_mask, vneginf, vdelta);

    const uint64x2_t gt = vcgtq_f64(vdelta, vbest);
    vbest = vbslq_f64(gt, vdelta, vbest);
    vbest_idx = vbslq_s64(gt, vk, vbest_idx);
    vk = vaddq_s64(vk, vtwo);
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

MaxResult argmax_neon(const double* values, std::int32_t n) {
  if (n <= 0) return {};
  const float64x2_t vneginf = vdupq_n_f64(kNegInf);
  const int64x2_t vtwo = vdupq_n_s64(2);
  const std::int64_t k_init[2] = {0, 1};
  int64x2_t vk = vld1q_s64(k_init);
  float64x2_t vbest = vneginf;
  int64x2_t vbest_idx = vdupq_n_s64(0);

  const std::int32_t full = n & ~1;
  for (std::int32_t k = 0; k < full; k += 2) {
    const float64x2_t v = vld1q_f64(values + k);
    const uint64x2_t gt = vcgtq_f64(v, vbest);
    vbest = vbslq_f64(gt, v, vbest);
    vbest_idx = vbslq_s64(gt, vk, vbest_idx);
    vk = vaddq_s64(vk, vtwo);
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

MaxResult net_scan_neon(const double* row, const double* prices,
                        std::int32_t n, std::int32_t skip) {
  const float64x2_t vneginf = vdupq_n_f64(kNegInf);
  const int64x2_t vskip = vdupq_n_s64(skip);
  const int64x2_t vtwo = vdupq_n_s64(2);
  const std::int64_t k_init[2] = {0, 1};
  int64x2_t vk = vld1q_s64(k_init);
  float64x2_t vbest = vneginf;
  int64x2_t vbest_idx = vdupq_n_s64(0);

  const std::int32_t full = n & ~1;
  for (std::int32_t k = 0; k < full; k += 2) {
    float64x2_t v = vsubq_f64(vld1q_f64(row + k), vld1q_f64(prices + k));
    const uint64x2_t skip_mask = vceqq_s64(vk, vskip);
    v = vbslq_f64(skip_mask, vneginf, v);
    const uint64x2_t gt = vcgtq_f64(v, vbest);
    vbest = vbslq_f64(gt, v, vbest);
    vbest_idx = vbslq_s64(gt, vk, vbest_idx);
    vk = vaddq_s64(vk, vtwo);
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

const KernelSet neon_kernels{exchange_scan_neon, argmax_neon, net_scan_neon, "neon"};

}  // namespace lsap::kernels

#endif  // __aarch64__
