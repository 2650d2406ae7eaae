#include "lsap/kernels.hpp"

namespace lsap::kernels {
namespace {

ScanResult exchange_scan_scalar(const double* primary, const double* cross,
                                const std::int32_t* map, std::int64_t stride,
                                const double* current, double self_benefit,
                                std::int32_t skip, std::int32_t n, double eps) {
  double best = 0.0;
  std::int32_t best_k = -1;
  for (std::int32_t k = 0; k < n; ++k) {
    if (k == skip) continue;
    // Keep this expression in sync with the SIMD variants: the operation
    // order is what makes the results bit-identical.
    const double d = (primary[k] - self_benefit) +
                     (cross[static_cast<std::int64_t>(map[k]) * stride] - current[k]);
    if (best_k < 0 ? d > eps : d > best) {
      best = d;
      best_k = k;
    }
  }
  if (best_k < 0) return {};
  return {best, best_k};
}

MaxResult argmax_scalar(const double* values, std::int32_t n) {
  if (n <= 0) return {};
  double best = values[0];
  std::int32_t best_k = 0;
  for (std::int32_t k = 1; k < n; ++k) {
    if (values[k] > best) {
      best = values[k];
      best_k = k;
    }
  }
  return {best, best_k};
}

MaxResult net_scan_scalar(const double* row, const double* prices,
                          std::int32_t n, std::int32_t skip) {
  std::int32_t best_k = -1;
  double best = 0.0;
  for (std::int32_t k = 0; k < n; ++k) {
    if (k == skip) continue;
    const double d = row[k] - prices[k];
    if (best_k < 0 || d > best) {
      best = d;
      best_k = k;
    }
  }
  if (best_k < 0) return {};
  return {best, best_k};
}

}  // namespace

const KernelSet scalar_kernels{exchange_scan_scalar, argmax_scalar, net_scan_scalar,
                               "scalar"};

}  // namespace lsap::kernels
