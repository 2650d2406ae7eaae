#pragma once

#include <cstdint>
#include <string>

namespace lsap::kernels {

// Result of a best-improvement scan. Inactive scans come back as
// {delta = 0.0, partner = -1}.
struct ScanResult {
  double delta = 0.0;
  std::int32_t partner = -1;

  bool active() const { return partner >= 0; }
  bool operator==(const ScanResult&) const = default;
};

// Maximum with smallest-index tie break. index is -1 when n == 0.
struct MaxResult {
  double value = 0.0;
  std::int32_t index = -1;

  bool operator==(const MaxResult&) const = default;
};

// The 2-exchange inner loop shared by agent-side and job-side difference
// evaluation. For every candidate k in [0, n) except `skip`:
//
//   delta_k = (primary[k] - self_benefit) + (cross[map[k] * stride] - current[k])
//
// and the best strictly improving candidate (delta > eps) is returned, ties
// broken toward the smallest k. All variants evaluate the expression in this
// exact operation order, so scalar and SIMD results are bit-identical.
using ExchangeScanFn = ScanResult (*)(const double* primary, const double* cross,
                                      const std::int32_t* map, std::int64_t stride,
                                      const double* current, double self_benefit,
                                      std::int32_t skip, std::int32_t n, double eps);

// Plain argmax over a dense array, smallest index on ties.
using ArgmaxFn = MaxResult (*)(const double* values, std::int32_t n);

// Auction bid scan: argmax over k != skip of row[k] - prices[k].
// Pass skip = -1 for an unrestricted scan; index is -1 when nothing qualifies.
using NetScanFn = MaxResult (*)(const double* row, const double* prices,
                                std::int32_t n, std::int32_t skip);

struct KernelSet {
  ExchangeScanFn exchange_scan;
  ArgmaxFn argmax;
  NetScanFn net_scan;
  const char* name;
};

extern const KernelSet scalar_kernels;
#if defined(__x86_64__) || defined(_M_X64)
extern const KernelSet avx2_kernels;  // valid only if avx2_supported()
bool avx2_supported();
#endif
#if defined(__aarch64__)
extern const KernelSet neon_kernels;
#endif

// Runtime selection. Defaults to the widest ISA the CPU supports; the
// LSAP_KERNEL environment variable (scalar|avx2|neon|auto) or select()
// overrides it. Unknown or unsupported names throw.
const KernelSet& active();
void select(const std::string& name);
std::string available_names();

}  // namespace lsap::kernels
