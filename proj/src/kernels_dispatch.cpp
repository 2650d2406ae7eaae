#include <atomic>
#include <cstdlib>
#include <string>

#include "lsap/kernels.hpp"
#include "lsap/types.hpp"

namespace lsap::kernels {
namespace {

const KernelSet* detect() {
  if (const char* env = std::getenv("LSAP_KERNEL")) {
    const std::string name(env);
    if (!name.empty() && name != "auto") {
      if (name == "scalar") return &scalar_kernels;
#if defined(__x86_64__) || defined(_M_X64)
      if (name == "avx2" && avx2_supported()) return &avx2_kernels;
#endif
#if defined(__aarch64__)
      if (name == "neon") return &neon_kernels;
#endif
      // Unknown or unsupported override: fall through to autodetection
      // rather than failing hard at static-init time.
    }
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (avx2_supported()) return &avx2_kernels;
#endif
#if defined(__aarch64__)
  return &neon_kernels;
#endif
  return &scalar_kernels;
}

std::atomic<const KernelSet*>& slot() {
  static std::atomic<const KernelSet*> s{detect()};
  return s;
}

}  // namespace

const KernelSet& active() { return *slot().load(std::memory_order_relaxed); }

void select(const std::string& name) {
  if (name == "auto") {
    slot().store(detect(), std::memory_order_relaxed);
    return;
  }
  if (name == "scalar") {
    slot().store(&scalar_kernels, std::memory_order_relaxed);
    return;
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (name == "avx2") {
    if (!avx2_supported()) throw Error("kernel 'avx2' not supported by this CPU");
    slot().store(&avx2_kernels, std::memory_order_relaxed);
    return;
  }
#endif
#if defined(__aarch64__)
  if (name == "neon") {
    slot().store(&neon_kernels, std::memory_order_relaxed);
    return;
  }
#endif
  throw Error("unknown kernel '" + name + "' (available: " + available_names() + ")");
}

std::string available_names() {
  std::string names = "auto,scalar";
#if defined(__x86_64__) || defined(_M_X64)
  if (avx2_supported()) names += ",avx2";
#endif
#if defined(__aarch64__)
  names += ",neon";
#endif
  return names;
}

}  // namespace lsap::kernels
