#include <atomic>
#include <cstdlib>
#include <string_view>

#include "zslab/simd/kernels.hpp"

namespace zslab::simd {

#if defined(ZSLAB_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif

namespace {

bool cpu_has_avx2() noexcept {
#if defined(ZSLAB_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
  return false;
#endif
}

const KernelTable* initial_table() noexcept {
  const char* env = std::getenv("ZSLAB_SIMD");
  std::string_view want = env ? env : "auto";
  if (want == "scalar") return &scalar_kernels();
  if (const KernelTable* t = avx2_kernels()) return t;
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& slot() noexcept {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable* avx2_kernels() noexcept {
#if defined(ZSLAB_HAVE_AVX2)
  static const bool ok = cpu_has_avx2();
  return ok ? &kAvx2Table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() noexcept { return *slot().load(std::memory_order_relaxed); }

bool select(Backend backend) noexcept {
  const KernelTable* t = backend == Backend::Scalar ? &scalar_kernels() : avx2_kernels();
  if (!t) return false;
  slot().store(t, std::memory_order_relaxed);
  return true;
}

}  // namespace zslab::simd
