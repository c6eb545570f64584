#include <atomic>

#include "bhs/error.hpp"
#include "bhs/simd.hpp"

namespace bhs::simd {
namespace {

bool cpu_has_avx2() {
#if defined(BHS_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* best_table() {
#if defined(BHS_HAVE_AVX2)
  if (cpu_has_avx2()) return &detail::avx2_table;
#endif
  return &detail::scalar_table;
}

std::atomic<const KernelTable*>& active() {
  static std::atomic<const KernelTable*> table{best_table()};
  return table;
}

}  // namespace

bool available(Backend b) {
  switch (b) {
    case Backend::Scalar: return true;
    case Backend::Avx2: return cpu_has_avx2();
  }
  return false;
}

const KernelTable& kernels(Backend b) {
  if (!available(b)) throw DomainError("SIMD backend not available: " + std::string(name(b)));
#if defined(BHS_HAVE_AVX2)
  if (b == Backend::Avx2) return detail::avx2_table;
#endif
  return detail::scalar_table;
}

const KernelTable& kernels() { return *active().load(std::memory_order_relaxed); }

Backend active_backend() {
  return active().load(std::memory_order_relaxed) == &detail::scalar_table ? Backend::Scalar
                                                                           : Backend::Avx2;
}

void set_backend(Backend b) { active().store(&kernels(b), std::memory_order_relaxed); }

std::string_view name(Backend b) { return b == Backend::Scalar ? "scalar" : "avx2"; }

}  // namespace bhs::simd
