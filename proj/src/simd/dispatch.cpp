#include <atomic>
#include <cstdlib>
#include <string>

#include "twojet/error.hpp"
#include "twojet/simd/kernels.hpp"

namespace twojet::simd {
namespace {

bool cpu_has_avx2() {
#if defined(TWOJET_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* table_for(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return &detail::scalar_table();
    case Isa::avx2:
#if defined(TWOJET_HAVE_AVX2)
      return cpu_has_avx2() ? &detail::avx2_table() : nullptr;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

const KernelTable* initial_table() {
  if (const char* env = std::getenv("TWOJET_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return &detail::scalar_table();
    if (v == "avx2") {
      if (const KernelTable* t = table_for(Isa::avx2)) return t;
    }
  }
  return table_for(best_isa());
}

std::atomic<const KernelTable*>& active() {
  static std::atomic<const KernelTable*> ptr{initial_table()};
  return ptr;
}

}  // namespace

bool isa_supported(Isa isa) { return table_for(isa) != nullptr; }

Isa best_isa() { return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar; }

const KernelTable& kernels() { return *active().load(std::memory_order_acquire); }

const KernelTable& kernels(Isa isa) {
  const KernelTable* t = table_for(isa);
  if (!t) throw DomainError("instruction set not available: " + std::string(isa_name(isa)));
  return *t;
}

void select_isa(Isa isa) { active().store(&kernels(isa), std::memory_order_release); }

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace twojet::simd
