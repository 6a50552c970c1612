#include <atomic>
#include <cstdlib>
#include <string_view>

#include "mcas/kernels.hpp"

namespace mcas::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(MCAS_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* table_for(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return &scalar_table();
    case Isa::avx2:
#if defined(MCAS_HAVE_AVX2)
      return cpu_has_avx2() ? &avx2_table() : nullptr;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

const KernelTable* initial_table() noexcept {
  if (const char* env = std::getenv("MCAS_SIMD")) {
    std::string_view want(env);
    if (want == "scalar") return &scalar_table();
    if (want == "avx2") {
      if (const KernelTable* t = table_for(Isa::avx2)) return t;
    }
  }
  if (const KernelTable* t = table_for(Isa::avx2)) return t;
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

bool isa_supported(Isa isa) noexcept { return table_for(isa) != nullptr; }

std::string_view isa_name(Isa isa) noexcept {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_relaxed); }

bool select(Isa isa) noexcept {
  const KernelTable* t = table_for(isa);
  if (t == nullptr) return false;
  current().store(t, std::memory_order_relaxed);
  return true;
}

}  // namespace mcas::kernels
