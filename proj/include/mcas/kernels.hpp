#pragma once

// Dense double-precision kernels used by belief arithmetic, policy evaluation
// and the point-based solver. Each kernel has a portable scalar reference and,
// on x86-64, an AVX2/FMA variant; the variant is chosen once at startup from
// the CPU feature bits (override with MCAS_SIMD=scalar|avx2).

#include <cstddef>
#include <span>
#include <string_view>

namespace mcas::kernels {

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*l1_distance)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // out = a .* b (out may alias a or b)
  void (*multiply)(const double* a, const double* b, double* out, std::size_t n);
  double (*sum)(const double* a, std::size_t n);
  void (*scale)(double* a, double factor, std::size_t n);
  // Index of the first maximal element; n must be > 0.
  std::size_t (*argmax)(const double* a, std::size_t n);
};

const KernelTable& scalar_table() noexcept;
#if defined(MCAS_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif

bool isa_supported(Isa isa) noexcept;
std::string_view isa_name(Isa isa) noexcept;

/// The table every wrapper below dispatches through.
const KernelTable& active() noexcept;

/// Force a variant; returns false (and changes nothing) if unsupported here.
bool select(Isa isa) noexcept;

inline double dot(std::span<const double> a, std::span<const double> b) noexcept {
  return active().dot(a.data(), b.data(), a.size());
}

inline double l1_distance(std::span<const double> a, std::span<const double> b) noexcept {
  return active().l1_distance(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept {
  active().axpy(alpha, x.data(), y.data(), x.size());
}

inline void multiply(std::span<const double> a, std::span<const double> b,
                     std::span<double> out) noexcept {
  active().multiply(a.data(), b.data(), out.data(), a.size());
}

inline double sum(std::span<const double> a) noexcept {
  return active().sum(a.data(), a.size());
}

inline void scale(std::span<double> a, double factor) noexcept {
  active().scale(a.data(), factor, a.size());
}

inline std::size_t argmax(std::span<const double> a) noexcept {
  return active().argmax(a.data(), a.size());
}

}  // namespace mcas::kernels
