#pragma once

// Data-parallel inner loops used across the library.  Every kernel has a
// portable scalar reference; wider variants are compiled into separate
// translation units and picked once at runtime from the CPU feature set.
// TWOJET_SIMD=scalar|avx2 in the environment overrides the choice.

#include <complex>
#include <cstddef>
#include <string_view>

namespace twojet::simd {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  const char* name;

  // Normalized latitude functions for one order m at `count` abscissae:
  // out[(n - |m|) * count + k] = Y~_n^m(s[k]) for n in [|m|, n_max].
  void (*latitude_sweep)(int m, int n_max, const double* s, std::size_t count, double* out);

  // sum_k w[k] * f[k] * conj(g[k])
  cplx (*weighted_cdot)(const double* w, const cplx* f, const cplx* g, std::size_t count);

  // sum_k conj(x[k]) * y[k]
  cplx (*cdot)(const cplx* x, const cplx* y, std::size_t count);

  // y += alpha * x
  void (*caxpy)(cplx alpha, const cplx* x, cplx* y, std::size_t count);

  // y[i] = lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1]; lower[0] and
  // upper[n-1] are ignored.
  void (*tridiag_matvec)(const cplx* lower, const cplx* diag, const cplx* upper, const cplx* x,
                         cplx* y, std::size_t n);
};

/// Kernels currently in use.
const KernelTable& kernels();

/// A specific variant; throws DomainError if this build or CPU lacks it.
const KernelTable& kernels(Isa isa);

bool isa_supported(Isa isa);
Isa best_isa();
void select_isa(Isa isa);
std::string_view isa_name(Isa isa);

namespace detail {
const KernelTable& scalar_table();
#if defined(TWOJET_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
}  // namespace detail

}  // namespace twojet::simd
