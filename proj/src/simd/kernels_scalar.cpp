#include <cmath>
#include <cstdlib>
#include <numbers>

#include "twojet/simd/kernels.hpp"

namespace twojet::simd {
namespace {

// (-1)^|m| sqrt((2|m|+1)/(4 pi) * prod_{k<=|m|} (2k-1)/(2k)); the m<0 branch
// picks up an extra (-1)^|m| from the negative-order convention.
double sectoral_constant(int m) {
  const int am = std::abs(m);
  double prod = 1.0;
  for (int k = 1; k <= am; ++k) prod *= static_cast<double>(2 * k - 1) / static_cast<double>(2 * k);
  double c = std::sqrt((2.0 * am + 1.0) / (4.0 * std::numbers::pi) * prod);
  if (m > 0 && (am % 2 == 1)) c = -c;
  return c;
}

double recurrence(int n, int m) {
  const double nn = n;
  const double mm = m;
  return std::sqrt((nn - mm) * (nn + mm) / ((2.0 * nn - 1.0) * (2.0 * nn + 1.0)));
}

void latitude_sweep_scalar(int m, int n_max, const double* s, std::size_t count, double* out) {
  const int am = std::abs(m);
  if (n_max < am) return;
  const double seed = sectoral_constant(m);
  for (std::size_t k = 0; k < count; ++k) {
    const double x = std::sqrt((1.0 - s[k]) * (1.0 + s[k]));
    double p = seed;
    for (int j = 0; j < am; ++j) p *= x;
    out[k] = p;
  }
  if (n_max == am) return;
  {
    const double inv = 1.0 / recurrence(am + 1, m);
    double* row = out + count;
    for (std::size_t k = 0; k < count; ++k) row[k] = s[k] * out[k] * inv;
  }
  for (int n = am + 1; n < n_max; ++n) {
    const double an = recurrence(n, m);
    const double inv = 1.0 / recurrence(n + 1, m);
    const double* prev = out + static_cast<std::size_t>(n - 1 - am) * count;
    const double* cur = prev + count;
    double* next = out + static_cast<std::size_t>(n + 1 - am) * count;
    for (std::size_t k = 0; k < count; ++k) next[k] = (s[k] * cur[k] - an * prev[k]) * inv;
  }
}

cplx weighted_cdot_scalar(const double* w, const cplx* f, const cplx* g, std::size_t count) {
  double re = 0.0, im = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const double fr = f[k].real(), fi = f[k].imag();
    const double gr = g[k].real(), gi = g[k].imag();
    re += w[k] * (fr * gr + fi * gi);
    im += w[k] * (fi * gr - fr * gi);
  }
  return {re, im};
}

cplx cdot_scalar(const cplx* x, const cplx* y, std::size_t count) {
  double re = 0.0, im = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const double xr = x[k].real(), xi = x[k].imag();
    const double yr = y[k].real(), yi = y[k].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

void caxpy_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t count) {
  for (std::size_t k = 0; k < count; ++k) y[k] += alpha * x[k];
}

void tridiag_matvec_scalar(const cplx* lower, const cplx* diag, const cplx* upper, const cplx* x,
                           cplx* y, std::size_t n) {
  if (n == 0) return;
  if (n == 1) {
    y[0] = diag[0] * x[0];
    return;
  }
  y[0] = diag[0] * x[0] + upper[0] * x[1];
  for (std::size_t i = 1; i + 1 < n; ++i) y[i] = lower[i] * x[i - 1] + diag[i] * x[i] + upper[i] * x[i + 1];
  y[n - 1] = lower[n - 1] * x[n - 2] + diag[n - 1] * x[n - 1];
}

const KernelTable kScalar{
    Isa::scalar,          "scalar",          latitude_sweep_scalar, weighted_cdot_scalar,
    cdot_scalar,          caxpy_scalar,      tridiag_matvec_scalar,
};

}  // namespace

const KernelTable& detail::scalar_table() { return kScalar; }

}  // namespace twojet::simd
