// AVX2 + FMA variants.  This translation unit is compiled with -mavx2 -mfma
// and only reached through the dispatch table after a CPUID check.

#include <immintrin.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "twojet/simd/kernels.hpp"

namespace twojet::simd {
namespace {

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

// Vectorized across abscissae: four s-values advance through the degree
// recursion together.
void latitude_sweep_avx2(int m, int n_max, const double* s, std::size_t count, double* out) {
  const int am = std::abs(m);
  if (n_max < am) return;
  const double seed = sectoral_constant(m);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d vseed = _mm256_set1_pd(seed);

  std::size_t k = 0;
  for (; k + 4 <= count; k += 4) {
    const __m256d vs = _mm256_loadu_pd(s + k);
    const __m256d x = _mm256_sqrt_pd(_mm256_mul_pd(_mm256_sub_pd(one, vs), _mm256_add_pd(one, vs)));
    __m256d p = vseed;
    for (int j = 0; j < am; ++j) p = _mm256_mul_pd(p, x);
    _mm256_storeu_pd(out + k, p);
  }
  for (; k < count; ++k) {
    const double x = std::sqrt((1.0 - s[k]) * (1.0 + s[k]));
    double p = seed;
    for (int j = 0; j < am; ++j) p *= x;
    out[k] = p;
  }
  if (n_max == am) return;

  {
    const double inv = 1.0 / recurrence(am + 1, m);
    const __m256d vinv = _mm256_set1_pd(inv);
    double* row = out + count;
    k = 0;
    for (; k + 4 <= count; k += 4) {
      const __m256d v = _mm256_mul_pd(_mm256_mul_pd(_mm256_loadu_pd(s + k), _mm256_loadu_pd(out + k)), vinv);
      _mm256_storeu_pd(row + k, v);
    }
    for (; k < count; ++k) row[k] = s[k] * out[k] * inv;
  }

  for (int n = am + 1; n < n_max; ++n) {
    const double an = recurrence(n, m);
    const double inv = 1.0 / recurrence(n + 1, m);
    const __m256d van = _mm256_set1_pd(an);
    const __m256d vinv = _mm256_set1_pd(inv);
    const double* prev = out + static_cast<std::size_t>(n - 1 - am) * count;
    const double* cur = prev + count;
    double* next = out + static_cast<std::size_t>(n + 1 - am) * count;
    k = 0;
    for (; k + 4 <= count; k += 4) {
      const __m256d vs = _mm256_loadu_pd(s + k);
      const __m256d t = _mm256_fmsub_pd(vs, _mm256_loadu_pd(cur + k), _mm256_mul_pd(van, _mm256_loadu_pd(prev + k)));
      _mm256_storeu_pd(next + k, _mm256_mul_pd(t, vinv));
    }
    for (; k < count; ++k) next[k] = (s[k] * cur[k] - an * prev[k]) * inv;
  }
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Lanes hold [re0 im0 re1 im1]; sum of the even lanes minus the odd lanes.
inline double hsum_even_minus_odd(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_sub_sd(s, _mm_unpackhi_pd(s, s)));
}

cplx weighted_cdot_avx2(const double* w, const cplx* f, const cplx* g, std::size_t count) {
  const double* fd = reinterpret_cast<const double*>(f);
  const double* gd = reinterpret_cast<const double*>(g);
  __m256d acc_re = _mm256_setzero_pd();  // w*(fr*gr), w*(fi*gi)
  __m256d acc_im = _mm256_setzero_pd();  // w*(fr*gi), w*(fi*gr)
  std::size_t k = 0;
  for (; k + 2 <= count; k += 2) {
    const __m256d vf = _mm256_loadu_pd(fd + 2 * k);
    const __m256d vg = _mm256_loadu_pd(gd + 2 * k);
    const __m256d vw = _mm256_set_pd(w[k + 1], w[k + 1], w[k], w[k]);
    const __m256d wf = _mm256_mul_pd(vw, vf);
    acc_re = _mm256_fmadd_pd(wf, vg, acc_re);
    acc_im = _mm256_fmadd_pd(wf, _mm256_permute_pd(vg, 0x5), acc_im);
  }
  double re = hsum(acc_re);
  double im = -hsum_even_minus_odd(acc_im);
  for (; k < count; ++k) {
    const double fr = f[k].real(), fi = f[k].imag();
    const double gr = g[k].real(), gi = g[k].imag();
    re += w[k] * (fr * gr + fi * gi);
    im += w[k] * (fi * gr - fr * gi);
  }
  return {re, im};
}

cplx cdot_avx2(const cplx* x, const cplx* y, std::size_t count) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  __m256d acc_re = _mm256_setzero_pd();  // xr*yr, xi*yi
  __m256d acc_im = _mm256_setzero_pd();  // xr*yi, xi*yr
  std::size_t k = 0;
  for (; k + 2 <= count; k += 2) {
    const __m256d vx = _mm256_loadu_pd(xd + 2 * k);
    const __m256d vy = _mm256_loadu_pd(yd + 2 * k);
    acc_re = _mm256_fmadd_pd(vx, vy, acc_re);
    acc_im = _mm256_fmadd_pd(vx, _mm256_permute_pd(vy, 0x5), acc_im);
  }
  double re = hsum(acc_re);
  double im = hsum_even_minus_odd(acc_im);
  for (; k < count; ++k) {
    const double xr = x[k].real(), xi = x[k].imag();
    const double yr = y[k].real(), yi = y[k].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

// (a * b) for two packed complex numbers per register.
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d are = _mm256_movedup_pd(a);
  const __m256d aim = _mm256_permute_pd(a, 0xF);
  const __m256d bsw = _mm256_permute_pd(b, 0x5);
  return _mm256_fmaddsub_pd(are, b, _mm256_mul_pd(aim, bsw));
}

void caxpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t count) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const __m256d va = _mm256_set_pd(alpha.imag(), alpha.real(), alpha.imag(), alpha.real());
  std::size_t k = 0;
  for (; k + 2 <= count; k += 2) {
    const __m256d vx = _mm256_loadu_pd(xd + 2 * k);
    const __m256d vy = _mm256_loadu_pd(yd + 2 * k);
    _mm256_storeu_pd(yd + 2 * k, _mm256_add_pd(vy, cmul(va, vx)));
  }
  for (; k < count; ++k) y[k] += alpha * x[k];
}

void tridiag_matvec_avx2(const cplx* lower, const cplx* diag, const cplx* upper, const cplx* x, cplx* y,
                         std::size_t n) {
  if (n < 4) {
    detail::scalar_table().tridiag_matvec(lower, diag, upper, x, y, n);
    return;
  }
  const double* ld = reinterpret_cast<const double*>(lower);
  const double* dd = reinterpret_cast<const double*>(diag);
  const double* ud = reinterpret_cast<const double*>(upper);
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);

  y[0] = diag[0] * x[0] + upper[0] * x[1];
  std::size_t i = 1;
  for (; i + 2 < n; i += 2) {
    __m256d acc = cmul(_mm256_loadu_pd(dd + 2 * i), _mm256_loadu_pd(xd + 2 * i));
    acc = _mm256_add_pd(acc, cmul(_mm256_loadu_pd(ld + 2 * i), _mm256_loadu_pd(xd + 2 * (i - 1))));
    acc = _mm256_add_pd(acc, cmul(_mm256_loadu_pd(ud + 2 * i), _mm256_loadu_pd(xd + 2 * (i + 1))));
    _mm256_storeu_pd(yd + 2 * i, acc);
  }
  for (; i + 1 < n; ++i) y[i] = lower[i] * x[i - 1] + diag[i] * x[i] + upper[i] * x[i + 1];
  y[n - 1] = lower[n - 1] * x[n - 2] + diag[n - 1] * x[n - 1];
}

const KernelTable kAvx2{
    Isa::avx2,      "avx2",     latitude_sweep_avx2, weighted_cdot_avx2,
    cdot_avx2,      caxpy_avx2, tridiag_matvec_avx2,
};

}  // namespace

const KernelTable& detail::avx2_table() { return kAvx2; }

}  // namespace twojet::simd
