#pragma once

#include <span>
#include <vector>

#include "twojet/types.hpp"

namespace twojet {

/// lambda_n = n(n+1), the eigenvalue of -Laplacian on degree n.
long long eigenvalue_lambda(int n);

/// a_n^m = sqrt((n-m)(n+m) / ((2n-1)(2n+1))).  Requires n >= |m|, n >= 1.
double recurrence_coeff(int n, int m);

/// Normalized latitude function: Y_n^m(theta, phi) = latitude_fn(n, m, cos theta) e^{i m phi},
/// orthonormal on the sphere, Condon-Shortley phase.
double latitude_fn(int n, int m, double s);

/// theta-derivative of latitude_fn(n, m, cos theta).
double latitude_fn_dtheta(int n, int m, double theta);

/// Row-major table out[(n - |m|) * s.size() + k] for n in [|m|, n_max].
std::vector<double> latitude_table(int m, int n_max, std::span<const double> s);

struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// K-point Gauss-Legendre rule on [-1, 1], nodes increasing.
Quadrature gauss_quadrature(int K);

/// Same rule mapped to [lo, hi].
Quadrature gauss_quadrature(int K, double lo, double hi);

/// Default node count for products of degree <= N latitude functions.
inline int default_quadrature_size(int N) { return 2 * N + 16; }

/// 2 pi sum_k w_k f_k conj(g_k).
cplx mode_inner_product(std::span<const cplx> f, std::span<const cplx> g, const Quadrature& q);
double mode_inner_product(std::span<const double> f, std::span<const double> g, const Quadrature& q);

/// Sum_n c_n Y~_n^m(s) for a coefficient vector of mode u.m.
cplx synthesize(const SpectralVector& u, double s);

}  // namespace twojet
