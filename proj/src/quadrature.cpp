#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "twojet/error.hpp"
#include "twojet/harmonics.hpp"

namespace twojet {
namespace {

// (P_K(z), P_K'(z)) by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(int K, double z) {
  double pm = 1.0, pc = z;
  for (int j = 2; j <= K; ++j) {
    const double pn = ((2.0 * j - 1.0) * z * pc - (j - 1.0) * pm) / j;
    pm = pc;
    pc = pn;
  }
  if (K == 1) return {z, 1.0};
  return {pc, K * (z * pc - pm) / (z * z - 1.0)};
}

}  // namespace

Quadrature gauss_quadrature(int K) {
  if (K < 1) throw DomainError("gauss_quadrature: K must be >= 1");
  Quadrature q;
  q.nodes.assign(K, 0.0);
  q.weights.assign(K, 0.0);
  for (int i = 0; i < (K + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (K + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre_with_derivative(K, z);
      const double dz = p / dp;
      z -= dz;
      if (std::abs(dz) <= 1e-16 * std::max(1.0, std::abs(z))) break;
    }
    const double dp = legendre_with_derivative(K, z).second;
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    q.nodes[i] = -z;
    q.nodes[K - 1 - i] = z;
    q.weights[i] = w;
    q.weights[K - 1 - i] = w;
  }
  if (K % 2 == 1) q.nodes[K / 2] = 0.0;
  return q;
}

Quadrature gauss_quadrature(int K, double lo, double hi) {
  Quadrature q = gauss_quadrature(K);
  const double mid = 0.5 * (hi + lo);
  const double half = 0.5 * (hi - lo);
  for (int k = 0; k < K; ++k) {
    q.nodes[k] = mid + half * q.nodes[k];
    q.weights[k] *= half;
  }
  return q;
}

}  // namespace twojet
