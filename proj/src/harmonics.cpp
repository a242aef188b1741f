#include "twojet/harmonics.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "twojet/error.hpp"
#include "twojet/simd/kernels.hpp"

namespace twojet {

void TwoJetParams::validate() const {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw DomainError("nu must be positive and finite");
  if (!std::isfinite(a)) throw DomainError("a must be finite");
}

long long eigenvalue_lambda(int n) {
  if (n < 0) throw DomainError("degree must be nonnegative");
  return static_cast<long long>(n) * (n + 1);
}

double recurrence_coeff(int n, int m) {
  if (n < 1 || n < std::abs(m))
    throw DomainError("recurrence_coeff: need n >= max(1,|m|), got n=" + std::to_string(n) + " m=" + std::to_string(m));
  const double nn = n;
  const double mm = m;
  return std::sqrt((nn - mm) * (nn + mm) / ((2.0 * nn - 1.0) * (2.0 * nn + 1.0)));
}

std::vector<double> latitude_table(int m, int n_max, std::span<const double> s) {
  const int am = std::abs(m);
  if (n_max < am) throw DomainError("latitude_table: n_max < |m|");
  for (double x : s)
    if (!(std::abs(x) <= 1.0)) throw DomainError("latitude_table: |s| > 1");
  std::vector<double> out(static_cast<std::size_t>(n_max - am + 1) * s.size());
  simd::kernels().latitude_sweep(m, n_max, s.data(), s.size(), out.data());
  return out;
}

double latitude_fn(int n, int m, double s) {
  if (n < std::abs(m)) throw DomainError("latitude_fn: n < |m|");
  if (!(std::abs(s) <= 1.0)) throw DomainError("latitude_fn: |s| > 1");
  const auto table = latitude_table(m, n, std::span<const double>(&s, 1));
  return table.back();
}

// sin(theta) dY_n/dtheta = n a_{n+1} Y_{n+1} - (n+1) a_n Y_{n-1}.  At the
// poles the sectoral factor makes the derivative finite; handle it by a
// one-sided central difference which is never hit by interior quadrature.
double latitude_fn_dtheta(int n, int m, double theta) {
  const int am = std::abs(m);
  if (n < am) throw DomainError("latitude_fn_dtheta: n < |m|");
  const double s = std::cos(theta);
  const double st = std::sin(theta);
  if (std::abs(st) < 1e-8) {
    const double h = 1e-5;
    return (latitude_fn(n, m, std::cos(theta + h)) - latitude_fn(n, m, std::cos(theta - h))) / (2.0 * h);
  }
  const auto table = latitude_table(m, n + 1, std::span<const double>(&s, 1));
  const double up = table[n + 1 - am];
  const double down = n - 1 >= am ? table[n - 1 - am] : 0.0;
  const double a_up = recurrence_coeff(n + 1, m);
  const double a_n = n >= 1 && n > am ? recurrence_coeff(n, m) : 0.0;
  return (n * a_up * up - (n + 1) * a_n * down) / st;
}

cplx mode_inner_product(std::span<const cplx> f, std::span<const cplx> g, const Quadrature& q) {
  if (f.size() != q.nodes.size() || g.size() != q.nodes.size())
    throw DomainError("mode_inner_product: sample count does not match quadrature");
  return 2.0 * std::numbers::pi * simd::kernels().weighted_cdot(q.weights.data(), f.data(), g.data(), f.size());
}

double mode_inner_product(std::span<const double> f, std::span<const double> g, const Quadrature& q) {
  if (f.size() != q.nodes.size() || g.size() != q.nodes.size())
    throw DomainError("mode_inner_product: sample count does not match quadrature");
  double acc = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) acc += q.weights[k] * f[k] * g[k];
  return 2.0 * std::numbers::pi * acc;
}

cplx synthesize(const SpectralVector& u, double s) {
  if (u.coeffs.size() == 0) return {};
  const int am = std::abs(u.m);
  if (u.n_min < am) throw DomainError("synthesize: n_min < |m|");
  const auto table = latitude_table(u.m, u.n_max(), std::span<const double>(&s, 1));
  cplx acc{};
  for (int n = u.n_min; n <= u.n_max(); ++n) acc += u.at(n) * table[n - am];
  return acc;
}

}  // namespace twojet
