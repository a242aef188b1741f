#include "twojet/operators.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "twojet/error.hpp"
#include "twojet/harmonics.hpp"

namespace twojet {
namespace {

void check_range(int m, int n_min, int N, int floor) {
  if (n_min < floor || n_min < std::abs(m) || N < n_min)
    throw DomainError("invalid degree range [" + std::to_string(n_min) + ", " + std::to_string(N) +
                      "] for m=" + std::to_string(m));
}

double b_factor(int n) { return 1.0 - 6.0 / static_cast<double>(eigenvalue_lambda(n)); }

}  // namespace

int full_space_n_min(int m) { return std::max(1, std::abs(m)); }

DegreeRange subspace_range(Space space, int m, int N) {
  const int am = std::abs(m);
  if (space != Space::L0 && m == 0) throw DomainError("subspace_range: mode 0 belongs only to L0");
  int lo = 0;
  switch (space) {
    case Space::L0:
      lo = full_space_n_min(m);
      break;
    case Space::X:
      lo = std::max(2, am);
      break;
    case Space::Y:
      lo = std::max(2, am);
      if (am == 1 || am == 2) lo = 3;
      break;
  }
  if (N < lo) throw DomainError("subspace_range: truncation below the first admissible degree");
  return {lo, N};
}

std::vector<int> subspace_indices(Space space, int m, int N) {
  const auto r = subspace_range(space, m, N);
  std::vector<int> out;
  for (int n = r.lo; n <= r.hi; ++n) out.push_back(n);
  return out;
}

BandedOperator assemble_A(int m, int n_min, int N) {
  check_range(m, n_min, N, 1);
  BandedOperator out(m, n_min, N, 0, 0);
  for (int n = n_min; n <= N; ++n) out.set(n, n, 2.0 - static_cast<double>(eigenvalue_lambda(n)));
  return out;
}

BandedOperator assemble_B(int m, int n_min, int N) {
  check_range(m, n_min, N, 1);
  BandedOperator out(m, n_min, N, 0, 0);
  for (int n = n_min; n <= N; ++n) out.set(n, n, b_factor(n));
  return out;
}

BandedOperator assemble_cos_multiplier(int m, int n_min, int N) {
  check_range(m, n_min, N, 0);
  BandedOperator out(m, n_min, N, 1, 1);
  for (int n = n_min + 1; n <= N; ++n) {
    const double an = recurrence_coeff(n, m);
    out.set(n - 1, n, an);
    out.set(n, n - 1, an);
  }
  return out;
}

BandedOperator assemble_lambda_m(int m, int N) {
  if (m == 0) throw DomainError("assemble_lambda_m: Lambda vanishes on mode 0");
  const int n_min = full_space_n_min(m);
  check_range(m, n_min, N, 1);
  BandedOperator out(m, n_min, N, 1, 1);
  for (int n = n_min; n <= N; ++n) {
    const double w = b_factor(n);
    if (n - 1 >= n_min) out.set(n - 1, n, w * recurrence_coeff(n, m));
    if (n + 1 <= N) out.set(n + 1, n, w * recurrence_coeff(n + 1, m));
  }
  return out;
}

BandedOperator assemble_L(int m, int N, const TwoJetParams& p, bool rescaled) {
  p.validate();
  const int n_min = full_space_n_min(m);
  if (N < std::max(2, std::abs(m)) + 2) throw DomainError("assemble_L: N must be at least max(2,|m|) + 2");
  const double diffusion = rescaled ? 1.0 : p.nu;
  const double amplitude = rescaled ? p.alpha() : p.a;
  BandedOperator out = assemble_A(m, n_min, N);
  out *= diffusion;
  if (m == 0) return out;
  BandedOperator transport = assemble_lambda_m(m, N);
  transport *= cplx(0.0, -amplitude * m);
  return out + transport;
}

std::vector<double> legendre_derivative_coeffs(int j) {
  if (j < 1) throw DomainError("legendre_derivative_coeffs: degree must be >= 1");
  std::vector<double> prev{1.0}, cur{0.0, 1.0};
  for (int k = 1; k < j; ++k) {
    std::vector<double> next(k + 2, 0.0);
    for (int i = 0; i <= k; ++i) next[i + 1] += (2.0 * k + 1.0) * cur[i] / (k + 1.0);
    for (int i = 0; i < k; ++i) next[i] -= k * prev[i] / (k + 1.0);
    prev = std::move(cur);
    cur = std::move(next);
  }
  std::vector<double> d(j, 0.0);
  for (int i = 1; i <= j; ++i) d[i - 1] = i * cur[i];
  return d;
}

// The multiplier is built on [n_min, N + n_jet] so that every path of length
// <= n_jet - 1 between retained degrees survives, then truncated.
BandedOperator assemble_general_jet(int n_jet, int m, int N, const TwoJetParams& p) {
  if (n_jet < 1) throw DomainError("assemble_general_jet: n_jet must be >= 1");
  if (m == 0) throw DomainError("assemble_general_jet: m must be nonzero");
  p.validate();
  const int n_min = full_space_n_min(m);
  check_range(m, n_min, N, 1);
  if (N - n_min < n_jet - 1) throw DomainError("assemble_general_jet: truncation narrower than the band");

  const int ext = N + n_jet;
  const auto c = legendre_derivative_coeffs(n_jet);
  const BandedOperator mc = assemble_cos_multiplier(m, n_min, ext);
  BandedOperator poly = identity_operator(m, n_min, ext, c.back());
  for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) poly = poly * mc + identity_operator(m, n_min, ext, c[k]);

  const double lj = static_cast<double>(eigenvalue_lambda(n_jet));
  BandedOperator scale(m, n_min, ext, 0, 0);
  for (int n = n_min; n <= ext; ++n) scale.set(n, n, 1.0 - lj / static_cast<double>(eigenvalue_lambda(n)));

  const double coef = p.a / lj * std::sqrt((2.0 * n_jet + 1.0) / (4.0 * std::numbers::pi));
  BandedOperator transport = (poly * scale).restricted(n_min, N);
  transport = transport.widened(n_jet - 1, n_jet - 1);
  transport *= cplx(0.0, -coef * m);

  BandedOperator out = assemble_A(m, n_min, N);
  out *= p.nu;
  return out + transport;
}

SpectralVector project_Q(const SpectralVector& v) {
  SpectralVector out = v;
  const int am = std::abs(v.m);
  if ((am == 1 || am == 2) && v.has(2)) out.at(2) = 0.0;
  return out;
}

}  // namespace twojet
