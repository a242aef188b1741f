#include "twojet/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <span>
#include <utility>

#include "twojet/error.hpp"
#include "twojet/harmonics.hpp"

namespace twojet {

double leading_constant_Cm(int m) {
  if (m == 0) throw DomainError("leading_constant_Cm: m must be nonzero");
  const int am = std::abs(m);
  // (2|m|-1)!! / sqrt((2|m|)!) accumulated as a product to avoid overflow.
  double ratio = 1.0;
  for (int k = 1; k <= am; ++k) ratio *= (2.0 * k - 1.0) / std::sqrt((2.0 * k - 1.0) * (2.0 * k));
  double c = std::sqrt((2.0 * am + 1.0) / (4.0 * std::numbers::pi)) * ratio;
  if (am % 2 == 1) c = -c;
  if (m < 0 && am % 2 == 1) c = -c;
  return c;
}

double constant_Cmu(int m, double mu) {
  if (m == 0) throw DomainError("constant_Cmu: m must be nonzero");
  if (!(std::abs(mu) > 0.0 && std::abs(mu) < 1.0)) throw DomainError("constant_Cmu: need 0 < |mu| < 1");
  const int am = std::abs(m);
  const double one_minus = 1.0 - mu * mu;
  const double cm = leading_constant_Cm(m);
  const double bracket = (am + 1.0) / (std::numbers::pi * cm * cm * std::pow(one_minus, am)) + 1.0;
  return 32.0 * (6.0 * mu) * (6.0 * mu) / one_minus * bracket;
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::nonreal:
      return "nonreal";
    case Regime::outside_unit:
      return "|mu|>=1";
    case Regime::inside_unit:
      return "0<|mu|<1";
  }
  return "unknown";
}

ExclusionCertificate exclusion_certificate(int m, cplx mu) {
  if (m == 0) throw DomainError("exclusion_certificate: m must be nonzero");
  if (mu == cplx{}) throw DomainError("exclusion_certificate: mu = 0 lies in the kernel and cannot be excluded");
  if (!std::isfinite(mu.real()) || !std::isfinite(mu.imag())) throw DomainError("exclusion_certificate: non-finite mu");
  ExclusionCertificate cert;
  cert.m = m;
  cert.mu = mu;
  cert.valid = true;
  if (mu.imag() != 0.0) {
    cert.regime = Regime::nonreal;
    return cert;
  }
  const double x = mu.real();
  if (std::abs(x) >= 1.0) {
    cert.regime = Regime::outside_unit;
    return cert;
  }
  cert.regime = Regime::inside_unit;
  const double C = constant_Cmu(m, x);
  cert.C = C;
  int n = std::max(3, std::max(2, std::abs(m)) + 1);
  while (static_cast<double>(eigenvalue_lambda(n)) <= 4.0 * C) ++n;
  cert.N_cert = n;
  return cert;
}

// Y_n = (mu - s) P_n + beta_n Y_{|m|} with P_{|m|} = 0, beta_{|m|} = 1 and
// the upward recurrence rewritten around mu:
//   P_n    = (-e_{n-1} + mu P_{n-1} - a_{n-1} P_{n-2}) / a_n
//   beta_n = (mu beta_{n-1} - a_{n-1} beta_{n-2}) / a_n
ReductionCoeffs reduction_coefficients(int m, double mu, int n) {
  const int am = std::abs(m);
  if (n < am + 1) throw DomainError("reduction_coefficients: need n >= |m| + 1");
  if (!(std::abs(mu) > 0.0 && std::abs(mu) < 1.0)) throw DomainError("reduction_coefficients: need 0 < |mu| < 1");
  const int len = n - am;  // coefficients on degrees |m| .. n-1
  std::vector<double> p_prev(len, 0.0), p_cur(len, 0.0);
  double b_prev = 0.0, b_cur = 1.0;
  double a_prev = 0.0;  // a_{|m|} = 0
  for (int k = am + 1; k <= n; ++k) {
    const double ak = recurrence_coeff(k, m);
    std::vector<double> p_next(len, 0.0);
    for (int i = 0; i < len; ++i) p_next[i] = (mu * p_cur[i] - a_prev * p_prev[i]) / ak;
    p_next[k - 1 - am] -= 1.0 / ak;
    const double b_next = (mu * b_cur - a_prev * b_prev) / ak;
    p_prev = std::move(p_cur);
    p_cur = std::move(p_next);
    b_prev = b_cur;
    b_cur = b_next;
    a_prev = ak;
  }
  return {m, mu, n, std::move(p_cur), b_cur};
}

double reduction_identity_residual(const ReductionCoeffs& rc, int samples) {
  const int am = std::abs(rc.m);
  std::vector<double> s(samples);
  for (int k = 0; k < samples; ++k) s[k] = std::cos(std::numbers::pi * k / (samples - 1));
  const auto table = latitude_table(rc.m, rc.n, s);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    double poly = 0.0;
    for (int j = am; j < rc.n; ++j) poly += rc.alphas[j - am] * table[(j - am) * samples + k];
    const double rhs = (rc.mu - s[k]) * poly + rc.beta * table[k];
    worst = std::max(worst, std::abs(table[(rc.n - am) * samples + k] - rhs));
  }
  return worst;
}

namespace {

// Integral of f over [lo, hi] by Gauss-Legendre.
template <class F>
double integrate(F&& f, double lo, double hi, int nodes) {
  if (hi <= lo) return 0.0;
  const Quadrature q = gauss_quadrature(nodes, lo, hi);
  double acc = 0.0;
  for (int k = 0; k < nodes; ++k) acc += q.weights[k] * f(q.nodes[k]);
  return acc;
}

double hardy_lhs(double mu, const std::function<cplx(double)>& U, const std::function<cplx(double)>& dU,
                 double theta1, double theta2, int nodes) {
  const double tm = std::acos(mu);
  const double stm = std::sin(tm);
  const cplx g_mu = U(tm) * std::sqrt(stm);
  const cplx dg_mu = dU(tm) * std::sqrt(stm) + U(tm) * std::cos(tm) / (2.0 * std::sqrt(stm));
  const cplx limit = dg_mu / stm;
  auto integrand = [&](double th) {
    if (std::abs(th - tm) < 1e-6) return std::norm(limit);
    const cplx g = U(th) * std::sqrt(std::sin(th));
    return std::norm((g - g_mu) / (mu - std::cos(th)));
  };
  return integrate(integrand, theta1, std::min(tm, theta2), nodes) +
         integrate(integrand, std::max(tm, theta1), theta2, nodes);
}

void check_hardy_args(int m, double mu, double theta1, double theta2) {
  if (m == 0) throw DomainError("hardy_oracle: m must be nonzero");
  if (!(std::abs(mu) < 1.0)) throw DomainError("hardy_oracle: need |mu| < 1");
  const double tm = std::acos(mu);
  if (!(theta1 >= 0.0 && theta2 <= std::numbers::pi && theta1 <= tm && tm <= theta2))
    throw DomainError("hardy_oracle: need 0 <= theta1 <= arccos(mu) <= theta2 <= pi");
}

OracleResult verdict(double lhs, double rhs) {
  if (!std::isfinite(lhs) || !std::isfinite(rhs)) throw ConvergenceError("oracle quadrature produced a non-finite value");
  return {lhs, rhs, lhs <= rhs * (1.0 + 1e-8)};
}

}  // namespace

OracleResult hardy_oracle(int m, double mu, const std::function<cplx(double)>& U, const std::function<cplx(double)>& dU,
                          double theta1, double theta2, int nodes) {
  check_hardy_args(m, mu, theta1, theta2);
  const double lhs = hardy_lhs(mu, U, dU, theta1, theta2, nodes);
  const double mm = static_cast<double>(m) * m;
  auto energy = [&](double th) {
    const double st = std::sin(th);
    return (std::norm(dU(th)) + mm / (st * st) * std::norm(U(th))) * st;
  };
  const double grad2 = 2.0 * std::numbers::pi * integrate(energy, 0.0, std::numbers::pi, 2 * nodes);
  const double stm2 = 1.0 - mu * mu;
  return verdict(lhs, 16.0 / (std::numbers::pi * stm2) * grad2);
}

OracleResult hardy_oracle(const SpectralVector& u, double mu, double theta1, double theta2, int nodes) {
  check_hardy_args(u.m, mu, theta1, theta2);
  const int am = std::abs(u.m);
  if (u.n_min < am) throw DomainError("hardy_oracle: n_min < |m|");
  auto eval = [&](double th) -> std::pair<cplx, cplx> {
    const double s = std::cos(th);
    const double st = std::sin(th);
    const auto table = latitude_table(u.m, u.n_max() + 1, std::span<const double>(&s, 1));
    cplx val{}, der{};
    for (int n = u.n_min; n <= u.n_max(); ++n) {
      const double y = table[n - am];
      const double up = table[n + 1 - am];
      const double down = n - 1 >= am ? table[n - 1 - am] : 0.0;
      const double a_n = n > am ? recurrence_coeff(n, u.m) : 0.0;
      val += u.at(n) * y;
      der += u.at(n) * ((n * recurrence_coeff(n + 1, u.m) * up - (n + 1) * a_n * down) / st);
    }
    return {val, der};
  };
  auto U = [&](double th) { return eval(th).first; };
  auto dU = [&](double th) { return eval(th).second; };
  const double lhs = hardy_lhs(mu, U, dU, theta1, theta2, nodes);
  double grad2 = 0.0;
  for (int n = u.n_min; n <= u.n_max(); ++n) grad2 += static_cast<double>(eigenvalue_lambda(n)) * std::norm(u.at(n));
  return verdict(lhs, 16.0 / (std::numbers::pi * (1.0 - mu * mu)) * grad2);
}

OracleResult linf_oracle(const SpectralVector& u, int grid_points) {
  if (u.m == 0) throw DomainError("linf_oracle: m must be nonzero");
  const int am = std::abs(u.m);
  if (u.n_min < am) throw DomainError("linf_oracle: n_min < |m|");
  double rhs = 0.0;
  for (int n = u.n_min; n <= u.n_max(); ++n) rhs += static_cast<double>(eigenvalue_lambda(n)) * std::norm(u.at(n));
  rhs /= std::numbers::pi * am;
  if (u.coeffs.size() == 0) return verdict(0.0, rhs);

  std::vector<double> s(grid_points);
  for (int k = 0; k < grid_points; ++k) s[k] = std::cos(std::numbers::pi * k / (grid_points - 1));
  const auto table = latitude_table(u.m, u.n_max(), s);
  double lhs = 0.0;
  for (int k = 0; k < grid_points; ++k) {
    cplx v{};
    for (int n = u.n_min; n <= u.n_max(); ++n) v += u.at(n) * table[(n - am) * grid_points + k];
    lhs = std::max(lhs, std::norm(v));
  }
  return verdict(lhs, rhs);
}

}  // namespace twojet
