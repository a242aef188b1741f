#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "twojet/types.hpp"

namespace twojet {

/// Leading constant of the sectoral function: Y~_{|m|}^m(s) = C_m (1 - s^2)^{|m|/2}.
double leading_constant_Cm(int m);

/// C_{m,mu} = 32 (6 mu)^2 / (1 - mu^2) * ((|m| + 1) / (pi C_m^2 (1 - mu^2)^{|m|}) + 1), 0 < |mu| < 1.
double constant_Cmu(int m, double mu);

enum class Regime { nonreal, outside_unit, inside_unit };
std::string regime_name(Regime r);

struct ExclusionCertificate {
  int m = 0;
  cplx mu;
  Regime regime = Regime::nonreal;
  std::optional<double> C;       // C_{m,mu}, inside_unit only
  std::optional<int> N_cert;     // minimal N with lambda_N > 4 C
  bool valid = false;
};

/// Classifies a candidate eigenvalue mu of Lambda_m and, for real 0 < |mu| < 1,
/// produces the tail cutoff N_cert.  N_cert is also kept above the first
/// degree max(2, |m|) of X_m and at least 3 so the weight 1 - 6/lambda_n is
/// positive throughout the tail.
ExclusionCertificate exclusion_certificate(int m, cplx mu);

/// Y~_n = (mu - s) sum_k alphas[k - |m|] Y~_k + beta Y~_{|m|}, k in [|m|, n-1].
struct ReductionCoeffs {
  int m = 0;
  double mu = 0.0;
  int n = 0;
  std::vector<double> alphas;
  double beta = 0.0;
};
ReductionCoeffs reduction_coefficients(int m, double mu, int n);

/// Pointwise residual of the reduction identity, maximized over samples of theta in (0, pi).
double reduction_identity_residual(const ReductionCoeffs& rc, int samples = 201);

struct OracleResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
};

/// Weighted Hardy inequality around theta_mu = arccos(mu):
///   int_{theta1}^{theta2} |(g(theta) - g(theta_mu)) / (mu - cos theta)|^2 dtheta
///     <= 16 / (pi sin^2 theta_mu) ||grad u||^2,   g = U sqrt(sin theta),
/// for u = U(theta) e^{i m phi}.  U and U' are supplied as callables; the
/// gradient norm is integrated with the same rule.
OracleResult hardy_oracle(int m, double mu, const std::function<cplx(double)>& U,
                          const std::function<cplx(double)>& dU, double theta1, double theta2, int nodes = 400);

/// Same, with U given by spectral coefficients; ||grad u||^2 = sum lambda_n |c_n|^2.
OracleResult hardy_oracle(const SpectralVector& u, double mu, double theta1, double theta2, int nodes = 400);

/// ||u||_inf^2 <= (1 / (pi |m|)) ||(-Delta)^{1/2} u||^2 on a uniform theta grid.
OracleResult linf_oracle(const SpectralVector& u, int grid_points = 2001);

}  // namespace twojet
