#pragma once

#include <vector>

#include "twojet/banded.hpp"
#include "twojet/linalg.hpp"
#include "twojet/types.hpp"

namespace twojet {

/// Rescaled generator A - i alpha m Lambda_m restricted to the degrees of
/// X_m (x_generator) or Y_m (y_generator).  On Y_m this is Q L_alpha.
BandedOperator x_generator(int m, int N, double alpha);
BandedOperator y_generator(int m, int N, double alpha);

/// Lambda_m restricted to the degrees of Y_m.
BandedOperator lambda_m_on_Y(int m, int N);

/// W^{1/2} op W^{-1/2} with W = diag(1 - 6 / lambda_n); op must start at n >= 3.
BandedOperator weighted_similarity(const BandedOperator& op);

/// ||(zeta I - op)^{-1}|| = 1 / sigma_min(zeta I - op).
double resolvent_norm(const BandedOperator& op, cplx zeta);

struct LambdaGrid {
  int points = 2001;
  double cap_scale = 1.5;    // lambda_cap = cap_scale * alpha * m_max + cap_offset
  double cap_offset = 20.0;
  int refine_peaks = 5;
  double refine_tol = 1e-6;
};

/// sup over real lambda of ||(i lambda - op)^{-1}||, estimated on the grid
/// [-cap, cap] and refined by golden-section search around the largest grid
/// values.
struct ResolventProfile {
  std::vector<double> lambdas;
  std::vector<double> norms;
  double peak = 0.0;
  double peak_lambda = 0.0;
};
ResolventProfile imaginary_axis_profile(const BandedOperator& op, double cap, const LambdaGrid& grid);

struct PseudospectrumReport {
  double alpha = 0.0;
  int N = 0;
  int m_max = 0;
  std::vector<ResolventProfile> modes;  // m = 1 .. m_max at truncation N
  std::vector<double> phi_per_mode;     // at N
  std::vector<double> phi_per_mode_2N;
  double phi = 0.0;
  double phi_2N = 0.0;
  int argmax_m = 0;
  double argmax_lambda = 0.0;
  bool converged = false;  // |phi_2N - phi| / phi_2N < 1%
};

/// Phi = max over 1 <= |m| <= m_max and lambda of ||(i lambda - Q L_alpha)^{-1}||.
/// Mode -m gives the same contribution as +m (complex conjugation), so only
/// m > 0 is evaluated.
PseudospectrumReport pseudospectral_bound(int m_max, int N, double alpha, const LambdaGrid& grid = {});
PseudospectrumReport pseudospectral_bound(int m_max, int N, const TwoJetParams& p, const LambdaGrid& grid = {});

/// ||Q exp(t L_alpha)|| on X_m, maximized over 1 <= m <= m_max.
double semigroup_norm(int m_max, int N, double alpha, double t);
double semigroup_norm_mode(int m, int N, double alpha, double t);

/// ||exp(t Q L_alpha)|| in the weighted inner product (u, W v) on Y_m.
double weighted_semigroup_norm(int m, int N, double alpha, double t);

struct AccretivityReport {
  int m = 0;
  bool ok = false;
  double symmetry_residual = 0.0;  // max |W Lambda - (W Lambda)^T|
  double hermitian_residual = 0.0;  // max |Herm(W (-M)) - W (-A)|
  double min_eig = 0.0;            // smallest eigenvalue of W (-A) on Y_m
  double psi_prime = 0.0;          // weighted pseudospectral bound, inf_lambda sigma_min
};
AccretivityReport weighted_accretivity_check(int m, int N, double alpha, const LambdaGrid& grid = {});

struct EDScanRow {
  double alpha = 0.0;
  double phi = 0.0;
  double sup_norm = 0.0;   // sup over sampled t >= tau of ||Q exp(t L_alpha)||
  double psi_prime = 0.0;  // min over modes
  double wei_bound = 0.0;  // exp(-tau psi' + pi/2)
};
std::vector<EDScanRow> ed_scan(const std::vector<double>& alphas, double tau, const std::vector<double>& times,
                               int m_max, int N, const LambdaGrid& grid = {});

struct SemigroupSample {
  double alpha = 0.0;
  double t = 0.0;
  double semigroup_norm = 0.0;  // Euclidean, max over modes
  double weighted_norm = 0.0;   // weighted, max over modes
  double wei_bound = 0.0;       // exp(-t psi' + pi/2) with psi' minimal over modes
};
std::vector<SemigroupSample> semigroup_samples(const std::vector<double>& alphas, const std::vector<double>& times,
                                               int m_max, int N, const LambdaGrid& grid = {});

struct DecompositionResidual {
  double q_line = 0.0;
  double p_line = 0.0;
  double max() const { return q_line > p_line ? q_line : p_line; }
};

/// Checks Q (zeta - L)^{-1} f = (zeta - Q L)^{-1} Q f and the complementary
/// P-line on X_m for |m| in {1, 2} with random f.  Returns max relative residuals.
DecompositionResidual resolvent_decomposition_check(int m, int N, double alpha, const std::vector<cplx>& zetas,
                                                    unsigned seed = 1, bool f_in_Y = false);

}  // namespace twojet
