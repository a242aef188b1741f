#pragma once

#include <map>
#include <utility>
#include <vector>

#include "twojet/banded.hpp"
#include "twojet/types.hpp"

namespace twojet {

/// A field given mode by mode; at most one entry per m.
using ModeSet = std::vector<SpectralVector>;

/// exp(t op) v0.  v0 must share the operator's mode and degree range.
SpectralVector evolve_mode(const BandedOperator& op, const SpectralVector& v0, double t);

/// Kernel projection Omega_0 built from the degree-1 coefficients of omega0:
/// c_1^0 Y_1^0 + sum_{m=+-1} c_1^m (Y_1^m + alpha (i m / (2 sqrt 5)) Y_2^m).
/// The result has one vector per input mode, shaped like the input.
ModeSet two_jet_equilibrium(const ModeSet& omega0, const TwoJetParams& p);

/// sigma_{n,m} = nu (lambda_n - 2) + i a_1 m (1 - 2 / lambda_n), a_1 = (a/4) sqrt(3/pi).
cplx one_jet_rate(int n, int m, const TwoJetParams& p);

/// Coefficientwise multiplication by exp(-sigma_{n,m} t).
ModeSet one_jet_closed_form(const ModeSet& omega0, const TwoJetParams& p, double t);

/// Caches two-jet propagators exp(t L_m) per (m, t) at fixed parameters and truncation.
class Evolver {
 public:
  Evolver(const TwoJetParams& p, int N);

  const TwoJetParams& params() const { return p_; }
  int truncation() const { return N_; }

  const CMatrix& propagator(int m, double t);
  /// exp(t (L_m + 4 nu I)) on the degrees of X_m (|m| >= 1).  Carries
  /// exp(4 nu t) omega(t) without the cancellation of forming it from exp(t L).
  const CMatrix& shifted_x_propagator(int m, double t);
  SpectralVector evolve(const SpectralVector& v0, double t);
  ModeSet evolve(const ModeSet& omega0, double t);

 private:
  TwoJetParams p_;
  int N_;
  std::map<std::pair<int, double>, CMatrix> cache_;
  std::map<std::pair<int, double>, CMatrix> shifted_cache_;
};

struct EvolutionScenario {
  TwoJetParams params;
  int N = 64;
  ModeSet omega0;
  std::vector<double> times;
};

struct StabilityRow {
  double t = 0.0;
  double deg1_norm = 0.0;    // ||deg-1 block of omega~(t)||
  double tail_norm = 0.0;    // ||omega~_{>=3}(t)||
  double tail_bound = 0.0;   // exp(-10 nu t) ||omega_{0,>=3}||
  double tail_ratio = 0.0;   // tail_norm / tail_bound
  double c20_err = 0.0;      // |c_2^0(t) - exp(-4 nu t) c_2^0(0)|
  double c2m_scaled[4] = {};  // exp(4 nu t) |c_2^m(t)|, m = -2, -1, 1, 2
};

struct StabilityReport {
  std::vector<StabilityRow> rows;
  std::vector<ModeSet> trajectory;  // omega~(t) per row
  double max_deg1_norm = 0.0;
  double max_tail_ratio = 0.0;
  double max_c20_err = 0.0;
  double sup_c2m_scaled = 0.0;
  bool tail_warning = false;  // initial data carries > 1e-8 of its norm in the top 4 degrees
};

/// Evolves omega~(t) = exp(t L) omega0 - Omega_0 and measures it against the
/// decay estimates for the two-jet flow.
StabilityReport stability_diagnostics(const EvolutionScenario& scenario);
StabilityReport stability_diagnostics(const EvolutionScenario& scenario, Evolver& evolver);

/// Norm of the coefficients with degree >= n_lo, over all modes.
double degree_tail_norm(const ModeSet& u, int n_lo);

}  // namespace twojet
