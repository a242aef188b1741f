#include "twojet/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>

#include "twojet/error.hpp"
#include "twojet/harmonics.hpp"
#include "twojet/operators.hpp"
#include "twojet/parallel.hpp"

namespace twojet {
namespace {

double b_factor(int n) { return 1.0 - 6.0 / static_cast<double>(eigenvalue_lambda(n)); }

BandedOperator generator_on(Space space, int m, int N, double alpha) {
  if (m == 0) throw DomainError("generator: mode 0 is not part of X");
  const auto r = subspace_range(space, m, N);
  return assemble_L(m, N, TwoJetParams{1.0, alpha}, true).restricted(r.lo, r.hi);
}

double golden_max(const BandedOperator& op, double lo, double hi, double tol, double& arg) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  auto f = [&](double x) { return resolvent_norm(op, cplx(0.0, x)); };
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    }
  }
  if (f1 >= f2) {
    arg = x1;
    return f1;
  }
  arg = x2;
  return f2;
}

double lambda_cap(double alpha, int m_max, const LambdaGrid& grid) {
  return grid.cap_scale * std::abs(alpha) * m_max + grid.cap_offset;
}

}  // namespace

BandedOperator x_generator(int m, int N, double alpha) { return generator_on(Space::X, m, N, alpha); }
BandedOperator y_generator(int m, int N, double alpha) { return generator_on(Space::Y, m, N, alpha); }

BandedOperator lambda_m_on_Y(int m, int N) {
  const auto r = subspace_range(Space::Y, m, N);
  return assemble_lambda_m(m, N).restricted(r.lo, r.hi);
}

BandedOperator weighted_similarity(const BandedOperator& op) {
  if (op.n_min() < 3) throw DomainError("weighted_similarity: weight vanishes or is negative below degree 3");
  BandedOperator out = op;
  for (int r = op.n_min(); r <= op.n_max(); ++r)
    for (int c = std::max(op.n_min(), r - op.kl()); c <= std::min(op.n_max(), r + op.ku()); ++c)
      out.set(r, c, op.entry(r, c) * std::sqrt(b_factor(r) / b_factor(c)));
  return out;
}

double resolvent_norm(const BandedOperator& op, cplx zeta) { return 1.0 / sigma_min(op, zeta); }

ResolventProfile imaginary_axis_profile(const BandedOperator& op, double cap, const LambdaGrid& grid) {
  if (grid.points < 2) throw DomainError("imaginary_axis_profile: grid needs at least two points");
  ResolventProfile prof;
  const int P = grid.points;
  prof.lambdas.resize(P);
  prof.norms.resize(P);
  for (int i = 0; i < P; ++i) prof.lambdas[i] = -cap + 2.0 * cap * i / (P - 1);
  parallel_for(P, [&](std::size_t i) { prof.norms[i] = resolvent_norm(op, cplx(0.0, prof.lambdas[i])); });

  std::vector<int> peaks;
  for (int i = 0; i < P; ++i) {
    const bool left = i == 0 || prof.norms[i] >= prof.norms[i - 1];
    const bool right = i == P - 1 || prof.norms[i] >= prof.norms[i + 1];
    if (left && right) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(), [&](int a, int b) {
    return prof.norms[a] != prof.norms[b] ? prof.norms[a] > prof.norms[b] : a < b;
  });
  if (static_cast<int>(peaks.size()) > grid.refine_peaks) peaks.resize(grid.refine_peaks);

  const auto best = std::max_element(prof.norms.begin(), prof.norms.end());
  prof.peak = *best;
  prof.peak_lambda = prof.lambdas[best - prof.norms.begin()];
  std::vector<double> refined(peaks.size()), refined_arg(peaks.size());
  parallel_for(peaks.size(), [&](std::size_t k) {
    const int i = peaks[k];
    const double lo = prof.lambdas[std::max(0, i - 1)];
    const double hi = prof.lambdas[std::min(P - 1, i + 1)];
    refined[k] = golden_max(op, lo, hi, grid.refine_tol, refined_arg[k]);
  });
  for (std::size_t k = 0; k < peaks.size(); ++k)
    if (refined[k] > prof.peak) {
      prof.peak = refined[k];
      prof.peak_lambda = refined_arg[k];
    }
  return prof;
}

PseudospectrumReport pseudospectral_bound(int m_max, int N, double alpha, const LambdaGrid& grid) {
  if (m_max < 2) throw DomainError("pseudospectral_bound: m_max must be >= 2");
  PseudospectrumReport rep;
  rep.alpha = alpha;
  rep.N = N;
  rep.m_max = m_max;
  const double cap = lambda_cap(alpha, m_max, grid);
  for (int m = 1; m <= m_max; ++m) {
    ResolventProfile prof = imaginary_axis_profile(y_generator(m, N, alpha), cap, grid);
    const double fine = imaginary_axis_profile(y_generator(m, 2 * N, alpha), cap, grid).peak;
    rep.phi_per_mode.push_back(prof.peak);
    rep.phi_per_mode_2N.push_back(fine);
    if (prof.peak > rep.phi) {
      rep.phi = prof.peak;
      rep.argmax_m = m;
      rep.argmax_lambda = prof.peak_lambda;
    }
    rep.phi_2N = std::max(rep.phi_2N, fine);
    rep.modes.push_back(std::move(prof));
  }
  rep.converged = std::abs(rep.phi_2N - rep.phi) < 0.01 * rep.phi_2N;
  return rep;
}

PseudospectrumReport pseudospectral_bound(int m_max, int N, const TwoJetParams& p, const LambdaGrid& grid) {
  p.validate();
  return pseudospectral_bound(m_max, N, p.alpha(), grid);
}

double semigroup_norm_mode(int m, int N, double alpha, double t) {
  const BandedOperator gen = x_generator(m, N, alpha);
  const CMatrix E = matrix_exponential(gen.to_dense(), t);
  const int skip = subspace_range(Space::Y, m, N).lo - gen.n_min();
  return spectral_norm(E.bottomRows(E.rows() - skip));
}

double semigroup_norm(int m_max, int N, double alpha, double t) {
  double out = 0.0;
  for (int m = 1; m <= m_max; ++m) out = std::max(out, semigroup_norm_mode(m, N, alpha, t));
  return out;
}

double weighted_semigroup_norm(int m, int N, double alpha, double t) {
  const BandedOperator gen = weighted_similarity(y_generator(m, N, alpha));
  return spectral_norm(matrix_exponential(gen.to_dense(), t));
}

AccretivityReport weighted_accretivity_check(int m, int N, double alpha, const LambdaGrid& grid) {
  if (m == 0) throw DomainError("weighted_accretivity_check: m must be nonzero");
  AccretivityReport rep;
  rep.m = m;
  const auto r = subspace_range(Space::Y, m, N);
  const int d = r.hi - r.lo + 1;
  Eigen::VectorXd w(d);
  for (int i = 0; i < d; ++i) w[i] = b_factor(r.lo + i);

  const CMatrix Lam = lambda_m_on_Y(m, N).to_dense();
  const CMatrix WL = w.asDiagonal() * (static_cast<double>(m) * Lam);
  rep.symmetry_residual = (WL - WL.transpose()).cwiseAbs().maxCoeff();

  const CMatrix M = y_generator(m, N, alpha).to_dense();
  const CMatrix WnegM = -(w.asDiagonal() * M);
  const CMatrix herm = 0.5 * (WnegM + WnegM.adjoint());
  const CMatrix WnegA = -(w.asDiagonal() * assemble_A(m, r.lo, r.hi).to_dense());
  rep.hermitian_residual = (herm - WnegA).cwiseAbs().maxCoeff();
  rep.min_eig = WnegA.diagonal().real().minCoeff();

  const double scale = std::max(1.0, WL.cwiseAbs().maxCoeff());
  const double herm_scale = std::max(1.0, WnegM.cwiseAbs().maxCoeff());
  rep.ok = rep.symmetry_residual <= 1e-14 * scale && rep.hermitian_residual <= 1e-14 * herm_scale && rep.min_eig > 0.0;

  const double cap = lambda_cap(alpha, std::abs(m), grid);
  rep.psi_prime = 1.0 / imaginary_axis_profile(weighted_similarity(y_generator(m, N, alpha)), cap, grid).peak;
  return rep;
}

std::vector<EDScanRow> ed_scan(const std::vector<double>& alphas, double tau, const std::vector<double>& times,
                               int m_max, int N, const LambdaGrid& grid) {
  if (!(tau > 0.0)) throw DomainError("ed_scan: tau must be positive");
  std::vector<EDScanRow> rows;
  for (double alpha : alphas) {
    EDScanRow row;
    row.alpha = alpha;
    const double cap = lambda_cap(alpha, m_max, grid);
    row.psi_prime = INFINITY;
    for (int m = 1; m <= m_max; ++m) {
      row.phi = std::max(row.phi, imaginary_axis_profile(y_generator(m, N, alpha), cap, grid).peak);
      row.psi_prime = std::min(row.psi_prime, weighted_accretivity_check(m, N, alpha, grid).psi_prime);
    }
    for (double t : times)
      if (t >= tau) row.sup_norm = std::max(row.sup_norm, semigroup_norm(m_max, N, alpha, t));
    row.wei_bound = std::exp(-tau * row.psi_prime + std::numbers::pi / 2.0);
    rows.push_back(row);
  }
  return rows;
}

std::vector<SemigroupSample> semigroup_samples(const std::vector<double>& alphas, const std::vector<double>& times,
                                               int m_max, int N, const LambdaGrid& grid) {
  std::vector<SemigroupSample> out;
  for (double alpha : alphas) {
    double psi = INFINITY;
    for (int m = 1; m <= m_max; ++m) psi = std::min(psi, weighted_accretivity_check(m, N, alpha, grid).psi_prime);
    for (double t : times) {
      SemigroupSample s;
      s.alpha = alpha;
      s.t = t;
      for (int m = 1; m <= m_max; ++m) {
        s.semigroup_norm = std::max(s.semigroup_norm, semigroup_norm_mode(m, N, alpha, t));
        s.weighted_norm = std::max(s.weighted_norm, weighted_semigroup_norm(m, N, alpha, t));
      }
      s.wei_bound = std::exp(-t * psi + std::numbers::pi / 2.0);
      out.push_back(s);
    }
  }
  return out;
}

DecompositionResidual resolvent_decomposition_check(int m, int N, double alpha, const std::vector<cplx>& zetas,
                                                    unsigned seed, bool f_in_Y) {
  const int am = std::abs(m);
  if (am != 1 && am != 2) throw DomainError("resolvent_decomposition_check: |m| must be 1 or 2");
  const BandedOperator gen = x_generator(m, N, alpha);
  const CMatrix M = gen.to_dense();
  const int d = gen.dim();  // index 0 is degree 2
  const CMatrix MY = M.bottomRightCorner(d - 1, d - 1);
  const BandedOperator lam = assemble_lambda_m(m, N);
  CVector lam_row(d - 1);
  for (int i = 0; i < d - 1; ++i) lam_row[i] = static_cast<double>(m) * lam.entry(2, 3 + i);
  const double PA = 2.0 - static_cast<double>(eigenvalue_lambda(2));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  CVector f(d);
  for (int i = 0; i < d; ++i) f[i] = {normal(rng), normal(rng)};
  if (f_in_Y) f[0] = 0.0;

  DecompositionResidual res;
  for (const cplx zeta : zetas) {
    const CMatrix I = CMatrix::Identity(d, d);
    const CVector full = (zeta * I - M).partialPivLu().solve(f);
    const CVector y = (zeta * CMatrix::Identity(d - 1, d - 1) - MY).partialPivLu().solve(f.tail(d - 1));
    res.q_line = std::max(res.q_line, (full.tail(d - 1) - y).norm() / std::max(y.norm(), 1e-300));
    const cplx p_rhs = (f[0] - cplx(0.0, alpha) * lam_row.dot(y)) / (zeta - PA);
    // lam_row.dot conjugates its left argument; lam_row is real.
    res.p_line = std::max(res.p_line, std::abs(full[0] - p_rhs) / std::max(std::abs(p_rhs), 1e-300));
  }
  return res;
}

}  // namespace twojet
