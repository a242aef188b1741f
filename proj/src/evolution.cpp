#include "twojet/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "twojet/error.hpp"
#include "twojet/harmonics.hpp"
#include "twojet/linalg.hpp"
#include "twojet/operators.hpp"

namespace twojet {

SpectralVector evolve_mode(const BandedOperator& op, const SpectralVector& v0, double t) {
  if (v0.m != op.m() || v0.n_min != op.n_min() || v0.n_max() != op.n_max())
    throw DomainError("evolve_mode: vector and operator live on different modes or ranges");
  if (!(t >= 0.0)) throw DomainError("evolve_mode: t must be nonnegative");
  return {v0.m, v0.n_min, CVector(matrix_exponential(op.to_dense(), t) * v0.coeffs)};
}

ModeSet two_jet_equilibrium(const ModeSet& omega0, const TwoJetParams& p) {
  p.validate();
  ModeSet out;
  out.reserve(omega0.size());
  for (const auto& v : omega0) {
    SpectralVector w(v.m, v.n_min, CVector::Zero(v.coeffs.size()));
    if (std::abs(v.m) <= 1 && v.has(1)) {
      const cplx c = v.at(1);
      w.at(1) = c;
      if (v.m != 0) {
        if (!v.has(2)) throw DomainError("two_jet_equilibrium: mode +-1 needs degree 2 in range");
        w.at(2) = c * p.alpha() * cplx(0.0, v.m / (2.0 * std::sqrt(5.0)));
      }
    }
    out.push_back(std::move(w));
  }
  return out;
}

cplx one_jet_rate(int n, int m, const TwoJetParams& p) {
  const double lambda = static_cast<double>(eigenvalue_lambda(n));
  const double a1 = p.a / 4.0 * std::sqrt(3.0 / std::numbers::pi);
  return {p.nu * (lambda - 2.0), a1 * m * (1.0 - 2.0 / lambda)};
}

ModeSet one_jet_closed_form(const ModeSet& omega0, const TwoJetParams& p, double t) {
  p.validate();
  if (!(t >= 0.0)) throw DomainError("one_jet_closed_form: t must be nonnegative");
  ModeSet out = omega0;
  for (auto& v : out)
    for (int n = v.n_min; n <= v.n_max(); ++n) v.at(n) *= std::exp(-one_jet_rate(n, v.m, p) * t);
  return out;
}

Evolver::Evolver(const TwoJetParams& p, int N) : p_(p), N_(N) { p_.validate(); }

const CMatrix& Evolver::propagator(int m, double t) {
  const auto key = std::make_pair(m, t);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  const CMatrix L = assemble_L(m, N_, p_).to_dense();
  return cache_.emplace(key, matrix_exponential(L, t)).first->second;
}

const CMatrix& Evolver::shifted_x_propagator(int m, double t) {
  const auto key = std::make_pair(m, t);
  auto it = shifted_cache_.find(key);
  if (it != shifted_cache_.end()) return it->second;
  const auto r = subspace_range(Space::X, m, N_);
  BandedOperator L = assemble_L(m, N_, p_).restricted(r.lo, r.hi);
  L = L + identity_operator(m, r.lo, r.hi, 4.0 * p_.nu);
  return shifted_cache_.emplace(key, matrix_exponential(L.to_dense(), t)).first->second;
}

SpectralVector Evolver::evolve(const SpectralVector& v0, double t) {
  if (v0.n_min != full_space_n_min(v0.m) || v0.n_max() != N_)
    throw DomainError("Evolver::evolve: vector must span [max(1,|m|), N]");
  return {v0.m, v0.n_min, CVector(propagator(v0.m, t) * v0.coeffs)};
}

ModeSet Evolver::evolve(const ModeSet& omega0, double t) {
  ModeSet out;
  out.reserve(omega0.size());
  for (const auto& v : omega0) out.push_back(evolve(v, t));
  return out;
}

double degree_tail_norm(const ModeSet& u, int n_lo) {
  double acc = 0.0;
  for (const auto& v : u)
    for (int n = std::max(n_lo, v.n_min); n <= v.n_max(); ++n) acc += std::norm(v.at(n));
  return std::sqrt(acc);
}

namespace {

double degree_block_norm(const ModeSet& u, int n) {
  double acc = 0.0;
  for (const auto& v : u) acc += std::norm(v.at(n));
  return std::sqrt(acc);
}

}  // namespace

StabilityReport stability_diagnostics(const EvolutionScenario& scenario) {
  Evolver evolver(scenario.params, scenario.N);
  return stability_diagnostics(scenario, evolver);
}

StabilityReport stability_diagnostics(const EvolutionScenario& scenario, Evolver& evolver) {
  const auto& p = scenario.params;
  if (evolver.truncation() != scenario.N || evolver.params().nu != p.nu || evolver.params().a != p.a)
    throw DomainError("stability_diagnostics: evolver built for a different scenario");
  const int N = scenario.N;

  StabilityReport report;
  const ModeSet omega_eq = two_jet_equilibrium(scenario.omega0, p);
  const double tail0 = degree_tail_norm(scenario.omega0, 3);
  double total = 0.0, top = 0.0;
  cplx c20_initial{};
  for (const auto& v : scenario.omega0) {
    total += v.coeffs.squaredNorm();
    for (int n = std::max(v.n_min, N - 3); n <= v.n_max(); ++n) top += std::norm(v.at(n));
    if (v.m == 0) c20_initial = v.at(2);
  }
  report.tail_warning = total > 0.0 && std::sqrt(top) > 1e-8 * std::sqrt(total);

  for (double t : scenario.times) {
    ModeSet tilde = evolver.evolve(scenario.omega0, t);
    for (std::size_t i = 0; i < tilde.size(); ++i) tilde[i].coeffs -= omega_eq[i].coeffs;

    StabilityRow row;
    row.t = t;
    row.deg1_norm = degree_block_norm(tilde, 1);
    row.tail_norm = degree_tail_norm(tilde, 3);
    row.tail_bound = std::exp(-10.0 * p.nu * t) * tail0;
    row.tail_ratio = row.tail_bound > 0.0 ? row.tail_norm / row.tail_bound
                                          : (row.tail_norm > 0.0 ? INFINITY : 0.0);
    for (const auto& v : tilde)
      if (v.m == 0) row.c20_err = std::abs(v.at(2) - std::exp(-4.0 * p.nu * t) * c20_initial);
    // exp(4 nu t) c~_2^m(t) = [exp(t (L + 4 nu)) (omega0 - Omega0)]_2; the
    // difference has no degree-1 part, so the X_m block carries it.
    for (std::size_t i = 0; i < scenario.omega0.size(); ++i) {
      const auto& v = scenario.omega0[i];
      const int slot = v.m == -2 ? 0 : v.m == -1 ? 1 : v.m == 1 ? 2 : v.m == 2 ? 3 : -1;
      if (slot < 0) continue;
      const int off = 2 - v.n_min;
      const CVector diff = (v.coeffs - omega_eq[i].coeffs).tail(v.coeffs.size() - off);
      const CMatrix& S = evolver.shifted_x_propagator(v.m, t);
      row.c2m_scaled[slot] = std::abs((S.row(0) * diff)(0));
    }
    report.max_deg1_norm = std::max(report.max_deg1_norm, row.deg1_norm);
    report.max_tail_ratio = std::max(report.max_tail_ratio, row.tail_ratio);
    report.max_c20_err = std::max(report.max_c20_err, row.c20_err);
    for (double c : row.c2m_scaled) report.sup_c2m_scaled = std::max(report.sup_c2m_scaled, c);
    report.rows.push_back(row);
    report.trajectory.push_back(std::move(tilde));
  }
  return report;
}

}  // namespace twojet
