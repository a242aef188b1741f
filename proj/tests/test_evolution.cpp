#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "twojet/error.hpp"
#include "twojet/evolution.hpp"
#include "twojet/harmonics.hpp"
#include "twojet/operators.hpp"

using namespace twojet;
using std::numbers::pi;

namespace {

ModeSet random_field(std::mt19937_64& rng, int m_max, int N, int decay_from = 1000) {
  std::normal_distribution<double> g;
  ModeSet out;
  for (int m = -m_max; m <= m_max; ++m) {
    SpectralVector v(m, full_space_n_min(m), N);
    for (int n = v.n_min; n <= N; ++n) {
      const double damp = n > decay_from ? std::exp(-(n - decay_from)) : 1.0;
      v.at(n) = damp * cplx(g(rng), g(rng));
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_CASE("evolve_mode trivial cases") {
  const TwoJetParams p{0.3, 2.0};
  SpectralVector y20(0, 1, 10);
  y20.at(2) = 1.0;
  const auto L0 = assemble_L(0, 10, p);
  for (double t : {0.0, 0.5, 3.0}) {
    const auto v = evolve_mode(L0, y20, t);
    CHECK(std::abs(v.at(2) - std::exp(-4.0 * p.nu * t)) <= 1e-15);
  }
  SpectralVector v(1, 1, 10);
  v.coeffs.setRandom();
  CHECK((evolve_mode(assemble_L(1, 10, p), v, 0.0).coeffs - v.coeffs).norm() == 0.0);
  CHECK_THROWS_AS(evolve_mode(L0, v, 1.0), DomainError);
  CHECK_THROWS_AS(evolve_mode(assemble_L(1, 10, p), v, -1.0), DomainError);
}

TEST_CASE("Y_1^1 relaxes to its equilibrium pattern") {
  const TwoJetParams p{1.0, 3.0};
  SpectralVector y11(1, 1, 24);
  y11.at(1) = 1.0;
  const auto v = evolve_mode(assemble_L(1, 24, p), y11, 20.0);
  CHECK(std::abs(v.at(1) - 1.0) < 1e-12);
  CHECK(std::abs(v.at(2) - cplx(0.0, 3.0 / (2.0 * std::sqrt(5.0)))) < 1e-12);
  CHECK(v.coeffs.tail(20).norm() < 1e-12);
}

TEST_CASE("two_jet_equilibrium") {
  const TwoJetParams p{1.0, 2.0};
  ModeSet w{SpectralVector(1, 1, 8)};
  w[0].at(1) = 1.0;
  const auto eq = two_jet_equilibrium(w, p);
  CHECK(std::abs(eq[0].at(2) - cplx(0.0, 1.0 / std::sqrt(5.0))) < 1e-15);
  CHECK(eq[0].at(1) == cplx(1.0));

  std::mt19937_64 rng(17);
  auto field = random_field(rng, 3, 12);
  const auto e1 = two_jet_equilibrium(field, p);
  const auto e2 = two_jet_equilibrium(e1, p);
  for (std::size_t i = 0; i < e1.size(); ++i) CHECK((e1[i].coeffs - e2[i].coeffs).norm() <= 1e-14);
  for (auto& v : field)
    if (v.has(1)) v.at(1) = 0.0;
  for (const auto& v : two_jet_equilibrium(field, p)) CHECK(v.coeffs.norm() == 0.0);

  // The pattern lies in the kernel of the generator.
  for (const auto& v : e1) {
    const auto L = assemble_L(v.m, 12, p);
    CHECK(L.apply(v.coeffs).norm() < 1e-12);
  }
}

TEST_CASE("one-jet closed form") {
  TwoJetParams p{1.0, 4.0 * std::sqrt(pi / 3.0)};
  CHECK(std::abs(one_jet_rate(2, 1, p) - cplx(4.0, 2.0 / 3.0)) < 1e-14);
  CHECK(one_jet_rate(1, 3, p) == cplx(0.0, 0.0));
  ModeSet w{SpectralVector(1, 1, 6)};
  w[0].coeffs.setRandom();
  const auto at0 = one_jet_closed_form(w, p, 0.0);
  CHECK((at0[0].coeffs - w[0].coeffs).norm() == 0.0);
  const auto at2 = one_jet_closed_form(w, p, 2.0);
  CHECK(at2[0].at(1) == w[0].at(1));
  CHECK(std::abs(at2[0].at(2) - w[0].at(2) * std::exp(-cplx(4.0, 2.0 / 3.0) * 2.0)) < 1e-15);

  // Oracle: the matrix exponential of the degree-1 jet.
  for (int m : {1, -2, 3}) {
    const int n0 = full_space_n_min(m);
    SpectralVector v(m, n0, 40);
    v.coeffs.setRandom();
    for (double t : {0.0, 0.3, 2.5, 10.0}) {
      const auto num = evolve_mode(assemble_general_jet(1, m, 40, p), v, t);
      const auto ref = one_jet_closed_form(ModeSet{v}, p, t)[0];
      for (int n = n0; n <= 40; ++n)
        CHECK(std::abs(num.at(n) - ref.at(n)) <= 1e-11 * std::abs(ref.at(n)) + 1e-300);
    }
  }
}

TEST_CASE("semigroup property and energy decay on Y") {
  const TwoJetParams p{0.2, 5.0};
  Evolver ev(p, 32);
  std::mt19937_64 rng(23);
  auto field = random_field(rng, 3, 32, 20);
  const auto a = ev.evolve(ev.evolve(field, 0.4), 0.9);
  const auto b = ev.evolve(field, 1.3);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK((a[i].coeffs - b[i].coeffs).norm() <= 1e-10 * (1.0 + b[i].coeffs.norm()));

  for (int m : {1, 2, 3}) {
    const auto r = subspace_range(Space::Y, m, 32);
    const auto L = assemble_L(m, 32, p).restricted(r.lo, r.hi);
    SpectralVector v(m, r.lo, 32);
    v.coeffs.setRandom();
    double last = v.coeffs.norm();
    for (double t = 0.1; t <= 3.0; t += 0.1) {
      const double now = evolve_mode(L, v, t).coeffs.norm();
      CHECK(now <= last * (1.0 + 1e-12));
      last = now;
    }
  }
}

TEST_CASE("Evolver validates its input ranges") {
  Evolver ev(TwoJetParams{1.0, 1.0}, 10);
  SpectralVector wrong(1, 2, 10);
  CHECK_THROWS_AS(ev.evolve(wrong, 1.0), DomainError);
  CHECK(&ev.propagator(1, 0.5) == &ev.propagator(1, 0.5));
  CHECK_THROWS_AS(Evolver(TwoJetParams{0.0, 1.0}, 10), DomainError);
}

TEST_CASE("stability diagnostics on random data") {
  std::mt19937_64 rng(42);
  for (auto [nu, a] : {std::pair{0.5, 1.0}, {1.0, 20.0}, {0.1, -5.0}}) {
    EvolutionScenario sc{{nu, a}, 48, random_field(rng, 4, 48), {0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0}};
    const auto rep = stability_diagnostics(sc);
    CHECK(rep.max_deg1_norm <= 1e-12);
    CHECK(rep.max_tail_ratio <= 1.0 + 1e-9);
    CHECK(rep.max_c20_err <= 1e-11);
    CHECK(std::isfinite(rep.sup_c2m_scaled));
    CHECK(rep.tail_warning);
    // exp(4 nu t) |c_2^m| settles at rate exp(-6 nu t); at nu = 1 the t = 5
    // and t = 10 samples agree to many digits.
    const auto& r5 = rep.rows[5];
    const auto& r10 = rep.rows[6];
    for (int k = 0; k < 4; ++k)
      if (nu >= 1.0) CHECK(r10.c2m_scaled[k] == doctest::Approx(r5.c2m_scaled[k]).epsilon(1e-8));
  }
}

TEST_CASE("stability diagnostics: single high mode") {
  ModeSet w{SpectralVector(3, 3, 24)};
  w[0].at(5) = 1.0;
  EvolutionScenario sc{{0.5, 2.0}, 24, w, {0.0, 1.0, 4.0}};
  const auto rep = stability_diagnostics(sc);
  CHECK(rep.max_tail_ratio <= 1.0 + 1e-9);
  CHECK_FALSE(rep.tail_warning);
  CHECK(rep.rows[2].tail_norm < rep.rows[1].tail_norm);

  Evolver other(TwoJetParams{0.5, 3.0}, 24);
  CHECK_THROWS_AS(stability_diagnostics(sc, other), DomainError);
}

TEST_CASE("diffusion only: tail ratio never exceeds one") {
  std::mt19937_64 rng(8);
  EvolutionScenario sc{{0.5, 0.0}, 24, random_field(rng, 2, 24), {0.0, 0.5, 1.0, 3.0}};
  const auto rep = stability_diagnostics(sc);
  for (const auto& row : rep.rows) CHECK(row.tail_ratio <= 1.0 + 1e-12);
}
