#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "twojet/certificates.hpp"
#include "twojet/error.hpp"
#include "twojet/harmonics.hpp"

using namespace twojet;
using std::numbers::pi;

TEST_CASE("leading constant C_m") {
  CHECK(std::pow(leading_constant_Cm(1), 2) == doctest::Approx(3.0 / (8.0 * pi)).epsilon(1e-15));
  CHECK(std::pow(leading_constant_Cm(2), 2) == doctest::Approx(15.0 / (32.0 * pi)).epsilon(1e-15));
  CHECK_THROWS_AS(leading_constant_Cm(0), DomainError);
  for (int m : {1, -1, 2, -3, 4, -6}) {
    const int am = std::abs(m);
    for (double s : {-0.8, -0.1, 0.3, 0.95}) {
      const double ratio = latitude_fn(am, m, s) / std::pow(1.0 - s * s, am / 2.0);
      CHECK(std::abs(ratio - leading_constant_Cm(m)) < 1e-12);
    }
  }
}

TEST_CASE("constant C_{m,mu}") {
  // Independent evaluation: 384 (2 / 0.28125 + 1) at m = 1, mu = 0.5.
  CHECK(constant_Cmu(1, 0.5) == doctest::Approx(384.0 * (2.0 / 0.28125 + 1.0)).epsilon(1e-14));
  CHECK(constant_Cmu(1, 0.5) == doctest::Approx(3114.6666666666667).epsilon(1e-14));
  CHECK(constant_Cmu(2, 1e-8) < 1e-10);
  for (double mu : {0.1, 0.5, 0.9}) CHECK(constant_Cmu(3, mu) == constant_Cmu(3, -mu));
  CHECK_THROWS_AS(constant_Cmu(1, 0.0), DomainError);
  CHECK_THROWS_AS(constant_Cmu(1, 1.0), DomainError);
  CHECK_THROWS_AS(constant_Cmu(1, -1.5), DomainError);
  CHECK_THROWS_AS(constant_Cmu(0, 0.5), DomainError);
}

TEST_CASE("exclusion certificates") {
  const auto c = exclusion_certificate(1, 0.5);
  CHECK(c.regime == Regime::inside_unit);
  CHECK(regime_name(c.regime) == "0<|mu|<1");
  REQUIRE(c.C.has_value());
  REQUIRE(c.N_cert.has_value());
  CHECK(*c.C == doctest::Approx(3114.67).epsilon(1e-5));
  CHECK(*c.N_cert == 112);
  CHECK(eigenvalue_lambda(111) <= 4.0 * *c.C);
  CHECK(4.0 * *c.C < eigenvalue_lambda(112));
  CHECK(c.valid);

  const auto out = exclusion_certificate(3, 1.2);
  CHECK(out.regime == Regime::outside_unit);
  CHECK(regime_name(out.regime) == "|mu|>=1");
  CHECK(out.valid);
  CHECK_FALSE(out.C.has_value());
  CHECK_FALSE(out.N_cert.has_value());

  const auto nr = exclusion_certificate(1, cplx(0.1, 0.1));
  CHECK(nr.regime == Regime::nonreal);
  CHECK(nr.valid);
  CHECK_FALSE(nr.C.has_value());

  CHECK(exclusion_certificate(2, -1.0).regime == Regime::outside_unit);
  CHECK_THROWS_AS(exclusion_certificate(1, 0.0), DomainError);
  CHECK_THROWS_AS(exclusion_certificate(0, 0.5), DomainError);
}

TEST_CASE("certificate minimality and monotonicity") {
  for (int m : {1, -2, 3, 5}) {
    int last = 0;
    for (double mu : {0.05, 0.2, 0.4, 0.6, 0.8, 0.95, 0.99}) {
      const auto c = exclusion_certificate(m, mu);
      const int N = *c.N_cert;
      CHECK(4.0 * *c.C < static_cast<double>(eigenvalue_lambda(N)));
      const int floor_N = std::max(3, std::max(2, std::abs(m)) + 1);
      if (N > floor_N) CHECK(static_cast<double>(eigenvalue_lambda(N - 1)) <= 4.0 * *c.C);
      CHECK(N >= last);
      last = N;
    }
  }
}

TEST_CASE("reduction coefficients") {
  const auto first = reduction_coefficients(3, 0.4, 4);
  REQUIRE(first.alphas.size() == 1);
  CHECK(first.alphas[0] == doctest::Approx(-1.0 / recurrence_coeff(4, 3)).epsilon(1e-15));
  CHECK(first.beta == doctest::Approx(0.4 / recurrence_coeff(4, 3)).epsilon(1e-15));

  const auto rc = reduction_coefficients(1, 0.5, 2);
  CHECK(rc.alphas[0] == doctest::Approx(-std::sqrt(5.0)).epsilon(1e-15));
  CHECK(rc.beta == doctest::Approx(0.5 * std::sqrt(5.0)).epsilon(1e-15));

  double worst = 0.0;
  for (int m : {1, -1, 2, -2, 3, -3})
    for (double mu : {0.1, -0.1, 0.5, -0.5, 0.9, -0.9})
      for (int n = std::abs(m) + 1; n <= 20; ++n)
        worst = std::max(worst, reduction_identity_residual(reduction_coefficients(m, mu, n)));
  CHECK(worst < 1e-8);

  CHECK_THROWS_AS(reduction_coefficients(2, 0.5, 2), DomainError);
  CHECK_THROWS_AS(reduction_coefficients(1, 1.0, 5), DomainError);
  CHECK_THROWS_AS(reduction_coefficients(1, 0.0, 5), DomainError);
}

TEST_CASE("Hardy oracle") {
  SpectralVector zero(1, 1, 5);
  auto z = hardy_oracle(zero, 0.3, 0.0, pi);
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs == 0.0);
  CHECK(z.ok);

  // g = U sqrt(sin) constant: the left side vanishes.
  auto U = [](double th) { return cplx(1.0 / std::sqrt(std::sin(th))); };
  auto dU = [](double th) { return cplx(-std::cos(th) / (2.0 * std::pow(std::sin(th), 1.5))); };
  const double tm = std::acos(0.2);
  auto flat = hardy_oracle(1, 0.2, U, dU, tm - 0.5, tm + 0.5);
  CHECK(flat.lhs < 1e-20);
  CHECK(flat.ok);

  std::mt19937_64 rng(31);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    SpectralVector u(1, 1, 10);
    for (int n = 1; n <= 10; ++n) u.at(n) = {g(rng), g(rng)};
    const auto r = hardy_oracle(u, 0.3, 0.0, pi);
    CHECK(r.ok);
    CHECK(r.lhs > 0.0);
  }

  // The callable form and the spectral form agree on the left side.
  SpectralVector u(2, 2, 6);
  for (int n = 2; n <= 6; ++n) u.at(n) = {g(rng), g(rng)};
  auto Uc = [&](double th) { return synthesize(u, std::cos(th)); };
  auto dUc = [&](double th) {
    cplx acc{};
    for (int n = 2; n <= 6; ++n) acc += u.at(n) * latitude_fn_dtheta(n, 2, th);
    return acc;
  };
  const auto a = hardy_oracle(2, -0.4, Uc, dUc, 0.3, 2.9);
  const auto b = hardy_oracle(u, -0.4, 0.3, 2.9);
  CHECK(a.lhs == doctest::Approx(b.lhs).epsilon(1e-10));
  CHECK(a.rhs == doctest::Approx(b.rhs).epsilon(1e-8));

  CHECK_THROWS_AS(hardy_oracle(u, 1.0, 0.0, pi), DomainError);
  CHECK_THROWS_AS(hardy_oracle(u, 0.0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(hardy_oracle(SpectralVector(0, 1, 3), 0.1, 0.0, pi), DomainError);
}

TEST_CASE("L-infinity oracle") {
  SpectralVector e3(2, 2, 3);
  e3.at(3) = 1.0;
  const auto r = linf_oracle(e3);
  CHECK(r.rhs == doctest::Approx(12.0 / (2.0 * pi)).epsilon(1e-15));
  double peak = 0.0;
  for (int k = 0; k <= 2000; ++k) peak = std::max(peak, std::pow(latitude_fn(3, 2, std::cos(pi * k / 2000.0)), 2));
  CHECK(r.lhs == doctest::Approx(peak).epsilon(1e-12));
  CHECK(r.ok);

  CHECK(linf_oracle(SpectralVector(3, 3, 8)).ok);
  CHECK_THROWS_AS(linf_oracle(SpectralVector(0, 1, 4)), DomainError);

  std::mt19937_64 rng(77);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 6);
    SpectralVector u(rng() % 2 ? m : -m, m, m + static_cast<int>(rng() % 20));
    for (auto& c : u.coeffs) c = {g(rng), g(rng)};
    CHECK(linf_oracle(u).ok);
  }
}
