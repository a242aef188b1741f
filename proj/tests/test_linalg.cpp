#include <cmath>
#include <random>

#include "doctest.h"
#include "twojet/error.hpp"
#include "twojet/linalg.hpp"
#include "twojet/operators.hpp"

using namespace twojet;

namespace {

CMatrix random_matrix(std::mt19937_64& rng, int n, double scale) {
  std::normal_distribution<double> g;
  CMatrix M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = scale * cplx(g(rng), g(rng));
  return M;
}

}  // namespace

TEST_CASE("matrix_exponential basics") {
  CHECK((matrix_exponential(CMatrix::Zero(4, 4), 1.0) - CMatrix::Identity(4, 4)).norm() == 0.0);
  CMatrix D = CMatrix::Zero(1, 1);
  D(0, 0) = -4.0;
  CHECK(std::abs(matrix_exponential(D, 1.0)(0, 0) - std::exp(-4.0)) <= 1e-16);
  CHECK_THROWS_AS(matrix_exponential(CMatrix::Zero(2, 3), 1.0), DomainError);
  CHECK_THROWS_AS(matrix_exponential(D, -1.0), DomainError);
  CMatrix bad = D;
  bad(0, 0) = NAN;
  CHECK_THROWS_AS(matrix_exponential(bad, 1.0), DomainError);
}

TEST_CASE("matrix_exponential group law and diagonal oracle") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix M = random_matrix(rng, 12, 0.3);
    const CMatrix e1 = matrix_exponential(M, 0.7);
    const CMatrix e2 = matrix_exponential(M, 1.1);
    const CMatrix e12 = matrix_exponential(M, 1.8);
    CHECK((e1 * e2 - e12).norm() <= 1e-12 * e12.norm());
  }
  const CMatrix A = assemble_A(2, 2, 20).to_dense();
  const CMatrix E = matrix_exponential(A, 0.3);
  for (int i = 0; i < 19; ++i)
    CHECK(std::abs(E(i, i) - std::exp(0.3 * A(i, i).real())) <= 1e-12 * std::exp(0.3 * A(i, i).real()));
}

TEST_CASE("matrix_exponential keeps unreachable blocks exactly zero") {
  // Upper block triangular: nothing flows from the second block back.
  CMatrix M = CMatrix::Zero(4, 4);
  M(0, 0) = -1.0;
  M(0, 2) = 5.0;
  M(1, 1) = 0.0;
  M(2, 2) = -3.0;
  M(2, 3) = 1.0;
  M(3, 2) = -1.0;
  M(3, 3) = -3.0;
  const CMatrix E = matrix_exponential(M, 2.0);
  CHECK(E(2, 0) == cplx{});
  CHECK(E(1, 0) == cplx{});
  CHECK(E(1, 1) == cplx(1.0));
  CHECK(E(0, 0) == cplx(std::exp(-2.0)));
}

TEST_CASE("eigenvalues") {
  const TwoJetParams p{0.5, 0.0};
  auto ev = eigenvalues(assemble_L(1, 6, p));
  std::vector<double> re;
  for (auto z : ev) re.push_back(z.real());
  std::sort(re.begin(), re.end());
  const std::vector<double> expect{-20.0, -14.0, -9.0, -5.0, -2.0, 0.0};
  for (std::size_t i = 0; i < re.size(); ++i) CHECK(re[i] == doctest::Approx(expect[i]).epsilon(1e-14));

  CMatrix one(1, 1);
  one(0, 0) = {2.0, -1.0};
  REQUIRE(eigenvalues(one).size() == 1);
  CHECK(eigenvalues(one)[0] == cplx(2.0, -1.0));
  CHECK(eigenvalues(CMatrix(0, 0)).empty());
  CHECK_THROWS_AS(eigenvalues(CMatrix::Zero(2, 3)), DomainError);

  // Lambda_1 truncation: real spectrum in [-1, 1].
  for (auto z : eigenvalues(assemble_lambda_m(1, 40))) {
    CHECK(std::abs(z.imag()) < 1e-10);
    CHECK(std::abs(z.real()) <= 1.0 + 1e-10);
  }
}

TEST_CASE("banded LU solves with the operator and its adjoint") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  for (auto [kl, ku] : {std::pair{1, 1}, {2, 0}, {0, 2}, {3, 2}}) {
    BandedOperator op(1, 1, 25, kl, ku);
    for (int r = 1; r <= 25; ++r)
      for (int c = 1; c <= 25; ++c)
        if (op.contains(r, c)) op.set(r, c, {g(rng), g(rng)});
    const cplx shift{0.3, 1.2};
    const CMatrix T = shift * CMatrix::Identity(25, 25) - op.to_dense();
    BandedLU lu(op, shift);
    CVector b = CVector::Random(25);
    CVector x = b;
    lu.solve(x);
    CHECK((T * x - b).norm() <= 1e-11 * b.norm() * (1.0 + T.norm() * x.norm() / b.norm()));
    CVector y = b;
    lu.solve_adjoint(y);
    CHECK((T.adjoint() * y - b).norm() <= 1e-11 * b.norm() * (1.0 + T.norm() * y.norm() / b.norm()));
  }
  const auto A = assemble_A(1, 1, 8);
  CHECK_THROWS_AS(BandedLU(A, cplx(-4.0)), SingularError);
}

TEST_CASE("Lanczos sigma_min agrees with a dense SVD") {
  for (int m : {1, 2, 3}) {
    for (double alpha : {0.0, 10.0, 300.0}) {
      const auto r = subspace_range(Space::Y, m, 64);
      const auto op = assemble_L(m, 64, TwoJetParams{1.0, alpha}, true).restricted(r.lo, r.hi);
      for (cplx z : {cplx(0.0, 0.0), cplx(0.0, 7.5), cplx(1.0, -40.0)}) {
        const double ref = sigma_min_dense(op.to_dense(), z);
        CHECK(sigma_min(op, z) == doctest::Approx(ref).epsilon(1e-9));
      }
    }
  }
  const auto diag = assemble_A(1, 1, 10);
  CHECK_THROWS_AS(sigma_min(diag, cplx(-10.0)), SingularError);
  BandedOperator one(1, 3, 3, 0, 0);
  one.set(3, 3, 2.0);
  CHECK(sigma_min(one, cplx(5.0)) == doctest::Approx(3.0));
  CHECK_THROWS_AS(sigma_min(one, cplx(2.0)), SingularError);
}

TEST_CASE("spectral_norm") {
  const CMatrix A = assemble_A(2, 2, 10).to_dense();
  CHECK(spectral_norm(A) == doctest::Approx(108.0));
  CHECK(spectral_norm(CMatrix(0, 0)) == 0.0);
}
