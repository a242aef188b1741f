#pragma once

#include <complex>

#include <Eigen/Dense>

namespace twojet {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Coefficients of one zonal mode m, indexed by degree n in [n_min, n_max()].
struct SpectralVector {
  int m = 0;
  int n_min = 0;
  CVector coeffs;

  SpectralVector() = default;
  SpectralVector(int m_, int n_min_, int n_max_) : m(m_), n_min(n_min_), coeffs(CVector::Zero(n_max_ - n_min_ + 1)) {}
  SpectralVector(int m_, int n_min_, CVector c) : m(m_), n_min(n_min_), coeffs(std::move(c)) {}

  int n_max() const { return n_min + static_cast<int>(coeffs.size()) - 1; }
  bool has(int n) const { return n >= n_min && n <= n_max(); }
  cplx& at(int n) { return coeffs[n - n_min]; }
  cplx at(int n) const { return has(n) ? coeffs[n - n_min] : cplx{}; }
};

/// Viscosity nu > 0 and jet amplitude a.
struct TwoJetParams {
  double nu = 1.0;
  double a = 0.0;

  double alpha() const { return a / nu; }
  void validate() const;
};

}  // namespace twojet
