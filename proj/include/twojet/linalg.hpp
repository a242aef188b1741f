#pragma once

#include <vector>

#include "twojet/banded.hpp"
#include "twojet/types.hpp"

namespace twojet {

/// exp(t M) by Pade scaling and squaring.
CMatrix matrix_exponential(const CMatrix& M, double t);

/// All eigenvalues of a dense matrix via complex Schur (Hessenberg + shifted QR),
/// iteration cap 100 * dim; throws ConvergenceError past the cap.
std::vector<cplx> eigenvalues(const CMatrix& M);
std::vector<cplx> eigenvalues(const BandedOperator& op);

/// LU with partial pivoting of a complex band matrix, fill-in kept within
/// kl + ku superdiagonals.  Solves with A and with A^H.
class BandedLU {
 public:
  /// Factors (shift I - op).  Throws SingularError on an exactly zero pivot.
  BandedLU(const BandedOperator& op, cplx shift);

  int dim() const { return n_; }
  void solve(CVector& b) const;
  void solve_adjoint(CVector& b) const;

 private:
  cplx& at(int i, int j) { return ab_[kv_ + i - j + static_cast<std::size_t>(j) * ldab_]; }
  cplx at(int i, int j) const { return ab_[kv_ + i - j + static_cast<std::size_t>(j) * ldab_]; }

  int n_, kl_, ku_, kv_, ldab_;
  std::vector<cplx> ab_;
  std::vector<int> ipiv_;
};

/// Smallest singular value of (shift I - op) by Lanczos on its inverse Gram
/// operator.  Throws SingularError when the shift is numerically an eigenvalue.
double sigma_min(const BandedOperator& op, cplx shift);

/// Dense reference: smallest singular value of (shift I - M).
double sigma_min_dense(const CMatrix& M, cplx shift);

/// Largest singular value (spectral norm).
double spectral_norm(const CMatrix& M);

}  // namespace twojet
