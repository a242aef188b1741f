#pragma once

#include <vector>

#include "json.hpp"

#include "twojet/types.hpp"

namespace twojet {

/// Complex banded matrix on one zonal mode.  Rows and columns are both
/// indexed by degree n in [n_min, n_max]; entries with col - row outside
/// [-kl, ku] are exactly zero.
class BandedOperator {
 public:
  BandedOperator() = default;
  BandedOperator(int m, int n_min, int n_max, int kl, int ku);

  int m() const { return m_; }
  int n_min() const { return n_min_; }
  int n_max() const { return n_max_; }
  int dim() const { return n_max_ - n_min_ + 1; }
  int kl() const { return kl_; }
  int ku() const { return ku_; }

  bool contains(int row, int col) const;
  /// Entry at (row degree, col degree); zero outside the band or range.
  cplx entry(int row, int col) const;
  /// Throws DomainError outside the band.
  void set(int row, int col, cplx v);

  /// Band with offset d = col - row; element i is at row n_min + i + max(0, -d).
  const std::vector<cplx>& band(int d) const { return bands_[d + kl_]; }
  std::vector<cplx>& band(int d) { return bands_[d + kl_]; }

  CMatrix to_dense() const;
  CVector apply(const CVector& x) const;

  /// Principal submatrix on degrees [lo, hi].
  BandedOperator restricted(int lo, int hi) const;
  /// Copy with bandwidths (kl, ku); entries that would fall outside must be zero.
  BandedOperator widened(int kl, int ku) const;

  BandedOperator& operator*=(cplx s);
  /// Entrywise sum; operands must share mode and degree range.
  friend BandedOperator operator+(const BandedOperator& x, const BandedOperator& y);
  friend BandedOperator operator*(cplx s, BandedOperator x) { return x *= s; }
  /// Matrix product of two operators on the same degree range.
  friend BandedOperator operator*(const BandedOperator& x, const BandedOperator& y);

  /// True when every imaginary part is exactly zero.
  bool is_real() const;
  double max_abs() const;

  nlohmann::json to_json() const;
  static BandedOperator from_json(const nlohmann::json& j);

 private:
  int m_ = 0, n_min_ = 0, n_max_ = -1, kl_ = 0, ku_ = 0;
  std::vector<std::vector<cplx>> bands_;
};

/// Band-limited identity scaled by s on [n_min, n_max].
BandedOperator identity_operator(int m, int n_min, int n_max, cplx s = 1.0);

}  // namespace twojet
