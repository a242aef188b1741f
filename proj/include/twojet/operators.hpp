#pragma once

#include <vector>

#include "twojet/banded.hpp"
#include "twojet/types.hpp"

namespace twojet {

enum class Space { L0, X, Y };

/// Lowest degree of mode m in the full mean-zero space: max(1, |m|).
int full_space_n_min(int m);

/// Admissible degrees of mode m in a subspace, in increasing order.
std::vector<int> subspace_indices(Space space, int m, int N);

/// Contiguous degree range [first, last] of a subspace (all three are contiguous).
struct DegreeRange {
  int lo;
  int hi;
};
DegreeRange subspace_range(Space space, int m, int N);

/// Diagonal 2 - lambda_n.
BandedOperator assemble_A(int m, int n_min, int N);

/// Diagonal 1 - 6 / lambda_n.
BandedOperator assemble_B(int m, int n_min, int N);

/// Multiplication by cos(theta), Galerkin-truncated to [n_min, N].
BandedOperator assemble_cos_multiplier(int m, int n_min, int N);

/// Lambda_m = (cos theta multiplier) * B on [max(1,|m|), N]; m != 0.
BandedOperator assemble_lambda_m(int m, int N);

/// nu A - i a m Lambda_m on [max(1,|m|), N], or A - i alpha m Lambda_m when
/// rescaled.  For m = 0 the result is nu A (or A).
BandedOperator assemble_L(int m, int N, const TwoJetParams& p, bool rescaled = false);

/// Linearization about a general single-degree jet of degree n_jet:
/// nu A - (a / lambda_j) sqrt((2j+1)/(4 pi)) i m P (I + lambda_j Delta^{-1}),
/// where P multiplies by P_j'(cos theta).
BandedOperator assemble_general_jet(int n_jet, int m, int N, const TwoJetParams& p);

/// Coefficients of P_j'(s) in the monomial basis, lowest power first.
std::vector<double> legendre_derivative_coeffs(int j);

/// Zeroes the degree-2 coefficient for |m| in {1, 2}.
SpectralVector project_Q(const SpectralVector& v);

}  // namespace twojet
