#include "twojet/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "twojet/error.hpp"
#include "twojet/simd/kernels.hpp"

namespace twojet {

namespace {

// reach(i, j) = true when the sparsity graph has a path j -> i (edge j -> i
// for M(i, j) != 0), i.e. when exp(M)(i, j) can be nonzero.
Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> structural_reach(const CMatrix& M) {
  const Eigen::Index n = M.rows();
  std::vector<std::vector<Eigen::Index>> out_edges(n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      if (i != j && M(i, j) != cplx{}) out_edges[j].push_back(i);
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> reach =
      Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, n, false);
  std::vector<Eigen::Index> stack;
  for (Eigen::Index j = 0; j < n; ++j) {
    reach(j, j) = true;
    stack.assign(1, j);
    while (!stack.empty()) {
      const Eigen::Index v = stack.back();
      stack.pop_back();
      for (Eigen::Index i : out_edges[v])
        if (!reach(i, j)) {
          reach(i, j) = true;
          stack.push_back(i);
        }
    }
  }
  return reach;
}

}  // namespace

// Pade scaling and squaring, with the reducible structure of the generator
// kept exact: entries with no path in the sparsity graph are zero, and a
// diagonal entry forming its own strongly connected component is exp(t M_ii).
CMatrix matrix_exponential(const CMatrix& M, double t) {
  if (M.rows() != M.cols()) throw DomainError("matrix_exponential: matrix must be square");
  if (!(t >= 0.0)) throw DomainError("matrix_exponential: t must be nonnegative");
  if (!M.allFinite()) throw DomainError("matrix_exponential: non-finite entries");
  const Eigen::Index n = M.rows();
  if (n == 0) return M;

  const auto reach = structural_reach(M);
  CMatrix E;
  if ((reach.cast<int>().sum()) == n) {
    E = CMatrix::Zero(n, n);  // diagonal
  } else {
    const CMatrix tm = t * M;
    E = tm.exp();
  }
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      if (!reach(i, j)) E(i, j) = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    bool singleton = true;
    for (Eigen::Index j = 0; j < n && singleton; ++j)
      if (j != i && reach(i, j) && reach(j, i)) singleton = false;
    if (singleton) E(i, i) = std::exp(t * M(i, i));
  }
  return E;
}

std::vector<cplx> eigenvalues(const CMatrix& M) {
  if (M.rows() != M.cols()) throw DomainError("eigenvalues: matrix must be square");
  const Eigen::Index n = M.rows();
  if (n == 0) return {};
  if (n == 1) return {M(0, 0)};
  Eigen::ComplexSchur<CMatrix> schur(n);
  schur.setMaxIterations(100 * n);
  schur.compute(M, false);
  if (schur.info() != Eigen::Success)
    throw ConvergenceError("eigenvalues: QR iteration did not converge within " + std::to_string(100 * n) +
                           " iterations");
  const CMatrix& T = schur.matrixT();
  std::vector<cplx> out(n);
  for (Eigen::Index i = 0; i < n; ++i) out[i] = T(i, i);
  return out;
}

std::vector<cplx> eigenvalues(const BandedOperator& op) { return eigenvalues(op.to_dense()); }

// Column-major band storage with kl extra rows for pivoting fill-in, in the
// layout of LAPACK's xGBTRF (element (i, j) at row kv + i - j of column j).
BandedLU::BandedLU(const BandedOperator& op, cplx shift)
    : n_(op.dim()), kl_(op.kl()), ku_(op.ku()), kv_(op.kl() + op.ku()), ldab_(2 * op.kl() + op.ku() + 1) {
  ab_.assign(static_cast<std::size_t>(ldab_) * n_, cplx{});
  ipiv_.assign(n_, 0);
  const int n0 = op.n_min();
  for (int j = 0; j < n_; ++j)
    for (int i = std::max(0, j - ku_); i <= std::min(n_ - 1, j + kl_); ++i)
      at(i, j) = (i == j ? shift : cplx{}) - op.entry(n0 + i, n0 + j);

  int ju = 0;
  for (int j = 0; j < n_; ++j) {
    const int km = std::min(kl_, n_ - 1 - j);
    int jp = 0;
    double best = std::abs(at(j, j));
    for (int k = 1; k <= km; ++k) {
      const double v = std::abs(at(j + k, j));
      if (v > best) {
        best = v;
        jp = k;
      }
    }
    ipiv_[j] = j + jp;
    if (best == 0.0) throw SingularError("BandedLU: exactly singular pivot");
    ju = std::max(ju, std::min(j + ku_ + jp, n_ - 1));
    if (jp != 0)
      for (int c = j; c <= ju; ++c) std::swap(at(j, c), at(j + jp, c));
    if (km > 0) {
      const cplx inv = 1.0 / at(j, j);
      for (int k = 1; k <= km; ++k) at(j + k, j) *= inv;
      for (int c = j + 1; c <= ju; ++c) {
        const cplx f = at(j, c);
        if (f == cplx{}) continue;
        for (int k = 1; k <= km; ++k) at(j + k, c) -= at(j + k, j) * f;
      }
    }
  }
}

void BandedLU::solve(CVector& b) const {
  if (b.size() != n_) throw DomainError("BandedLU::solve: size mismatch");
  for (int j = 0; j + 1 < n_; ++j) {
    const int km = std::min(kl_, n_ - 1 - j);
    if (ipiv_[j] != j) std::swap(b[j], b[ipiv_[j]]);
    for (int k = 1; k <= km; ++k) b[j + k] -= at(j + k, j) * b[j];
  }
  for (int j = n_ - 1; j >= 0; --j) {
    b[j] /= at(j, j);
    for (int i = std::max(0, j - kv_); i < j; ++i) b[i] -= at(i, j) * b[j];
  }
}

void BandedLU::solve_adjoint(CVector& b) const {
  if (b.size() != n_) throw DomainError("BandedLU::solve_adjoint: size mismatch");
  for (int j = 0; j < n_; ++j) {
    cplx s = b[j];
    for (int i = std::max(0, j - kv_); i < j; ++i) s -= std::conj(at(i, j)) * b[i];
    b[j] = s / std::conj(at(j, j));
  }
  for (int j = n_ - 2; j >= 0; --j) {
    const int km = std::min(kl_, n_ - 1 - j);
    for (int k = 1; k <= km; ++k) b[j] -= std::conj(at(j + k, j)) * b[j + k];
    if (ipiv_[j] != j) std::swap(b[j], b[ipiv_[j]]);
  }
}

// Largest eigenvalue theta of (T^H T)^{-1} = T^{-1} T^{-H} by Lanczos with
// full reorthogonalization; sigma_min(T) = theta^{-1/2}.
double sigma_min(const BandedOperator& op, cplx shift) {
  const int n = op.dim();
  const double scale = std::max({1.0, std::abs(shift), op.max_abs()});
  if (n == 1) {
    const double s = std::abs(shift - op.entry(op.n_min(), op.n_min()));
    if (s <= 1e-14 * scale) throw SingularError("sigma_min: shift is an eigenvalue");
    return s;
  }
  const BandedLU lu(op, shift);
  const auto& kern = simd::kernels();

  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  std::vector<CVector> Q;
  Q.reserve(n);
  CVector q(n);
  for (int i = 0; i < n; ++i) q[i] = {normal(rng), normal(rng)};
  q /= q.norm();

  std::vector<double> alpha, beta;
  double theta = 0.0;
  for (int k = 0; k < n; ++k) {
    Q.push_back(q);
    CVector w = q;
    lu.solve_adjoint(w);
    lu.solve(w);
    if (!w.allFinite()) throw SingularError("sigma_min: resolvent overflow, shift is numerically an eigenvalue");
    const double a = kern.cdot(q.data(), w.data(), n).real();
    alpha.push_back(a);
    // Two passes of classical Gram-Schmidt against the whole basis.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& v : Q) kern.caxpy(-kern.cdot(v.data(), w.data(), n), v.data(), w.data(), n);
    const double b = w.norm();

    const int m = static_cast<int>(alpha.size());
    Eigen::VectorXd d = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd e = m > 1 ? Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(beta.data(), m - 1)) : Eigen::VectorXd();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
    theta = tri.eigenvalues()(m - 1);
    const double residual = b * std::abs(tri.eigenvectors()(m - 1, m - 1));
    if (residual <= 1e-12 * theta || b <= 1e-14 * theta || k + 1 == n) break;
    beta.push_back(b);
    q = w / b;
  }
  if (!(theta > 0.0) || !std::isfinite(theta)) throw SingularError("sigma_min: degenerate Lanczos estimate");
  const double s = 1.0 / std::sqrt(theta);
  if (s <= 1e-14 * scale) throw SingularError("sigma_min: shift is numerically an eigenvalue");
  return s;
}

double sigma_min_dense(const CMatrix& M, cplx shift) {
  const CMatrix T = shift * CMatrix::Identity(M.rows(), M.cols()) - M;
  Eigen::JacobiSVD<CMatrix> svd(T);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

double spectral_norm(const CMatrix& M) {
  if (M.size() == 0) return 0.0;
  Eigen::BDCSVD<CMatrix> svd(M);
  return svd.singularValues()(0);
}

}  // namespace twojet
