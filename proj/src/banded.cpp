#include "twojet/banded.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "twojet/error.hpp"
#include "twojet/simd/kernels.hpp"

namespace twojet {

BandedOperator::BandedOperator(int m, int n_min, int n_max, int kl, int ku)
    : m_(m), n_min_(n_min), n_max_(n_max), kl_(kl), ku_(ku) {
  if (n_max < n_min) throw DomainError("BandedOperator: empty degree range");
  if (kl < 0 || ku < 0) throw DomainError("BandedOperator: negative bandwidth");
  const int n = dim();
  kl_ = std::min(kl, n - 1);
  ku_ = std::min(ku, n - 1);
  bands_.resize(kl_ + ku_ + 1);
  for (int d = -kl_; d <= ku_; ++d) bands_[d + kl_].assign(n - std::abs(d), cplx{});
}

bool BandedOperator::contains(int row, int col) const {
  const int d = col - row;
  return row >= n_min_ && row <= n_max_ && col >= n_min_ && col <= n_max_ && d >= -kl_ && d <= ku_;
}

cplx BandedOperator::entry(int row, int col) const {
  if (!contains(row, col)) return {};
  return bands_[col - row + kl_][std::min(row, col) - n_min_];
}

void BandedOperator::set(int row, int col, cplx v) {
  if (!contains(row, col))
    throw DomainError("BandedOperator::set outside band: (" + std::to_string(row) + "," + std::to_string(col) + ")");
  bands_[col - row + kl_][std::min(row, col) - n_min_] = v;
}

CMatrix BandedOperator::to_dense() const {
  const int n = dim();
  CMatrix out = CMatrix::Zero(n, n);
  for (int d = -kl_; d <= ku_; ++d) {
    const auto& b = bands_[d + kl_];
    for (int i = 0; i < static_cast<int>(b.size()); ++i) {
      const int r = i + std::max(0, -d);
      out(r, r + d) = b[i];
    }
  }
  return out;
}

CVector BandedOperator::apply(const CVector& x) const {
  const int n = dim();
  if (x.size() != n) throw DomainError("BandedOperator::apply: size mismatch");
  CVector y = CVector::Zero(n);
  if (kl_ == 1 && ku_ == 1 && n >= 2) {
    std::vector<cplx> lower(n), upper(n);
    std::copy(band(-1).begin(), band(-1).end(), lower.begin() + 1);
    std::copy(band(1).begin(), band(1).end(), upper.begin());
    simd::kernels().tridiag_matvec(lower.data(), band(0).data(), upper.data(), x.data(), y.data(), n);
    return y;
  }
  for (int d = -kl_; d <= ku_; ++d) {
    const auto& b = bands_[d + kl_];
    const int r0 = std::max(0, -d);
    for (int i = 0; i < static_cast<int>(b.size()); ++i) y[r0 + i] += b[i] * x[r0 + i + d];
  }
  return y;
}

BandedOperator BandedOperator::restricted(int lo, int hi) const {
  if (lo < n_min_ || hi > n_max_ || hi < lo) throw DomainError("BandedOperator::restricted: range outside operator");
  BandedOperator out(m_, lo, hi, kl_, ku_);
  for (int r = lo; r <= hi; ++r)
    for (int c = std::max(lo, r - out.kl_); c <= std::min(hi, r + out.ku_); ++c) out.set(r, c, entry(r, c));
  return out;
}

BandedOperator BandedOperator::widened(int kl, int ku) const {
  BandedOperator out(m_, n_min_, n_max_, kl, ku);
  for (int r = n_min_; r <= n_max_; ++r)
    for (int c = std::max(n_min_, r - kl_); c <= std::min(n_max_, r + ku_); ++c) {
      const cplx v = entry(r, c);
      if (out.contains(r, c))
        out.set(r, c, v);
      else if (v != cplx{})
        throw DomainError("BandedOperator::widened: nonzero entry would be dropped");
    }
  return out;
}

BandedOperator& BandedOperator::operator*=(cplx s) {
  for (auto& b : bands_)
    for (auto& v : b) v *= s;
  return *this;
}

BandedOperator operator+(const BandedOperator& x, const BandedOperator& y) {
  if (x.m_ != y.m_ || x.n_min_ != y.n_min_ || x.n_max_ != y.n_max_)
    throw DomainError("BandedOperator +: operands on different ranges");
  BandedOperator out = x.widened(std::max(x.kl_, y.kl_), std::max(x.ku_, y.ku_));
  for (int d = -y.kl_; d <= y.ku_; ++d) {
    auto& ob = out.band(d);
    const auto& yb = y.band(d);
    for (std::size_t i = 0; i < yb.size(); ++i) ob[i] += yb[i];
  }
  return out;
}

BandedOperator operator*(const BandedOperator& x, const BandedOperator& y) {
  if (x.m_ != y.m_ || x.n_min_ != y.n_min_ || x.n_max_ != y.n_max_)
    throw DomainError("BandedOperator *: operands on different ranges");
  BandedOperator out(x.m_, x.n_min_, x.n_max_, x.kl_ + y.kl_, x.ku_ + y.ku_);
  for (int r = out.n_min_; r <= out.n_max_; ++r) {
    for (int c = std::max(out.n_min_, r - out.kl_); c <= std::min(out.n_max_, r + out.ku_); ++c) {
      const int k_lo = std::max({out.n_min_, r - x.kl_, c - y.ku_});
      const int k_hi = std::min({out.n_max_, r + x.ku_, c + y.kl_});
      cplx acc{};
      for (int k = k_lo; k <= k_hi; ++k) acc += x.entry(r, k) * y.entry(k, c);
      out.set(r, c, acc);
    }
  }
  return out;
}

bool BandedOperator::is_real() const {
  for (const auto& b : bands_)
    for (const auto& v : b)
      if (v.imag() != 0.0) return false;
  return true;
}

double BandedOperator::max_abs() const {
  double out = 0.0;
  for (const auto& b : bands_)
    for (const auto& v : b) out = std::max(out, std::abs(v));
  return out;
}

nlohmann::json BandedOperator::to_json() const {
  nlohmann::json bands = nlohmann::json::array();
  for (int d = -kl_; d <= ku_; ++d) {
    nlohmann::json values = nlohmann::json::array();
    for (const auto& v : band(d)) values.push_back({v.real(), v.imag()});
    bands.push_back({{"offset", d}, {"values", values}});
  }
  return {{"m", m_}, {"n_min", n_min_}, {"N", n_max_}, {"bands", bands}};
}

BandedOperator BandedOperator::from_json(const nlohmann::json& j) {
  try {
    const int m = j.at("m").get<int>();
    const int n_min = j.at("n_min").get<int>();
    const int n_max = j.at("N").get<int>();
    int kl = 0, ku = 0;
    for (const auto& b : j.at("bands")) {
      const int d = b.at("offset").get<int>();
      kl = std::max(kl, -d);
      ku = std::max(ku, d);
    }
    BandedOperator out(m, n_min, n_max, kl, ku);
    for (const auto& b : j.at("bands")) {
      const int d = b.at("offset").get<int>();
      const auto& values = b.at("values");
      if (std::abs(d) >= out.dim()) continue;
      auto& dst = out.band(d);
      if (values.size() != dst.size()) throw DomainError("BandedOperator::from_json: band length mismatch");
      for (std::size_t i = 0; i < dst.size(); ++i)
        dst[i] = {values[i].at(0).get<double>(), values[i].at(1).get<double>()};
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("BandedOperator::from_json: ") + e.what());
  }
}

BandedOperator identity_operator(int m, int n_min, int n_max, cplx s) {
  BandedOperator out(m, n_min, n_max, 0, 0);
  for (auto& v : out.band(0)) v = s;
  return out;
}

}  // namespace twojet
