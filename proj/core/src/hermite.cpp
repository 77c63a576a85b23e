#include "subcert/hermite.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace subcert {

namespace {

void enumerate_rec(int n, int level, int pos, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) {
  if (pos == n - 1) {
    cur[pos] = level;
    out.push_back(cur);
    return;
  }
  for (int k = level; k >= 0; --k) {
    cur[pos] = k;
    enumerate_rec(n, level - k, pos + 1, cur, out);
  }
}

}  // namespace

HermiteBasis::HermiteBasis(int n_, int max_level_, Convention conv)
    : n(n_), max_level(max_level_), convention(conv) {
  if (n < 1) throw std::invalid_argument("HermiteBasis: n must be >= 1");
  if (max_level < 0) throw std::invalid_argument("HermiteBasis: max_level must be >= 0");
  std::vector<int> cur(n, 0);
  for (int level = 0; level <= max_level; ++level)
    enumerate_rec(n, level, 0, cur, indices);
  levels.reserve(indices.size());
  for (const auto& a : indices) {
    int s = 0;
    for (int v : a) s += v;
    levels.push_back(s);
  }
  // mixed-radix lookup table
  const long long radix = max_level + 1;
  long long size = 1;
  for (int i = 0; i < n; ++i) {
    size *= radix;
    if (size > 50'000'000LL)
      throw std::invalid_argument("HermiteBasis: basis too large");
  }
  strides_.assign(n, 1);
  for (int i = 1; i < n; ++i) strides_[i] = strides_[i - 1] * radix;
  lookup_.assign(static_cast<std::size_t>(size), -1);
  for (int i = 0; i < dim(); ++i) {
    long long key = 0;
    for (int v = 0; v < n; ++v) key += indices[i][v] * strides_[v];
    lookup_[static_cast<std::size_t>(key)] = i;
  }
}

int HermiteBasis::index_of(const std::vector<int>& alpha) const {
  if (static_cast<int>(alpha.size()) != n)
    throw std::invalid_argument("HermiteBasis: multi-index size mismatch");
  long long key = 0;
  for (int v = 0; v < n; ++v) {
    if (alpha[v] < 0 || alpha[v] > max_level) return -1;
    key += alpha[v] * strides_[v];
  }
  const int idx = lookup_[static_cast<std::size_t>(key)];
  return idx;
}

std::vector<int> OperatorMatrix::interior_index_set() const {
  std::vector<int> out;
  for (int i = 0; i < basis.dim(); ++i)
    if (basis.level(i) <= interior_max_level()) out.push_back(i);
  return out;
}

CMat OperatorMatrix::interior_block() const {
  const auto idx = interior_index_set();
  CMat B(idx.size(), idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t c = 0; c < idx.size(); ++c) B(r, c) = A(idx[r], idx[c]);
  return B;
}

OperatorMatrix OperatorMatrix::adjoint() const {
  return OperatorMatrix{basis, A.adjoint(), band};
}

namespace {

double ladder_scale(Convention conv) {
  // x_i = s (a + a*), momentum = -i s (a - a*)
  return conv == Convention::body ? 1.0 / std::numbers::sqrt2
                                  : 1.0 / (2.0 * std::sqrt(std::numbers::pi));
}

}  // namespace

CMat position_operator(const HermiteBasis& basis, int i) {
  if (i < 0 || i >= basis.n)
    throw std::invalid_argument("position_operator: coordinate out of range");
  const double s = ladder_scale(basis.convention);
  CMat A = CMat::Zero(basis.dim(), basis.dim());
  for (int col = 0; col < basis.dim(); ++col) {
    std::vector<int> a = basis.multi_index(col);
    if (a[i] > 0) {
      a[i] -= 1;
      const int row = basis.index_of(a);
      if (row >= 0) A(row, col) += s * std::sqrt(static_cast<double>(a[i] + 1));
      a[i] += 1;
    }
    a[i] += 1;
    const int row = basis.index_of(a);
    if (row >= 0) A(row, col) += s * std::sqrt(static_cast<double>(a[i]));
  }
  return A;
}

CMat momentum_operator(const HermiteBasis& basis, int i) {
  if (i < 0 || i >= basis.n)
    throw std::invalid_argument("momentum_operator: coordinate out of range");
  const double s = ladder_scale(basis.convention);
  const std::complex<double> mi(0.0, -1.0);
  CMat A = CMat::Zero(basis.dim(), basis.dim());
  for (int col = 0; col < basis.dim(); ++col) {
    std::vector<int> a = basis.multi_index(col);
    if (a[i] > 0) {
      a[i] -= 1;
      const int row = basis.index_of(a);
      if (row >= 0) A(row, col) += mi * s * std::sqrt(static_cast<double>(a[i] + 1));
      a[i] += 1;
    }
    a[i] += 1;
    const int row = basis.index_of(a);
    if (row >= 0) A(row, col) -= mi * s * std::sqrt(static_cast<double>(a[i]));
  }
  return A;
}

}  // namespace subcert
