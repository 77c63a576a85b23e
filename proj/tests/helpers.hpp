#pragma once

#include <random>
#include <vector>

#include "subcert/brackets.hpp"
#include "subcert/forms.hpp"
#include "subcert/singular.hpp"
#include "subcert/subspace.hpp"

namespace subcert::testing {

inline Mat random_symmetric(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  Mat A(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) A(i, j) = g(rng);
  return 0.5 * (A + A.transpose());
}

// PSD with prescribed rank; low rank keeps the kernel tower nontrivial.
inline Mat random_psd(std::mt19937_64& rng, int d, int rank) {
  std::normal_distribution<double> g;
  Mat R(d, rank);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < rank; ++j) R(i, j) = g(rng);
  return R * R.transpose();
}

inline SystemOfForms random_system(std::mt19937_64& rng, int n, int num_forms,
                                   int re_rank) {
  PhaseSpace space(n);
  SystemOfForms sys(space);
  const int d = space.dim();
  for (int j = 0; j < num_forms; ++j) {
    CMat Q = random_psd(rng, d, re_rank).cast<std::complex<double>>();
    Q += std::complex<double>(0.0, 1.0) *
         random_symmetric(rng, d).cast<std::complex<double>>();
    sys.push(QuadraticForm(space, Q));
  }
  return sys;
}

// Tower by explicit word enumeration: T_k is the joint kernel of all
// Re F_j Im F_{l_1} ... Im F_{l_i} with word length i <= k.
inline std::vector<Subspace> brute_tower(const SystemOfForms& sys, int kmax) {
  const int d = sys.dim();
  const std::vector<Mat> ReF = sys.re_hamilton_maps();
  const std::vector<Mat> ImF = sys.im_hamilton_maps();
  const int N = sys.size();

  std::vector<Mat> words{Mat::Identity(d, d)};  // all Im-words of length <= k
  std::vector<Subspace> tower;
  std::vector<Mat> stack;
  for (int k = 0; k <= kmax; ++k) {
    if (k > 0) {
      std::vector<Mat> longer;
      std::vector<Mat> last(words.end() - (std::size_t)std::pow(N, k - 1), words.end());
      for (const Mat& W : last)
        for (int l = 0; l < N; ++l) longer.push_back(W * ImF[l]);
      words.insert(words.end(), longer.begin(), longer.end());
    }
    stack.clear();
    for (const Mat& W : words)
      for (int j = 0; j < N; ++j) stack.push_back(ReF[j] * W);
    Mat big((int)stack.size() * d, d);
    for (std::size_t i = 0; i < stack.size(); ++i)
      big.middleRows((int)i * d, d) = stack[i];
    tower.push_back(kernel(big));
    if (tower.back().dim() == 0) break;
  }
  return tower;
}

// Central difference of a quadratic in one variable is exact for any step.
inline double partial_fd(const QuadraticForm& q, const Vec& X, int v, bool real_part) {
  Vec Xp = X, Xm = X;
  Xp(v) += 0.5;
  Xm(v) -= 0.5;
  const std::complex<double> d = q(Xp) - q(Xm);
  return real_part ? d.real() : d.imag();
}

// Poisson bracket value at X through finite differences of the raw values.
inline std::complex<double> poisson_fd(const QuadraticForm& a, const QuadraticForm& b,
                                       const Vec& X) {
  const int n = a.space.n;
  std::complex<double> s = 0.0;
  for (int k = 0; k < n; ++k) {
    const std::complex<double> a_x(partial_fd(a, X, k, true), partial_fd(a, X, k, false));
    const std::complex<double> a_xi(partial_fd(a, X, n + k, true),
                                    partial_fd(a, X, n + k, false));
    const std::complex<double> b_x(partial_fd(b, X, k, true), partial_fd(b, X, k, false));
    const std::complex<double> b_xi(partial_fd(b, X, n + k, true),
                                    partial_fd(b, X, n + k, false));
    s += a_xi * b_x - a_x * b_xi;
  }
  return s;
}

inline std::vector<Vec> random_points(std::mt19937_64& rng, int d, int count,
                                      double scale = 2.0) {
  std::normal_distribution<double> g(0.0, scale);
  std::vector<Vec> pts(count);
  for (auto& X : pts) {
    X = Vec(d);
    for (int i = 0; i < d; ++i) X(i) = g(rng);
  }
  return pts;
}

inline Subspace span_of(const std::vector<Vec>& vs) {
  if (vs.empty()) return Subspace::zero(0);
  Mat B((int)vs[0].size(), (int)vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) B.col((int)i) = vs[i];
  Eigen::HouseholderQR<Mat> qr(B);
  Mat Q = qr.householderQ() * Mat::Identity(B.rows(), B.cols());
  return Subspace{Q};
}

}  // namespace subcert::testing
