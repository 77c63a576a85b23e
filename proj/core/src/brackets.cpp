#include "subcert/brackets.hpp"

#include <cmath>
#include <stdexcept>

namespace subcert {

std::vector<Mat> r_tower(const SystemOfForms& sys, int kmax) {
  if (sys.size() == 0) throw std::invalid_argument("r_tower: empty system");
  if (kmax < 0) throw std::invalid_argument("r_tower: kmax must be >= 0");
  const auto ImF = sys.im_hamilton_maps();
  std::vector<Mat> G;
  G.reserve(kmax + 1);
  G.push_back(sys.sum_re());
  for (int k = 1; k <= kmax; ++k) {
    Mat next = Mat::Zero(sys.dim(), sys.dim());
    for (const auto& A : ImF) next += A.transpose() * G.back() * A;
    G.push_back(std::move(next));
  }
  return G;
}

Mat rtilde_from_gram(const Mat& G_km1, const Mat& ImFp) {
  Mat P = G_km1 * ImFp;
  return 0.5 * (P + P.transpose().eval());
}

Mat rtilde(const SystemOfForms& sys, int k, int p) {
  if (k < 1) throw std::invalid_argument("rtilde: k must be >= 1");
  if (p < 0 || p >= sys.size()) throw std::invalid_argument("rtilde: bad index p");
  const auto G = r_tower(sys, k - 1);
  const Mat ImFp = hamilton_map(sys.forms[p]).im();
  return rtilde_from_gram(G[k - 1], ImFp);
}

QuadraticForm iterated_commutator_symbol(const SystemOfForms& sys, int j,
                                         const std::vector<int>& word) {
  if (j < 0 || j >= sys.size())
    throw std::invalid_argument("iterated_commutator_symbol: bad index j");
  QuadraticForm cur = sys.forms[j].real_part();
  for (int l : word) {
    if (l < 0 || l >= sys.size())
      throw std::invalid_argument("iterated_commutator_symbol: bad word letter");
    const QuadraticForm im_l = sys.forms[l].imag_part();
    cur = poisson_bracket(im_l, poisson_bracket(im_l, cur));
  }
  const double sign = (word.size() % 2 == 0) ? 1.0 : -1.0;
  return cur.scaled(sign);
}

Mat word_product(const std::vector<Mat>& ImF, const std::vector<int>& word) {
  if (ImF.empty()) throw std::invalid_argument("word_product: empty family");
  const int d = static_cast<int>(ImF.front().rows());
  Mat W = Mat::Identity(d, d);
  for (int l : word) {
    if (l < 0 || l >= static_cast<int>(ImF.size()))
      throw std::invalid_argument("word_product: bad letter");
    W = W * ImF[l];
  }
  return W;
}

double bracket_identity_check(const SystemOfForms& sys, int j, int p,
                              const std::vector<int>& word, int s1, int s2,
                              const std::vector<Vec>& points) {
  if (j < 0 || j >= sys.size() || p < 0 || p >= sys.size())
    throw std::invalid_argument("bracket_identity_check: bad form index");
  if (s1 < 0 || s2 < 0)
    throw std::invalid_argument("bracket_identity_check: powers must be >= 0");
  const auto ImF = sys.im_hamilton_maps();
  const Mat A = ImF[p];
  const Mat W = word_product(ImF, word);
  const Mat ReQj = sys.forms[j].re();

  auto power = [&](int s) {
    Mat P = Mat::Identity(sys.dim(), sys.dim());
    for (int i = 0; i < s; ++i) P = P * A;
    return P;
  };
  const Mat L1 = W * power(s1);
  const Mat L2 = W * power(s2);

  // f as a quadratic form: f(X) = (L1 X)^T ReQj (L2 X), symmetrized.
  Mat Fq = L1.transpose() * ReQj * L2;
  Fq = 0.5 * (Fq + Fq.transpose().eval());
  const QuadraticForm f(sys.space, Fq.cast<std::complex<double>>());
  const QuadraticForm lhs = poisson_bracket(sys.forms[p].imag_part(), f);

  const Mat L1A = L1 * A;
  const Mat L2A = L2 * A;
  Mat R = 2.0 * (L1A.transpose() * ReQj * L2 + L1.transpose() * ReQj * L2A);
  R = 0.5 * (R + R.transpose().eval());
  const QuadraticForm rhs(sys.space, R.cast<std::complex<double>>());

  double worst = 0.0;
  for (const auto& X : points) {
    const double lv = lhs(X).real();
    const double rv = rhs(X).real();
    const double scale =
        std::max({1.0, std::abs(lv), std::abs(rv), X.squaredNorm()});
    worst = std::max(worst, std::abs(lv - rv) / scale);
  }
  return worst;
}

}  // namespace subcert
