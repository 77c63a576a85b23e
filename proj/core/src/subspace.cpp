#include "subcert/subspace.hpp"

#include <Eigen/SVD>
#include <stdexcept>

namespace subcert {

Mat Subspace::projector() const {
  if (dim() == 0) return Mat::Zero(ambient_dim(), ambient_dim());
  return basis * basis.transpose();
}

bool Subspace::contains(const Vec& v, double tol) const {
  if (v.size() != ambient_dim())
    throw std::invalid_argument("Subspace::contains: dimension mismatch");
  const double nrm = v.norm();
  if (nrm == 0.0) return true;
  const Vec res = v - projector() * v;
  return res.norm() <= tol * nrm;
}

Subspace kernel(const Mat& A, double rel_tol) {
  if (A.size() == 0) throw std::invalid_argument("kernel: empty matrix");
  Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  if (smax <= 0.0) return Subspace::full(static_cast<int>(A.cols()));
  const double cut = rel_tol * smax;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  const int d = static_cast<int>(A.cols());
  return Subspace{svd.matrixV().rightCols(d - rank)};
}

Subspace kernel(const CMat& A, double rel_tol) {
  Mat stacked(2 * A.rows(), A.cols());
  stacked.topRows(A.rows()) = A.real();
  stacked.bottomRows(A.rows()) = A.imag();
  return kernel(stacked, rel_tol);
}

Subspace intersect(const std::vector<Subspace>& spaces, double rel_tol) {
  if (spaces.empty()) throw std::invalid_argument("intersect: empty list");
  const int d = spaces.front().ambient_dim();
  // X lies in every V_i iff (I - P_i) X = 0 for all i; stack the residual maps.
  Mat stacked(static_cast<Eigen::Index>(spaces.size()) * d, d);
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    if (spaces[i].ambient_dim() != d)
      throw std::invalid_argument("intersect: ambient dimension mismatch");
    stacked.middleRows(static_cast<Eigen::Index>(i) * d, d) =
        Mat::Identity(d, d) - spaces[i].projector();
  }
  return kernel(stacked, rel_tol);
}

Subspace preimage(const Mat& A, const Subspace& V, double rel_tol) {
  if (A.cols() != V.ambient_dim() || A.rows() != V.ambient_dim())
    throw std::invalid_argument("preimage: dimension mismatch");
  const Mat res = (Mat::Identity(V.ambient_dim(), V.ambient_dim()) - V.projector()) * A;
  return kernel(res, rel_tol);
}

double subspace_distance(const Subspace& A, const Subspace& B) {
  if (A.ambient_dim() != B.ambient_dim())
    throw std::invalid_argument("subspace_distance: ambient dimension mismatch");
  const Mat D = A.projector() - B.projector();
  Eigen::JacobiSVD<Mat> svd(D);
  return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

}  // namespace subcert
