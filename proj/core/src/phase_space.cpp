#include "subcert/phase_space.hpp"

#include <cmath>
#include <stdexcept>

namespace subcert {

PhaseSpace::PhaseSpace(int n_) : n(n_) {
  if (n < 1) throw std::invalid_argument("PhaseSpace: n must be >= 1");
}

Mat PhaseSpace::symplectic_matrix() const {
  Mat M = Mat::Zero(2 * n, 2 * n);
  M.topRightCorner(n, n) = -Mat::Identity(n, n);
  M.bottomLeftCorner(n, n) = Mat::Identity(n, n);
  return M;
}

double PhaseSpace::sigma(const Vec& X, const Vec& Y) const {
  if (X.size() != 2 * n || Y.size() != 2 * n)
    throw std::invalid_argument("sigma: dimension mismatch");
  return X.tail(n).dot(Y.head(n)) - X.head(n).dot(Y.tail(n));
}

double PhasePoint::japanese_bracket() const {
  return std::sqrt(1.0 + X.squaredNorm());
}

}  // namespace subcert
