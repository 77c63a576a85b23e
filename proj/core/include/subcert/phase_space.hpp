#pragma once

#include <Eigen/Dense>

namespace subcert {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

// Phase space R^{2n} with coordinates ordered (x_1..x_n, xi_1..xi_n) and the
// canonical symplectic form
//   sigma((x,xi),(y,eta)) = <xi,y> - <x,eta> = X^T M Y,  M = [[0,-I],[I,0]].
struct PhaseSpace {
  int n = 1;

  explicit PhaseSpace(int n_ = 1);

  int dim() const { return 2 * n; }

  // Matrix of sigma in the (x, xi) ordering.
  Mat symplectic_matrix() const;

  double sigma(const Vec& X, const Vec& Y) const;
};

// A point of R^{2n}; thin wrapper used where the x/xi split matters.
struct PhasePoint {
  Vec X;

  int dim() const { return static_cast<int>(X.size()); }
  int n() const { return dim() / 2; }
  Vec x() const { return X.head(n()); }
  Vec xi() const { return X.tail(n()); }
  double norm() const { return X.norm(); }
  // <X> = (1 + |X|^2)^{1/2}
  double japanese_bracket() const;
};

}  // namespace subcert
