#pragma once

#include <vector>

#include "subcert/phase_space.hpp"

namespace subcert {

// A linear subspace of R^d held as an orthonormal column basis (d x r,
// r = dim; r = 0 encodes the zero subspace).
struct Subspace {
  Mat basis;

  static Subspace zero(int ambient_dim) { return Subspace{Mat::Zero(ambient_dim, 0)}; }
  static Subspace full(int ambient_dim) { return Subspace{Mat::Identity(ambient_dim, ambient_dim)}; }

  int ambient_dim() const { return static_cast<int>(basis.rows()); }
  int dim() const { return static_cast<int>(basis.cols()); }

  // Orthogonal projector onto the subspace.
  Mat projector() const;
  bool contains(const Vec& v, double tol = 1e-10) const;
};

// Relative singular-value threshold used to decide numerical rank.
inline constexpr double kernel_rel_tol = 1e-10;

// Null space of a real matrix via SVD; right singular vectors whose singular
// value is below tol * sigma_max span the kernel.
Subspace kernel(const Mat& A, double rel_tol = kernel_rel_tol);

// Real null space of a complex matrix: kernel of [Re A; Im A].
Subspace kernel(const CMat& A, double rel_tol = kernel_rel_tol);

// Intersection of subspaces.
Subspace intersect(const std::vector<Subspace>& spaces, double rel_tol = kernel_rel_tol);

// Preimage {X : A X in V}.
Subspace preimage(const Mat& A, const Subspace& V, double rel_tol = kernel_rel_tol);

// Operator-norm distance between orthogonal projectors; 0 for equal spaces,
// 1 when one contains a direction orthogonal to the other.
double subspace_distance(const Subspace& A, const Subspace& B);

}  // namespace subcert
