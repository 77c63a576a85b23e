#pragma once

#include <vector>

#include "subcert/hermite.hpp"
#include "subcert/polynomial.hpp"

namespace subcert {

// Weyl quantization of a polynomial symbol of degree <= 4 on a truncated
// Hermite basis. Each monomial is quantized as the average over all operator
// orderings of the corresponding position/momentum factors (for degree-2
// monomials this is (x^a D^b + D^b x^a)/2 up to ordering identities). The
// matrix is assembled on an internally extended basis and cut back, so every
// stored entry agrees with the untruncated operator.
OperatorMatrix weyl_quantize(const PolynomialSymbol& a, const HermiteBasis& basis);

// Gaussian smoothing that turns Weyl into Wick quantization: for polynomial
// symbols of degree <= 4,
//   smoothed = a + (Lap a)/(8 pi) + (Lap^2 a)/(128 pi^2),
// the exact moment expansion of convolving with 2^n exp(-2 pi |Y|^2).
PolynomialSymbol wick_smooth(const PolynomialSymbol& a);

// Wick quantization via the smoothed Weyl symbol. For a quadratic symbol the
// difference from weyl_quantize is the scalar tr(a'')/(8 pi) times identity.
// Positivity (a >= 0 implies PSD matrix) holds in the appendix convention.
OperatorMatrix wick_quantize(const PolynomialSymbol& a, const HermiteBasis& basis);

// Wave-packet machinery for the quadrature route (appendix convention only):
// coherent states centred at grid points Y with rank-one projections Sigma_Y.
struct WickMachinery {
  HermiteBasis basis;
  std::vector<Vec> grid;          // phase-space points Y = (y, eta)
  std::vector<double> weights;    // quadrature weights (Gaussian folded in)
  CMat overlaps;                  // dim x #grid, column = <phi_Y, h_alpha> sans Gaussian

  // Rank-one projection Sigma_Y as a matrix on the basis (true overlaps,
  // Gaussian factor included). Y given by grid index.
  CMat sigma_y(int grid_index) const;
  // Weyl symbol of Sigma_Y at a phase point X: 2^n exp(-2 pi |X-Y|^2).
  double projector_symbol(int grid_index, const Vec& X) const;
  // Max over the lowest few basis elements of |quadrature norm^2 - 1|.
  double isometry_residual(int how_many = 5) const;
};

// Tensor Gauss-Hermite grid with nodes_per_dim points per phase-space
// coordinate (2n coordinates in total).
WickMachinery make_wick_machinery(const HermiteBasis& basis, int nodes_per_dim);

struct QuadratureWick {
  OperatorMatrix op;
  double identity_residual;  // distance of quadrature(1) from the identity
};

// Oracle route: integrates a(Y) Sigma_Y over the grid. If check_tol > 0 the
// grid is rejected (std::runtime_error) when quadrature(1) differs from the
// identity by more than check_tol on the interior block.
QuadratureWick wick_by_quadrature(const PolynomialSymbol& a,
                                  const HermiteBasis& basis, int nodes_per_dim,
                                  double check_tol = -1.0);

// Residual S of the composition law
//   a^Wick b^Wick = [a b - (1/4 pi) a'.b' + (1/(4 i pi)) {a,b}]^Wick + S
// for quadratic a, b, reported with the spectral norm of its interior block.
struct CompositionResidual {
  OperatorMatrix S;
  double interior_norm;
};

CompositionResidual composition_residual(const PolynomialSymbol& a,
                                         const PolynomialSymbol& b,
                                         const HermiteBasis& basis);

// Symbol transport between the conventions: qt(x, xi) = q(x, xi / (2 pi)),
// and the symplectic scaling T(x, xi) = ((2 pi)^{-1/2} x, (2 pi)^{1/2} xi)
// satisfies (qt o T) = q / (2 pi) for quadratic q.
struct ConventionTransport {
  QuadraticForm q_tilde;
  Mat T;
  double identity_residual;
};

ConventionTransport convention_transport(const QuadraticForm& q);

}  // namespace subcert
