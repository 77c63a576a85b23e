#pragma once

#include <complex>
#include <map>
#include <vector>

#include "subcert/forms.hpp"

namespace subcert {

// Polynomial symbol on R^{2n} with complex coefficients, stored as a sparse
// monomial map. Exponents are ordered like phase-space coordinates:
// (x_1..x_n, xi_1..xi_n).
struct PolynomialSymbol {
  int n = 1;
  std::map<std::vector<int>, std::complex<double>> terms;

  explicit PolynomialSymbol(int n_ = 1);
  static PolynomialSymbol constant(int n, std::complex<double> c);
  static PolynomialSymbol coordinate(int n, int var);  // var in [0, 2n)
  static PolynomialSymbol from_quadratic(const QuadraticForm& q);

  int vars() const { return 2 * n; }
  int degree() const;
  bool is_zero(double tol = 0.0) const;

  void add_term(const std::vector<int>& expo, std::complex<double> c);
  PolynomialSymbol operator+(const PolynomialSymbol& o) const;
  PolynomialSymbol operator-(const PolynomialSymbol& o) const;
  PolynomialSymbol operator*(const PolynomialSymbol& o) const;
  PolynomialSymbol scaled(std::complex<double> c) const;
  PolynomialSymbol conjugate() const;

  PolynomialSymbol derivative(int var) const;
  PolynomialSymbol laplacian() const;  // sum of second derivatives, all 2n vars

  std::complex<double> operator()(const Vec& X) const;

  // d_xi a . d_x b - d_x a . d_xi b
  static PolynomialSymbol poisson(const PolynomialSymbol& a, const PolynomialSymbol& b);
  // sum_v d_v a d_v b over all 2n variables
  static PolynomialSymbol gradient_dot(const PolynomialSymbol& a, const PolynomialSymbol& b);

  void prune(double tol = 1e-15);
};

}  // namespace subcert
