#pragma once

#include <complex>
#include <string>
#include <vector>

#include "subcert/phase_space.hpp"

namespace subcert {

// Complex-valued quadratic form q(X) = X^T Q X on R^{2n}, Q symmetric.
// The polarized form is q(X;Y) = X^T Q Y, so q(X;X) = q(X).
struct QuadraticForm {
  PhaseSpace space;
  CMat Q;  // 2n x 2n symmetric

  QuadraticForm() : space(1), Q(CMat::Zero(2, 2)) {}
  QuadraticForm(PhaseSpace s, CMat Q_);

  int dim() const { return space.dim(); }
  std::complex<double> operator()(const Vec& X) const;
  std::complex<double> polarized(const Vec& X, const Vec& Y) const;

  Mat re() const { return Q.real(); }
  Mat im() const { return Q.imag(); }

  QuadraticForm real_part() const;
  QuadraticForm imag_part() const;
  QuadraticForm conjugate() const;
  QuadraticForm scaled(std::complex<double> c) const;
  QuadraticForm plus(const QuadraticForm& other) const;
};

// Hamilton map F of a quadratic form: the unique matrix with
// sigma(X, F Y) = q(X;Y), i.e. F = M^{-1} Q = -M Q.  It is skew with respect
// to sigma: F^T M + M F = 0.  For complex q the real/imaginary parts of F are
// the Hamilton maps of Re q and Im q.
struct HamiltonMap {
  PhaseSpace space;
  CMat F;

  Mat re() const { return F.real(); }
  Mat im() const { return F.imag(); }
};

HamiltonMap hamilton_map(const QuadraticForm& q);

// Recovers the form from its Hamilton map: Q = M F.
QuadraticForm form_of_hamilton_map(const PhaseSpace& space, const CMat& F);

// Poisson bracket H_a b = {a,b} = d_xi a . d_x b - d_x a . d_xi b.
// For quadratic a, b the result is again quadratic, with coefficient matrix
// 2 (A M B - B M A); its Hamilton map equals -2 [F_a, F_b].
QuadraticForm poisson_bracket(const QuadraticForm& a, const QuadraticForm& b);

// A finite family q_1..q_N of quadratic forms on a common phase space.
struct SystemOfForms {
  PhaseSpace space;
  std::vector<QuadraticForm> forms;
  std::vector<std::string> names;

  SystemOfForms() : space(1) {}
  explicit SystemOfForms(PhaseSpace s) : space(s) {}

  int size() const { return static_cast<int>(forms.size()); }
  int dim() const { return space.dim(); }
  void push(QuadraticForm q, std::string name = "");

  // Sum of the real parts' coefficient matrices (all real symmetric PSD when
  // the system has nonnegative real parts).
  Mat sum_re() const;
  std::vector<Mat> re_hamilton_maps() const;
  std::vector<Mat> im_hamilton_maps() const;
};

// Values of q at deterministic axis points and seeded random sphere points,
// scaled across a few radii. Used for cheap range/ellipticity inspection.
std::vector<std::complex<double>> numerical_range_sample(
    const QuadraticForm& q, int num_samples, unsigned long long seed = 42);

}  // namespace subcert
