#include "subcert/forms.hpp"

#include <random>
#include <stdexcept>

namespace subcert {

QuadraticForm::QuadraticForm(PhaseSpace s, CMat Q_) : space(s), Q(std::move(Q_)) {
  if (Q.rows() != space.dim() || Q.cols() != space.dim())
    throw std::invalid_argument("QuadraticForm: matrix must be 2n x 2n");
  const double asym = (Q - Q.transpose()).norm();
  if (asym > 1e-12 * std::max(1.0, Q.norm()))
    throw std::invalid_argument("QuadraticForm: matrix must be symmetric");
  Q = 0.5 * (Q + Q.transpose().eval());  // exact symmetry for downstream algebra
}

std::complex<double> QuadraticForm::operator()(const Vec& X) const {
  return polarized(X, X);
}

std::complex<double> QuadraticForm::polarized(const Vec& X, const Vec& Y) const {
  if (X.size() != dim() || Y.size() != dim())
    throw std::invalid_argument("QuadraticForm: point dimension mismatch");
  // plain bilinear pairing X^T Q Y (no conjugation; X, Y are real)
  const CVec QY = Q * Y.cast<std::complex<double>>();
  std::complex<double> s = 0.0;
  for (int i = 0; i < dim(); ++i) s += X(i) * QY(i);
  return s;
}

QuadraticForm QuadraticForm::real_part() const {
  return QuadraticForm(space, Q.real().cast<std::complex<double>>());
}

QuadraticForm QuadraticForm::imag_part() const {
  return QuadraticForm(space, Q.imag().cast<std::complex<double>>());
}

QuadraticForm QuadraticForm::conjugate() const {
  return QuadraticForm(space, Q.conjugate());
}

QuadraticForm QuadraticForm::scaled(std::complex<double> c) const {
  return QuadraticForm(space, c * Q);
}

QuadraticForm QuadraticForm::plus(const QuadraticForm& other) const {
  if (other.dim() != dim())
    throw std::invalid_argument("QuadraticForm: dimension mismatch in sum");
  return QuadraticForm(space, Q + other.Q);
}

HamiltonMap hamilton_map(const QuadraticForm& q) {
  const Mat M = q.space.symplectic_matrix();
  // M^{-1} = -M since M^2 = -I.
  CMat F = -(M.cast<std::complex<double>>() * q.Q);
  return HamiltonMap{q.space, std::move(F)};
}

QuadraticForm form_of_hamilton_map(const PhaseSpace& space, const CMat& F) {
  const Mat M = space.symplectic_matrix();
  return QuadraticForm(space, M.cast<std::complex<double>>() * F);
}

QuadraticForm poisson_bracket(const QuadraticForm& a, const QuadraticForm& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("poisson_bracket: dimension mismatch");
  const CMat M = a.space.symplectic_matrix().cast<std::complex<double>>();
  CMat C = 2.0 * (a.Q * M * b.Q - b.Q * M * a.Q);
  return QuadraticForm(a.space, std::move(C));
}

void SystemOfForms::push(QuadraticForm q, std::string name) {
  if (q.dim() != dim())
    throw std::invalid_argument("SystemOfForms: dimension mismatch");
  forms.push_back(std::move(q));
  names.push_back(name.empty() ? "q" + std::to_string(forms.size()) : std::move(name));
}

Mat SystemOfForms::sum_re() const {
  Mat S = Mat::Zero(dim(), dim());
  for (const auto& q : forms) S += q.re();
  return S;
}

std::vector<Mat> SystemOfForms::re_hamilton_maps() const {
  std::vector<Mat> out;
  out.reserve(forms.size());
  for (const auto& q : forms) out.push_back(hamilton_map(q).re());
  return out;
}

std::vector<Mat> SystemOfForms::im_hamilton_maps() const {
  std::vector<Mat> out;
  out.reserve(forms.size());
  for (const auto& q : forms) out.push_back(hamilton_map(q).im());
  return out;
}

std::vector<std::complex<double>> numerical_range_sample(
    const QuadraticForm& q, int num_samples, unsigned long long seed) {
  const int d = q.dim();
  std::vector<Vec> points;
  for (int i = 0; i < d; ++i) {
    Vec e = Vec::Zero(d);
    e(i) = 1.0;
    points.push_back(e);
    points.push_back(-e);
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  while (static_cast<int>(points.size()) < num_samples) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v(i) = gauss(rng);
    double nrm = v.norm();
    if (nrm < 1e-12) continue;
    points.push_back(v / nrm);
  }
  points.resize(num_samples);
  std::vector<std::complex<double>> values;
  values.reserve(points.size());
  for (const auto& X : points) values.push_back(q(X));
  return values;
}

}  // namespace subcert
