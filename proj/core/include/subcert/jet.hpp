#pragma once

#include <cmath>
#include <stdexcept>

#include "subcert/cutoffs.hpp"
#include "subcert/phase_space.hpp"

namespace subcert {

// First-order jet (value + gradient) for forward-mode differentiation of the
// weight assembly.  Gradients are plain dense vectors over phase space.
struct Jet {
  double v = 0.0;
  Vec g;

  Jet() = default;
  Jet(double value, Vec grad) : v(value), g(std::move(grad)) {}
  static Jet constant(double value, int dim) { return {value, Vec::Zero(dim)}; }

  bool identically_zero() const { return v == 0.0 && (g.size() == 0 || g.isZero(0.0)); }
};

inline Jet operator+(const Jet& a, const Jet& b) { return {a.v + b.v, a.g + b.g}; }
inline Jet operator-(const Jet& a, const Jet& b) { return {a.v - b.v, a.g - b.g}; }
inline Jet operator*(const Jet& a, const Jet& b) { return {a.v * b.v, a.v * b.g + b.v * a.g}; }
inline Jet operator*(double c, const Jet& a) { return {c * a.v, c * a.g}; }
inline Jet operator*(const Jet& a, double c) { return c * a; }
inline Jet operator+(const Jet& a, double c) { return {a.v + c, a.g}; }
inline Jet operator+(double c, const Jet& a) { return a + c; }
inline Jet operator-(const Jet& a) { return {-a.v, -a.g}; }

inline Jet operator/(const Jet& a, const Jet& b) {
  if (b.v == 0.0) throw std::domain_error("jet division by zero");
  const double inv = 1.0 / b.v;
  return {a.v * inv, inv * a.g - (a.v * inv * inv) * b.g};
}

// a^p for a.v > 0 (real exponent).
inline Jet pow(const Jet& a, double p) {
  if (a.v <= 0.0) throw std::domain_error("jet pow of non-positive base");
  const double vp = std::pow(a.v, p);
  return {vp, (p * vp / a.v) * a.g};
}

inline Jet sqrt(const Jet& a) { return pow(a, 0.5); }

// Compose a scalar cutoff (value/derivative at a.v) with the jet a.
template <typename Cutoff>
Jet compose(const Cutoff& c, const Jet& a) {
  ValDer s = c(a.v);
  return {s.v, s.d * a.g};
}

// X^T A X for real symmetric A; gradient 2 A X.
inline Jet quadratic_jet(const Mat& A, const Vec& X) {
  Vec AX = A * X;
  return {X.dot(AX), 2.0 * AX};
}

// <X> = sqrt(1 + |X|^2)
inline Jet japanese_bracket_jet(const Vec& X) {
  const double v = std::sqrt(1.0 + X.squaredNorm());
  return {v, X / v};
}

inline Jet norm2_jet(const Vec& X) { return {X.squaredNorm(), 2.0 * X}; }

// Derivative of f along the Hamilton flow of a form with imaginary Hamilton
// map block ImF: H f (X) = grad f . (2 ImF X).
inline double hamilton_derivative(const Jet& f, const Mat& ImF, const Vec& X) {
  return f.g.dot(2.0 * (ImF * X));
}

}  // namespace subcert
