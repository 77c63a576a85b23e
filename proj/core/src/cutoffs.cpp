#include "subcert/cutoffs.hpp"

#include <cmath>

namespace subcert {

ValDer smooth_splice(double t) {
  if (t <= 0.0) return {0.0, 0.0};
  if (t >= 1.0) return {1.0, 0.0};
  const double f = std::exp(-1.0 / t);
  const double g = std::exp(-1.0 / (1.0 - t));
  const double den = f + g;
  if (den == 0.0) return {t < 0.5 ? 0.0 : 1.0, 0.0};  // both underflowed
  const double v = f / den;
  // s' = f g (t^-2 + (1-t)^-2) / (f+g)^2
  const double d = f * g * (1.0 / (t * t) + 1.0 / ((1.0 - t) * (1.0 - t))) / (den * den);
  return {v, d};
}

ValDer StepUp::operator()(double t) const {
  const double scale = hi - lo;
  ValDer s = smooth_splice((t - lo) / scale);
  return {s.v, s.d / scale};
}

ValDer Plateau::operator()(double t) const {
  const double a = std::fabs(t);
  StepUp up{lo, hi};
  ValDer s = up(a);
  const double sign = (t < 0.0) ? -1.0 : 1.0;
  return {1.0 - s.v, -sign * s.d};
}

ValDer CutoffSpec::chi(double t) const {
  const double a = std::fabs(t);
  ValDer up = chi_rise(a);
  ValDer dn = chi_fall(a);
  const double sign = (t < 0.0) ? -1.0 : 1.0;
  const double v = up.v * (1.0 - dn.v);
  const double d = up.d * (1.0 - dn.v) - up.v * dn.d;
  return {v, sign * d};
}

}  // namespace subcert
