#pragma once

namespace subcert {

// Scalar value/derivative pair returned by cutoff evaluations.
struct ValDer {
  double v = 0.0;
  double d = 0.0;
};

// C^inf splice s(t) = e^{-1/t} / (e^{-1/t} + e^{-1/(1-t)}), 0 for t <= 0 and
// 1 for t >= 1, with its exact derivative.
ValDer smooth_splice(double t);

// Monotone step: 0 on (-inf, lo], 1 on [hi, inf).
struct StepUp {
  double lo = 1.0;
  double hi = 2.0;
  ValDer operator()(double t) const;
};

// Even plateau: 1 on [0, lo], 0 on [hi, inf) (evaluated at |t|).
struct Plateau {
  double lo = 1.0;
  double hi = 2.0;
  ValDer operator()(double t) const;
};

// The cutoff family used by the weight construction:
//   psi : 1 on [-1,1], supported in [-2,2]
//   chi : 1 on 1 <= |t| <= 2, supported in 1/2 <= |t| <= 3
//   w   : 1 on |t| >= 2, supported in |t| >= 1
//   w1  : same profile as w (outer radial gate)
//   w2  : 1 on |t| >= 1, supported in |t| >= 1/2
// Support coupling satisfied by construction: supp psi' lies where w2 = 1 and
// supp w2' lies where psi = 1.
struct CutoffSpec {
  Plateau psi{1.0, 2.0};
  StepUp w{1.0, 2.0};
  StepUp w1{1.0, 2.0};
  StepUp w2{0.5, 1.0};
  // chi(t) = rise(1/2 -> 1) * (1 - rise(2 -> 3)) on |t|
  StepUp chi_rise{0.5, 1.0};
  StepUp chi_fall{2.0, 3.0};
  ValDer chi(double t) const;
};

}  // namespace subcert
