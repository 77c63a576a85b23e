#pragma once

#include <string>
#include <vector>

#include "subcert/forms.hpp"
#include "subcert/hermite.hpp"

namespace subcert {

// Diagonal of the weight operator on a truncated basis: entries
// (1 + 2 |alpha| + n)^exponent. The oscillator 1 + (|x|^2+|xi|^2)^w is exactly
// diagonal here (body convention), so fractional powers are spectral calculus.
Vec build_weight_diag(const HermiteBasis& basis, double exponent);

struct RayleighPoint {
  int D = 0;            // interior cutoff level
  double c = 0.0;       // lambda_min of the pencil at this level
  int interior_dim = 0;
};

struct RayleighReport {
  std::vector<RayleighPoint> points;
  std::string trend;    // "stable" or "decaying"
  double exponent = 1.0;
  int guard = 2;
};

// Smallest generalized eigenvalue of (sum_j A_j^* A_j + I, W^2) over states
// supported on levels <= D, with A_j u evaluated exactly through a guard band
// of extra levels. exponent is the weight power (1/(2 k0 + 1) for loss k0).
double rayleigh_constant(const SystemOfForms& sys, double exponent, int D,
                         int guard = 2);

// Runs rayleigh_constant across the given levels (default {8,16,24,32}) and
// classifies the trend: "decaying" iff the values are monotone decreasing and
// the last is below half the first; otherwise "stable".
RayleighReport subellipticity_constant(const SystemOfForms& sys, int k0,
                                       std::vector<int> levels = {},
                                       int guard = 2);

// Same probe across a list of weight exponents; used to bracket the sharp
// loss by locating where the constant transitions from stable to decaying.
struct SharpnessScan {
  std::vector<double> exponents;
  std::vector<RayleighReport> reports;
};

SharpnessScan sharpness_scan(const SystemOfForms& sys,
                             const std::vector<double>& exponents,
                             std::vector<int> levels = {}, int guard = 2);

std::string classify_trend(const std::vector<RayleighPoint>& points);

}  // namespace subcert
