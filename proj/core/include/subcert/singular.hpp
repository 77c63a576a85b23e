#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subcert/brackets.hpp"
#include "subcert/forms.hpp"
#include "subcert/subspace.hpp"

namespace subcert {

// Singular space of a single quadratic form,
//   S = (intersection over j = 0..2n-1 of Ker[Re F (Im F)^j]) cap R^{2n};
// the range bound on j comes from Cayley-Hamilton.
Subspace singular_space(const QuadraticForm& q, double rel_tol = kernel_rel_tol);

// Nested kernel tower of a system: T_0 = cap_j Ker Re F_j and
//   T_k = T_0 cap (cap_l (Im F_l)^{-1} T_{k-1}),
// which equals the intersection over all words (l_1..l_i), i <= k, of
// Ker(Re F_j Im F_{l_1} ... Im F_{l_i}).
struct KernelTower {
  std::vector<Subspace> levels;   // T_0..T_last
  std::optional<int> k0;          // least k with dim T_k = 0, if reached
  bool fixed_point = false;       // tower stalled at positive dimension
  int kmax = 0;

  std::vector<int> dims() const;
};

// Stops as soon as the dimension hits zero or two consecutive levels agree;
// kmax < 0 selects the default bound 2n.
KernelTower system_tower(const SystemOfForms& sys, int kmax = -1,
                         double rel_tol = kernel_rel_tol);

// Loss exponent delta = 2 k0 / (2 k0 + 1), kept as an exact rational.
struct LossExponent {
  int num = 0;
  int den = 1;
  double value() const { return static_cast<double>(num) / den; }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

LossExponent loss_exponent(int k0);

// Smallest eigenvalue of sum_{k<=k0} G_k (positive iff the tower condition
// holds at k0) together with the comparison scale trace/(2n).
struct PositivityCheck {
  double lambda_min = 0.0;
  double trace_scale = 0.0;
  bool positive = false;
};

PositivityCheck positive_definiteness_check(const SystemOfForms& sys, int k0,
                                            double rel_tol = 1e-9);

// Machine-checkable summary of a tower computation.
struct Certificate {
  std::string system_hash;
  int n = 0;
  int num_forms = 0;
  int kmax = 0;
  std::vector<int> tower_dims;
  std::optional<int> k0;
  LossExponent delta;
  double lambda_min = 0.0;   // of sum_{k<=k} G_k at the final level checked
  double rel_tol = kernel_rel_tol;
  bool satisfied = false;
  bool fixed_point = false;
  std::vector<double> sv_gaps;  // smallest kept / largest dropped singular value per level
};

Certificate certify(const SystemOfForms& sys, const std::string& system_hash,
                    int kmax = -1, double rel_tol = kernel_rel_tol);

// Heuristic check that |q| stays away from zero on the unit sphere of S.
struct PartialEllipticity {
  bool elliptic_on_s = false;
  double min_abs = 0.0;
  Vec argmin;
  bool heuristic = true;     // sampled + local descent, not a proof
  bool converged = false;
};

PartialEllipticity partial_ellipticity(const QuadraticForm& q,
                                       const Subspace& S,
                                       unsigned long long seed = 42);

}  // namespace subcert
