#pragma once

#include <string>
#include <vector>

#include "subcert/forms.hpp"

namespace subcert {

// JSON system files:
//   { "n": 2,
//     "forms": [ { "name": "q1",
//                  "terms": [ {"mono": "x1*x1", "re": 1.0, "im": 0.0}, ... ] } ] }
// A monomial is "v*w" with v, w in {x1..xn, xi1..xin}; duplicate monomials are
// summed.  Coefficients land symmetrically in the form matrix, so the parsed
// form satisfies q(X) = X^T Q X with the given polynomial.
SystemOfForms parse_system_json(const std::string& text);
SystemOfForms load_system_file(const std::string& path);

// Canonical serialization (sorted monomials, fixed key order).  Parsing the
// output reproduces the same system and the same digest.
std::string emit_system_json(const SystemOfForms& sys);

// FNV-1a hash of the canonical serialization, as 16 hex digits.
std::string system_digest(const SystemOfForms& sys);

// Standing hypothesis: every Re q_j is positive semidefinite.
struct HypothesisCheck {
  bool ok = true;
  int bad_form = -1;
  double min_eig = 0.0;
};
HypothesisCheck check_nonnegative_real_parts(const SystemOfForms& sys,
                                             double tol = 1e-10);

// Built-in families on R^{2n}, n >= 2 (empty weight vectors mean all ones):
//   position family:  q_j  = lambda_j  [ x1^2 + xi1^2 + i (xi1^2 + x_{j+1} xi1) ]
//   momentum family:  qt_j = lambdat_j [ x1^2 + xi1^2 + i (xi1^2 + xi_{j+1} xi1) ]
// for j = 1..n-1.  Each family alone has a kernel tower that stalls at a
// positive dimension; the combined system reaches zero at the first step.
SystemOfForms example_family_position(int n, const std::vector<double>& lambda = {});
SystemOfForms example_family_momentum(int n, const std::vector<double>& lambda = {});
SystemOfForms example_system(int n, const std::vector<double>& lambda = {},
                             const std::vector<double>& lambda_tilde = {});

// Single-form systems on R^4 with deeper kernel towers (k0 = 2 or 3):
//   k0 = 2:  q = x1^2 + xi1^2 + i (x2 xi1 + xi2^2)
//   k0 = 3:  q = xi1^2 + i (x1 xi2 + x2^2)
SystemOfForms deep_tower_system(int k0);

}  // namespace subcert
