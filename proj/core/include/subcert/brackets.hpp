#pragma once

#include <vector>

#include "subcert/forms.hpp"

namespace subcert {

// Gram matrices of the nonnegative word forms
//   r_k(X) = sum_{j, (l_1..l_k)} Re q_j(Im F_{l_1} ... Im F_{l_k} X),
// computed without enumerating words through the recursion
//   G_0 = sum_j Re Q_j,   G_k = sum_l (Im F_l)^T G_{k-1} (Im F_l),
// so that r_k(X) = X^T G_k X.  Returns G_0..G_kmax.
std::vector<Mat> r_tower(const SystemOfForms& sys, int kmax);

// Coefficient matrix of the polarized word form
//   rt_{k,p}(X) = sum_{j, (l_1..l_{k-1})} Re q_j(W X ; W Im F_p X),
//   W = Im F_{l_1} ... Im F_{l_{k-1}},   1 <= k,
// i.e. the symmetrization of G_{k-1} Im F_p.
Mat rtilde(const SystemOfForms& sys, int k, int p);
Mat rtilde_from_gram(const Mat& G_km1, const Mat& ImFp);

// Symbol of the iterated commutator
//   (-1)^k H^2_{Im q_{l_k}} ... H^2_{Im q_{l_1}} Re q_j
// as a quadratic form (each H^2 is a double Poisson bracket).  word holds the
// indices l_1..l_k (0-based) into sys; j is the index of the leading form.
QuadraticForm iterated_commutator_symbol(const SystemOfForms& sys, int j,
                                         const std::vector<int>& word);

// Residual of the derivation identity for word forms: with
//   f(X) = Re q_j(W A^{s1} X ; W A^{s2} X),  A = Im F_p,  W = word product,
// one has
//   H_{Im q_p} f = 2 Re q_j(W A^{s1+1} X ; W A^{s2} X)
//                + 2 Re q_j(W A^{s1} X ; W A^{s2+1} X).
// Returns max over the given points of |lhs - rhs| / scale. lhs is evaluated
// through the quadratic Poisson bracket of f.
double bracket_identity_check(const SystemOfForms& sys, int j, int p,
                              const std::vector<int>& word, int s1, int s2,
                              const std::vector<Vec>& points);

// Word-product helper W = Im F_{w_0} ... Im F_{w_{end}} applied right to left
// (the last letter acts first, matching matrix product order).
Mat word_product(const std::vector<Mat>& ImF, const std::vector<int>& word);

}  // namespace subcert
