#pragma once

#include <vector>

#include "subcert/phase_space.hpp"

namespace subcert {

// Quantization convention: how the momentum variable pairs with derivatives.
//   body:      xi  <->  D_x = -i d/dx     (oscillator eigenvalues 2|alpha|+n)
//   appendix:  xi  <->  D_x / (2 pi)      (oscillator eigenvalues (2|alpha|+n)/(2 pi);
//              ground state proportional to exp(-pi |x|^2))
enum class Convention { body, appendix };

// Truncated Hermite basis of L^2(R^n): all multi-indices alpha with
// |alpha| <= max_level, ordered by level then lexicographically.
struct HermiteBasis {
  int n = 1;
  int max_level = 0;
  Convention convention = Convention::body;

  HermiteBasis(int n_, int max_level_, Convention conv = Convention::body);

  int dim() const { return static_cast<int>(indices.size()); }
  const std::vector<int>& multi_index(int i) const { return indices[i]; }
  int level(int i) const { return levels[i]; }
  // -1 when the multi-index exceeds max_level
  int index_of(const std::vector<int>& alpha) const;

  HermiteBasis extended(int extra_levels) const {
    return HermiteBasis(n, max_level + extra_levels, convention);
  }

  std::vector<std::vector<int>> indices;
  std::vector<int> levels;

 private:
  std::vector<long long> strides_;  // mixed-radix lookup keyed by (max_level+1)
  std::vector<int> lookup_;
};

// Matrix of an operator on a truncated Hermite basis. `band` is the symbol
// degree used to assemble it: entries never couple levels differing by more
// than band, and rows/columns at levels above max_level - band are flagged
// as the guard region (kept exact here by internal extension, but excluded
// from interior spectral statements).
struct OperatorMatrix {
  HermiteBasis basis;
  CMat A;
  int band = 0;

  int interior_max_level() const { return basis.max_level - band; }
  std::vector<int> interior_index_set() const;
  CMat interior_block() const;
  OperatorMatrix adjoint() const;
};

// 1D ladder coefficient tables are internal; these build the coordinate
// multiplication and momentum operators on the truncated basis, with entries
// exact on the stored block (assembled on an extended basis, then cut).
CMat position_operator(const HermiteBasis& basis, int i);   // x_i
CMat momentum_operator(const HermiteBasis& basis, int i);   // body: D_i; appendix: D_i/(2 pi)

}  // namespace subcert
