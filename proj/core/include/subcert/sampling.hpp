#pragma once

#include <functional>
#include <vector>

#include "subcert/phase_space.hpp"

namespace subcert {

// Deterministic radial sampling plan: log-spaced radii times a fixed set of
// unit directions.  The same seed always reproduces the same point set.
struct SampleRegion {
  int radii = 24;
  double r_min = 1.0;
  double r_max = 1e3;
  int directions = 128;
  unsigned long long seed = 42;
};

// Radial-shell grid.  Without structured directions the direction set is the
// signed coordinate axes followed by antithetic Gaussian pairs.  With
// structured directions (e.g. kernel vectors of a Gram matrix) each direction
// is a structured vector nudged by a random deviation whose size cycles over
// a log grid; this concentrates samples near the degenerate cone while still
// reaching generic positions.
std::vector<Vec> sample_shell_grid(int dim, const SampleRegion& region,
                                   const std::vector<Vec>& structured = {});

std::vector<Vec> filter_samples(std::vector<Vec> samples,
                                const std::function<bool(const Vec&)>& keep);

// Orthonormal columns of `basis` as a direction list.
std::vector<Vec> columns_of(const Mat& basis);

}  // namespace subcert
