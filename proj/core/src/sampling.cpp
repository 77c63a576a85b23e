#include "subcert/sampling.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace subcert {

std::vector<Vec> sample_shell_grid(int dim, const SampleRegion& region,
                                   const std::vector<Vec>& structured) {
  if (dim <= 0) throw std::invalid_argument("sample_shell_grid: bad dimension");
  if (region.radii < 1 || region.directions < 1)
    throw std::invalid_argument("sample_shell_grid: bad grid");

  std::mt19937_64 rng(region.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_unit = [&]() {
    Vec u(dim);
    double nrm = 0.0;
    while (nrm < 1e-12) {
      for (int i = 0; i < dim; ++i) u(i) = gauss(rng);
      nrm = u.norm();
    }
    return Vec(u / nrm);
  };

  std::vector<double> radii(region.radii);
  for (int i = 0; i < region.radii; ++i) {
    const double t = (region.radii == 1) ? 0.0 : double(i) / double(region.radii - 1);
    radii[i] = region.r_min * std::pow(region.r_max / region.r_min, t);
  }

  std::vector<Vec> dirs;
  dirs.reserve(region.directions);
  if (structured.empty()) {
    for (int i = 0; i < dim && (int)dirs.size() < region.directions; ++i) {
      dirs.push_back(Vec::Unit(dim, i));
      if ((int)dirs.size() < region.directions) dirs.push_back(-Vec::Unit(dim, i));
    }
    while ((int)dirs.size() < region.directions) {
      Vec u = random_unit();
      dirs.push_back(u);
      if ((int)dirs.size() < region.directions) dirs.push_back(-u);
    }
  } else {
    // log-spaced deviation sizes; small deviations hug the structured cone
    const int tn = 32;
    std::vector<double> tg(tn);
    for (int k = 0; k < tn; ++k)
      tg[k] = 3e-4 * std::pow(1.0 / 3e-4, double(k) / double(tn - 1));
    for (int d = 0; d < region.directions; ++d) {
      const Vec& base = structured[d % structured.size()];
      const double t = tg[(d / structured.size()) % tn];
      Vec v = base + t * random_unit();
      const double nrm = v.norm();
      dirs.push_back(nrm > 1e-12 ? Vec(v / nrm) : random_unit());
    }
  }

  std::vector<Vec> out;
  out.reserve(radii.size() * dirs.size());
  for (double r : radii)
    for (const Vec& v : dirs) out.push_back(r * v);
  return out;
}

std::vector<Vec> filter_samples(std::vector<Vec> samples,
                                const std::function<bool(const Vec&)>& keep) {
  if (!keep) return samples;
  std::vector<Vec> out;
  out.reserve(samples.size());
  for (auto& s : samples)
    if (keep(s)) out.push_back(std::move(s));
  return out;
}

std::vector<Vec> columns_of(const Mat& basis) {
  std::vector<Vec> out;
  out.reserve(basis.cols());
  for (int c = 0; c < basis.cols(); ++c) out.push_back(basis.col(c));
  return out;
}

}  // namespace subcert
