#include "subcert/verifier.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "subcert/parallel.hpp"
#include "subcert/polynomial.hpp"
#include "subcert/quantize.hpp"

namespace subcert {

Vec build_weight_diag(const HermiteBasis& basis, double exponent) {
  Vec w(basis.dim());
  for (int i = 0; i < basis.dim(); ++i)
    w(i) = std::pow(1.0 + 2.0 * basis.level(i) + basis.n, exponent);
  return w;
}

double rayleigh_constant(const SystemOfForms& sys, double exponent, int D,
                         int guard) {
  if (D < 0) throw std::invalid_argument("rayleigh_constant: D must be >= 0");
  if (guard < 2) throw std::invalid_argument("rayleigh_constant: guard must be >= 2");
  const HermiteBasis big(sys.space.n, D + guard, Convention::body);

  // interior = levels <= D; the extended rows capture A_j u exactly since a
  // quadratic symbol couples at most two levels up
  std::vector<int> interior;
  for (int i = 0; i < big.dim(); ++i)
    if (big.level(i) <= D) interior.push_back(i);
  const int m = static_cast<int>(interior.size());

  CMat N = CMat::Zero(m, m);
  for (const auto& q : sys.forms) {
    const OperatorMatrix op = weyl_quantize(PolynomialSymbol::from_quadratic(q), big);
    CMat cols(big.dim(), m);
    for (int c = 0; c < m; ++c) cols.col(c) = op.A.col(interior[c]);
    N += cols.adjoint() * cols;
  }
  N += CMat::Identity(m, m);

  Vec w(m);
  for (int c = 0; c < m; ++c)
    w(c) = std::pow(1.0 + 2.0 * big.level(interior[c]) + big.n, exponent);

  // pencil (N, W^2) with diagonal W > 0: eigenvalues of W^{-1} N W^{-1}
  CMat P = N;
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) P(r, c) /= w(r) * w(c);
  P = 0.5 * (P + P.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<CMat> es(P, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

std::string classify_trend(const std::vector<RayleighPoint>& points) {
  if (points.size() < 2) return "stable";
  bool monotone = true;
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i].c > points[i - 1].c * (1.0 + 1e-9)) monotone = false;
  const bool halved = points.back().c < 0.5 * points.front().c;
  return (monotone && halved) ? "decaying" : "stable";
}

RayleighReport subellipticity_constant(const SystemOfForms& sys, int k0,
                                       std::vector<int> levels, int guard) {
  if (k0 < 0) throw std::invalid_argument("subellipticity_constant: k0 must be >= 0");
  if (levels.empty()) levels = {8, 16, 24, 32};
  RayleighReport rep;
  rep.exponent = 1.0 / (2.0 * k0 + 1.0);
  rep.guard = guard;
  rep.points.assign(levels.size(), RayleighPoint{});
  parallel_for(levels.size(), [&](std::size_t i) {
    RayleighPoint pt;
    pt.D = levels[i];
    pt.c = rayleigh_constant(sys, rep.exponent, levels[i], guard);
    const HermiteBasis b(sys.space.n, levels[i], Convention::body);
    pt.interior_dim = b.dim();
    rep.points[i] = pt;
  });
  rep.trend = classify_trend(rep.points);
  return rep;
}

SharpnessScan sharpness_scan(const SystemOfForms& sys,
                             const std::vector<double>& exponents,
                             std::vector<int> levels, int guard) {
  if (levels.empty()) levels = {8, 16, 24, 32};
  SharpnessScan scan;
  scan.exponents = exponents;
  for (double s : exponents) {
    RayleighReport rep;
    rep.exponent = s;
    rep.guard = guard;
    rep.points.assign(levels.size(), RayleighPoint{});
    parallel_for(levels.size(), [&](std::size_t i) {
      RayleighPoint pt;
      pt.D = levels[i];
      pt.c = rayleigh_constant(sys, s, levels[i], guard);
      const HermiteBasis b(sys.space.n, levels[i], Convention::body);
      pt.interior_dim = b.dim();
      rep.points[i] = pt;
    });
    rep.trend = classify_trend(rep.points);
    scan.reports.push_back(std::move(rep));
  }
  return scan;
}

}  // namespace subcert
