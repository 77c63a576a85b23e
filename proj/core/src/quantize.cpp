#include "subcert/quantize.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace subcert {

namespace {

constexpr double pi = std::numbers::pi;

// Gauss-Hermite nodes/weights for weight exp(-t^2) via the Jacobi matrix.
void gauss_hermite(int m, std::vector<double>& nodes, std::vector<double>& weights) {
  if (m < 1) throw std::invalid_argument("gauss_hermite: need at least one node");
  Mat J = Mat::Zero(m, m);
  for (int k = 1; k < m; ++k) {
    const double b = std::sqrt(k / 2.0);
    J(k, k - 1) = b;
    J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(J);
  nodes.resize(m);
  weights.resize(m);
  const double mu0 = std::sqrt(pi);  // integral of the weight
  for (int k = 0; k < m; ++k) {
    nodes[k] = es.eigenvalues()(k);
    const double v0 = es.eigenvectors()(0, k);
    weights[k] = mu0 * v0 * v0;
  }
}

}  // namespace

OperatorMatrix weyl_quantize(const PolynomialSymbol& a, const HermiteBasis& basis) {
  if (a.n != basis.n)
    throw std::invalid_argument("weyl_quantize: symbol/basis dimension mismatch");
  const int deg = a.degree();
  if (deg > 4)
    throw std::invalid_argument("weyl_quantize: symbol degree must be <= 4");

  const HermiteBasis ext = basis.extended(deg);
  const int dim_ext = ext.dim();

  // letter matrices x_1..x_n, xi-op_1..xi-op_n on the extended basis
  std::vector<CMat> letters;
  letters.reserve(2 * basis.n);
  for (int i = 0; i < basis.n; ++i) letters.push_back(position_operator(ext, i));
  for (int i = 0; i < basis.n; ++i) letters.push_back(momentum_operator(ext, i));

  CMat acc = CMat::Zero(dim_ext, dim_ext);
  for (const auto& [expo, coeff] : a.terms) {
    if (coeff == 0.0) continue;
    std::vector<int> word;
    for (int v = 0; v < 2 * basis.n; ++v)
      for (int k = 0; k < expo[v]; ++k) word.push_back(v);
    if (word.empty()) {
      acc += coeff * CMat::Identity(dim_ext, dim_ext);
      continue;
    }
    std::sort(word.begin(), word.end());
    CMat sum = CMat::Zero(dim_ext, dim_ext);
    long perms = 0;
    do {
      CMat prod = letters[word[0]];
      for (std::size_t k = 1; k < word.size(); ++k) prod = prod * letters[word[k]];
      sum += prod;
      ++perms;
    } while (std::next_permutation(word.begin(), word.end()));
    acc += (coeff / static_cast<double>(perms)) * sum;
  }

  const int dim = basis.dim();
  // identical enumeration order below max_level, so the leading block is the cut
  return OperatorMatrix{basis, acc.topLeftCorner(dim, dim), deg};
}

PolynomialSymbol wick_smooth(const PolynomialSymbol& a) {
  if (a.degree() > 4)
    throw std::invalid_argument("wick_smooth: symbol degree must be <= 4");
  const PolynomialSymbol lap = a.laplacian();
  const PolynomialSymbol lap2 = lap.laplacian();
  return a + lap.scaled(1.0 / (8.0 * pi)) + lap2.scaled(1.0 / (128.0 * pi * pi));
}

OperatorMatrix wick_quantize(const PolynomialSymbol& a, const HermiteBasis& basis) {
  return weyl_quantize(wick_smooth(a), basis);
}

CMat WickMachinery::sigma_y(int grid_index) const {
  if (grid_index < 0 || grid_index >= static_cast<int>(grid.size()))
    throw std::invalid_argument("sigma_y: grid index out of range");
  const Vec& Y = grid[grid_index];
  const int n = basis.n;
  double z2 = 0.0;
  for (int i = 0; i < n; ++i)
    z2 += Y(i) * Y(i) + Y(n + i) * Y(n + i);
  const CVec u = overlaps.col(grid_index) * std::exp(-0.5 * pi * z2);
  return u * u.adjoint();
}

double WickMachinery::projector_symbol(int grid_index, const Vec& X) const {
  const Vec& Y = grid[grid_index];
  if (X.size() != Y.size())
    throw std::invalid_argument("projector_symbol: dimension mismatch");
  return std::pow(2.0, basis.n) * std::exp(-2.0 * pi * (X - Y).squaredNorm());
}

double WickMachinery::isometry_residual(int how_many) const {
  const int kmax = std::min<int>(how_many, basis.dim());
  double worst = 0.0;
  for (int k = 0; k < kmax; ++k) {
    double total = 0.0;
    for (std::size_t g = 0; g < grid.size(); ++g)
      total += weights[g] * std::norm(overlaps(k, static_cast<int>(g)));
    worst = std::max(worst, std::abs(total - 1.0));
  }
  return worst;
}

WickMachinery make_wick_machinery(const HermiteBasis& basis, int nodes_per_dim) {
  if (basis.convention != Convention::appendix)
    throw std::invalid_argument(
        "make_wick_machinery: wave packets require the appendix convention");
  if (nodes_per_dim < 1)
    throw std::invalid_argument("make_wick_machinery: need at least one node");

  std::vector<double> t, w;
  gauss_hermite(nodes_per_dim, t, w);
  // transform to weight exp(-pi s^2): s = t / sqrt(pi), weight w / sqrt(pi)
  const double sp = std::sqrt(pi);
  for (auto& v : t) v /= sp;
  for (auto& v : w) v /= sp;

  const int n = basis.n;
  const int vars = 2 * n;
  long long total = 1;
  for (int v = 0; v < vars; ++v) {
    total *= nodes_per_dim;
    if (total > 5'000'000LL)
      throw std::invalid_argument("make_wick_machinery: grid too large");
  }

  WickMachinery mach{basis, {}, {}, CMat(basis.dim(), total)};
  mach.grid.reserve(total);
  mach.weights.reserve(total);

  std::vector<int> odo(vars, 0);
  std::vector<double> fact(basis.max_level + 1, 1.0);
  for (int k = 1; k <= basis.max_level; ++k) fact[k] = fact[k - 1] * k;

  for (long long g = 0; g < total; ++g) {
    Vec Y(vars);
    double weight = 1.0;
    for (int v = 0; v < vars; ++v) {
      Y(v) = t[odo[v]];
      weight *= w[odo[v]];
    }
    // overlap sans Gaussian: prod_i lambda_i^{alpha_i} / sqrt(alpha_i!),
    // lambda_i = sqrt(pi) (y_i + i eta_i)
    std::vector<std::complex<double>> lam(n);
    for (int i = 0; i < n; ++i)
      lam[i] = sp * std::complex<double>(Y(i), Y(n + i));
    for (int idx = 0; idx < basis.dim(); ++idx) {
      const auto& alpha = basis.multi_index(idx);
      std::complex<double> val = 1.0;
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < alpha[i]; ++k) val *= lam[i];
        val /= std::sqrt(fact[alpha[i]]);
      }
      mach.overlaps(idx, static_cast<int>(g)) = val;
    }
    mach.grid.push_back(std::move(Y));
    mach.weights.push_back(weight);
    for (int v = 0; v < vars; ++v) {
      if (++odo[v] < nodes_per_dim) break;
      odo[v] = 0;
    }
  }
  return mach;
}

QuadratureWick wick_by_quadrature(const PolynomialSymbol& a,
                                  const HermiteBasis& basis, int nodes_per_dim,
                                  double check_tol) {
  if (a.n != basis.n)
    throw std::invalid_argument("wick_by_quadrature: symbol/basis mismatch");
  const WickMachinery mach = make_wick_machinery(basis, nodes_per_dim);
  const int dim = basis.dim();
  CMat acc = CMat::Zero(dim, dim);
  CMat ident = CMat::Zero(dim, dim);
  for (std::size_t g = 0; g < mach.grid.size(); ++g) {
    const CVec u = mach.overlaps.col(static_cast<int>(g));
    const CMat rank1 = u * u.adjoint();
    const std::complex<double> av = a(mach.grid[g]);
    acc += (mach.weights[g] * av) * rank1;
    ident += mach.weights[g] * rank1;
  }
  const double id_res = (ident - CMat::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (check_tol > 0.0 && id_res > check_tol)
    throw std::runtime_error("wick_by_quadrature: grid too coarse for requested tolerance");
  return QuadratureWick{OperatorMatrix{basis, std::move(acc), a.degree()}, id_res};
}

CompositionResidual composition_residual(const PolynomialSymbol& a,
                                         const PolynomialSymbol& b,
                                         const HermiteBasis& basis) {
  if (a.degree() > 2 || b.degree() > 2)
    throw std::invalid_argument("composition_residual: quadratic symbols only");
  const HermiteBasis ext = basis.extended(2);
  const CMat A = wick_quantize(a, ext).A;
  const CMat B = wick_quantize(b, ext).A;
  const int dim = basis.dim();
  const CMat prod = (A * B).topLeftCorner(dim, dim);

  const std::complex<double> inv4ipi(0.0, -1.0 / (4.0 * pi));
  const PolynomialSymbol combo =
      a * b - PolynomialSymbol::gradient_dot(a, b).scaled(1.0 / (4.0 * pi)) +
      PolynomialSymbol::poisson(a, b).scaled(inv4ipi);
  const CMat C = wick_quantize(combo, basis).A;

  OperatorMatrix S{basis, prod - C, 4};
  Eigen::JacobiSVD<CMat> svd(S.interior_block());
  const double nrm = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
  return CompositionResidual{std::move(S), nrm};
}

ConventionTransport convention_transport(const QuadraticForm& q) {
  const int n = q.space.n;
  const int d = q.dim();
  Mat D = Mat::Identity(d, d);
  D.bottomRightCorner(n, n) /= 2.0 * pi;
  CMat Qt = D.cast<std::complex<double>>().transpose() * q.Q *
            D.cast<std::complex<double>>();

  Mat T = Mat::Identity(d, d);
  T.topLeftCorner(n, n) *= 1.0 / std::sqrt(2.0 * pi);
  T.bottomRightCorner(n, n) *= std::sqrt(2.0 * pi);

  const CMat composed = T.cast<std::complex<double>>().transpose() * Qt *
                        T.cast<std::complex<double>>();
  const double res = (composed - q.Q / (2.0 * pi)).norm() /
                     std::max(1.0, q.Q.norm());
  return ConventionTransport{QuadraticForm(q.space, Qt), T, res};
}

}  // namespace subcert
