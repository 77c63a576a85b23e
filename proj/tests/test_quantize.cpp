#include <cmath>
#include <complex>

#include "doctest.h"
#include "subcert/forms.hpp"
#include "subcert/hermite.hpp"
#include "subcert/polynomial.hpp"
#include "subcert/quantize.hpp"

using namespace subcert;
using C = std::complex<double>;

namespace {

constexpr double pi = 3.14159265358979323846;

// Analytic 1D ladder tables, written out independently of the library.
CMat table_x(int levels, Convention conv) {
  const double s = conv == Convention::body ? 1.0 / std::sqrt(2.0)
                                            : 1.0 / (2.0 * std::sqrt(pi));
  CMat X = CMat::Zero(levels + 1, levels + 1);
  for (int k = 0; k + 1 <= levels; ++k) {
    X(k + 1, k) = s * std::sqrt(k + 1.0);
    X(k, k + 1) = s * std::sqrt(k + 1.0);
  }
  return X;
}

CMat table_p(int levels, Convention conv) {
  const double s = conv == Convention::body ? 1.0 / std::sqrt(2.0)
                                            : 1.0 / (2.0 * std::sqrt(pi));
  CMat P = CMat::Zero(levels + 1, levels + 1);
  for (int k = 0; k + 1 <= levels; ++k) {
    P(k + 1, k) = C(0, s * std::sqrt(k + 1.0));
    P(k, k + 1) = C(0, -s * std::sqrt(k + 1.0));
  }
  return P;
}

PolynomialSymbol mono(int n, std::vector<int> expo, C c = 1.0) {
  PolynomialSymbol a(n);
  a.add_term(expo, c);
  return a;
}

PolynomialSymbol oscillator(int n) {  // |x|^2 + |xi|^2
  PolynomialSymbol a(n);
  for (int v = 0; v < 2 * n; ++v) {
    std::vector<int> e(2 * n, 0);
    e[v] = 2;
    a.add_term(e, 1.0);
  }
  return a;
}

double max_abs(const CMat& A) { return A.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("hermite basis enumeration") {
  HermiteBasis b(2, 3);
  CHECK(b.dim() == 10);  // C(2+3, 2)
  for (int i = 0; i < b.dim(); ++i) {
    const auto& alpha = b.multi_index(i);
    int sum = 0;
    for (int a : alpha) sum += a;
    CHECK(sum == b.level(i));
    CHECK(b.index_of(alpha) == i);
  }
  for (int i = 1; i < b.dim(); ++i) CHECK(b.level(i) >= b.level(i - 1));
  CHECK(b.index_of({4, 0}) == -1);
  CHECK(b.extended(2).max_level == 5);
  CHECK_THROWS_AS(HermiteBasis(0, 3), std::invalid_argument);
}

TEST_CASE("ladder matrices match the analytic tables") {
  for (Convention conv : {Convention::body, Convention::appendix}) {
    HermiteBasis b(1, 8, conv);
    CMat X = position_operator(b, 0);
    CMat P = momentum_operator(b, 0);
    CHECK(max_abs(X - table_x(8, conv)) <= 1e-14);
    const CMat Pw = conv == Convention::body ? table_p(8, conv)
                                             : table_p(8, conv);
    CHECK(max_abs(P - Pw) <= 1e-14);

    // canonical commutator on the interior levels: [x, p] = i hbar_eff
    const C hbar = conv == Convention::body ? C(0, 1) : C(0, 1.0 / (2 * pi));
    CMat comm = X * P - P * X;
    for (int k = 0; k + 1 < b.dim(); ++k)  // last level is corrupted by the cut
      CHECK(std::abs(comm(k, k) - hbar) <= 1e-13);
  }
}

TEST_CASE("weyl quantization of the oscillator is diagonal") {
  SUBCASE("body convention, n = 1 and n = 2") {
    for (int n : {1, 2}) {
      HermiteBasis b(n, 6);
      OperatorMatrix H = weyl_quantize(oscillator(n), b);
      for (int i = 0; i < b.dim(); ++i)
        for (int j = 0; j < b.dim(); ++j) {
          const C want = i == j ? C(2.0 * b.level(i) + n) : C(0);
          CHECK(std::abs(H.A(i, j) - want) <= 1e-12);
        }
      CHECK(H.band == 2);
      CHECK(H.interior_max_level() == 4);
    }
  }
  SUBCASE("appendix convention scales by 1/(2 pi)") {
    HermiteBasis b(1, 6, Convention::appendix);
    OperatorMatrix H = weyl_quantize(oscillator(1), b);
    for (int i = 0; i < b.dim(); ++i)
      CHECK(std::abs(H.A(i, i) - (2.0 * b.level(i) + 1) / (2 * pi)) <= 1e-13);
    CHECK(max_abs(H.A - CMat(H.A.diagonal().asDiagonal())) <= 1e-13);
  }
}

TEST_CASE("weyl quantization against hand products") {
  HermiteBasis b(1, 6);
  const int big = 12;  // assemble tables past the cut so products are exact
  CMat X = table_x(big, Convention::body), P = table_p(big, Convention::body);
  auto cut = [&](const CMat& A) { return CMat(A.topLeftCorner(b.dim(), b.dim())); };

  SUBCASE("x^2 and commuting powers x^3, x^4, xi^4") {
    CHECK(max_abs(weyl_quantize(mono(1, {2, 0}), b).A - cut(X * X)) <= 1e-12);
    CHECK(max_abs(weyl_quantize(mono(1, {3, 0}), b).A - cut(X * X * X)) <= 1e-12);
    CHECK(max_abs(weyl_quantize(mono(1, {4, 0}), b).A - cut(X * X * X * X)) <= 1e-12);
    CHECK(max_abs(weyl_quantize(mono(1, {0, 4}), b).A - cut(P * P * P * P)) <= 1e-12);
  }

  SUBCASE("x xi averages the two orderings") {
    CHECK(max_abs(weyl_quantize(mono(1, {1, 1}), b).A - cut(0.5 * (X * P + P * X))) <=
          1e-12);
  }

  SUBCASE("x^2 xi averages all three placements") {
    const CMat want = (X * X * P + X * P * X + P * X * X) / 3.0;
    CHECK(max_abs(weyl_quantize(mono(1, {2, 1}), b).A - cut(want)) <= 1e-12);
  }

  SUBCASE("x^2 xi^2 averages all six orderings") {
    const CMat want = (X * X * P * P + X * P * X * P + X * P * P * X + P * X * X * P +
                       P * X * P * X + P * P * X * X) /
                      6.0;
    CHECK(max_abs(weyl_quantize(mono(1, {2, 2}), b).A - cut(want)) <= 1e-12);
  }
}

TEST_CASE("weyl quartic oscillator identity") {
  // Moyal: q # q = q^2 - 1 for q = x^2 + xi^2, so Op(q^2) = H^2 + I.
  HermiteBasis b(1, 8);
  PolynomialSymbol q2 = oscillator(1) * oscillator(1);
  OperatorMatrix Q2 = weyl_quantize(q2, b);
  for (int i = 0; i < b.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j) {
      const double h = 2.0 * b.level(i) + 1;
      const C want = i == j ? C(h * h + 1.0) : C(0);
      CHECK(std::abs(Q2.A(i, j) - want) <= 1e-11);
    }
}

TEST_CASE("stored entries are exact under truncation") {
  for (int n : {1, 2}) {
    HermiteBasis small(n, 5), large(n, 9);
    PolynomialSymbol a = oscillator(n) * oscillator(n);  // degree 4
    std::vector<int> e(2 * n, 0);
    e[0] = 1;
    e[n] = 1;
    a = a + mono(n, e, C(0.5, -0.25));
    CMat A_small = weyl_quantize(a, small).A;
    CMat A_large = weyl_quantize(a, large).A;
    CHECK(max_abs(A_small - A_large.topLeftCorner(small.dim(), small.dim())) <= 1e-12);
  }
}

TEST_CASE("degree guard") {
  HermiteBasis b(1, 4);
  CHECK_THROWS_AS(weyl_quantize(mono(1, {5, 0}), b), std::invalid_argument);
  CHECK_THROWS_AS(wick_smooth(mono(1, {5, 0})), std::invalid_argument);
}

TEST_CASE("wick smoothing is the gaussian moment expansion") {
  // For q = x^2 + xi^2 (n = 1): E[q(X+Y)^2] with Y ~ N(0, I/(4 pi)) equals
  // q^2 + (2/pi) q + 1/(2 pi^2); derived by hand from the gaussian moments.
  PolynomialSymbol q = oscillator(1);
  PolynomialSymbol sm = wick_smooth(q * q);
  PolynomialSymbol want =
      q * q + q.scaled(2.0 / pi) + PolynomialSymbol::constant(1, 1.0 / (2 * pi * pi));
  PolynomialSymbol diff = sm - want;
  diff.prune(1e-14);
  CHECK(diff.is_zero());

  // quadratic case: only the laplacian correction survives
  PolynomialSymbol sq = wick_smooth(q);
  PolynomialSymbol wantq = q + PolynomialSymbol::constant(1, 4.0 / (8 * pi));
  PolynomialSymbol dq = sq - wantq;
  dq.prune(1e-14);
  CHECK(dq.is_zero());
}

TEST_CASE("wick minus weyl for quadratics is the scalar laplacian correction") {
  HermiteBasis b(1, 6, Convention::appendix);
  PolynomialSymbol q = oscillator(1);
  CMat diff = wick_quantize(q, b).A - weyl_quantize(q, b).A;
  CHECK(max_abs(diff - (1.0 / (2 * pi)) * CMat::Identity(b.dim(), b.dim())) <= 1e-13);

  // harmonic symbol (laplacian zero): wick coincides with weyl
  HermiteBasis b2(2, 4, Convention::appendix);
  std::vector<int> e(4, 0);
  e[0] = 1;
  e[3] = 1;  // x1 xi2
  CMat diff2 = wick_quantize(mono(2, e), b2).A - weyl_quantize(mono(2, e), b2).A;
  CHECK(max_abs(diff2) <= 1e-13);
}

TEST_CASE("wick quantization of nonnegative symbols is positive semidefinite") {
  HermiteBasis b(1, 8, Convention::appendix);
  auto lambda_min = [](const CMat& A) {
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (A + A.adjoint()));
    return es.eigenvalues().minCoeff();
  };
  CHECK(lambda_min(wick_quantize(mono(1, {2, 0}), b).A) >= -1e-10);
  CHECK(lambda_min(wick_quantize(oscillator(1), b).A) >= -1e-10);
  CHECK(lambda_min(wick_quantize(oscillator(1) * oscillator(1), b).A) >= -1e-9);
  // wick(1) = identity exactly
  CHECK(max_abs(wick_quantize(PolynomialSymbol::constant(1, 1.0), b).A -
                CMat::Identity(b.dim(), b.dim())) <= 1e-13);
}

TEST_CASE("coherent state machinery") {
  HermiteBasis b(1, 6, Convention::appendix);
  WickMachinery wm = make_wick_machinery(b, 12);
  CHECK(wm.isometry_residual() <= 1e-10);

  // rank-one projections: hermitian, PSD, trace at most one
  for (int g : {0, (int)wm.grid.size() / 2}) {
    CMat S = wm.sigma_y(g);
    CHECK(max_abs(S - S.adjoint()) <= 1e-13);
    Eigen::SelfAdjointEigenSolver<CMat> es(S);
    CHECK(es.eigenvalues().minCoeff() >= -1e-12);
    const double tr = S.trace().real();
    CHECK(tr <= 1.0 + 1e-10);
    CHECK(tr >= 0.0);
  }

  // the weyl symbol of Sigma_Y is the shifted gaussian 2^n exp(-2 pi |X-Y|^2)
  Vec X(2);
  X << 0.25, -0.5;
  const Vec& Y = wm.grid[3];
  CHECK(wm.projector_symbol(3, X) ==
        doctest::Approx(2.0 * std::exp(-2 * pi * (X - Y).squaredNorm())).epsilon(1e-12));
}

TEST_CASE("quadrature route reproduces the smoothed-symbol route") {
  HermiteBasis b(1, 6, Convention::appendix);

  SUBCASE("quadratic symbol") {
    PhaseSpace sp(1);
    CMat Q(2, 2);
    Q << C(0, 1), 0, 0, C(1.0 / (4 * pi * pi), 0);
    PolynomialSymbol a = PolynomialSymbol::from_quadratic(QuadraticForm(sp, Q));
    QuadratureWick qw = wick_by_quadrature(a, b, 12);
    CHECK(qw.identity_residual <= 1e-12);
    CHECK(max_abs(qw.op.A - wick_quantize(a, b).A) <= 1e-6);
  }

  SUBCASE("quartic symbol") {
    PolynomialSymbol a = oscillator(1) * oscillator(1);
    QuadratureWick qw = wick_by_quadrature(a, b, 12);
    CHECK(max_abs(qw.op.A - wick_quantize(a, b).A) <= 1e-6);
  }

  SUBCASE("coarse grids are rejected when a tolerance is requested") {
    CHECK_THROWS_AS(wick_by_quadrature(oscillator(1), b, 3, 1e-12), std::runtime_error);
  }
}

TEST_CASE("composition law residual is the predicted scalar") {
  // For quadratics a = X^T A X, b = X^T B X the residual of
  //   a^Wick b^Wick = [ab - (1/4pi) a'.b' + (1/4 i pi){a,b}]^Wick + S
  // is S = s I with s = [tr(AB) - tr(A M B M^T) + 2 i tr(A M B)] / (8 pi^2).
  PhaseSpace sp(1);
  HermiteBasis b(1, 6, Convention::appendix);
  const Mat M = sp.symplectic_matrix();

  auto predicted = [&](const CMat& A, const CMat& B) {
    const C s = ((A * B).trace() - (A * M.cast<C>() * B * M.transpose().cast<C>()).trace() +
                 C(0, 2) * (A * M.cast<C>() * B).trace()) /
                (8 * pi * pi);
    return s;
  };
  auto run = [&](const CMat& A, const CMat& B) {
    PolynomialSymbol pa = PolynomialSymbol::from_quadratic(QuadraticForm(sp, A));
    PolynomialSymbol pb = PolynomialSymbol::from_quadratic(QuadraticForm(sp, B));
    CompositionResidual cr = composition_residual(pa, pb, b);
    const C s = predicted(A, B);
    CMat intr = cr.S.interior_block();
    CHECK(max_abs(intr - s * CMat::Identity(intr.rows(), intr.cols())) <= 1e-10);
    CHECK(cr.interior_norm == doctest::Approx(std::abs(s)).epsilon(1e-9));
  };

  CMat A = CMat::Zero(2, 2), B = CMat::Zero(2, 2);
  A(0, 0) = 1.0;            // x^2
  B(1, 1) = 1.0;            // xi^2
  run(A, B);
  run(A, A);
  A(0, 0) = C(0, 1);        // i x^2 + xi^2/(4 pi^2) against its conjugate
  A(1, 1) = 1.0 / (4 * pi * pi);
  run(A, A.conjugate());

  CHECK_THROWS_AS(
      composition_residual(oscillator(1) * oscillator(1), oscillator(1), b),
      std::invalid_argument);
}

TEST_CASE("convention transport") {
  PhaseSpace sp(2);
  CMat Q = CMat::Zero(4, 4);
  Q(0, 0) = C(1, 2);
  Q(2, 2) = C(0.5, -1);
  Q(0, 3) = Q(3, 0) = C(0.25, 0.75);
  QuadraticForm q(sp, Q);
  ConventionTransport tr = convention_transport(q);
  CHECK(tr.identity_residual <= 1e-12);

  // T is symplectic and (q_tilde o T) = q / (2 pi)
  const Mat M = sp.symplectic_matrix();
  CHECK((tr.T.transpose() * M * tr.T - M).norm() <= 1e-12);
  Vec X(4);
  X << 0.3, -1.2, 0.7, 2.1;
  Vec Xs = X;
  Xs.tail(2) /= 2 * pi;  // q_tilde(x, xi) = q(x, xi / (2 pi))
  CHECK(std::abs(tr.q_tilde(X) - q(Xs)) <= 1e-12 * (1.0 + std::abs(q(Xs))));
  CHECK(std::abs(tr.q_tilde(tr.T * X) - q(X) / (2 * pi)) <=
        1e-12 * (1.0 + std::abs(q(X))));
}

TEST_CASE("polynomial symbol algebra") {
  PolynomialSymbol x = PolynomialSymbol::coordinate(1, 0);
  PolynomialSymbol xi = PolynomialSymbol::coordinate(1, 1);
  PolynomialSymbol f = x * x * xi + xi.scaled(C(0, 2));  // x^2 xi + 2 i xi
  CHECK(f.degree() == 3);
  Vec X(2);
  X << 2.0, -3.0;
  CHECK(std::abs(f(X) - (C(-12.0) + C(0, -6))) <= 1e-13);

  // d/dx, laplacian, poisson and gradient pairing on known symbols
  PolynomialSymbol fx = f.derivative(0);
  CHECK(std::abs(fx(X) - C(-12.0)) <= 1e-13);  // 2 x xi
  PolynomialSymbol lap = (x * x * x * x).laplacian();
  CHECK(std::abs(lap(X) - 48.0) <= 1e-13);  // 12 x^2

  PolynomialSymbol pb = PolynomialSymbol::poisson(x * x, xi * xi);
  CHECK(std::abs(pb(X) - (-4.0 * X(0) * X(1))) <= 1e-13);  // {x^2, xi^2} = -4 x xi
  PolynomialSymbol gd = PolynomialSymbol::gradient_dot(x * x + xi * xi, x * xi);
  CHECK(std::abs(gd(X) - 4.0 * X(0) * X(1)) <= 1e-13);  // 2x.xi + 2xi.x

  PolynomialSymbol g = f.conjugate();
  CHECK(std::abs(g(X) - std::conj(f(X))) <= 1e-13);
}
