#include <complex>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "subcert/forms.hpp"
#include "subcert/phase_space.hpp"

using namespace subcert;
using namespace subcert::testing;
using C = std::complex<double>;

TEST_CASE("symplectic matrix and form") {
  for (int n : {1, 2, 3}) {
    PhaseSpace sp(n);
    const Mat M = sp.symplectic_matrix();
    CHECK((M * M + Mat::Identity(2 * n, 2 * n)).norm() == doctest::Approx(0.0));
    CHECK((M + M.transpose()).norm() == doctest::Approx(0.0));

    std::mt19937_64 rng(7);
    for (const Vec& X : random_points(rng, 2 * n, 4)) {
      for (const Vec& Y : random_points(rng, 2 * n, 4)) {
        CHECK(sp.sigma(X, Y) == doctest::Approx(X.dot(M * Y)).epsilon(1e-12));
        CHECK(sp.sigma(X, Y) == doctest::Approx(-sp.sigma(Y, X)).epsilon(1e-12));
        // sigma((x,xi),(y,eta)) = <xi,y> - <x,eta>
        const int m = n;
        const double direct = X.tail(m).dot(Y.head(m)) - X.head(m).dot(Y.tail(m));
        CHECK(sp.sigma(X, Y) == doctest::Approx(direct).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("hamilton map hand values, n = 1") {
  PhaseSpace sp(1);
  auto F_of = [&](C cxx, C cxxi, C cxixi) {
    CMat Q(2, 2);
    Q << cxx, cxxi, cxxi, cxixi;
    return hamilton_map(QuadraticForm(sp, Q)).F;
  };

  CMat F = F_of(1.0, 0.0, 1.0);  // x^2 + xi^2
  CHECK(std::abs(F(0, 0)) == doctest::Approx(0.0));
  CHECK(std::abs(F(0, 1) - 1.0) == doctest::Approx(0.0));
  CHECK(std::abs(F(1, 0) + 1.0) == doctest::Approx(0.0));
  CHECK(std::abs(F(1, 1)) == doctest::Approx(0.0));

  F = F_of(1.0, 0.0, 0.0);  // x^2: F = [[0,0],[-1,0]]
  CHECK(std::abs(F(1, 0) + 1.0) == doctest::Approx(0.0));
  CHECK(std::abs(F(0, 1)) + std::abs(F(0, 0)) + std::abs(F(1, 1)) ==
        doctest::Approx(0.0));

  F = F_of(0.0, 0.0, 1.0);  // xi^2: F = [[0,1],[0,0]]
  CHECK(std::abs(F(0, 1) - 1.0) == doctest::Approx(0.0));

  F = F_of(0.0, 0.5, 0.0);  // x xi: F = diag(1/2, -1/2)
  CHECK(std::abs(F(0, 0) - 0.5) == doctest::Approx(0.0));
  CHECK(std::abs(F(1, 1) + 0.5) == doctest::Approx(0.0));

  F = F_of(C(0, 1), 0.0, 0.0);  // i x^2: purely imaginary Hamilton map
  CHECK(std::abs(F(1, 0) - C(0, -1)) == doctest::Approx(0.0));
}

TEST_CASE("hamilton map properties on random forms") {
  std::mt19937_64 rng(11);
  for (int n : {1, 2, 3}) {
    PhaseSpace sp(n);
    const Mat M = sp.symplectic_matrix();
    for (int rep = 0; rep < 8; ++rep) {
      CMat Q = random_symmetric(rng, 2 * n).cast<C>() +
               C(0, 1) * random_symmetric(rng, 2 * n).cast<C>();
      QuadraticForm q(sp, Q);
      HamiltonMap h = hamilton_map(q);

      // skew with respect to sigma and recovery Q = M F
      CHECK((h.F.transpose() * M.cast<C>() + M.cast<C>() * h.F).norm() <= 1e-12 * Q.norm());
      CHECK((M.cast<C>() * h.F - Q).norm() <= 1e-12 * Q.norm());
      CHECK((form_of_hamilton_map(sp, h.F).Q - Q).norm() <= 1e-12 * Q.norm());

      // real/imaginary parts commute with taking the Hamilton map
      CHECK((hamilton_map(q.real_part()).F.real() - h.re()).norm() <= 1e-13 * Q.norm());
      CHECK((hamilton_map(q.imag_part()).F.real() - h.im()).norm() <= 1e-13 * Q.norm());

      // defining property sigma(X, F Y) = q(X;Y)
      for (const Vec& X : random_points(rng, 2 * n, 3))
        for (const Vec& Y : random_points(rng, 2 * n, 3)) {
          const C lhs = X.cast<C>().dot((M.cast<C>() * h.F * Y.cast<C>()));
          CHECK(std::abs(lhs - q.polarized(X, Y)) <= 1e-10 * (1.0 + std::abs(lhs)));
        }
    }
  }
}

TEST_CASE("polarized form is the symmetric bilinear extension") {
  std::mt19937_64 rng(13);
  PhaseSpace sp(2);
  CMat Q = random_symmetric(rng, 4).cast<C>() + C(0, 1) * random_symmetric(rng, 4).cast<C>();
  QuadraticForm q(sp, Q);
  for (const Vec& X : random_points(rng, 4, 5)) {
    CHECK(std::abs(q(X) - q.polarized(X, X)) <= 1e-12 * (1.0 + std::abs(q(X))));
    for (const Vec& Y : random_points(rng, 4, 3)) {
      CHECK(std::abs(q.polarized(X, Y) - q.polarized(Y, X)) <= 1e-12);
      // parallelogram: q(X+Y) = q(X) + 2 q(X;Y) + q(Y)
      const C lhs = q(X + Y);
      const C rhs = q(X) + 2.0 * q.polarized(X, Y) + q(Y);
      CHECK(std::abs(lhs - rhs) <= 1e-11 * (1.0 + std::abs(lhs)));
    }
  }
}

TEST_CASE("poisson bracket against finite differences") {
  std::mt19937_64 rng(17);
  for (int n : {1, 2, 3}) {
    PhaseSpace sp(n);
    for (int rep = 0; rep < 6; ++rep) {
      CMat Qa = random_symmetric(rng, 2 * n).cast<C>() +
                C(0, 1) * random_symmetric(rng, 2 * n).cast<C>();
      CMat Qb = random_symmetric(rng, 2 * n).cast<C>() +
                C(0, 1) * random_symmetric(rng, 2 * n).cast<C>();
      QuadraticForm a(sp, Qa), b(sp, Qb);
      QuadraticForm pb = poisson_bracket(a, b);
      CHECK((pb.Q - pb.Q.transpose()).norm() <= 1e-12 * (1.0 + pb.Q.norm()));
      for (const Vec& X : random_points(rng, 2 * n, 4)) {
        const C want = poisson_fd(a, b, X);
        CHECK(std::abs(pb(X) - want) <= 1e-9 * (1.0 + std::abs(want)));
      }
    }
  }
}

TEST_CASE("poisson bracket hamilton map is -2 [F_a, F_b]") {
  std::mt19937_64 rng(19);
  PhaseSpace sp(2);
  for (int rep = 0; rep < 6; ++rep) {
    CMat Qa = random_symmetric(rng, 4).cast<C>() + C(0, 1) * random_symmetric(rng, 4).cast<C>();
    CMat Qb = random_symmetric(rng, 4).cast<C>() + C(0, 1) * random_symmetric(rng, 4).cast<C>();
    QuadraticForm a(sp, Qa), b(sp, Qb);
    const CMat Fa = hamilton_map(a).F, Fb = hamilton_map(b).F;
    const CMat want = -2.0 * (Fa * Fb - Fb * Fa);
    const CMat got = hamilton_map(poisson_bracket(a, b)).F;
    CHECK((got - want).norm() <= 1e-11 * (1.0 + want.norm()));
  }
}

TEST_CASE("poisson bracket satisfies the jacobi identity") {
  std::mt19937_64 rng(23);
  PhaseSpace sp(2);
  auto rand_form = [&] {
    return QuadraticForm(sp, random_symmetric(rng, 4).cast<C>() +
                                 C(0, 1) * random_symmetric(rng, 4).cast<C>());
  };
  for (int rep = 0; rep < 4; ++rep) {
    QuadraticForm a = rand_form(), b = rand_form(), c = rand_form();
    CMat cyc = poisson_bracket(a, poisson_bracket(b, c)).Q +
               poisson_bracket(b, poisson_bracket(c, a)).Q +
               poisson_bracket(c, poisson_bracket(a, b)).Q;
    const double scale = a.Q.norm() * b.Q.norm() * c.Q.norm();
    CHECK(cyc.norm() <= 1e-10 * (1.0 + scale));
  }
}

TEST_CASE("numerical range of an elliptic form stays on its ray") {
  PhaseSpace sp(1);
  CMat Q = C(1, 1) * CMat::Identity(2, 2);
  QuadraticForm q(sp, Q);
  auto vals = numerical_range_sample(q, 64);
  REQUIRE(!vals.empty());
  for (C v : vals) {
    CHECK(v.real() > 0.0);
    CHECK(std::abs(v.imag() - v.real()) <= 1e-10 * v.real());
  }
}

TEST_CASE("system container sums and hamilton map lists") {
  std::mt19937_64 rng(29);
  SystemOfForms sys = random_system(rng, 2, 3, 2);
  Mat want = Mat::Zero(4, 4);
  for (const auto& q : sys.forms) want += q.re();
  CHECK((sys.sum_re() - want).norm() <= 1e-13 * (1.0 + want.norm()));

  auto reF = sys.re_hamilton_maps();
  auto imF = sys.im_hamilton_maps();
  REQUIRE((int)reF.size() == sys.size());
  REQUIRE((int)imF.size() == sys.size());
  for (int j = 0; j < sys.size(); ++j) {
    HamiltonMap h = hamilton_map(sys.forms[j]);
    CHECK((reF[j] - h.re()).norm() <= 1e-13 * (1.0 + h.re().norm()));
    CHECK((imF[j] - h.im()).norm() <= 1e-13 * (1.0 + h.im().norm()));
  }
}

TEST_CASE("scaled, conjugate and plus behave pointwise") {
  std::mt19937_64 rng(31);
  PhaseSpace sp(2);
  CMat Qa = random_symmetric(rng, 4).cast<C>() + C(0, 1) * random_symmetric(rng, 4).cast<C>();
  CMat Qb = random_symmetric(rng, 4).cast<C>() + C(0, 1) * random_symmetric(rng, 4).cast<C>();
  QuadraticForm a(sp, Qa), b(sp, Qb);
  const C lam(0.3, -1.7);
  for (const Vec& X : random_points(rng, 4, 5)) {
    CHECK(std::abs(a.scaled(lam)(X) - lam * a(X)) <= 1e-12 * (1.0 + std::abs(a(X))));
    CHECK(std::abs(a.conjugate()(X) - std::conj(a(X))) <= 1e-12);
    CHECK(std::abs(a.plus(b)(X) - (a(X) + b(X))) <= 1e-12 * (1.0 + std::abs(a(X) + b(X))));
    CHECK(a.real_part()(X).real() == doctest::Approx(a(X).real()).epsilon(1e-12));
    CHECK(a.imag_part()(X).real() == doctest::Approx(a(X).imag()).epsilon(1e-12));
  }
}
