#include <cmath>

#include <doctest.h>

#include "lepsim/expm.hpp"
#include "lepsim/types.hpp"

using namespace lepsim;

TEST_CASE("expm of zero and diagonal matrices") {
  CHECK((expm(CMat::Zero(4, 4)) - CMat::Identity(4, 4)).norm() < 1e-15);

  CMat d = CMat::Zero(3, 3);
  d(0, 0) = cxd(0.3, 0.0);
  d(1, 1) = cxd(-1.2, 0.7);
  d(2, 2) = cxd(0.0, -2.0);
  CMat e = expm(d);
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(e(i, i) - std::exp(d(i, i))) < 1e-14);
  CHECK(std::abs(e(0, 1)) < 1e-15);
}

TEST_CASE("expm of a nilpotent block") {
  CMat n = CMat::Zero(2, 2);
  n(0, 1) = 1.0;
  CMat e = expm(n);
  CHECK(std::abs(e(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(e(0, 1) - 1.0) < 1e-15);
  CHECK(std::abs(e(1, 0)) < 1e-15);
}

TEST_CASE("expm of a rotation generator") {
  double theta = 1.234;
  CMat g = CMat::Zero(2, 2);
  g(0, 1) = theta;
  g(1, 0) = -theta;
  CMat e = expm(g);
  CHECK(std::abs(e(0, 0) - std::cos(theta)) < 1e-14);
  CHECK(std::abs(e(0, 1) - std::sin(theta)) < 1e-14);
  CHECK(std::abs(e(1, 0) + std::sin(theta)) < 1e-14);
}

TEST_CASE("semigroup property under squaring and scaling") {
  CMat a = CMat::Zero(3, 3);
  a(0, 0) = cxd(-0.5, 2.0);
  a(0, 1) = cxd(0.8, -0.1);
  a(1, 0) = cxd(0.2, 0.3);
  a(1, 2) = cxd(-1.1, 0.0);
  a(2, 1) = cxd(0.4, 0.9);
  a(2, 2) = cxd(-0.2, -1.5);
  CMat e1 = expm(a);
  CMat e2 = expm(2.0 * a);
  CHECK((e1 * e1 - e2).norm() < 1e-13 * e2.norm());
}

TEST_CASE("large-norm argument agrees with the spectral form") {
  CMat h = CMat::Zero(2, 2);
  h(0, 0) = 30.0;
  h(0, 1) = 60.0;
  h(1, 0) = 60.0;
  h(1, 1) = -30.0;
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  CMat expected = es.eigenvectors() *
                  es.eigenvalues().array().exp().matrix().asDiagonal() *
                  es.eigenvectors().adjoint();
  CHECK((expm(h) - expected).norm() < 1e-10 * expected.norm());
}

TEST_CASE("logm inverts expm away from the branch cut") {
  CMat a = CMat::Zero(3, 3);
  a(0, 0) = cxd(-0.3, 0.4);
  a(0, 1) = cxd(0.5, 0.0);
  a(1, 1) = cxd(-0.1, -0.2);
  a(1, 2) = cxd(0.0, 0.3);
  a(2, 2) = cxd(-0.6, 0.1);
  CMat back = logm(expm(a));
  CHECK((back - a).norm() < 1e-12);
}

TEST_CASE("logm refuses eigenvalues on the closed negative real axis") {
  CMat m = CMat::Zero(2, 2);
  m(0, 0) = -1.0;
  m(1, 1) = 2.0;
  CHECK_THROWS_AS(logm(m), NumericsError);

  CMat singular = CMat::Zero(2, 2);
  singular(0, 0) = 1.0;
  CHECK_THROWS_AS(logm(singular), NumericsError);
}
