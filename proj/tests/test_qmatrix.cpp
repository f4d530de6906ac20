// Copyright 2026 The qmix Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "qmix/qmatrix.hpp"
#include "qmix/sampling.hpp"
#include "test_helpers.hpp"

using namespace qmix;
using qmix::test::max_entry;

namespace {

QMatrix eq15_state() {
  CMatrix alpha = CMatrix::Zero(2, 2);
  alpha(0, 0) = alpha(1, 1) = 0.5;
  CMatrix beta = CMatrix::Zero(2, 2);
  beta(0, 1) = -0.5;
  beta(1, 0) = 0.5;
  return QMatrix(alpha, beta);
}

}  // namespace

TEST_CASE("matmul basics", "[qmatrix]") {
  sampling::Rng rng(1);
  const QMatrix a = sampling::gaussian_qmatrix(rng, 3, 4);
  CHECK(max_abs_diff(matmul(a, QMatrix::identity(4)), a) == 0.0);

  const QMatrix j_eye = times_j(QMatrix::identity(3));
  CHECK(max_abs_diff(matmul(j_eye, j_eye), -QMatrix::identity(3)) == 0.0);

  CHECK_THROWS_AS(matmul(a, a), Error);
}

TEST_CASE("1x1 matmul is the scalar product", "[qmatrix]") {
  sampling::Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const QMatrix a = sampling::gaussian_qmatrix(rng, 1, 1);
    const QMatrix b = sampling::gaussian_qmatrix(rng, 1, 1);
    const Quaternion expect = qmul(a(0, 0), b(0, 0));
    const Quaternion got = matmul(a, b)(0, 0);
    REQUIRE(std::abs(got.alpha - expect.alpha) < 1e-15 * 10);
    REQUIRE(std::abs(got.beta - expect.beta) < 1e-15 * 10);
  }
}

TEST_CASE("pair-rule product matches the chi oracle", "[qmatrix][property]") {
  sampling::Rng rng(3);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const QMatrix a = sampling::gaussian_qmatrix(rng, 3, 3);
    const QMatrix b = sampling::gaussian_qmatrix(rng, 3, 3);
    const QMatrix oracle = qmix::test::from_chi_blocks(chi(a).mat * chi(b).mat);
    worst = std::max(worst, max_abs_diff(matmul(a, b), oracle));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("chi is an algebra homomorphism", "[qmatrix][property]") {
  sampling::Rng rng(4);
  for (Index n = 2; n <= 6; ++n) {
    for (int t = 0; t < 20; ++t) {
      const QMatrix a = sampling::gaussian_qmatrix(rng, n, n);
      const QMatrix b = sampling::gaussian_qmatrix(rng, n, n);
      const CMatrix prod = chi(a).mat * chi(b).mat;
      REQUIRE(max_entry(chi(matmul(a, b)).mat - prod) <= 1e-12 * std::max(1.0, max_entry(prod)));
      REQUIRE(max_entry(chi(a.adjoint()).mat - chi(a).mat.adjoint()) == 0.0);
      REQUIRE(max_entry(chi(a + b).mat - (chi(a).mat + chi(b).mat)) == 0.0);
    }
  }
}

TEST_CASE("chi on simple inputs and round trip", "[qmatrix]") {
  CHECK(max_entry(chi(QMatrix::identity(3)).mat - CMatrix::Identity(6, 6)) == 0.0);

  CMatrix expect(2, 2);
  expect << 0.0, -1.0, 1.0, 0.0;
  CHECK(max_entry(chi(times_j(QMatrix::identity(1))).mat - expect) == 0.0);

  sampling::Rng rng(5);
  const QMatrix m = sampling::gaussian_qmatrix(rng, 3, 5);
  CHECK(max_abs_diff(chi_inverse(chi(m)), m) == 0.0);
  CHECK(ChiImage::membership_residual(chi(m).mat) == 0.0);

  ChiImage broken = chi(m);
  broken.mat(0, 0) += 1e-6;
  CHECK_THROWS_MATCHES(chi_inverse(broken), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::NotInChiImage;
                       }));
}

TEST_CASE("real trace", "[qmatrix]") {
  CHECK(real_trace(QMatrix::identity(4)) == 4.0);
  CHECK(real_trace(times_j(QMatrix::identity(4))) == 0.0);
  sampling::Rng rng(6);
  for (int t = 0; t < 100; ++t) {
    const QMatrix m = sampling::gaussian_qmatrix(rng, 4, 4);
    REQUIRE(std::abs(real_trace(m) - 0.5 * chi(m).mat.trace().real()) <= 1e-13);
  }
  CHECK_THROWS_AS(real_trace(QMatrix(2, 3)), Error);
}

TEST_CASE("hermiticity characterization", "[qmatrix][property]") {
  sampling::Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const QMatrix h = sampling::hermitian_q(rng, 4);
    REQUIRE(is_hermitian(h));
    REQUIRE(max_entry(h.alpha() - h.alpha().adjoint()) <= 1e-15);
    REQUIRE(max_entry(h.beta() + h.beta().transpose()) <= 1e-15);

    // A symmetric beta part breaks hermiticity; a skew one does not.
    const CMatrix s = sampling::gaussian_matrix(rng, 4, 4);
    REQUIRE_FALSE(is_hermitian(QMatrix(h.alpha(), s + s.transpose())));
    REQUIRE(is_hermitian(QMatrix(h.alpha(), s - s.transpose())));
    // A non-hermitian alpha breaks it too.
    REQUIRE_FALSE(is_hermitian(QMatrix(s, h.beta())));
  }
  CHECK(is_hermitian(eq15_state()));
}

TEST_CASE("eigenvalues of hermitian quaternionic matrices", "[qmatrix]") {
  const RVector eye = eigvals_hermitian(QMatrix::identity(3));
  CHECK(max_entry((eye - RVector::Ones(3)).cast<complex>()) <= 1e-15);

  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 3.0;
  const RVector diag = eigvals_hermitian(QMatrix(d));
  CHECK(diag(0) == Catch::Approx(2.0).margin(1e-14));
  CHECK(diag(1) == Catch::Approx(3.0).margin(1e-14));

  // Closed-form 2x2 oracle: eigenvalues 1/2 -+ 1/2.
  const auto oracle = qmix::test::eig2_closed_form(0.5, 0.5, 0.5);
  const RVector pure = eigvals_hermitian(eq15_state());
  CHECK(std::abs(pure(0) - oracle[0]) <= 1e-14);
  CHECK(std::abs(pure(1) - oracle[1]) <= 1e-14);
  CHECK(oracle[0] == 0.0);
  CHECK(oracle[1] == 1.0);

  CHECK_THROWS_MATCHES(eigvals_hermitian(QMatrix(d, d)), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::NotHermitian;
                       }));
}

TEST_CASE("chi spectrum of hermitian matrices is doubled", "[qmatrix][property]") {
  sampling::Rng rng(8);
  for (Index n = 2; n <= 6; ++n) {
    for (int t = 0; t < 20; ++t) {
      const QMatrix h = sampling::hermitian_q(rng, n);
      Eigen::SelfAdjointEigenSolver<CMatrix> solver(chi(h).mat, Eigen::EigenvaluesOnly);
      const RVector& all = solver.eigenvalues();
      const double scale = std::max(1.0, all.cwiseAbs().maxCoeff());
      for (Index k = 0; k < n; ++k) REQUIRE(std::abs(all(2 * k) - all(2 * k + 1)) <= 1e-8 * scale);
    }
  }
}

TEST_CASE("2x2 quaternionic eigenvalues match the closed form", "[qmatrix][property]") {
  sampling::Rng rng(9);
  std::normal_distribution<double> normal;
  for (int t = 0; t < 200; ++t) {
    const double a = normal(rng);
    const double dd = normal(rng);
    const Quaternion q = from_four_reals(normal(rng), normal(rng), normal(rng), normal(rng));
    QMatrix m(2, 2);
    m.set(0, 0, Quaternion(a));
    m.set(1, 1, Quaternion(dd));
    m.set(0, 1, q);
    m.set(1, 0, qconj(q));
    const RVector got = eigvals_hermitian(m);
    const auto expect = qmix::test::eig2_closed_form(a, dd, qnorm(q));
    REQUIRE(std::abs(got(0) - expect[0]) <= 1e-12);
    REQUIRE(std::abs(got(1) - expect[1]) <= 1e-12);
  }
}

TEST_CASE("numerical rank", "[qmatrix]") {
  CHECK(rank_q(QMatrix(3, 3)) == 0);
  CHECK(rank_q(eq15_state()) == 1);
  CHECK(rank_q(QMatrix::identity(4)) == 4);

  // Diagonal quaternionic density with m nonzero eigenvalues, rotated by a
  // random quaternionic unitary.
  sampling::Rng rng(10);
  for (Index m = 1; m <= 5; ++m) {
    CMatrix d = CMatrix::Zero(5, 5);
    for (Index k = 0; k < m; ++k) d(k, k) = 1.0 / static_cast<double>(m);
    const QMatrix u = expm_q(sampling::anti_hermitian_q(rng, 5));
    const QMatrix rho = matmul(matmul(u, QMatrix(d)), u.adjoint());
    REQUIRE(rank_q(rho) == m);
    REQUIRE(rank_c(d) == m);
  }
}

TEST_CASE("matrix exponential", "[qmatrix]") {
  CHECK(max_abs_diff(expm_q(QMatrix(3, 3)), QMatrix::identity(3)) <= 1e-15);

  // exp(j pi) = cos(pi) + j sin(pi) = -1, checked against the 2x2 chi oracle.
  const QMatrix jpi = std::numbers::pi * times_j(QMatrix::identity(1));
  CMatrix rot(2, 2);
  rot << std::cos(std::numbers::pi), -std::sin(std::numbers::pi), std::sin(std::numbers::pi),
      std::cos(std::numbers::pi);
  const QMatrix got = expm_q(jpi);
  CHECK(max_abs_diff(got, qmix::test::from_chi_blocks(rot)) <= 1e-14);
  CHECK(max_abs_diff(got, -QMatrix::identity(1)) <= 1e-14);

  sampling::Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const QMatrix h = sampling::anti_hermitian_q(rng, 4);
    const QMatrix u = expm_q(h);
    REQUIRE(max_abs_diff(matmul(u.adjoint(), u), QMatrix::identity(4)) <= 1e-10);
    REQUIRE(is_unitary(u));

    const QMatrix m = 0.3 * sampling::gaussian_qmatrix(rng, 3, 3);
    REQUIRE(max_abs_diff(expm_q(m.adjoint()), expm_q(m).adjoint()) <= 1e-10);
    REQUIRE(max_abs_diff(expm_q(m), qmix::test::from_chi_blocks(qmix::test::taylor_exp(chi(m).mat))) <= 1e-12);
  }
}

TEST_CASE("positivity and norms", "[qmatrix]") {
  CHECK_FALSE(is_positive_semidefinite(-QMatrix::identity(2)));
  CHECK(is_positive_semidefinite(eq15_state()));

  sampling::Rng rng(12);
  for (int t = 0; t < 100; ++t) {
    const QMatrix m = sampling::gaussian_qmatrix(rng, 4, 3);
    const double f2 = frobenius_norm(m) * frobenius_norm(m);
    REQUIRE(std::abs(f2 - 0.5 * chi(m).mat.squaredNorm()) <= 1e-12 * f2);
  }
}
