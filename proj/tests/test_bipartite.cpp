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

#include "qmix/bipartite.hpp"
#include "qmix/sampling.hpp"
#include "test_helpers.hpp"

using namespace qmix;
using qmix::test::max_entry;

namespace {

CVector basis(Index n, Index k) {
  CVector v = CVector::Zero(n);
  v(k) = 1.0;
  return v;
}

}  // namespace

TEST_CASE("kron", "[bipartite]") {
  CHECK(max_entry(kron(CMatrix(CMatrix::Identity(2, 2)), CMatrix(CMatrix::Identity(3, 3))) - CMatrix::Identity(6, 6)) == 0.0);

  Eigen::SelfAdjointEigenSolver<CMatrix> solver(kron(pauli_z(), CMatrix(CMatrix::Identity(2, 2))));
  const RVector ev = solver.eigenvalues();
  CHECK(ev(0) == -1.0);
  CHECK(ev(1) == -1.0);
  CHECK(ev(2) == 1.0);
  CHECK(ev(3) == 1.0);

  sampling::Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    const CMatrix a = sampling::gaussian_matrix(rng, 2, 3);
    const CMatrix b = sampling::gaussian_matrix(rng, 4, 2);
    const CVector u = sampling::gaussian_vector(rng, 3);
    const CVector v = sampling::gaussian_vector(rng, 2);
    const CVector lhs = kron(a, b) * kron(u, v);
    const CVector rhs = kron(CVector(a * u), CVector(b * v));
    REQUIRE(max_entry(lhs - rhs) <= 1e-13 * std::max(1.0, max_entry(rhs)));
    // Row-major composite index (i, j) -> i * n2 + j.
    REQUIRE(kron(u, v)(1 * 2 + 1) == u(1) * v(1));
  }
}

TEST_CASE("Schmidt decomposition", "[bipartite]") {
  sampling::Rng rng(32);
  const CVector u = sampling::unit_vector(rng, 3);
  const CVector v = sampling::unit_vector(rng, 2);
  const BipartiteState product = schmidt(BipartiteState(3, 2, kron(u, v)));
  REQUIRE(product.schmidt_terms().has_value());
  REQUIRE(product.schmidt_terms()->size() == 1);
  CHECK(product.schmidt_terms()->front().weight == Catch::Approx(1.0).margin(1e-14));

  const double h = 1.0 / std::sqrt(2.0);
  const BipartiteState bell =
      schmidt(BipartiteState(2, 2, h * kron(basis(2, 0), basis(2, 0)) + h * kron(basis(2, 1), basis(2, 1))));
  REQUIRE(bell.schmidt_terms()->size() == 2);
  for (const SchmidtTerm& term : *bell.schmidt_terms()) CHECK(term.weight == Catch::Approx(h).margin(1e-15));

  for (int t = 0; t < 200; ++t) {
    const BipartiteState s = schmidt(BipartiteState(3, 4, sampling::unit_vector(rng, 12)));
    const auto& terms = *s.schmidt_terms();
    double total = 0.0;
    CVector rebuilt = CVector::Zero(12);
    for (std::size_t i = 0; i < terms.size(); ++i) {
      total += terms[i].weight * terms[i].weight;
      rebuilt += terms[i].weight * kron(terms[i].left, terms[i].right);
      if (i > 0) REQUIRE(terms[i].weight <= terms[i - 1].weight);
      for (std::size_t k = 0; k < terms.size(); ++k) {
        const double expect = (i == k) ? 1.0 : 0.0;
        REQUIRE(std::abs(terms[i].left.dot(terms[k].left) - expect) <= 1e-10);
        REQUIRE(std::abs(terms[i].right.dot(terms[k].right) - expect) <= 1e-10);
      }
    }
    REQUIRE(std::abs(total - 1.0) <= 1e-12);
    REQUIRE(max_entry(rebuilt - s.vec()) <= 1e-10);

    // Reduced spectrum equals the squared Schmidt weights.
    const CDensity reduced = partial_trace(s.density(), 3, 4, Subsystem::Second);
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(reduced.mat(), Eigen::EigenvaluesOnly);
    const RVector ev = solver.eigenvalues().reverse();
    for (std::size_t i = 0; i < terms.size(); ++i) {
      REQUIRE(std::abs(ev(static_cast<Index>(i)) - terms[i].weight * terms[i].weight) <= 1e-10);
    }
  }

  CHECK_THROWS_AS(BipartiteState(2, 2, CVector::Ones(4)), Error);
  CHECK_THROWS_AS(BipartiteState(2, 3, sampling::unit_vector(rng, 4)), Error);
}

TEST_CASE("partial trace", "[bipartite]") {
  sampling::Rng rng(33);
  const CVector u = sampling::unit_vector(rng, 2);
  const CVector v = sampling::unit_vector(rng, 3);
  const CVector uv = kron(u, v);
  const CMatrix rho = uv * uv.adjoint();
  CHECK(max_entry(partial_trace(rho, 2, 3, Subsystem::Second).mat() - u * u.adjoint()) <= 1e-15);
  CHECK(max_entry(partial_trace(rho, 2, 3, Subsystem::First).mat() - v * v.adjoint()) <= 1e-15);

  const CMatrix mixed = CMatrix::Identity(6, 6) / 6.0;
  CHECK(max_entry(partial_trace(mixed, 2, 3, Subsystem::Second).mat() - CMatrix::Identity(2, 2) / 2.0) <= 1e-15);
  CHECK(max_entry(partial_trace(mixed, 2, 3, Subsystem::First).mat() - CMatrix::Identity(3, 3) / 3.0) <= 1e-15);

  CHECK_THROWS_AS(partial_trace(mixed, 3, 3, Subsystem::First), Error);

  // Defining property: Tr((A (x) I) rho) = Tr(A Tr_2 rho), and symmetric for B.
  for (int t = 0; t < 200; ++t) {
    const CMatrix r = sampling::complex_density(rng, 6, 1 + t % 6);
    const CMatrix a = sampling::hermitian(rng, 2);
    const CMatrix b = sampling::hermitian(rng, 3);
    const CDensity r1 = partial_trace(r, 2, 3, Subsystem::Second);
    const CDensity r2 = partial_trace(r, 2, 3, Subsystem::First);
    REQUIRE(std::abs((kron(a, CMatrix(CMatrix::Identity(3, 3))) * r).trace() - (a * r1.mat()).trace()) <= 1e-12);
    REQUIRE(std::abs((kron(CMatrix(CMatrix::Identity(2, 2)), b) * r).trace() - (b * r2.mat()).trace()) <= 1e-12);
    REQUIRE(std::abs(r1.mat().trace().real() - r.trace().real()) <= 1e-12);
  }
}

TEST_CASE("projector families", "[bipartite]") {
  CHECK_NOTHROW(ProjectorFamily({CMatrix::Identity(2, 2)}));
  CHECK_THROWS_AS(ProjectorFamily({basis(2, 0) * basis(2, 0).adjoint()}), Error);
  CHECK_THROWS_AS(ProjectorFamily({CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)}), Error);
  CHECK_THROWS_AS(ProjectorFamily(std::vector<CMatrix>{}), Error);
}

TEST_CASE("Lueders rule", "[bipartite]") {
  sampling::Rng rng(34);
  const CDensity rho = CDensity::validate(sampling::complex_density(rng, 3, 2));
  CHECK(max_entry(lueders_nonselective(rho, ProjectorFamily({CMatrix::Identity(3, 3)})).mat() - rho.mat()) <= 1e-15);

  CMatrix d = CMatrix::Zero(3, 3);
  d(0, 0) = 0.2;
  d(1, 1) = 0.3;
  d(2, 2) = 0.5;
  const ProjectorFamily computational = ProjectorFamily::from_basis(CMatrix::Identity(3, 3));
  CHECK(max_entry(lueders_nonselective(CDensity::validate(d), computational).mat() - d) == 0.0);

  // Spin measurement along z of c+|+> + c-|->.
  const complex cp(0.6, 0.0);
  const complex cm(0.0, 0.8);
  const CVector phi = cp * basis(2, 0) + cm * basis(2, 1);
  const CDensity post = lueders_nonselective(CDensity::validate(phi * phi.adjoint()),
                                             ProjectorFamily::from_basis(CMatrix::Identity(2, 2)));
  CHECK(post.mat()(0, 0).real() == Catch::Approx(0.36).margin(1e-15));
  CHECK(post.mat()(1, 1).real() == Catch::Approx(0.64).margin(1e-15));
  CHECK(std::abs(post.mat()(0, 1)) == 0.0);

  for (int t = 0; t < 100; ++t) {
    const CDensity r = CDensity::validate(sampling::complex_density(rng, 4, 1 + t % 4));
    const CMatrix u = sampling::unitary(rng, 4);
    std::vector<CMatrix> ps = {u.leftCols(2) * u.leftCols(2).adjoint(), u.col(2) * u.col(2).adjoint(),
                               u.col(3) * u.col(3).adjoint()};
    const ProjectorFamily family(ps);
    const CDensity once = lueders_nonselective(r, family);
    const CDensity twice = lueders_nonselective(once, family);
    REQUIRE(max_entry(once.mat() - twice.mat()) <= 1e-14);
    REQUIRE(std::abs(once.mat().trace().real() - 1.0) <= 1e-12);
    for (const CMatrix& p : ps) REQUIRE(max_entry(p * once.mat() - once.mat() * p) <= 1e-13);
  }
}

TEST_CASE("spin directions", "[bipartite]") {
  const SpinDirection z{};
  CHECK(max_entry(spin_up(z) - basis(2, 0)) == 0.0);
  CHECK(max_entry(spin_down(z) - basis(2, 1)) == 0.0);
  sampling::Rng rng(35);
  std::uniform_real_distribution<double> angle(0.0, 6.0);
  for (int t = 0; t < 100; ++t) {
    const SpinDirection n{angle(rng), angle(rng)};
    const CMatrix s = sigma_dot(n);
    REQUIRE(max_entry(s * spin_up(n) - spin_up(n)) <= 1e-14);
    REQUIRE(max_entry(s * spin_down(n) + spin_down(n)) <= 1e-14);
    REQUIRE(std::abs(spin_up(n).dot(spin_down(n))) <= 1e-15);
  }
}

TEST_CASE("measurement interaction", "[bipartite]") {
  const MeasurementInteraction sharp = measurement_interaction(1.0, 0.0);
  CHECK(max_entry(sharp.unitary.adjoint() * sharp.unitary - CMatrix::Identity(4, 4)) == 0.0);
  CHECK(max_entry(sharp.psi.vec() - kron(basis(2, 0), basis(2, 0))) == 0.0);
  CHECK(schmidt(sharp.psi).schmidt_terms()->size() == 1);

  const double h = 1.0 / std::sqrt(2.0);
  const MeasurementInteraction even = measurement_interaction(h, h);
  const auto terms = *schmidt(even.psi).schmidt_terms();
  REQUIRE(terms.size() == 2);
  CHECK(terms[0].weight == Catch::Approx(h).margin(1e-15));
  const CDensity reduced = partial_trace(even.psi.density(), 2, 2, Subsystem::Second);
  CHECK(max_entry(reduced.mat() - CMatrix::Identity(2, 2) / 2.0) <= 1e-15);

  // General direction: output c+|+n>|u> + c-|-n>|d>, weights (|c+|, |c-|).
  const SpinDirection n{0.7, 1.9};
  const complex cp = std::polar(std::sqrt(0.3), 0.4);
  const complex cm = std::polar(std::sqrt(0.7), -1.1);
  const MeasurementInteraction gen = measurement_interaction(cp, cm, n);
  const CVector expect = cp * kron(spin_up(n), basis(2, 0)) + cm * kron(spin_down(n), basis(2, 1));
  CHECK(max_entry(gen.psi.vec() - expect) <= 1e-15);
  CHECK(max_entry(gen.unitary.adjoint() * gen.unitary - CMatrix::Identity(4, 4)) <= 1e-15);
  const auto w = *schmidt(gen.psi).schmidt_terms();
  CHECK(w[0].weight == Catch::Approx(std::sqrt(0.7)).margin(1e-14));
  CHECK(w[1].weight == Catch::Approx(std::sqrt(0.3)).margin(1e-14));

  CHECK_THROWS_MATCHES(measurement_interaction(1.0, 0.1), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.kind() == ErrorKind::NotNormalized; }));
}
