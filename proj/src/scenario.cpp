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

#include "qmix/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qmix/dynamics.hpp"
#include "qmix/sampling.hpp"

namespace qmix {

bool ScenarioReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

namespace {

double max_entry(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Check make_check(std::string name, double residual, double tol) {
  return {std::move(name), residual <= tol, residual, tol};
}

}  // namespace

ScenarioReport run_scenario(complex c_plus, complex c_minus, const SpinDirection& direction) {
  const MeasurementInteraction coupling = measurement_interaction(c_plus, c_minus, direction);
  const CVector up = spin_up(direction);
  const CVector down = spin_down(direction);

  // Improper: reduce the entangled system-apparatus state.
  const CDensity traced = partial_trace(coupling.psi.density(), 2, 2, Subsystem::Second);

  // Proper: nonselective measurement of sigma.n on the isolated system.
  const CVector phi0 = c_plus * up + c_minus * down;
  const CDensity initial = CDensity::validate(phi0 * phi0.adjoint());
  CMatrix basis(2, 2);
  basis << up, down;
  const CDensity collapsed = lueders_nonselective(initial, ProjectorFamily::from_basis(basis));

  const QDensity improper = validate(block_purify(up, down, c_plus, c_minus));
  const QDensity proper = embed(collapsed);

  std::vector<ExpectationRow> rows;
  const std::vector<std::pair<std::string, CMatrix>> observables = {
      {"I", CMatrix::Identity(2, 2)},
      {"sigma.n", sigma_dot(direction)},
      {"sigma_x", pauli_x()},
      {"sigma_y", pauli_y()},
      {"sigma_z", pauli_z()},
  };
  double worst_complex = 0.0;
  for (const auto& [label, m] : observables) {
    const Observable a(m);
    const double vp = expectation(a, proper);
    const double vi = expectation(a, improper);
    rows.push_back({label, vp, vi, std::abs(vp - vi)});
    worst_complex = std::max(worst_complex, std::abs(vp - vi));
  }

  const Observable disc = discriminator(improper);
  DiscriminatorRow disc_row{disc.mat(), expectation(disc, proper), expectation(disc, improper),
                            2.0 * std::norm(c_plus * c_minus)};

  std::vector<Check> checks;
  checks.push_back(make_check("partial_trace_equals_lueders", max_entry(traced.mat() - collapsed.mat()), 1e-12));
  checks.push_back(make_check("projection_matches_proper", max_entry(improper.mat().alpha() - proper.mat().alpha()),
                              1e-12));
  checks.push_back(make_check("improper_rank_one", static_cast<double>(std::abs(rank_q(improper.mat()) - 1)), 0.0));
  checks.push_back(make_check("improper_idempotent",
                              max_abs_diff(matmul(improper.mat(), improper.mat()), improper.mat()), 1e-10));
  checks.push_back(make_check("complex_observables_agree", worst_complex, 1e-11));
  checks.push_back(make_check("discriminator_on_improper", std::abs(disc_row.improper - disc_row.expected), 1e-10));
  checks.push_back(make_check("discriminator_on_proper", std::abs(disc_row.proper), 1e-12));

  const bool expect_improper = std::sqrt(disc_row.expected) > proper_tolerance(improper.mat());
  const MixtureKind expected_kind = expect_improper ? MixtureKind::Improper : MixtureKind::Proper;
  checks.push_back({"improper_classification", improper.classification() == expected_kind, improper.beta_norm(),
                    proper_tolerance(improper.mat())});
  checks.push_back({"proper_classification", proper.is_proper(), proper.beta_norm(),
                    proper_tolerance(proper.mat())});

  // A fixed complex rotation applied to both mixtures must keep both labels.
  CMatrix rot(2, 2);
  rot << std::cos(0.4), complex(0.0, -std::sin(0.4)), complex(0.0, -std::sin(0.4)), std::cos(0.4);
  const Propagator u(QMatrix(rot), 0.0, 1.0);
  const QDensity improper_t = evolve(improper, u);
  const QDensity proper_t = evolve(proper, u);
  const bool kept = improper_t.classification() == improper.classification() &&
                    proper_t.classification() == proper.classification();
  checks.push_back({"complex_unitary_preserves_partition", kept,
                    std::max(proper_t.beta_norm(), std::abs(improper_t.beta_norm() - improper.beta_norm())), 1e-12});

  return {c_plus,          c_minus,  direction,          traced.mat(),        collapsed.mat(),
          improper,        proper,   std::move(rows),    std::move(disc_row), std::move(checks)};
}

namespace {

[[noreturn]] void violated(const std::string& which, std::uint64_t trial_seed, const std::string& detail) {
  std::ostringstream os;
  os.precision(17);
  os << which << " violated (trial seed " << trial_seed << "): " << detail;
  throw Error(ErrorKind::PropositionViolated, os.str());
}

std::string describe(const char* what, double value, double tol) {
  std::ostringstream os;
  os.precision(17);
  os << what << " " << value << " exceeds " << tol;
  return os.str();
}

}  // namespace

PropositionSummary check_propositions(Index n_max, Index trials, std::uint64_t seed, bool corrupt_beta) {
  if (n_max < 2) throw Error(ErrorKind::InvalidArgument, "check_propositions needs n_max >= 2");
  if (trials < 0) throw Error(ErrorKind::InvalidArgument, "trials must be non-negative");
  PropositionSummary summary{seed, n_max, trials, {}};
  if (trials == 0) return summary;

  PropositionRow p1{"projection_is_density", 0, 0, 0.0};
  PropositionRow p2{"rank_bounds", 0, 0, 0.0};
  PropositionRow p3{"lift_round_trip", 0, 0, 0.0};
  PropositionRow p4{"rank_two_purification", 0, 0, 0.0};

  for (Index k = 0; k < trials; ++k) {
    const std::uint64_t trial_seed = sampling::derive_seed(seed, static_cast<std::uint64_t>(k));
    sampling::Rng rng(trial_seed);
    const Index n = 2 + k % (n_max - 1);
    std::uniform_int_distribution<Index> rank_dist(1, n);

    QMatrix rho = sampling::quaternionic_density(rng, n, rank_dist(rng));
    if (corrupt_beta) {
      const CMatrix sym = sampling::gaussian_matrix(rng, n, n);
      rho = QMatrix(rho.alpha(), 0.25 * (sym + sym.transpose()));
    }

    // P(rho) is a complex density.
    ++p1.trials;
    const double rho_herm = hermiticity_residual(rho);
    if (rho_herm > 1e-10) violated(p1.name, trial_seed, describe("hypothesis: rho hermiticity residual", rho_herm, 1e-10));
    const CMatrix& alpha = rho.alpha();
    const double herm = max_entry(alpha - alpha.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (alpha + alpha.adjoint()), Eigen::EigenvaluesOnly);
    const double neg = std::max(0.0, -solver.eigenvalues().minCoeff());
    const double trace = std::abs(alpha.trace().real() - 1.0);
    if (herm > 1e-10) violated(p1.name, trial_seed, describe("P(rho) hermiticity residual", herm, 1e-10));
    if (neg > 1e-10) violated(p1.name, trial_seed, describe("P(rho) negative eigenvalue", neg, 1e-10));
    if (trace > 1e-12) violated(p1.name, trial_seed, describe("P(rho) trace deviation", trace, 1e-12));
    ++p1.passed;
    p1.worst_residual = std::max({p1.worst_residual, herm, neg, trace});

    // m <= rank rho_alpha <= 2m.
    ++p2.trials;
    const QDensity q = validate(rho);
    const RankBounds bounds = rank_bounds_check(q);
    if (!bounds.pass) {
      violated(p2.name, trial_seed,
               "m = " + std::to_string(bounds.m) + ", rank rho_alpha = " + std::to_string(bounds.rank_alpha));
    }
    ++p2.passed;

    // Every admissible rank is reachable by a lift.
    const CDensity projected = complex_projection(q);
    if (projected.rank() > 1) {
      ++p3.trials;
      const Index m = projected.rank();
      std::uniform_int_distribution<Index> target_dist((m + 1) / 2, m);
      const Index target = target_dist(rng);
      const QDensity lifted = lift(projected, target);
      const double round_trip = max_entry(lifted.mat().alpha() - projected.mat());
      const Index got = rank_q(lifted.mat());
      if (round_trip > 1e-12) violated(p3.name, trial_seed, describe("P(lift) round trip", round_trip, 1e-12));
      if (got != target) {
        violated(p3.name, trial_seed, "lift rank " + std::to_string(got) + " != target " + std::to_string(target));
      }
      ++p3.passed;
      p3.worst_residual = std::max(p3.worst_residual, round_trip);
    }

    // Rank 2 purifies, rank 3 does not.
    ++p4.trials;
    const CDensity rank2 = CDensity::validate(sampling::complex_density(rng, n, 2));
    const QDensity pure = purify(rank2);
    const double idem = max_abs_diff(matmul(pure.mat(), pure.mat()), pure.mat());
    const double proj = max_entry(pure.mat().alpha() - rank2.mat());
    if (rank_q(pure.mat()) != 1) violated(p4.name, trial_seed, "purification of a rank-2 density is not rank 1");
    if (idem > 1e-10) violated(p4.name, trial_seed, describe("idempotency residual", idem, 1e-10));
    if (proj > 1e-12) violated(p4.name, trial_seed, describe("projection residual", proj, 1e-12));
    if (n >= 3) {
      const CDensity rank3 = CDensity::validate(sampling::complex_density(rng, n, 3));
      bool refused = false;
      try {
        purify(rank3);
      } catch (const Error& e) {
        refused = e.kind() == ErrorKind::NotPurifiable;
      }
      if (!refused) violated(p4.name, trial_seed, "a rank-3 density was purified");
    }
    ++p4.passed;
    p4.worst_residual = std::max({p4.worst_residual, idem, proj});
  }
  summary.rows = {p1, p2, p3, p4};
  return summary;
}

}  // namespace qmix
