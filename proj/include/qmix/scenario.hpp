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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmix/bipartite.hpp"
#include "qmix/density.hpp"

namespace qmix {

struct ExpectationRow {
  std::string label;
  double proper = 0.0;
  double improper = 0.0;
  double difference = 0.0;
};

struct DiscriminatorRow {
  QMatrix observable;  // j rho_beta of the improper representative
  double proper = 0.0;
  double improper = 0.0;
  double expected = 0.0;  // 2 |c+ c-|^2
};

struct Check {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
};

/// One system-apparatus measurement, resolved into the improper mixture
/// (partial trace of the entangled output, represented by its quaternionic
/// purification) and the proper mixture (nonselective Lueders update,
/// represented with beta = 0).
struct ScenarioReport {
  complex c_plus;
  complex c_minus;
  SpinDirection direction;
  CMatrix partial_trace_mixture;
  CMatrix lueders_mixture;
  QDensity rho_improper;
  QDensity rho_proper;
  std::vector<ExpectationRow> complex_expectations;
  DiscriminatorRow discriminator;
  std::vector<Check> checks;

  bool all_passed() const;
};

/// Throws NotNormalized unless |c+|^2 + |c-|^2 = 1 within 1e-12.
ScenarioReport run_scenario(complex c_plus, complex c_minus, const SpinDirection& direction = {});

struct PropositionRow {
  std::string name;
  Index trials = 0;
  Index passed = 0;
  double worst_residual = 0.0;
};

struct PropositionSummary {
  std::uint64_t seed = 0;
  Index n_max = 0;
  Index trials = 0;
  std::vector<PropositionRow> rows;
};

/// Randomized check of the four projection propositions on `trials` draws
/// with n cycling through 2..n_max. Trial k uses derive_seed(seed, k).
/// Any failure throws PropositionViolated naming the proposition and the
/// trial seed. corrupt_beta replaces each rho_beta by a symmetric matrix
/// (a negative control that must be caught).
PropositionSummary check_propositions(Index n_max, Index trials, std::uint64_t seed, bool corrupt_beta = false);

}  // namespace qmix
