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
#include <vector>

#include "qmix/density.hpp"

namespace qmix {

/// Anti-hermitian generator H(t) = -(dU/dt) U^dagger, so dU/dt = -H U and
/// drho/dt = -[H, rho]. Either constant or a schedule sampled on a uniform
/// grid over [0, span], linearly interpolated and clamped outside it.
class Generator {
 public:
  explicit Generator(QMatrix constant, double tol = 1e-10);
  Generator(std::vector<QMatrix> samples, double span, double tol = 1e-10);

  QMatrix at(double t) const;

  Index dim() const { return samples_.front().rows(); }
  bool is_constant() const { return samples_.size() == 1; }
  double span() const { return span_; }
  const std::vector<QMatrix>& samples() const { return samples_; }

 private:
  std::vector<QMatrix> samples_;
  double span_ = 0.0;
};

class Propagator {
 public:
  /// Throws NotUnitary unless max |U^dagger U - I| <= tol.
  Propagator(QMatrix u, double t0, double t1, double tol = 1e-9);

  const QMatrix& u() const { return u_; }
  double t0() const { return t0_; }
  double t1() const { return t1_; }

 private:
  QMatrix u_;
  double t0_;
  double t1_;
};

/// rho -> U rho U^dagger.
QDensity evolve(const QDensity& rho, const Propagator& u);

/// Complex part of U rho U^dagger assembled from the blocks:
///   U_a r_a U_a^+ + conj(U_b) conj(r_a) U_b^T + U_a conj(r_b) U_b^T - conj(U_b) r_b U_a^+
CDensity projected_evolution(const QDensity& rho, const Propagator& u);

struct IntegrationResult {
  QDensity state;
  double max_hermiticity_correction = 0.0;  // largest ||rho - (rho + rho^+)/2||_F
  double max_trace_correction = 0.0;        // largest |Re Tr rho - 1| before rescaling
  Index steps = 0;
};

/// Classical RK4 on drho/dt = -[H(t), rho] over [0, t]. After every step rho
/// is re-hermitized and rescaled to unit trace; a correction above 1e-6
/// throws DriftExceeded.
IntegrationResult integrate(const QDensity& rho0, const Generator& gen, double t, Index steps);

/// Ordered product of expm_q(-h H(t_mid)) over `steps` midpoints, later
/// factors on the left.
Propagator time_ordered(const Generator& gen, double t, Index steps);

/// Right-hand side for the complex part:
///   d rho_a/dt = -[H_a, rho_a] + conj(H_b) rho_b - conj(rho_b) H_b
CMatrix projected_rate(const QDensity& rho, const QMatrix& h);

/// ||central difference of P(rho(t)) at t = 0 with step h - projected_rate||_F,
/// where rho(+-h) = U rho U^+ with U = expm_q(-+h H(0)).
double projected_rate_check(const QDensity& rho, const Generator& gen, double h = 1e-4);

/// ||rho_beta(t)||_F after evolving rho under gen for time t.
double partition_leak(const QDensity& rho, const Generator& gen, double t = 1.0);

struct Witness {
  Generator gen;
  QDensity rho;
  double leak = 0.0;
  int attempts = 0;
};

/// Searches seeds derive_seed(seed, attempt) for a Proper rho and a generator
/// with H_b != 0 whose unit-time evolution leaves the proper class
/// (leak > 1e-6). Throws WitnessNotFound after max_attempts.
Witness partition_witness(Index n, std::uint64_t seed, int max_attempts = 100);

}  // namespace qmix
