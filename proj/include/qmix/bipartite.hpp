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

#include <optional>
#include <vector>

#include "qmix/density.hpp"

// Complex bipartite machinery: tensor products, Schmidt decomposition,
// partial trace and the nonselective Lueders rule. Composite indices are
// row-major, (a, b) -> a * n2 + b.
namespace qmix {

CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(const CVector& a, const CVector& b);

struct SchmidtTerm {
  double weight = 0.0;  // sqrt(p_i)
  CVector left;
  CVector right;
};

class BipartiteState {
 public:
  /// Throws NotNormalized unless | ||vec|| - 1 | <= tol.
  BipartiteState(Index n1, Index n2, CVector vec, double tol = 1e-12);

  Index n1() const { return n1_; }
  Index n2() const { return n2_; }
  const CVector& vec() const { return vec_; }
  const std::optional<std::vector<SchmidtTerm>>& schmidt_terms() const { return schmidt_; }

  /// C with C(a, b) = vec(a * n2 + b).
  CMatrix coefficients() const;
  CMatrix density() const { return vec_ * vec_.adjoint(); }

 private:
  friend BipartiteState schmidt(BipartiteState state);

  Index n1_;
  Index n2_;
  CVector vec_;
  std::optional<std::vector<SchmidtTerm>> schmidt_;
};

/// Fills the Schmidt data: weights descending, only nonzero weights kept,
/// |psi> = sum_i weight_i |left_i> |right_i>.
BipartiteState schmidt(BipartiteState state);

enum class Subsystem { First, Second };

/// Traces out `over` from a density on C^n1 (x) C^n2.
CDensity partial_trace(const CMatrix& rho, Index n1, Index n2, Subsystem over);

/// Orthogonal projectors with P_i P_j = delta_ij P_i and sum_i P_i = I.
class ProjectorFamily {
 public:
  explicit ProjectorFamily(std::vector<CMatrix> projectors, double tol = 1e-10);

  /// Rank-1 projectors on the columns of a unitary.
  static ProjectorFamily from_basis(const CMatrix& basis);

  const std::vector<CMatrix>& projectors() const { return projectors_; }
  Index dim() const { return projectors_.empty() ? 0 : projectors_.front().rows(); }

 private:
  std::vector<CMatrix> projectors_;
};

/// rho -> sum_i P_i rho P_i.
CDensity lueders_nonselective(const CDensity& rho, const ProjectorFamily& family);

/// Spin-1/2 direction n = (sin t cos p, sin t sin p, cos t), angles in radians.
struct SpinDirection {
  double theta = 0.0;
  double phi = 0.0;
};

CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();
CMatrix sigma_dot(const SpinDirection& n);

/// Eigenvectors of sigma.n: |+n> = (cos t/2, e^{ip} sin t/2),
/// |-n> = (-e^{-ip} sin t/2, cos t/2). Reduce to e0, e1 along z.
CVector spin_up(const SpinDirection& n);
CVector spin_down(const SpinDirection& n);

struct MeasurementInteraction {
  CMatrix unitary;  // 4x4 on system (x) apparatus
  BipartiteState psi;
};

/// Ideal von Neumann coupling c+|+n>|0> + c-|-n>|0> -> c+|+n>|u> + c-|-n>|d>.
/// The apparatus basis is computational with |0> = |u> = e0, |d> = e1 and
/// the unitary is the controlled shift |+n><+n| (x) I + |-n><-n| (x) X.
MeasurementInteraction measurement_interaction(complex c_plus, complex c_minus,
                                               const SpinDirection& n = {});

}  // namespace qmix
