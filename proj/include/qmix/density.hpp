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
#include <optional>
#include <string_view>

#include "qmix/qmatrix.hpp"

namespace qmix {

enum class MixtureKind { Proper, Improper };

std::string_view to_string(MixtureKind kind);

/// Complex density matrix: hermitian, positive, unit trace. This is the image
/// of the complex projection and the representation of proper mixtures.
class CDensity {
 public:
  /// Throws NotHermitian, NotPositive or TraceNotOne with the measured
  /// deviation. The stored matrix is hermitized.
  static CDensity validate(const CMatrix& m, double tol = 1e-10);

  const CMatrix& mat() const { return mat_; }
  Index rank() const { return rank_; }
  Index dim() const { return mat_.rows(); }

 private:
  CDensity(CMatrix m, Index rank) : mat_(std::move(m)), rank_(rank) {}

  CMatrix mat_;
  Index rank_ = 0;
};

/// Quaternionic density matrix rho = rho_alpha + j rho_beta.
///
/// Hermiticity forces rho_alpha hermitian and rho_beta skew-symmetric.
/// The proper/improper label is the zero test on ||rho_beta||_F.
class QDensity {
 public:
  const QMatrix& mat() const { return mat_; }
  MixtureKind classification() const { return kind_; }
  bool is_proper() const { return kind_ == MixtureKind::Proper; }
  double beta_norm() const { return beta_norm_; }
  Index dim() const { return mat_.rows(); }

 private:
  friend QDensity validate(const QMatrix& m, double tol);
  QDensity(QMatrix m, MixtureKind kind, double beta_norm)
      : mat_(std::move(m)), kind_(kind), beta_norm_(beta_norm) {}

  QMatrix mat_;
  MixtureKind kind_ = MixtureKind::Proper;
  double beta_norm_ = 0.0;
};

/// Scale-aware zero threshold for ||rho_beta||_F: n * 1e-12 * (1 + ||rho_alpha||_F).
double proper_tolerance(const QMatrix& m);

QDensity validate(const QMatrix& m, double tol = 1e-10);

/// Complex density seen as a quaternionic one with beta = 0 (always Proper).
QDensity embed(const CDensity& rho);

/// P(rho) = (rho - i rho i) / 2 = rho_alpha.
CDensity complex_projection(const QDensity& rho);

MixtureKind classify(const QDensity& rho);

/// rho ~ rho' iff P(rho) = P(rho'), compared entrywise within tol.
bool equivalent(const QDensity& a, const QDensity& b, double tol = 1e-12);

/// The unique beta = 0 member of the equivalence class of rho.
QDensity class_representative(const QDensity& rho);

/// Hermitian quaternionic observable.
class Observable {
 public:
  explicit Observable(QMatrix m, double tol = 1e-10);
  explicit Observable(const CMatrix& m, double tol = 1e-10) : Observable(QMatrix(m), tol) {}

  const QMatrix& mat() const { return mat_; }
  bool is_complex() const { return is_complex_; }

 private:
  QMatrix mat_;
  bool is_complex_ = true;
};

/// <A>_rho = Re Tr(A rho) = Re Tr(A_alpha rho_alpha - conj(A_beta) rho_beta).
double expectation(const Observable& a, const QDensity& rho);

/// A = j rho_beta. Hermitian because rho_beta is skew-symmetric, and
/// <A>_rho = ||rho_beta||_F^2 while <A> vanishes on P(rho).
Observable discriminator(const QDensity& rho);

struct RankBounds {
  Index m = 0;           // quaternionic rank of rho
  Index rank_alpha = 0;  // complex rank of rho_alpha
  bool pass = false;     // m <= rank_alpha <= 2m
};

RankBounds rank_bounds_check(const QDensity& rho, std::optional<double> rel_tol = std::nullopt);

/// Quaternionic outer product psi psi^dagger of psi = u cu + v cv j for an
/// orthonormal pair (u, v). Complex part |cu|^2 u u^dagger + |cv|^2 v v^dagger,
/// skew part conj(cu cv) (conj(v) u^dagger - conj(u) v^dagger).
/// With u = |+>, v = |->, cu = cv = 1/sqrt(2) this is the purified two-level
/// improper mixture alpha = I/2, beta = [[0, -1/2], [1/2, 0]].
QMatrix block_purify(const CVector& u, const CVector& v, complex cu, complex cv);

/// Eigen-decomposition with a deterministic eigenbasis.
///
/// Eigenvalues are sorted descending. Inside a degenerate cluster the basis
/// is rebuilt from the cluster projector applied to the standard basis
/// (largest residual first, lowest index on ties). Every vector is then
/// phase-fixed so that its largest-magnitude component (lowest index on ties)
/// is real positive, and cluster members are ordered lexicographically by
/// (real, imag) of their components, descending.
struct Spectrum {
  RVector values;
  CMatrix vectors;
};

Spectrum canonical_spectrum(const CMatrix& hermitian);

/// Builds rho = rho_alpha + j rho_beta with P(rho) = rho_alpha exactly and
/// quaternionic rank target_rank. The k = m - target_rank largest eigenpairs
/// are merged two by two, (e1, e2), (e3, e4), ..., each pair becoming one
/// block_purify term with weights sqrt(p_a), sqrt(p_b). Requires m > 1 and
/// ceil(m / 2) <= target_rank <= m.
QDensity lift(const CDensity& rho_alpha, Index target_rank);

/// Quaternionic pure state projecting to rho_alpha. Possible for rank 1
/// (returned unchanged) and rank 2; anything larger throws NotPurifiable.
QDensity purify(const CDensity& rho_alpha);

enum class DensityKind { Proper, Improper, PureQ };

/// Deterministic per seed. Proper and Improper draw a uniform rank in [1, n].
QDensity random_density(Index n, DensityKind kind, std::uint64_t seed);

}  // namespace qmix
