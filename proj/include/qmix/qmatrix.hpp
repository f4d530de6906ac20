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

#include <Eigen/Dense>

#include "qmix/errors.hpp"
#include "qmix/quaternion.hpp"

namespace qmix {

using Index = Eigen::Index;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Dense quaternionic matrix M = alpha + j * beta with complex blocks.
///
/// Products follow the scalar rule of qmul entrywise:
///   (A_a + j A_b)(B_a + j B_b) = (A_a B_a - conj(A_b) B_b) + j (conj(A_a) B_b + A_b B_a)
/// and the adjoint is (M_a + j M_b)^dagger = M_a^dagger - j M_b^T.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(Index rows, Index cols);
  QMatrix(CMatrix alpha, CMatrix beta);
  explicit QMatrix(CMatrix alpha);

  static QMatrix identity(Index n);
  static QMatrix zero(Index rows, Index cols);

  Index rows() const { return alpha_.rows(); }
  Index cols() const { return alpha_.cols(); }
  bool is_square() const { return rows() == cols(); }

  const CMatrix& alpha() const { return alpha_; }
  const CMatrix& beta() const { return beta_; }

  Quaternion operator()(Index r, Index c) const { return {alpha_(r, c), beta_(r, c)}; }
  void set(Index r, Index c, const Quaternion& q);

  QMatrix adjoint() const;

  QMatrix& operator+=(const QMatrix& other);
  QMatrix& operator-=(const QMatrix& other);
  QMatrix& operator*=(double s);

 private:
  CMatrix alpha_;
  CMatrix beta_;
};

QMatrix operator+(QMatrix a, const QMatrix& b);
QMatrix operator-(QMatrix a, const QMatrix& b);
QMatrix operator-(const QMatrix& a);
QMatrix operator*(double s, QMatrix a);
QMatrix operator*(QMatrix a, double s);
QMatrix operator*(const QMatrix& a, const QMatrix& b);

QMatrix matmul(const QMatrix& a, const QMatrix& b);

/// Left multiplication by j: j (M_a + j M_b) = -conj(M_b) + j conj(M_a).
QMatrix times_j(const QMatrix& m);

/// Complex-adjoint image [[M_a, -conj(M_b)], [M_b, conj(M_a)]].
struct ChiImage {
  CMatrix mat;

  /// Max entry of |J conj(X) J^{-1} - X|, J = [[0, -I], [I, 0]].
  static double membership_residual(const CMatrix& mat);
};

ChiImage chi(const QMatrix& m);

/// Throws NotInChiImage when the block structure is violated beyond tol.
QMatrix chi_inverse(const ChiImage& c, double tol = 1e-10);

double real_trace(const QMatrix& m);
double frobenius_norm(const QMatrix& m);
double max_abs_diff(const QMatrix& a, const QMatrix& b);

/// Max entry of |M - M^dagger|.
double hermiticity_residual(const QMatrix& m);
bool is_hermitian(const QMatrix& m, double tol = 1e-10);
bool is_anti_hermitian(const QMatrix& m, double tol = 1e-10);

/// Sorted (ascending) eigenvalues of a hermitian quaternionic matrix, one per
/// quaternionic eigenvalue. Computed from chi(M), whose spectrum is doubled.
RVector eigvals_hermitian(const QMatrix& m, double herm_tol = 1e-10);

/// Positivity through the smallest eigenvalue: min eig >= -tol.
bool is_positive_semidefinite(const QMatrix& m, double tol = 1e-10);

/// Numerical quaternionic rank: half the number of singular values of chi(M)
/// above rel_tol * sigma_max. Default rel_tol is dim(chi) * machine epsilon.
Index rank_q(const QMatrix& m, std::optional<double> rel_tol = std::nullopt);

/// Numerical rank of a complex matrix under the same threshold rule.
Index rank_c(const CMatrix& m, std::optional<double> rel_tol = std::nullopt);

QMatrix expm_q(const QMatrix& m);

bool is_unitary(const QMatrix& u, double tol = 1e-9);

}  // namespace qmix
