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

#include "qmix/qmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace qmix {

namespace {

std::string shape(const QMatrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

void require_same_shape(const QMatrix& a, const QMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(op) + ": " + shape(a) + " vs " + shape(b));
  }
}

void require_square(const QMatrix& m, const char* op) {
  if (!m.is_square()) {
    throw Error(ErrorKind::DimensionMismatch, std::string(op) + " needs a square matrix, got " + shape(m));
  }
}

}  // namespace

QMatrix::QMatrix(Index rows, Index cols)
    : alpha_(CMatrix::Zero(rows, cols)), beta_(CMatrix::Zero(rows, cols)) {}

QMatrix::QMatrix(CMatrix alpha, CMatrix beta) : alpha_(std::move(alpha)), beta_(std::move(beta)) {
  if (alpha_.rows() != beta_.rows() || alpha_.cols() != beta_.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "alpha and beta blocks differ in shape");
  }
}

QMatrix::QMatrix(CMatrix alpha)
    : alpha_(std::move(alpha)), beta_(CMatrix::Zero(alpha_.rows(), alpha_.cols())) {}

QMatrix QMatrix::identity(Index n) { return QMatrix(CMatrix::Identity(n, n)); }

QMatrix QMatrix::zero(Index rows, Index cols) { return QMatrix(rows, cols); }

void QMatrix::set(Index r, Index c, const Quaternion& q) {
  alpha_(r, c) = q.alpha;
  beta_(r, c) = q.beta;
}

QMatrix QMatrix::adjoint() const { return QMatrix(alpha_.adjoint(), -beta_.transpose()); }

QMatrix& QMatrix::operator+=(const QMatrix& other) {
  require_same_shape(*this, other, "add");
  alpha_ += other.alpha_;
  beta_ += other.beta_;
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& other) {
  require_same_shape(*this, other, "subtract");
  alpha_ -= other.alpha_;
  beta_ -= other.beta_;
  return *this;
}

QMatrix& QMatrix::operator*=(double s) {
  alpha_ *= s;
  beta_ *= s;
  return *this;
}

QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
QMatrix operator-(const QMatrix& a) { return QMatrix(-a.alpha(), -a.beta()); }
QMatrix operator*(double s, QMatrix a) { return a *= s; }
QMatrix operator*(QMatrix a, double s) { return a *= s; }
QMatrix operator*(const QMatrix& a, const QMatrix& b) { return matmul(a, b); }

QMatrix matmul(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "matmul: " + shape(a) + " times " + shape(b));
  }
  CMatrix alpha = a.alpha() * b.alpha() - a.beta().conjugate() * b.beta();
  CMatrix beta = a.alpha().conjugate() * b.beta() + a.beta() * b.alpha();
  return QMatrix(std::move(alpha), std::move(beta));
}

QMatrix times_j(const QMatrix& m) { return QMatrix(-m.beta().conjugate(), m.alpha().conjugate()); }

double ChiImage::membership_residual(const CMatrix& mat) {
  const Index r = mat.rows() / 2;
  const Index c = mat.cols() / 2;
  if (mat.rows() % 2 != 0 || mat.cols() % 2 != 0) return std::numeric_limits<double>::infinity();
  // X = [[A, B], [C, D]] belongs to the image iff D = conj(A) and B = -conj(C).
  const double d = (mat.bottomRightCorner(r, c) - mat.topLeftCorner(r, c).conjugate()).cwiseAbs().maxCoeff();
  const double b = (mat.topRightCorner(r, c) + mat.bottomLeftCorner(r, c).conjugate()).cwiseAbs().maxCoeff();
  return (r == 0 || c == 0) ? 0.0 : std::max(d, b);
}

ChiImage chi(const QMatrix& m) {
  const Index r = m.rows();
  const Index c = m.cols();
  CMatrix out(2 * r, 2 * c);
  out.topLeftCorner(r, c) = m.alpha();
  out.topRightCorner(r, c) = -m.beta().conjugate();
  out.bottomLeftCorner(r, c) = m.beta();
  out.bottomRightCorner(r, c) = m.alpha().conjugate();
  return {std::move(out)};
}

QMatrix chi_inverse(const ChiImage& c, double tol) {
  const double residual = ChiImage::membership_residual(c.mat);
  if (!(residual <= tol)) {
    std::ostringstream os;
    os << "block structure residual " << residual << " exceeds " << tol;
    throw Error(ErrorKind::NotInChiImage, os.str());
  }
  const Index r = c.mat.rows() / 2;
  const Index k = c.mat.cols() / 2;
  // Average the redundant blocks so a round trip is the identity.
  CMatrix alpha = 0.5 * (c.mat.topLeftCorner(r, k) + c.mat.bottomRightCorner(r, k).conjugate());
  CMatrix beta = 0.5 * (c.mat.bottomLeftCorner(r, k) - c.mat.topRightCorner(r, k).conjugate());
  return QMatrix(std::move(alpha), std::move(beta));
}

double real_trace(const QMatrix& m) {
  require_square(m, "real_trace");
  return m.alpha().trace().real();
}

double frobenius_norm(const QMatrix& m) {
  return std::sqrt(m.alpha().squaredNorm() + m.beta().squaredNorm());
}

double max_abs_diff(const QMatrix& a, const QMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  return std::max((a.alpha() - b.alpha()).cwiseAbs().maxCoeff(),
                  (a.beta() - b.beta()).cwiseAbs().maxCoeff());
}

double hermiticity_residual(const QMatrix& m) {
  if (!m.is_square()) return std::numeric_limits<double>::infinity();
  if (m.rows() == 0) return 0.0;
  return max_abs_diff(m, m.adjoint());
}

bool is_hermitian(const QMatrix& m, double tol) { return hermiticity_residual(m) <= tol; }

bool is_anti_hermitian(const QMatrix& m, double tol) {
  if (!m.is_square()) return false;
  if (m.rows() == 0) return true;
  return max_abs_diff(m, -m.adjoint()) <= tol;
}

RVector eigvals_hermitian(const QMatrix& m, double herm_tol) {
  require_square(m, "eigvals_hermitian");
  const double herm = hermiticity_residual(m);
  if (!(herm <= herm_tol)) {
    std::ostringstream os;
    os << "max |M - M^dagger| = " << herm << " exceeds " << herm_tol;
    throw Error(ErrorKind::NotHermitian, os.str());
  }
  const Index n = m.rows();
  if (n == 0) return RVector(0);
  CMatrix x = chi(m).mat;
  x = 0.5 * (x + x.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(x, Eigen::EigenvaluesOnly);
  const RVector& all = solver.eigenvalues();  // ascending

  const double scale = std::max(1.0, all.cwiseAbs().maxCoeff());
  RVector out(n);
  for (Index k = 0; k < n; ++k) {
    const double lo = all(2 * k);
    const double hi = all(2 * k + 1);
    if (std::abs(hi - lo) > 1e-8 * scale) {
      std::ostringstream os;
      os << "chi eigenvalues " << lo << " and " << hi << " at pair " << k << " are not degenerate";
      throw Error(ErrorKind::PairingFailure, os.str());
    }
    out(k) = 0.5 * (lo + hi);
  }
  return out;
}

bool is_positive_semidefinite(const QMatrix& m, double tol) {
  if (!is_hermitian(m, tol)) return false;
  if (m.rows() == 0) return true;
  return eigvals_hermitian(m, tol).minCoeff() >= -tol;
}

namespace {

Index count_above(const RVector& singular, Index dim, std::optional<double> rel_tol) {
  if (singular.size() == 0) return 0;
  const double smax = singular.maxCoeff();
  if (smax == 0.0) return 0;
  const double rel = rel_tol.value_or(static_cast<double>(dim) * std::numeric_limits<double>::epsilon());
  const double threshold = rel * smax;
  return static_cast<Index>((singular.array() > threshold).count());
}

}  // namespace

Index rank_q(const QMatrix& m, std::optional<double> rel_tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  const CMatrix x = chi(m).mat;
  Eigen::JacobiSVD<CMatrix> svd(x);
  const Index count = count_above(svd.singularValues(), std::max(x.rows(), x.cols()), rel_tol);
  // Singular values of chi(M) come in equal pairs; round a split pair up.
  return (count + 1) / 2;
}

Index rank_c(const CMatrix& m, std::optional<double> rel_tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return count_above(svd.singularValues(), 2 * std::max(m.rows(), m.cols()), rel_tol);
}

QMatrix expm_q(const QMatrix& m) {
  require_square(m, "expm_q");
  const CMatrix e = chi(m).mat.exp();
  // The exponential series commutes with the conjugation defining the image,
  // so leaving it signals a numerical breakdown rather than bad input.
  const double scale = std::max(1.0, e.cwiseAbs().maxCoeff());
  return chi_inverse({e}, 1e-9 * scale);
}

bool is_unitary(const QMatrix& u, double tol) {
  if (!u.is_square()) return false;
  return max_abs_diff(matmul(u.adjoint(), u), QMatrix::identity(u.rows())) <= tol;
}

}  // namespace qmix
