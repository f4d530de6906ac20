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

#include "qmix/bipartite.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace qmix {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index r = 0; r < a.rows(); ++r) {
    for (Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Index k = 0; k < a.size(); ++k) out.segment(k * b.size(), b.size()) = a(k) * b;
  return out;
}

BipartiteState::BipartiteState(Index n1, Index n2, CVector vec, double tol)
    : n1_(n1), n2_(n2), vec_(std::move(vec)) {
  if (n1_ < 1 || n2_ < 1 || vec_.size() != n1_ * n2_) {
    throw Error(ErrorKind::DimensionMismatch, "state length must equal n1 * n2");
  }
  const double dev = std::abs(vec_.norm() - 1.0);
  if (dev > tol) {
    std::ostringstream os;
    os << "| ||psi|| - 1 | = " << dev;
    throw Error(ErrorKind::NotNormalized, os.str());
  }
}

CMatrix BipartiteState::coefficients() const {
  CMatrix c(n1_, n2_);
  for (Index a = 0; a < n1_; ++a) {
    for (Index b = 0; b < n2_; ++b) c(a, b) = vec_(a * n2_ + b);
  }
  return c;
}

BipartiteState schmidt(BipartiteState state) {
  // C = U S V^dagger, so C(a, b) = sum_i s_i U(a, i) conj(V(b, i)).
  Eigen::JacobiSVD<CMatrix> svd(state.coefficients(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVector& s = svd.singularValues();
  const double cutoff =
      static_cast<double>(std::max(state.n1(), state.n2())) * std::numeric_limits<double>::epsilon() * s(0);
  std::vector<SchmidtTerm> terms;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) <= cutoff) break;
    terms.push_back({s(i), svd.matrixU().col(i), svd.matrixV().col(i).conjugate()});
  }
  state.schmidt_ = std::move(terms);
  return state;
}

CDensity partial_trace(const CMatrix& rho, Index n1, Index n2, Subsystem over) {
  if (rho.rows() != n1 * n2 || rho.cols() != n1 * n2) {
    throw Error(ErrorKind::DimensionMismatch, "partial_trace: density size must be n1 * n2");
  }
  CDensity::validate(rho);
  if (over == Subsystem::Second) {
    CMatrix out = CMatrix::Zero(n1, n1);
    for (Index a = 0; a < n1; ++a) {
      for (Index c = 0; c < n1; ++c) {
        for (Index b = 0; b < n2; ++b) out(a, c) += rho(a * n2 + b, c * n2 + b);
      }
    }
    return CDensity::validate(out);
  }
  CMatrix out = CMatrix::Zero(n2, n2);
  for (Index b = 0; b < n2; ++b) {
    for (Index d = 0; d < n2; ++d) {
      for (Index a = 0; a < n1; ++a) out(b, d) += rho(a * n2 + b, a * n2 + d);
    }
  }
  return CDensity::validate(out);
}

ProjectorFamily::ProjectorFamily(std::vector<CMatrix> projectors, double tol)
    : projectors_(std::move(projectors)) {
  if (projectors_.empty()) throw Error(ErrorKind::NotProjectorFamily, "empty family");
  const Index n = projectors_.front().rows();
  CMatrix sum = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < projectors_.size(); ++i) {
    const CMatrix& p = projectors_[i];
    if (p.rows() != n || p.cols() != n) throw Error(ErrorKind::DimensionMismatch, "projectors differ in size");
    if ((p - p.adjoint()).cwiseAbs().maxCoeff() > tol) {
      throw Error(ErrorKind::NotProjectorFamily, "projector " + std::to_string(i) + " is not hermitian");
    }
    for (std::size_t k = 0; k < projectors_.size(); ++k) {
      const CMatrix expect = (i == k) ? p : CMatrix::Zero(n, n);
      if ((p * projectors_[k] - expect).cwiseAbs().maxCoeff() > tol) {
        throw Error(ErrorKind::NotProjectorFamily,
                    "P_" + std::to_string(i) + " P_" + std::to_string(k) + " violates orthogonality");
      }
    }
    sum += p;
  }
  if ((sum - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > tol) {
    throw Error(ErrorKind::NotProjectorFamily, "projectors do not sum to the identity");
  }
}

ProjectorFamily ProjectorFamily::from_basis(const CMatrix& basis) {
  std::vector<CMatrix> out;
  for (Index k = 0; k < basis.cols(); ++k) out.push_back(basis.col(k) * basis.col(k).adjoint());
  return ProjectorFamily(std::move(out));
}

CDensity lueders_nonselective(const CDensity& rho, const ProjectorFamily& family) {
  if (rho.dim() != family.dim()) throw Error(ErrorKind::DimensionMismatch, "lueders: dimension mismatch");
  CMatrix out = CMatrix::Zero(rho.dim(), rho.dim());
  for (const CMatrix& p : family.projectors()) out += p * rho.mat() * p;
  return CDensity::validate(out);
}

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0.0, complex(0.0, -1.0), complex(0.0, 1.0), 0.0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

CMatrix sigma_dot(const SpinDirection& n) {
  return std::sin(n.theta) * std::cos(n.phi) * pauli_x() + std::sin(n.theta) * std::sin(n.phi) * pauli_y() +
         std::cos(n.theta) * pauli_z();
}

CVector spin_up(const SpinDirection& n) {
  CVector v(2);
  v << std::cos(0.5 * n.theta), std::polar(std::sin(0.5 * n.theta), n.phi);
  return v;
}

CVector spin_down(const SpinDirection& n) {
  CVector v(2);
  v << -std::polar(std::sin(0.5 * n.theta), -n.phi), std::cos(0.5 * n.theta);
  return v;
}

MeasurementInteraction measurement_interaction(complex c_plus, complex c_minus, const SpinDirection& n) {
  const double dev = std::abs(std::norm(c_plus) + std::norm(c_minus) - 1.0);
  if (dev > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "|c+|^2 + |c-|^2 deviates from 1 by " << dev;
    throw Error(ErrorKind::NotNormalized, os.str());
  }
  const CVector up = spin_up(n);
  const CVector down = spin_down(n);
  const CMatrix p_up = up * up.adjoint();
  const CMatrix p_down = down * down.adjoint();
  CMatrix u = kron(p_up, CMatrix::Identity(2, 2)) + kron(p_down, pauli_x());

  CVector ready(2);
  ready << 1.0, 0.0;
  const CVector phi0 = c_plus * up + c_minus * down;
  CVector out = u * kron(phi0, ready);
  // The result is unit up to rounding of c+, c-; renormalize before wrapping.
  out /= out.norm();
  return {std::move(u), BipartiteState(2, 2, std::move(out))};
}

}  // namespace qmix
