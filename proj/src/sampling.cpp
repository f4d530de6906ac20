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

#include "qmix/sampling.hpp"

#include <cmath>

namespace qmix::sampling {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

CVector gaussian_vector(Rng& rng, Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(n);
  for (Index k = 0; k < n; ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(k) = complex{re, im};
  }
  return v;
}

CMatrix gaussian_matrix(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix m(rows, cols);
  for (Index c = 0; c < cols; ++c) {
    for (Index r = 0; r < rows; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(r, c) = complex{re, im};
    }
  }
  return m;
}

QMatrix gaussian_qmatrix(Rng& rng, Index rows, Index cols) {
  CMatrix alpha = gaussian_matrix(rng, rows, cols);
  CMatrix beta = gaussian_matrix(rng, rows, cols);
  return QMatrix(std::move(alpha), std::move(beta));
}

CVector unit_vector(Rng& rng, Index n) {
  CVector v = gaussian_vector(rng, n);
  return v / v.norm();
}

CMatrix unitary(Rng& rng, Index n) {
  const CMatrix g = gaussian_matrix(rng, n, n);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

CMatrix hermitian(Rng& rng, Index n) {
  const CMatrix g = gaussian_matrix(rng, n, n);
  return 0.5 * (g + g.adjoint());
}

QMatrix hermitian_q(Rng& rng, Index n) {
  const QMatrix g = gaussian_qmatrix(rng, n, n);
  return 0.5 * (g + g.adjoint());
}

QMatrix anti_hermitian_q(Rng& rng, Index n) {
  const QMatrix g = gaussian_qmatrix(rng, n, n);
  return 0.5 * (g - g.adjoint());
}

CMatrix complex_density(Rng& rng, Index n, Index rank) {
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  const CMatrix u = unitary(rng, n);
  CMatrix rho = CMatrix::Zero(n, n);
  double total = 0.0;
  for (Index k = 0; k < rank; ++k) {
    const double w = weight(rng);
    rho += w * u.col(k) * u.col(k).adjoint();
    total += w;
  }
  rho /= total;
  return 0.5 * (rho + rho.adjoint());
}

QMatrix quaternionic_density(Rng& rng, Index n, Index rank) {
  QMatrix rho = QMatrix::zero(n, n);
  for (Index k = 0; k < rank; ++k) {
    const QMatrix psi = gaussian_qmatrix(rng, n, 1);
    rho += matmul(psi, psi.adjoint());
  }
  rho *= 1.0 / real_trace(rho);
  return 0.5 * (rho + rho.adjoint());
}

}  // namespace qmix::sampling
