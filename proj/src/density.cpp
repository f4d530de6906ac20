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

#include "qmix/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "qmix/sampling.hpp"

namespace qmix {

std::string_view to_string(MixtureKind kind) {
  return kind == MixtureKind::Proper ? "Proper" : "Improper";
}

namespace {

double complex_hermiticity_residual(const CMatrix& m) {
  if (m.rows() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

[[noreturn]] void fail(ErrorKind kind, const std::string& what, double measured, double tol) {
  std::ostringstream os;
  os.precision(17);
  os << what << " deviates by " << measured << " (tolerance " << tol << ")";
  throw Error(kind, os.str());
}

}  // namespace

CDensity CDensity::validate(const CMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorKind::DimensionMismatch, "complex density must be square and non-empty");
  }
  const double herm = complex_hermiticity_residual(m);
  if (!(herm <= tol)) fail(ErrorKind::NotHermitian, "hermiticity", herm, tol);
  CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (!(min_eig >= -tol)) fail(ErrorKind::NotPositive, "smallest eigenvalue", -min_eig, tol);
  const double trace_dev = std::abs(h.trace().real() - 1.0);
  if (!(trace_dev <= tol)) fail(ErrorKind::TraceNotOne, "trace", trace_dev, tol);
  const Index rank = rank_c(h);
  return CDensity(std::move(h), rank);
}

double proper_tolerance(const QMatrix& m) {
  return static_cast<double>(m.rows()) * 1e-12 * (1.0 + m.alpha().norm());
}

QDensity validate(const QMatrix& m, double tol) {
  if (!m.is_square() || m.rows() == 0) {
    throw Error(ErrorKind::DimensionMismatch, "density must be square and non-empty");
  }
  const double herm = hermiticity_residual(m);
  if (!(herm <= tol)) fail(ErrorKind::NotHermitian, "hermiticity", herm, tol);
  const double min_eig = eigvals_hermitian(m, tol).minCoeff();
  if (!(min_eig >= -tol)) fail(ErrorKind::NotPositive, "smallest eigenvalue", -min_eig, tol);
  const double trace_dev = std::abs(real_trace(m) - 1.0);
  if (!(trace_dev <= tol)) fail(ErrorKind::TraceNotOne, "real trace", trace_dev, tol);

  const double beta_norm = m.beta().norm();
  const MixtureKind kind = beta_norm <= proper_tolerance(m) ? MixtureKind::Proper : MixtureKind::Improper;
  return QDensity(m, kind, beta_norm);
}

QDensity embed(const CDensity& rho) { return validate(QMatrix(rho.mat())); }

CDensity complex_projection(const QDensity& rho) { return CDensity::validate(rho.mat().alpha()); }

MixtureKind classify(const QDensity& rho) { return rho.classification(); }

bool equivalent(const QDensity& a, const QDensity& b, double tol) {
  if (a.dim() != b.dim()) return false;
  return (a.mat().alpha() - b.mat().alpha()).cwiseAbs().maxCoeff() <= tol;
}

QDensity class_representative(const QDensity& rho) { return embed(complex_projection(rho)); }

Observable::Observable(QMatrix m, double tol) : mat_(std::move(m)) {
  const double herm = hermiticity_residual(mat_);
  if (!(herm <= tol)) fail(ErrorKind::NotHermitian, "observable hermiticity", herm, tol);
  is_complex_ = mat_.beta().norm() <= proper_tolerance(mat_);
}

double expectation(const Observable& a, const QDensity& rho) {
  const QMatrix& am = a.mat();
  const QMatrix& rm = rho.mat();
  if (am.rows() != rm.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "observable and state dimensions differ");
  }
  // Re Tr(XY) = Re sum_ij X_ij Y_ji, without forming the product.
  const complex t = (am.alpha().transpose().cwiseProduct(rm.alpha())).sum() -
                    (am.beta().conjugate().transpose().cwiseProduct(rm.beta())).sum();
  return t.real();
}

Observable discriminator(const QDensity& rho) {
  const Index n = rho.dim();
  return Observable(QMatrix(CMatrix::Zero(n, n), rho.mat().beta()));
}

RankBounds rank_bounds_check(const QDensity& rho, std::optional<double> rel_tol) {
  RankBounds out;
  out.m = rank_q(rho.mat(), rel_tol);
  out.rank_alpha = rank_c(rho.mat().alpha(), rel_tol);
  out.pass = out.m <= out.rank_alpha && out.rank_alpha <= 2 * out.m;
  return out;
}

QMatrix block_purify(const CVector& u, const CVector& v, complex cu, complex cv) {
  if (u.size() != v.size()) throw Error(ErrorKind::DimensionMismatch, "block_purify: u and v differ in length");
  if (std::abs(u.norm() - 1.0) > 1e-10 || std::abs(v.norm() - 1.0) > 1e-10) {
    throw Error(ErrorKind::NotNormalized, "block_purify expects unit vectors");
  }
  const double overlap = std::abs(u.dot(v));
  if (overlap > 1e-10) fail(ErrorKind::NotOrthogonal, "<u|v>", overlap, 1e-10);
  if (!(std::norm(cu) + std::norm(cv) > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "block_purify needs |cu|^2 + |cv|^2 > 0");
  }
  CMatrix alpha = std::norm(cu) * (u * u.adjoint()) + std::norm(cv) * (v * v.adjoint());
  CMatrix beta = std::conj(cu * cv) * (v.conjugate() * u.adjoint() - u.conjugate() * v.adjoint());
  return QMatrix(std::move(alpha), std::move(beta));
}

namespace {

constexpr double kTieTol = 1e-12;

// Descending lexicographic order on (re, im) of successive components.
bool lex_greater(const CVector& a, const CVector& b) {
  for (Index k = 0; k < a.size(); ++k) {
    if (std::abs(a(k).real() - b(k).real()) > kTieTol) return a(k).real() > b(k).real();
    if (std::abs(a(k).imag() - b(k).imag()) > kTieTol) return a(k).imag() > b(k).imag();
  }
  return false;
}

void fix_phase(Eigen::Ref<CVector> v) {
  Index best = 0;
  for (Index k = 1; k < v.size(); ++k) {
    if (std::abs(v(k)) > std::abs(v(best)) + kTieTol) best = k;
  }
  const double mag = std::abs(v(best));
  if (mag > 0.0) v *= std::conj(v(best)) / mag;
}

// Orthonormal basis of span(cluster) determined by the subspace alone.
CMatrix canonical_cluster_basis(const CMatrix& cluster) {
  const Index n = cluster.rows();
  const Index d = cluster.cols();
  const CMatrix proj = cluster * cluster.adjoint();
  CMatrix basis(n, d);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (Index col = 0; col < d; ++col) {
    Index best = -1;
    double best_norm = -1.0;
    CVector best_vec;
    for (Index k = 0; k < n; ++k) {
      if (used[static_cast<std::size_t>(k)]) continue;
      CVector r = proj.col(k);
      for (Index p = 0; p < col; ++p) r -= basis.col(p) * basis.col(p).dot(r);
      const double nr = r.norm();
      if (nr > best_norm + kTieTol) {
        best = k;
        best_norm = nr;
        best_vec = std::move(r);
      }
    }
    used[static_cast<std::size_t>(best)] = true;
    basis.col(col) = best_vec / best_norm;
  }
  return basis;
}

}  // namespace

Spectrum canonical_spectrum(const CMatrix& hermitian) {
  const Index n = hermitian.rows();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (hermitian + hermitian.adjoint()));
  Spectrum out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();

  const double scale = std::max(1.0, out.values.cwiseAbs().maxCoeff());
  Index start = 0;
  while (start < n) {
    Index end = start + 1;
    while (end < n && std::abs(out.values(end) - out.values(start)) <= 1e-9 * scale) ++end;
    const Index size = end - start;
    if (size > 1) {
      out.vectors.middleCols(start, size) = canonical_cluster_basis(out.vectors.middleCols(start, size));
    }
    for (Index k = start; k < end; ++k) fix_phase(out.vectors.col(k));
    if (size > 1) {
      std::vector<CVector> cols;
      for (Index k = start; k < end; ++k) cols.emplace_back(out.vectors.col(k));
      std::stable_sort(cols.begin(), cols.end(), lex_greater);
      for (Index k = 0; k < size; ++k) out.vectors.col(start + k) = cols[static_cast<std::size_t>(k)];
    }
    start = end;
  }
  return out;
}

QDensity lift(const CDensity& rho_alpha, Index target_rank) {
  const Index m = rho_alpha.rank();
  if (m <= 1) {
    throw Error(ErrorKind::RankOne, "a rank-1 complex density has no quaternionic lift of lower rank");
  }
  const Index lo = (m + 1) / 2;
  if (target_rank < lo || target_rank > m) {
    std::ostringstream os;
    os << "target rank " << target_rank << " outside [ceil(m/2), m] = [" << lo << ", " << m << "] for m = " << m;
    throw Error(ErrorKind::RankOutOfRange, os.str());
  }
  const Index n = rho_alpha.dim();
  const Index pairs = m - target_rank;
  CMatrix beta = CMatrix::Zero(n, n);
  if (pairs > 0) {
    const Spectrum spec = canonical_spectrum(rho_alpha.mat());
    for (Index p = 0; p < pairs; ++p) {
      const Index a = 2 * p;
      const Index b = 2 * p + 1;
      const double weight = std::sqrt(std::max(0.0, spec.values(a) * spec.values(b)));
      const CVector& ea = spec.vectors.col(a);
      const CVector& eb = spec.vectors.col(b);
      beta += weight * (eb.conjugate() * ea.adjoint() - ea.conjugate() * eb.adjoint());
    }
  }
  return validate(QMatrix(rho_alpha.mat(), std::move(beta)));
}

QDensity purify(const CDensity& rho_alpha) {
  const Index m = rho_alpha.rank();
  if (m == 1) return embed(rho_alpha);
  if (m == 2) return lift(rho_alpha, 1);
  std::ostringstream os;
  os << "rank " << m << " > 2: a quaternionic pure state has a complex projection of rank at most 2";
  throw Error(ErrorKind::NotPurifiable, os.str());
}

QDensity random_density(Index n, DensityKind kind, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "random_density needs n >= 1");
  sampling::Rng rng(seed);
  std::uniform_int_distribution<Index> rank_dist(1, n);
  switch (kind) {
    case DensityKind::Proper:
      return validate(QMatrix(sampling::complex_density(rng, n, rank_dist(rng))));
    case DensityKind::Improper:
      return validate(sampling::quaternionic_density(rng, n, rank_dist(rng)));
    case DensityKind::PureQ:
      return validate(sampling::quaternionic_density(rng, n, 1));
  }
  throw Error(ErrorKind::InvalidArgument, "unknown density kind");
}

}  // namespace qmix
