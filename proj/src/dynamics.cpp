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

#include "qmix/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qmix/sampling.hpp"

namespace qmix {

namespace {

void check_generator_sample(const QMatrix& h, double tol) {
  if (!h.is_square() || h.rows() == 0) throw Error(ErrorKind::DimensionMismatch, "generator must be square");
  if (!is_anti_hermitian(h, tol)) {
    std::ostringstream os;
    os << "max |H + H^dagger| = " << max_abs_diff(h, -h.adjoint());
    throw Error(ErrorKind::NotAntiHermitian, os.str());
  }
}

QMatrix commutator_rate(const QMatrix& h, const QMatrix& rho) { return matmul(rho, h) - matmul(h, rho); }

}  // namespace

Generator::Generator(QMatrix constant, double tol) {
  check_generator_sample(constant, tol);
  samples_.push_back(std::move(constant));
}

Generator::Generator(std::vector<QMatrix> samples, double span, double tol)
    : samples_(std::move(samples)), span_(span) {
  if (samples_.empty()) throw Error(ErrorKind::InvalidArgument, "generator schedule is empty");
  if (samples_.size() > 1 && !(span_ > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "a sampled generator needs a positive span");
  }
  for (const QMatrix& h : samples_) {
    check_generator_sample(h, tol);
    if (h.rows() != samples_.front().rows()) {
      throw Error(ErrorKind::DimensionMismatch, "generator samples differ in size");
    }
  }
}

QMatrix Generator::at(double t) const {
  if (is_constant()) return samples_.front();
  const double intervals = static_cast<double>(samples_.size() - 1);
  const double x = std::clamp(t / span_, 0.0, 1.0) * intervals;
  const auto k = std::min(static_cast<std::size_t>(x), samples_.size() - 2);
  const double w = x - static_cast<double>(k);
  return (1.0 - w) * samples_[k] + w * samples_[k + 1];
}

Propagator::Propagator(QMatrix u, double t0, double t1, double tol) : u_(std::move(u)), t0_(t0), t1_(t1) {
  if (!is_unitary(u_, tol)) {
    std::ostringstream os;
    os << "max |U^dagger U - I| exceeds " << tol;
    throw Error(ErrorKind::NotUnitary, os.str());
  }
}

QDensity evolve(const QDensity& rho, const Propagator& u) {
  if (rho.dim() != u.u().rows()) throw Error(ErrorKind::DimensionMismatch, "evolve: dimension mismatch");
  const QMatrix out = matmul(matmul(u.u(), rho.mat()), u.u().adjoint());
  return validate(0.5 * (out + out.adjoint()));
}

CDensity projected_evolution(const QDensity& rho, const Propagator& u) {
  if (rho.dim() != u.u().rows()) {
    throw Error(ErrorKind::DimensionMismatch, "projected_evolution: dimension mismatch");
  }
  const CMatrix& ua = u.u().alpha();
  const CMatrix& ub = u.u().beta();
  const CMatrix& ra = rho.mat().alpha();
  const CMatrix& rb = rho.mat().beta();
  const CMatrix out = ua * ra * ua.adjoint() + ub.conjugate() * ra.conjugate() * ub.transpose() +
                      ua * rb.conjugate() * ub.transpose() - ub.conjugate() * rb * ua.adjoint();
  return CDensity::validate(0.5 * (out + out.adjoint()));
}

IntegrationResult integrate(const QDensity& rho0, const Generator& gen, double t, Index steps) {
  if (steps < 1) throw Error(ErrorKind::InvalidArgument, "integrate needs steps >= 1");
  if (gen.dim() != rho0.dim()) throw Error(ErrorKind::DimensionMismatch, "integrate: dimension mismatch");
  constexpr double kDriftLimit = 1e-6;
  const double h = t / static_cast<double>(steps);
  QMatrix rho = rho0.mat();
  double max_herm = 0.0;
  double max_trace = 0.0;
  for (Index s = 0; s < steps; ++s) {
    const double t0 = h * static_cast<double>(s);
    const QMatrix h0 = gen.at(t0);
    const QMatrix hm = gen.at(t0 + 0.5 * h);
    const QMatrix h1 = gen.at(t0 + h);
    const QMatrix k1 = commutator_rate(h0, rho);
    const QMatrix k2 = commutator_rate(hm, rho + (0.5 * h) * k1);
    const QMatrix k3 = commutator_rate(hm, rho + (0.5 * h) * k2);
    const QMatrix k4 = commutator_rate(h1, rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const QMatrix herm = 0.5 * (rho + rho.adjoint());
    const double herm_corr = frobenius_norm(rho - herm);
    const double tr = real_trace(herm);
    const double trace_corr = std::abs(tr - 1.0);
    max_herm = std::max(max_herm, herm_corr);
    max_trace = std::max(max_trace, trace_corr);
    if (herm_corr > kDriftLimit || trace_corr > kDriftLimit) {
      std::ostringstream os;
      os << "step " << s << ": hermiticity correction " << herm_corr << ", trace correction " << trace_corr;
      throw Error(ErrorKind::DriftExceeded, os.str());
    }
    rho = (1.0 / tr) * herm;
  }
  return {validate(rho), max_herm, max_trace, steps};
}

Propagator time_ordered(const Generator& gen, double t, Index steps) {
  if (steps < 1) throw Error(ErrorKind::InvalidArgument, "time_ordered needs steps >= 1");
  const double h = t / static_cast<double>(steps);
  QMatrix u = QMatrix::identity(gen.dim());
  for (Index s = 0; s < steps; ++s) {
    const double mid = h * (static_cast<double>(s) + 0.5);
    u = matmul(expm_q(-h * gen.at(mid)), u);
  }
  return Propagator(std::move(u), 0.0, t);
}

CMatrix projected_rate(const QDensity& rho, const QMatrix& h) {
  const CMatrix& ha = h.alpha();
  const CMatrix& hb = h.beta();
  const CMatrix& ra = rho.mat().alpha();
  const CMatrix& rb = rho.mat().beta();
  return -(ha * ra - ra * ha) + hb.conjugate() * rb - rb.conjugate() * hb;
}

double projected_rate_check(const QDensity& rho, const Generator& gen, double h) {
  const QMatrix h0 = gen.at(0.0);
  auto alpha_at = [&](double dt) {
    const QMatrix u = expm_q(-dt * h0);
    return matmul(matmul(u, rho.mat()), u.adjoint()).alpha();
  };
  const CMatrix fd = (alpha_at(h) - alpha_at(-h)) / (2.0 * h);
  return (fd - projected_rate(rho, h0)).norm();
}

double partition_leak(const QDensity& rho, const Generator& gen, double t) {
  const Index steps = gen.is_constant() ? 1 : 256;
  return evolve(rho, time_ordered(gen, t, steps)).mat().beta().norm();
}

Witness partition_witness(Index n, std::uint64_t seed, int max_attempts) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "partition_witness needs n >= 2");
  constexpr double kLeakThreshold = 1e-6;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    sampling::Rng rng(sampling::derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    const QDensity rho = random_density(n, DensityKind::Proper, rng());
    QMatrix h = sampling::anti_hermitian_q(rng, n);
    h *= 1.0 / frobenius_norm(h);
    Generator gen(std::move(h));
    const double leak = partition_leak(rho, gen, 1.0);
    if (leak > kLeakThreshold) return {std::move(gen), rho, leak, attempt + 1};
  }
  std::ostringstream os;
  os << "no leaking generator for n = " << n << " within " << max_attempts << " attempts";
  throw Error(ErrorKind::WitnessNotFound, os.str());
}

}  // namespace qmix
