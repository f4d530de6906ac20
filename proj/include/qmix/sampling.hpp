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
#include <random>

#include "qmix/qmatrix.hpp"

// Random test-data generators. Every generator draws from a caller-owned
// engine so independent trajectories never share state.
namespace qmix::sampling {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; maps (seed, index) to a well-mixed child seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

CVector gaussian_vector(Rng& rng, Index n);
CMatrix gaussian_matrix(Rng& rng, Index rows, Index cols);
QMatrix gaussian_qmatrix(Rng& rng, Index rows, Index cols);

CVector unit_vector(Rng& rng, Index n);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
CMatrix unitary(Rng& rng, Index n);

CMatrix hermitian(Rng& rng, Index n);
QMatrix hermitian_q(Rng& rng, Index n);

/// H with H^dagger = -H, i.e. alpha anti-hermitian and beta symmetric.
QMatrix anti_hermitian_q(Rng& rng, Index n);

/// Complex density matrix of exact rank `rank` with random eigenbasis.
CMatrix complex_density(Rng& rng, Index n, Index rank);

/// Quaternionic density sum_i psi_i psi_i^dagger over `rank` random
/// quaternionic vectors, normalized to unit trace.
QMatrix quaternionic_density(Rng& rng, Index n, Index rank);

}  // namespace qmix::sampling
