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

#include <array>
#include <cmath>
#include <complex>

namespace qmix {

using complex = std::complex<double>;

/// Quaternion stored as a pair of complex numbers, q = alpha + j * beta.
///
/// Convention (fixed once, used everywhere in qmix):
///  - alpha lives in span{1, i}; beta holds the j and k parts.
///  - j * z = conj(z) * j for every complex z.
///  - k = i * j is derived, never stored. Hence j * (-i) = k and the real
///    quadruple (a, b, c, d) = a + b i + c j + d k maps to
///    alpha = a + b i, beta = c - d i.
///  - Hilbert spaces are right modules: scalars multiply kets from the right.
struct Quaternion {
  complex alpha{0.0, 0.0};
  complex beta{0.0, 0.0};

  constexpr Quaternion() = default;
  constexpr Quaternion(complex a, complex b = {}) : alpha(a), beta(b) {}
  constexpr Quaternion(double re) : alpha(re, 0.0) {}

  static constexpr Quaternion j() { return {complex{0.0, 0.0}, complex{1.0, 0.0}}; }
  static constexpr Quaternion i() { return {complex{0.0, 1.0}, complex{0.0, 0.0}}; }
  static constexpr Quaternion k() { return {complex{0.0, 0.0}, complex{0.0, -1.0}}; }

  bool is_complex() const { return beta == complex{}; }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

/// (a_a + j a_b)(b_a + j b_b) = (a_a b_a - conj(a_b) b_b) + j (conj(a_a) b_b + a_b b_a)
inline Quaternion qmul(const Quaternion& a, const Quaternion& b) {
  return {a.alpha * b.alpha - std::conj(a.beta) * b.beta,
          std::conj(a.alpha) * b.beta + a.beta * b.alpha};
}

inline Quaternion qconj(const Quaternion& a) { return {std::conj(a.alpha), -a.beta}; }

inline double qnorm2(const Quaternion& a) { return std::norm(a.alpha) + std::norm(a.beta); }
inline double qnorm(const Quaternion& a) { return std::sqrt(qnorm2(a)); }

inline Quaternion operator*(const Quaternion& a, const Quaternion& b) { return qmul(a, b); }
inline Quaternion operator+(const Quaternion& a, const Quaternion& b) {
  return {a.alpha + b.alpha, a.beta + b.beta};
}
inline Quaternion operator-(const Quaternion& a, const Quaternion& b) {
  return {a.alpha - b.alpha, a.beta - b.beta};
}
inline Quaternion operator-(const Quaternion& a) { return {-a.alpha, -a.beta}; }
// Real scalars are central, so left and right scaling coincide.
inline Quaternion operator*(double s, const Quaternion& a) { return {s * a.alpha, s * a.beta}; }
inline Quaternion operator*(const Quaternion& a, double s) { return s * a; }

inline Quaternion from_four_reals(double a, double b, double c, double d) {
  return {complex{a, b}, complex{c, -d}};
}

inline std::array<double, 4> to_four_reals(const Quaternion& q) {
  return {q.alpha.real(), q.alpha.imag(), q.beta.real(), -q.beta.imag()};
}

}  // namespace qmix
