// Copyright 2026 The tlcalc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

#include "tlcalc/complex_matrix.hpp"

namespace tlcalc {

// Seeded generators. Same seed, same stream, same matrix; tests and the
// verify catalog rely on that.

inline Cplx complex_gaussian(std::mt19937_64& gen) {
  std::normal_distribution<double> n01(0.0, 1.0);
  const double re = n01(gen);
  const double im = n01(gen);
  return Cplx(re, im) / std::sqrt(2.0);
}

inline ComplexMatrix random_matrix(int d, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  ComplexMatrix m(d, d);
  for (auto& e : m.entries()) e = complex_gaussian(gen);
  return m;
}

inline CVec random_state(int d, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  CVec v(d);
  for (auto& e : v) e = complex_gaussian(gen);
  const double n = norm_of(v);
  for (auto& e : v) e /= n;
  return v;
}

/// Haar-ish unitary: modified Gram-Schmidt on the columns of a seeded
/// complex Gaussian matrix.
inline ComplexMatrix random_unitary(int d, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<CVec> cols(d, CVec(d));
  for (auto& col : cols)
    for (auto& e : col) e = complex_gaussian(gen);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < j; ++k) {
      const Cplx proj = inner(cols[k], cols[j]);
      for (int i = 0; i < d; ++i) cols[j][i] -= proj * cols[k][i];
    }
    // re-orthogonalize once for numerical headroom
    for (int k = 0; k < j; ++k) {
      const Cplx proj = inner(cols[k], cols[j]);
      for (int i = 0; i < d; ++i) cols[j][i] -= proj * cols[k][i];
    }
    const double n = norm_of(cols[j]);
    for (int i = 0; i < d; ++i) cols[j][i] /= n;
  }
  ComplexMatrix u(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) u(r, c) = cols[c][r];
  return u;
}

/// rho = |phi1><phi2| with seeded unit vectors. Deliberately not hermitian:
/// a rank-1 bilinear form, which is all the tight-scheme identities need.
inline ComplexMatrix random_rank1(int d, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  CVec a(d), b(d);
  for (auto& e : a) e = complex_gaussian(gen);
  for (auto& e : b) e = complex_gaussian(gen);
  const double na = norm_of(a), nb = norm_of(b);
  for (auto& e : a) e /= na;
  for (auto& e : b) e /= nb;
  return outer(a, b);
}

inline ComplexMatrix random_density(int d, std::uint64_t seed) {
  return random_rank1(d, seed);
}

inline ComplexMatrix random_rank1_observable(int d, std::uint64_t seed) {
  return random_rank1(d, seed ^ 0x9e3779b97f4a7c15ULL);
}

}  // namespace tlcalc
