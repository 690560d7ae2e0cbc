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

#include <array>
#include <numbers>
#include <string>
#include <vector>

#include "tlcalc/complex_matrix.hpp"

namespace tlcalc {

/// The maximally entangled vector (1/sqrt(d)) sum_i e_i (x) e_i as a d^2 x 1
/// column.
inline ComplexMatrix omega_vec(int d) {
  if (d < 1) fail(ErrorCode::invalid_argument, "omega_vec needs d >= 1");
  ComplexMatrix v(static_cast<std::size_t>(d) * d, 1);
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) v(static_cast<std::size_t>(i) * d + i, 0) = s;
  return v;
}

/// Cyclic shift: X e_j = e_{j+1 mod d}.
inline ComplexMatrix shift_matrix(int d) {
  ComplexMatrix x(d, d);
  for (int j = 0; j < d; ++j) x((j + 1) % d, j) = 1.0;
  return x;
}

/// Clock: Z e_j = exp(2 pi i j / d) e_j.
inline ComplexMatrix clock_matrix(int d) {
  ComplexMatrix z(d, d);
  for (int j = 0; j < d; ++j) {
    const double t = 2.0 * std::numbers::pi * j / d;
    z(j, j) = Cplx(std::cos(t), std::sin(t));
  }
  return z;
}

/// Weyl-Heisenberg error basis U_{(a,b)} = X^a Z^b, a,b in 0..d-1, listed with
/// the identity first. Satisfies tr(U_n^dag U_m) = d delta_nm.
inline std::vector<ComplexMatrix> weyl_basis(int d) {
  if (d < 1) fail(ErrorCode::invalid_argument, "weyl_basis needs d >= 1");
  const ComplexMatrix x = shift_matrix(d);
  const ComplexMatrix z = clock_matrix(d);
  std::vector<ComplexMatrix> basis;
  basis.reserve(static_cast<std::size_t>(d) * d);
  ComplexMatrix xa = ComplexMatrix::identity(d);
  for (int a = 0; a < d; ++a) {
    ComplexMatrix u = xa;
    for (int b = 0; b < d; ++b) {
      basis.push_back(u);
      u = u * z;
    }
    xa = xa * x;
  }
  return basis;
}

/// Registry key for the n-th Weyl unitary, 1-based so "U1" is the identity.
inline std::string weyl_label(int n_one_based) {
  return "U" + std::to_string(n_one_based);
}

inline std::array<ComplexMatrix, 3> pauli() {
  ComplexMatrix s1(2, 2), s2(2, 2), s3(2, 2);
  s1(0, 1) = 1.0;
  s1(1, 0) = 1.0;
  s2(0, 1) = Cplx(0, -1);
  s2(1, 0) = Cplx(0, 1);
  s3(0, 0) = 1.0;
  s3(1, 1) = -1.0;
  return {s1, s2, s3};
}

/// |Omega_n> = (U_n (x) 1) |Omega>, n 1-based into the Weyl basis.
inline ComplexMatrix omega_n_vec(int d, int n_one_based) {
  const auto basis = weyl_basis(d);
  if (n_one_based < 1 || n_one_based > static_cast<int>(basis.size()))
    fail(ErrorCode::index_out_of_range, "omega_n_vec: n out of range");
  return kron(basis[n_one_based - 1], ComplexMatrix::identity(d)) * omega_vec(d);
}

}  // namespace tlcalc
