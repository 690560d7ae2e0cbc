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
#include <cstdio>
#include <map>
#include <string>

#include "tlcalc/bases.hpp"
#include "tlcalc/complex_matrix.hpp"

namespace tlcalc {

struct MatrixFlags {
  bool unitary = false;
  bool hermitian = false;
};

/// Named d x d matrices and d-vectors that decoration labels and terminals
/// resolve to at evaluation time. A plain value type: copy it if two threads
/// need to extend it independently.
class Registry {
 public:
  explicit Registry(int d) : d_(d) {
    if (d < 1) fail(ErrorCode::invalid_argument, "registry dimension must be >= 1");
  }

  int dimension() const { return d_; }

  void add_matrix(const std::string& label, ComplexMatrix m,
                  MatrixFlags flags = {}) {
    const auto n = static_cast<std::size_t>(d_);
    if (m.rows() != n || m.cols() != n)
      fail(ErrorCode::dimension_mismatch,
           "matrix '" + label + "' is not " + std::to_string(d_) + "x" +
               std::to_string(d_));
    constexpr double kFlagTol = 1e-9;
    if (flags.unitary &&
        max_abs_diff(adjoint_of(m) * m, ComplexMatrix::identity(n)) > kFlagTol)
      fail(ErrorCode::invalid_argument,
           "matrix '" + label + "' flagged unitary but U^dag U != 1");
    if (flags.hermitian && max_abs_diff(m, adjoint_of(m)) > kFlagTol)
      fail(ErrorCode::invalid_argument,
           "matrix '" + label + "' flagged hermitian but M != M^dag");
    matrices_[label] = std::move(m);
  }

  void add_vector(const std::string& label, CVec v) {
    if (v.size() != static_cast<std::size_t>(d_))
      fail(ErrorCode::dimension_mismatch,
           "vector '" + label + "' is not length " + std::to_string(d_));
    vectors_[label] = std::move(v);
  }

  bool has_matrix(const std::string& label) const {
    return matrices_.count(label) != 0;
  }
  bool has_vector(const std::string& label) const {
    return vectors_.count(label) != 0;
  }

  const ComplexMatrix& matrix(const std::string& label) const {
    auto it = matrices_.find(label);
    if (it == matrices_.end())
      fail(ErrorCode::unresolved_label, "no matrix registered for label '" + label + "'");
    return it->second;
  }

  const CVec& vector(const std::string& label) const {
    auto it = vectors_.find(label);
    if (it == vectors_.end())
      fail(ErrorCode::unresolved_label, "no vector registered for label '" + label + "'");
    return it->second;
  }

  /// Content-addressed entry for fusion products. The label is a hash of the
  /// numeric entries, so fusing the same word twice binds the same key.
  std::string add_derived(const ComplexMatrix& m) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](const void* p, std::size_t len) {
      const auto* bytes = static_cast<const unsigned char*>(p);
      for (std::size_t i = 0; i < len; ++i) {
        h ^= bytes[i];
        h *= 1099511628211ULL;
      }
    };
    for (const auto& e : m.entries()) {
      const double re = e.real(), im = e.imag();
      mix(&re, sizeof re);
      mix(&im, sizeof im);
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "#%016llx", static_cast<unsigned long long>(h));
    std::string label(buf);
    if (!has_matrix(label)) matrices_[label] = m;
    return label;
  }

  const std::map<std::string, ComplexMatrix>& matrices() const { return matrices_; }
  const std::map<std::string, CVec>& vectors() const { return vectors_; }

  /// Built-ins: "1" (identity), "s1".."s3" (Paulis, d = 2 only) and the Weyl
  /// basis "U1".."U<d^2>".
  static Registry standard(int d) {
    Registry reg(d);
    reg.add_matrix("1", ComplexMatrix::identity(d), {true, true});
    if (d == 2) {
      const auto sigma = pauli();
      reg.add_matrix("s1", sigma[0], {true, true});
      reg.add_matrix("s2", sigma[1], {true, true});
      reg.add_matrix("s3", sigma[2], {true, true});
    }
    const auto basis = weyl_basis(d);
    for (std::size_t n = 0; n < basis.size(); ++n)
      reg.add_matrix(weyl_label(static_cast<int>(n) + 1), basis[n], {true, false});
    return reg;
  }

 private:
  int d_;
  std::map<std::string, ComplexMatrix> matrices_;
  std::map<std::string, CVec> vectors_;
};

}  // namespace tlcalc
