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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "tlcalc/errors.hpp"

namespace tlcalc {

using Cplx = std::complex<double>;
using CVec = std::vector<Cplx>;

/// Dense row-major complex matrix. Dimensions stay small (d^k with d <= 8),
/// so everything is plain O(n^3)/O(n^2) loops.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  ComplexMatrix(std::size_t rows, std::size_t cols, CVec entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
      fail(ErrorCode::invalid_argument, "matrix storage does not match shape");
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  Cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Cplx& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  const CVec& entries() const { return data_; }
  CVec& entries() { return data_; }

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  CVec data_;
};

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    fail(ErrorCode::dimension_mismatch, "matrix product shape mismatch");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Cplx aik = a(i, k);
      if (aik == Cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorCode::dimension_mismatch, "matrix sum shape mismatch");
  ComplexMatrix out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.entries()[i] += b.entries()[i];
  return out;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorCode::dimension_mismatch, "matrix difference shape mismatch");
  ComplexMatrix out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.entries()[i] -= b.entries()[i];
  return out;
}

inline ComplexMatrix scaled(const ComplexMatrix& a, Cplx c) {
  ComplexMatrix out = a;
  for (auto& e : out.entries()) e *= c;
  return out;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ra = 0; ra < a.rows(); ++ra)
    for (std::size_t ca = 0; ca < a.cols(); ++ca) {
      const Cplx v = a(ra, ca);
      if (v == Cplx{}) continue;
      for (std::size_t rb = 0; rb < b.rows(); ++rb)
        for (std::size_t cb = 0; cb < b.cols(); ++cb)
          out(ra * b.rows() + rb, ca * b.cols() + cb) = v * b(rb, cb);
    }
  return out;
}

inline ComplexMatrix transpose_of(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = a(r, c);
  return out;
}

inline ComplexMatrix conj_of(const ComplexMatrix& a) {
  ComplexMatrix out = a;
  for (auto& e : out.entries()) e = std::conj(e);
  return out;
}

inline ComplexMatrix adjoint_of(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = std::conj(a(r, c));
  return out;
}

inline Cplx trace_of(const ComplexMatrix& a) {
  Cplx t = 0;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) t += a(i, i);
  return t;
}

/// tr(a*b) without materializing the product.
inline Cplx product_trace(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols())
    fail(ErrorCode::dimension_mismatch, "product trace shape mismatch");
  Cplx t = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
  return t;
}

inline double max_abs(const ComplexMatrix& a) {
  double m = 0;
  for (const auto& e : a.entries()) m = std::max(m, std::abs(e));
  return m;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return max_abs(a - b);
}

inline CVec matvec(const ComplexMatrix& a, const CVec& v) {
  if (a.cols() != v.size())
    fail(ErrorCode::dimension_mismatch, "matrix-vector shape mismatch");
  CVec out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out[r] += a(r, c) * v[c];
  return out;
}

inline ComplexMatrix column_matrix(const CVec& v) {
  ComplexMatrix out(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) out(i, 0) = v[i];
  return out;
}

/// <u|v> with the left argument conjugated.
inline Cplx inner(const CVec& u, const CVec& v) {
  Cplx s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

inline double norm_of(const CVec& v) { return std::sqrt(std::abs(inner(v, v))); }

/// |a><b| as a matrix.
inline ComplexMatrix outer(const CVec& a, const CVec& b) {
  ComplexMatrix out(a.size(), b.size());
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < b.size(); ++c) out(r, c) = a[r] * std::conj(b[c]);
  return out;
}

inline std::string to_string(const ComplexMatrix& a) {
  std::ostringstream os;
  os << a.rows() << "x" << a.cols() << " [";
  for (std::size_t r = 0; r < a.rows(); ++r) {
    if (r) os << "; ";
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (c) os << ", ";
      os << a(r, c).real();
      if (a(r, c).imag() != 0) os << (a(r, c).imag() > 0 ? "+" : "") << a(r, c).imag() << "i";
    }
  }
  os << "]";
  return os.str();
}

}  // namespace tlcalc
