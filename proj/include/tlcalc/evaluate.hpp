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

#include <cmath>
#include <cstddef>
#include <vector>

#include "tlcalc/complex_matrix.hpp"
#include "tlcalc/diagram.hpp"
#include "tlcalc/registry.hpp"

namespace tlcalc {

struct EvalResult {
  ComplexMatrix matrix;  // shape d^lower_arity x d^upper_arity
};

/// Knob for the contraction-order independence check: flips the association
/// of the per-strand chain products and the assembly order across strands.
struct EvalOptions {
  bool reverse_assembly = false;
};

namespace detail {

inline ComplexMatrix flavored(const Decoration& dec, const Registry& reg) {
  const ComplexMatrix& m = reg.matrix(dec.label);
  switch (dec.flavor) {
    case Flavor::plain: return m;
    case Flavor::transpose: return transpose_of(m);
    case Flavor::conjugate: return conj_of(m);
    case Flavor::adjoint: return adjoint_of(m);
  }
  return m;
}

/// Operator along a traversal: the mark nearest the start acts first, so the
/// matrix product reads F(w_{m-1}) ... F(w_0).
inline ComplexMatrix chain_matrix(const std::vector<Decoration>& word,
                                  const Registry& reg, int d,
                                  bool reverse_fold = false) {
  ComplexMatrix a = ComplexMatrix::identity(d);
  if (!reverse_fold) {
    for (const auto& dec : word) a = flavored(dec, reg) * a;
  } else {
    for (auto it = word.rbegin(); it != word.rend(); ++it) a = a * flavored(*it, reg);
  }
  return a;
}

inline CVec terminal_vector(const Endpoint& e, const Registry& reg) {
  CVec v = reg.vector(e.label);
  if (e.kind == EndpointKind::bra_terminal)
    for (auto& x : v) x = std::conj(x);
  return v;
}

inline std::size_t checked_pow(int d, int exponent) {
  double p = std::pow(static_cast<double>(d), exponent);
  if (p > 1e7)
    fail(ErrorCode::problem_too_large,
         "evaluation would produce a matrix with more than 1e7 entries");
  return static_cast<std::size_t>(p + 0.5);
}

}  // namespace detail

inline EvalResult evaluate(const Diagram& diag, int d, const Registry& reg,
                           const EvalOptions& opts = {}) {
  if (d < 1) fail(ErrorCode::invalid_argument, "evaluate needs d >= 1");
  if (reg.dimension() != d)
    fail(ErrorCode::dimension_mismatch,
         "registry dimension " + std::to_string(reg.dimension()) +
             " does not match d = " + std::to_string(d));
  detail::checked_pow(d, diag.upper_arity + diag.lower_arity);
  const std::size_t n_rows = detail::checked_pow(d, diag.lower_arity);
  const std::size_t n_cols = detail::checked_pow(d, diag.upper_arity);

  Cplx prefactor = diag.scalar;
  for (const auto& loop : diag.loops) {
    const ComplexMatrix w = detail::chain_matrix(loop.word, reg, d, opts.reverse_assembly);
    prefactor *= trace_of(w) * std::pow(static_cast<double>(d), -0.5 * loop.norm_weight);
  }

  // Per-strand factors. A strand touching the boundary contributes a matrix
  // (or vector) indexed by the digits of the row/column multi-index; a
  // terminal-terminal strand is a plain scalar.
  struct Slot {
    bool row = false;
    int pos = 0;
  };
  struct Factor {
    int kind;  // 0: boundary-boundary, 1: boundary-terminal, 2: scalar
    ComplexMatrix a;  // kind 0
    CVec u;           // kind 1
    Slot p, q;        // p: start slot, q: end slot (kind 0); p only (kind 1)
  };
  std::vector<Factor> factors;
  auto slot_of = [&](const Endpoint& e) {
    return e.kind == EndpointKind::top_boundary ? Slot{false, e.index}
                                                : Slot{true, e.index};
  };
  for (const auto& s : diag.strands) {
    prefactor *= std::pow(static_cast<double>(d), -0.5 * s.norm_weight);
    ComplexMatrix a = detail::chain_matrix(s.word, reg, d, opts.reverse_assembly);
    Factor f{};
    if (s.end.is_terminal() && s.start.is_terminal()) {
      const CVec vs = detail::terminal_vector(s.start, reg);
      const CVec ve = detail::terminal_vector(s.end, reg);
      Cplx val = 0;
      for (int q = 0; q < d; ++q)
        for (int p = 0; p < d; ++p) val += ve[q] * a(q, p) * vs[p];
      prefactor *= val;
      continue;
    } else if (s.end.is_terminal()) {
      // factor(p) = sum_q ve[q] A(q, p)
      const CVec ve = detail::terminal_vector(s.end, reg);
      f.kind = 1;
      f.u.assign(d, 0);
      for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q) f.u[p] += ve[q] * a(q, p);
      f.p = slot_of(s.start);
    } else {
      f.kind = 0;
      f.a = std::move(a);
      f.p = slot_of(s.start);
      f.q = slot_of(s.end);
    }
    factors.push_back(std::move(f));
  }
  if (opts.reverse_assembly) std::reverse(factors.begin(), factors.end());

  ComplexMatrix out(n_rows, n_cols);
  std::vector<int> row_digit(std::max(diag.lower_arity, 1));
  std::vector<int> col_digit(std::max(diag.upper_arity, 1));
  for (std::size_t r = 0; r < n_rows; ++r) {
    std::size_t rr = r;
    for (int k = diag.lower_arity - 1; k >= 0; --k) {
      row_digit[k] = static_cast<int>(rr % d);
      rr /= d;
    }
    for (std::size_t c = 0; c < n_cols; ++c) {
      std::size_t cc = c;
      for (int k = diag.upper_arity - 1; k >= 0; --k) {
        col_digit[k] = static_cast<int>(cc % d);
        cc /= d;
      }
      auto value_at = [&](const Slot& s) {
        return s.row ? row_digit[s.pos] : col_digit[s.pos];
      };
      Cplx v = prefactor;
      for (const auto& f : factors) {
        if (f.kind == 0) v *= f.a(value_at(f.q), value_at(f.p));
        else v *= f.u[value_at(f.p)];
        if (v == Cplx{}) break;
      }
      out(r, c) = v;
    }
  }
  return {std::move(out)};
}

inline EvalResult evaluate(const DiagramSum& sum, int d, const Registry& reg,
                           const EvalOptions& opts = {}) {
  detail::check_signature(sum);
  const std::size_t n_rows = detail::checked_pow(d, sum.lower_arity);
  const std::size_t n_cols = detail::checked_pow(d, sum.upper_arity);
  ComplexMatrix acc(n_rows, n_cols);
  for (const auto& [coeff, term] : sum.terms) {
    const EvalResult r = evaluate(term, d, reg, opts);
    for (std::size_t i = 0; i < acc.size(); ++i)
      acc.entries()[i] += coeff * r.matrix.entries()[i];
  }
  return {std::move(acc)};
}

}  // namespace tlcalc
