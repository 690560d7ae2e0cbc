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
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "tlcalc/bases.hpp"
#include "tlcalc/diagram.hpp"
#include "tlcalc/evaluate.hpp"
#include "tlcalc/random.hpp"
#include "tlcalc/registry.hpp"
#include "tlcalc/rewrite.hpp"

namespace tlcalc {

inline constexpr double kDefaultTolerance = 1e-9;

/// Result of one identity or protocol check: the max-abs difference of the
/// two sides and whether it clears the tolerance.
struct IdentityReport {
  std::string identity_id;
  int d = 0;
  std::uint64_t seed = 0;
  double residual = 0.0;
  bool passed = false;
  std::string params;
};

namespace detail {

inline IdentityReport make_report(std::string id, int d, std::uint64_t seed,
                                  double residual, double tol, std::string params = {}) {
  return {std::move(id), d, seed, residual, residual < tol, std::move(params)};
}

inline Cx eval_scalar(const Diagram& dg, int d, const Registry& reg) {
  return evaluate(dg, d, reg).matrix(0, 0);
}

inline ComplexMatrix omega_matrix(int d) {
  const ComplexMatrix v = omega_vec(d);
  return v * adjoint_of(v);
}

inline ComplexMatrix omega_n_matrix(int d, int n) {
  const ComplexMatrix v = omega_n_vec(d, n);
  return v * adjoint_of(v);
}

/// Numeric partial-trace oracle, independent of the diagram machinery:
/// closes top factor t against bottom factor b for every listed pair.
inline ComplexMatrix partial_trace_oracle(const ComplexMatrix& m, int d, int upper,
                                          int lower,
                                          const std::vector<std::pair<int, int>>& pairs) {
  std::vector<char> top_closed(upper, 0), bottom_closed(lower, 0);
  for (const auto& [t, b] : pairs) {
    top_closed[t] = 1;
    bottom_closed[b] = 1;
  }
  const int new_upper = upper - static_cast<int>(pairs.size());
  const int new_lower = lower - static_cast<int>(pairs.size());
  ComplexMatrix out(checked_pow(d, new_lower), checked_pow(d, new_upper));
  std::vector<int> row_digit(std::max(lower, 1)), col_digit(std::max(upper, 1));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::size_t rr = r;
    for (int k = lower - 1; k >= 0; --k) {
      row_digit[k] = static_cast<int>(rr % d);
      rr /= d;
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
      std::size_t cc = c;
      for (int k = upper - 1; k >= 0; --k) {
        col_digit[k] = static_cast<int>(cc % d);
        cc /= d;
      }
      bool onpath = true;
      for (const auto& [t, b] : pairs)
        if (col_digit[t] != row_digit[b]) {
          onpath = false;
          break;
        }
      if (!onpath) continue;
      std::size_t nr = 0, nc = 0;
      for (int k = 0; k < lower; ++k)
        if (!bottom_closed[k]) nr = nr * d + row_digit[k];
      for (int k = 0; k < upper; ++k)
        if (!top_closed[k]) nc = nc * d + col_digit[k];
      out(nr, nc) += m(r, c);
    }
  }
  return out;
}

/// Structural residual: normalize both sides and compare everything but the
/// scalar exactly; infinite when the shapes disagree.
inline double structural_residual(const Diagram& lhs, const Diagram& rhs,
                                  Registry& reg, int d) {
  const Diagram a = normalize(lhs, reg, d).diagram;
  const Diagram b = normalize(rhs, reg, d).diagram;
  if (a.upper_arity != b.upper_arity || a.lower_arity != b.lower_arity ||
      a.strands != b.strands || a.loops != b.loops)
    return std::numeric_limits<double>::infinity();
  return std::abs(a.scalar - b.scalar);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Temperley-Lieb generators and relations
// ---------------------------------------------------------------------------

/// E_i = Id^(i-1) (x) omega (x) Id^(n-i-1), 1-based i on wires i, i+1.
inline Diagram tl_generator(int n_strands, int i) {
  if (n_strands < 2 || i < 1 || i > n_strands - 1)
    fail(ErrorCode::index_out_of_range,
         "tl_generator: need 1 <= i <= n_strands-1, got i = " + std::to_string(i));
  Diagram d;
  d.upper_arity = d.lower_arity = n_strands;
  for (int w = 0; w < n_strands; ++w) {
    if (w == i - 1 || w == i) continue;
    d.strands.push_back({Endpoint::top(w), Endpoint::bottom(w), {}, -1, 0});
  }
  d.strands.push_back({Endpoint::top(i - 1), Endpoint::top(i), {}, 0, 1});
  d.strands.push_back({Endpoint::bottom(i - 1), Endpoint::bottom(i), {}, 0, 1});
  detail::sort_diagram(d);
  return d;
}

/// idempotence, hermiticity, the braid-like relation E_i E_{i+-1} E_i =
/// (1/d^2) E_i and distant commutation, each checked structurally through
/// normalize (exact at every size) and numerically where the evaluated
/// matrices stay within the size cap.
inline std::vector<IdentityReport> check_tl_relations(int n_strands, int d,
                                                      double tol = 1e-12) {
  if (n_strands < 2)
    fail(ErrorCode::invalid_argument, "check_tl_relations: need n_strands >= 2");
  Registry reg = Registry::standard(d);
  const bool numeric_ok =
      std::pow(static_cast<double>(d), 2 * n_strands) <= 1e7;

  auto relation_residual = [&](const Diagram& lhs, const Diagram& rhs) {
    double r = detail::structural_residual(lhs, rhs, reg, d);
    if (numeric_ok)
      r = std::max(r, max_abs_diff(evaluate(lhs, d, reg).matrix,
                                   evaluate(rhs, d, reg).matrix));
    return r;
  };

  std::vector<IdentityReport> reports;
  auto note = [&](std::string id, double residual, std::string params) {
    reports.push_back(detail::make_report(std::move(id), d, 0, residual, tol,
                                          std::move(params)));
  };

  std::vector<Diagram> e(n_strands);
  for (int i = 1; i <= n_strands - 1; ++i) e[i] = tl_generator(n_strands, i);

  for (int i = 1; i <= n_strands - 1; ++i) {
    note("tl_idempotent", relation_residual(compose(e[i], e[i]), e[i]),
         "n=" + std::to_string(n_strands) + ",i=" + std::to_string(i));
    note("tl_hermitian", relation_residual(dagger(e[i]), e[i]),
         "n=" + std::to_string(n_strands) + ",i=" + std::to_string(i));
  }
  const Cx inv_d2(1.0 / (static_cast<double>(d) * d), 0.0);
  for (int i = 1; i <= n_strands - 1; ++i)
    for (int j : {i - 1, i + 1}) {
      if (j < 1 || j > n_strands - 1) continue;
      note("tl_braid",
           relation_residual(compose(compose(e[i], e[j]), e[i]), scaled(e[i], inv_d2)),
           "n=" + std::to_string(n_strands) + ",i=" + std::to_string(i) +
               ",j=" + std::to_string(j));
    }
  for (int i = 1; i <= n_strands - 1; ++i)
    for (int j = i + 2; j <= n_strands - 1; ++j)
      note("tl_commute", relation_residual(compose(e[i], e[j]), compose(e[j], e[i])),
           "n=" + std::to_string(n_strands) + ",i=" + std::to_string(i) +
               ",j=" + std::to_string(j));
  return reports;
}

// ---------------------------------------------------------------------------
// Decorated building blocks
// ---------------------------------------------------------------------------

/// omega_n = |Omega_n><Omega_n| as a decorated projector: the cap reads
/// <Omega|(U_n^dag (x) 1), the cup (U_n (x) 1)|Omega>. Wire order (C, A).
inline Diagram omega_n_projector(int n) {
  Diagram d = omega_projector();  // strand 0: cap, strand 1: cup
  d = decorate(d, 0, Leg::near_start, weyl_label(n), Flavor::adjoint);
  d = decorate(d, 1, Leg::near_start, weyl_label(n), Flavor::plain);
  return d;
}

/// The channel T_n(O) = U_n^dag O U_n on a single wire.
inline Diagram channel_wire(int n, const std::string& observable_label) {
  Diagram d = op_wire(weyl_label(n), Flavor::plain);
  d = decorate(d, 0, Leg::near_start, observable_label, Flavor::plain);
  d = decorate(d, 0, Leg::near_start, weyl_label(n), Flavor::adjoint);
  return d;
}

// ---------------------------------------------------------------------------
// Teleportation (measurement form)
// ---------------------------------------------------------------------------

/// Both sides of the teleportation equation as maps H_AB -> H_C (x) H_A (x)
/// H_B, for measurement outcome n and input |psi>. Returns the residual of
/// LHS vs RHS together with the diagram-vs-matrix cross check.
inline double teleport_residual(int d, int n, const CVec& psi) {
  if (n < 1 || n > d * d)
    fail(ErrorCode::index_out_of_range,
         "teleport: n must lie in 1..d^2, got " + std::to_string(n));
  const auto basis = weyl_basis(d);
  const ComplexMatrix& un = basis[n - 1];
  const ComplexMatrix wn = detail::omega_n_matrix(d, n);
  const ComplexMatrix om = detail::omega_matrix(d);
  const ComplexMatrix omega_n = omega_n_vec(d, n);
  const ComplexMatrix omega = omega_vec(d);

  const std::size_t d2 = static_cast<std::size_t>(d) * d;
  const std::size_t d3 = d2 * d;

  // LHS[(c,a,b),(a',b')] = sum_{c'',a''} wn[(c,a),(c'',a'')] psi[c''] om[(a'',b),(a',b')]
  ComplexMatrix lhs(d3, d2);
  for (int c = 0; c < d; ++c)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (std::size_t col = 0; col < d2; ++col) {
          Cx v = 0;
          for (int cp = 0; cp < d; ++cp)
            for (int ap = 0; ap < d; ++ap)
              v += wn(static_cast<std::size_t>(c) * d + a,
                      static_cast<std::size_t>(cp) * d + ap) *
                   psi[cp] * om(static_cast<std::size_t>(ap) * d + b, col);
          lhs((static_cast<std::size_t>(c) * d + a) * d + b, col) = v;
        }

  // RHS = (1/d) (|Omega_n>_CA (x) U_n^dag|psi>_B) <Omega|_AB
  const CVec corrected = matvec(adjoint_of(un), psi);
  ComplexMatrix rhs(d3, d2);
  for (std::size_t ca = 0; ca < d2; ++ca)
    for (int b = 0; b < d; ++b)
      for (std::size_t col = 0; col < d2; ++col)
        rhs(ca * d + b, col) = omega_n(ca, 0) * corrected[b] *
                               std::conj(omega(col, 0)) / static_cast<double>(d);

  // Diagram route for the LHS: (|psi> (x) omega-projector) then
  // (omega_n-projector (x) 1_B).
  Registry reg = Registry::standard(d);
  reg.add_vector("psi", psi);
  const Diagram lhs_diag =
      compose(tensor(ket("psi"), omega_projector()),
              tensor(omega_n_projector(n), identity(1)));
  const ComplexMatrix lhs_mat = evaluate(lhs_diag, d, reg).matrix;

  return std::max(max_abs_diff(lhs, rhs), max_abs_diff(lhs_mat, lhs));
}

inline IdentityReport teleport_verify(int d, int n, std::uint64_t psi_seed,
                                      double tol = kDefaultTolerance) {
  const double r = teleport_residual(d, n, random_state(d, psi_seed));
  return detail::make_report("mtele", d, psi_seed, r, tol, "n=" + std::to_string(n));
}

// ---------------------------------------------------------------------------
// Entanglement swapping (state form)
// ---------------------------------------------------------------------------

/// Residual of the swapping equation on wires (a,b,c,d): the measurement
/// (1 (x) omega_n (x) 1) applied to |Omega_l>_ab (x) |Omega_m>_cd against
/// (1/d) |Omega_n>_bc with the collected correction U_l U_n^* U_m on wire a.
inline double swap_residual(int d, int l, int n, int m) {
  for (int idx : {l, n, m})
    if (idx < 1 || idx > d * d)
      fail(ErrorCode::index_out_of_range,
           "swap: indices must lie in 1..d^2, got " + std::to_string(idx));
  const auto basis = weyl_basis(d);
  const ComplexMatrix wn = detail::omega_n_matrix(d, n);
  const ComplexMatrix omega_l = omega_n_vec(d, l);
  const ComplexMatrix omega_m = omega_n_vec(d, m);
  const ComplexMatrix omega_n = omega_n_vec(d, n);
  const ComplexMatrix w = basis[l - 1] * conj_of(basis[n - 1]) * basis[m - 1];

  const std::size_t d2 = static_cast<std::size_t>(d) * d;
  const std::size_t d4 = d2 * d2;
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));

  ComplexMatrix lhs(d4, 1), rhs(d4, 1);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) {
          const std::size_t row =
              ((static_cast<std::size_t>(a) * d + b) * d + c) * d + e;
          Cx v = 0;
          for (int bp = 0; bp < d; ++bp)
            for (int cp = 0; cp < d; ++cp)
              v += wn(static_cast<std::size_t>(b) * d + c,
                      static_cast<std::size_t>(bp) * d + cp) *
                   omega_l(static_cast<std::size_t>(a) * d + bp, 0) *
                   omega_m(static_cast<std::size_t>(cp) * d + e, 0);
          lhs(row, 0) = v;
          rhs(row, 0) = omega_n(static_cast<std::size_t>(b) * d + c, 0) *
                        (inv_sqrt_d * w(a, e)) / static_cast<double>(d);
        }

  // Diagram route for the LHS.
  Registry reg = Registry::standard(d);
  const Diagram pair_state =
      tensor(decorate(ket_cup(), 0, Leg::near_start, weyl_label(l), Flavor::plain),
             decorate(ket_cup(), 0, Leg::near_start, weyl_label(m), Flavor::plain));
  const Diagram measurement =
      tensor(identity(1), tensor(omega_n_projector(n), identity(1)));
  const ComplexMatrix lhs_mat =
      evaluate(compose(pair_state, measurement), d, reg).matrix;

  return std::max(max_abs_diff(lhs, rhs), max_abs_diff(lhs_mat, lhs));
}

inline IdentityReport swap_verify(int d, int l, int n, int m,
                                  double tol = kDefaultTolerance) {
  const double r = swap_residual(d, l, n, m);
  return detail::make_report("swap", d, 0, r, tol,
                             "l=" + std::to_string(l) + ",n=" + std::to_string(n) +
                                 ",m=" + std::to_string(m));
}

// ---------------------------------------------------------------------------
// Tight (characteristic-equation) checks
// ---------------------------------------------------------------------------

struct TightCheck {
  double residual = 0.0;   // characteristic equation residual (direct matrices)
  double path_gap = 0.0;   // diagram-closure route vs direct route
};

/// sum_n tr((rho_C (x) omega_AB)((omega_n)_CA (x) T_n(O)_B)) = tr(rho O),
/// built from direct matrices and from close() of the enclosed diagram.
inline TightCheck tight_teleport_check(int d, std::uint64_t seed) {
  const ComplexMatrix rho = random_density(d, seed);
  const ComplexMatrix obs = random_rank1_observable(d, seed);
  const auto basis = weyl_basis(d);
  const ComplexMatrix om = detail::omega_matrix(d);
  const ComplexMatrix left = kron(rho, om);

  Registry reg = Registry::standard(d);
  reg.add_matrix("rho", rho);
  reg.add_matrix("O", obs);
  const Diagram bottom_half = tensor(op_wire("rho"), omega_projector());

  Cx total = 0;
  double gap = 0;
  for (int n = 1; n <= d * d; ++n) {
    const ComplexMatrix channel =
        adjoint_of(basis[n - 1]) * obs * basis[n - 1];
    const Cx term = product_trace(left, kron(detail::omega_n_matrix(d, n), channel));
    total += term;

    const Diagram top_half = tensor(omega_n_projector(n), channel_wire(n, "O"));
    const Cx term_diag =
        detail::eval_scalar(close(compose(bottom_half, top_half)), d, reg);
    gap = std::max(gap, std::abs(term_diag - term));
  }
  return {std::abs(total - product_trace(rho, obs)), gap};
}

inline IdentityReport tight_teleport_verify(int d, std::uint64_t seed,
                                            double tol = kDefaultTolerance) {
  const TightCheck c = tight_teleport_check(d, seed);
  return detail::make_report("ttele", d, seed, std::max(c.residual, c.path_gap), tol,
                             "path_gap=" + std::to_string(c.path_gap));
}

/// P[n,m] = <Omega_m| omega_n |Omega_m> must be the d^2 identity. The oracle
/// is the direct double loop |tr(U_m^dag U_n)|^2 / d^2.
inline TightCheck tight_densecode_check(int d) {
  const auto basis = weyl_basis(d);
  Registry reg = Registry::standard(d);
  double residual = 0, gap = 0;
  for (int n = 1; n <= d * d; ++n) {
    const ComplexMatrix wn = detail::omega_n_matrix(d, n);
    for (int m = 1; m <= d * d; ++m) {
      const ComplexMatrix vm = omega_n_vec(d, m);
      const Cx p = (adjoint_of(vm) * (wn * vm))(0, 0);
      const Cx oracle =
          std::norm(trace_of(adjoint_of(basis[m - 1]) * basis[n - 1])) /
          static_cast<double>(d * d);
      const double expected = (n == m) ? 1.0 : 0.0;
      residual = std::max(residual, std::abs(p - expected));
      residual = std::max(residual, std::abs(oracle - expected));
      const Cx p_diag = detail::eval_scalar(
          close(compose(omega_n_projector(m), omega_n_projector(n))), d, reg);
      gap = std::max(gap, std::abs(p_diag - p));
    }
  }
  return {residual, gap};
}

inline IdentityReport tight_densecode_verify(int d, double tol = kDefaultTolerance) {
  const TightCheck c = tight_densecode_check(d);
  return detail::make_report("densecode", d, 0, std::max(c.residual, c.path_gap), tol,
                             "path_gap=" + std::to_string(c.path_gap));
}

/// sum_n tr((rho_a (x) (omega_n)_bc (x) T_n(O)_d)(omega_ab (x) omega_cd))
/// = (1/d) tr(rho O^T).
inline TightCheck tight_swap_check(int d, std::uint64_t seed) {
  const ComplexMatrix rho = random_density(d, seed);
  const ComplexMatrix obs = random_rank1_observable(d, seed);
  const auto basis = weyl_basis(d);
  const ComplexMatrix om = detail::omega_matrix(d);
  const ComplexMatrix right = kron(om, om);

  Registry reg = Registry::standard(d);
  reg.add_matrix("rho", rho);
  reg.add_matrix("O", obs);
  const Diagram bottom_half = tensor(omega_projector(), omega_projector());

  Cx total = 0;
  double gap = 0;
  for (int n = 1; n <= d * d; ++n) {
    const ComplexMatrix channel =
        adjoint_of(basis[n - 1]) * obs * basis[n - 1];
    const ComplexMatrix left = kron(rho, kron(detail::omega_n_matrix(d, n), channel));
    const Cx term = product_trace(left, right);
    total += term;

    const Diagram top_half =
        tensor(op_wire("rho"), tensor(omega_n_projector(n), channel_wire(n, "O")));
    const Cx term_diag =
        detail::eval_scalar(close(compose(bottom_half, top_half)), d, reg);
    gap = std::max(gap, std::abs(term_diag - term));
  }
  const Cx target = product_trace(rho, transpose_of(obs)) / static_cast<double>(d);
  return {std::abs(total - target), gap};
}

inline IdentityReport tight_swap_verify(int d, std::uint64_t seed,
                                        double tol = kDefaultTolerance) {
  const TightCheck c = tight_swap_check(d, seed);
  return detail::make_report("tightswap", d, seed, std::max(c.residual, c.path_gap),
                             tol, "path_gap=" + std::to_string(c.path_gap));
}

// ---------------------------------------------------------------------------
// CNOT as a diagram sum
// ---------------------------------------------------------------------------

/// C = (1/2)(1 (x) 1 + 1 (x) s1 + s3 (x) 1 - s3 (x) s1); evaluates to the
/// CNOT matrix at d = 2 with the standard registry.
inline DiagramSum cnot_diagram() {
  DiagramSum c = DiagramSum::zero(2, 2);
  const Cx half(0.5, 0.0);
  c.terms.emplace_back(half, tensor(op_wire("1"), op_wire("1")));
  c.terms.emplace_back(half, tensor(op_wire("1"), op_wire("s1")));
  c.terms.emplace_back(half, tensor(op_wire("s3"), op_wire("1")));
  c.terms.emplace_back(-half, tensor(op_wire("s3"), op_wire("s1")));
  return c;
}

// ---------------------------------------------------------------------------
// Identity catalog
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& identity_catalog() {
  static const std::vector<std::string> ids = {
      "op_slide",         "trace_pair",    "transfer",    "weyl_orthogonality",
      "completeness",     "cup_fusion",    "cap_fusion",  "ptrace_projector",
      "ptrace_transfer",  "circle_two_ways", "circle_oblique", "snake_left",
      "snake_right",
  };
  return ids;
}

inline IdentityReport verify_identity(const std::string& identity_id, int d,
                                      std::uint64_t seed,
                                      double tol = kDefaultTolerance) {
  Registry reg = Registry::standard(d);
  const ComplexMatrix eye = ComplexMatrix::identity(d);
  const ComplexMatrix omega = omega_vec(d);
  const double inv_d = 1.0 / static_cast<double>(d);
  double residual = -1;

  if (identity_id == "op_slide") {
    const ComplexMatrix m = random_matrix(d, seed);
    reg.add_matrix("M", m);
    const ComplexMatrix left =
        evaluate(decorate(ket_cup(), 0, Leg::near_start, "M", Flavor::plain), d, reg)
            .matrix;
    const ComplexMatrix right =
        evaluate(decorate(ket_cup(), 0, Leg::near_end, "M", Flavor::transpose), d, reg)
            .matrix;
    const ComplexMatrix direct = kron(m, eye) * omega;
    const ComplexMatrix slid = kron(eye, transpose_of(m)) * omega;
    residual = std::max({max_abs_diff(left, direct), max_abs_diff(right, direct),
                         max_abs_diff(direct, slid)});
  } else if (identity_id == "trace_pair") {
    const ComplexMatrix m = random_matrix(d, seed);
    const ComplexMatrix n = random_matrix(d, seed ^ 0x5bf03635ULL);
    reg.add_matrix("M", m);
    reg.add_matrix("N", n);
    const Cx lhs = trace_of(m * n);
    const Cx direct = static_cast<double>(d) *
                      (adjoint_of(omega) * (kron(m, eye) * (kron(n, eye) * omega)))(0, 0);
    const Diagram circle =
        compose(decorate(ket_cup(), 0, Leg::near_start, "N", Flavor::plain),
                decorate(bra_cap(), 0, Leg::near_start, "M", Flavor::plain));
    const Cx via_loop = static_cast<double>(d) * detail::eval_scalar(circle, d, reg);
    residual = std::max(std::abs(lhs - direct), std::abs(lhs - via_loop));
  } else if (identity_id == "transfer") {
    const Diagram zig = compose(tensor(identity(1), ket_cup()),
                                tensor(bra_cap(), identity(1)));
    residual = max_abs_diff(scaled(evaluate(zig, d, reg).matrix, static_cast<double>(d)),
                            eye);
  } else if (identity_id == "weyl_orthogonality") {
    const auto basis = weyl_basis(d);
    residual = 0;
    for (int n = 0; n < d * d; ++n)
      for (int m = 0; m < d * d; ++m) {
        const Cx t = trace_of(adjoint_of(basis[n]) * basis[m]);
        const double expected = (n == m) ? static_cast<double>(d) : 0.0;
        residual = std::max(residual, std::abs(t - expected));
      }
  } else if (identity_id == "completeness") {
    ComplexMatrix sum(static_cast<std::size_t>(d) * d, static_cast<std::size_t>(d) * d);
    for (int n = 1; n <= d * d; ++n) sum = sum + detail::omega_n_matrix(d, n);
    residual = max_abs_diff(sum, ComplexMatrix::identity(static_cast<std::size_t>(d) * d));
  } else if (identity_id == "cup_fusion") {
    const Diagram fused =
        compose(tensor(ket_cup(), ket_cup()),
                tensor(identity(1), tensor(bra_cap(), identity(1))));
    residual = max_abs_diff(evaluate(fused, d, reg).matrix, scaled(omega, inv_d));
    residual = std::max(
        residual, detail::structural_residual(fused, scaled(ket_cup(), inv_d), reg, d));
  } else if (identity_id == "cap_fusion") {
    const Diagram fused =
        compose(tensor(identity(1), tensor(ket_cup(), identity(1))),
                tensor(bra_cap(), bra_cap()));
    residual =
        max_abs_diff(evaluate(fused, d, reg).matrix, scaled(adjoint_of(omega), inv_d));
    residual = std::max(
        residual, detail::structural_residual(fused, scaled(bra_cap(), inv_d), reg, d));
  } else if (identity_id == "ptrace_projector") {
    const Diagram traced = partial_close(omega_projector(), {{1, 1}});
    const ComplexMatrix got = evaluate(traced, d, reg).matrix;
    const ComplexMatrix oracle = detail::partial_trace_oracle(
        evaluate(omega_projector(), d, reg).matrix, d, 2, 2, {{1, 1}});
    residual = std::max(max_abs_diff(got, scaled(eye, inv_d)), max_abs_diff(got, oracle));
  } else if (identity_id == "ptrace_transfer") {
    const Diagram traced = partial_close(omega_projector(), {{0, 1}});
    const ComplexMatrix got = evaluate(traced, d, reg).matrix;
    const ComplexMatrix oracle = detail::partial_trace_oracle(
        evaluate(omega_projector(), d, reg).matrix, d, 2, 2, {{0, 1}});
    residual = std::max(max_abs_diff(got, scaled(eye, inv_d)), max_abs_diff(got, oracle));
  } else if (identity_id == "circle_two_ways") {
    const ComplexMatrix rho = random_matrix(d, seed);
    const ComplexMatrix obs = random_matrix(d, seed ^ 0x9177ULL);
    reg.add_matrix("rho", rho);
    reg.add_matrix("O", obs);
    Diagram proj = omega_projector();  // strand 0: cap, strand 1: cup
    proj = decorate(proj, 0, Leg::near_end, "O", Flavor::transpose);
    proj = decorate(proj, 1, Leg::near_start, "rho", Flavor::plain);
    const Cx one_way = detail::eval_scalar(close(proj), d, reg);
    const Diagram other =
        compose(decorate(ket_cup(), 0, Leg::near_start, "rho", Flavor::plain),
                decorate(bra_cap(), 0, Leg::near_end, "O", Flavor::transpose));
    const Cx other_way = detail::eval_scalar(other, d, reg);
    const Cx direct = (adjoint_of(omega) *
                       (kron(eye, transpose_of(obs)) * (kron(rho, eye) * omega)))(0, 0);
    residual = std::max(std::abs(one_way - direct), std::abs(other_way - direct));
  } else if (identity_id == "circle_oblique") {
    const ComplexMatrix rho = random_matrix(d, seed);
    const ComplexMatrix obs = random_matrix(d, seed ^ 0x9177ULL);
    reg.add_matrix("rho", rho);
    reg.add_matrix("O", obs);
    const Cx via_loop =
        detail::eval_scalar(close(compose(op_wire("rho"), op_wire("O"))), d, reg);
    const Cx direct =
        static_cast<double>(d) *
        (adjoint_of(omega) * (kron(rho, eye) * (kron(eye, transpose_of(obs)) * omega)))(0, 0);
    residual = std::max(std::abs(via_loop - direct),
                        std::abs(via_loop - trace_of(rho * obs)));
  } else if (identity_id == "snake_left") {
    const Diagram zig = compose(tensor(ket_cup(), identity(1)),
                                tensor(identity(1), bra_cap()));
    residual = max_abs_diff(evaluate(zig, d, reg).matrix, scaled(eye, inv_d));
    residual = std::max(
        residual, detail::structural_residual(zig, scaled(identity(1), inv_d), reg, d));
  } else if (identity_id == "snake_right") {
    const Diagram zag = compose(tensor(identity(1), ket_cup()),
                                tensor(bra_cap(), identity(1)));
    residual = max_abs_diff(evaluate(zag, d, reg).matrix, scaled(eye, inv_d));
    residual = std::max(
        residual, detail::structural_residual(zag, scaled(identity(1), inv_d), reg, d));
  } else {
    fail(ErrorCode::unknown_identity, "unknown identity id '" + identity_id + "'");
  }

  return detail::make_report(identity_id, d, seed, residual, tol);
}

inline std::vector<IdentityReport> run_catalog(int d, std::uint64_t seed,
                                               double tol = kDefaultTolerance) {
  std::vector<IdentityReport> out;
  for (const auto& id : identity_catalog()) out.push_back(verify_identity(id, d, seed, tol));
  return out;
}

}  // namespace tlcalc
