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

#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace tlcalc;

TEST_CASE("tl_generator builds omega on adjacent wires") {
  CHECK(tl_generator(3, 1) == tensor(omega_projector(), identity(1)));
  CHECK(tl_generator(3, 2) == tensor(identity(1), omega_projector()));
  CHECK_THROWS_MATCHES(tl_generator(3, 3), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::index_out_of_range;
                       }));
}

TEST_CASE("TL relations hold exactly at small sizes") {
  for (const auto& r : check_tl_relations(3, 2)) {
    INFO(r.identity_id << " " << r.params);
    CHECK(r.passed);
    CHECK(r.residual < 1e-12);
  }
  for (const auto& r : check_tl_relations(6, 3)) {
    INFO(r.identity_id << " " << r.params);
    CHECK(r.passed);
  }
}

TEST_CASE("hermiticity of the generators is structural") {
  CHECK(dagger(tl_generator(4, 2)) == tl_generator(4, 2));
}

TEST_CASE("teleportation equation with the trivial correction") {
  // d=2, n=1 (U_1 = 1), psi = |0>
  CHECK(teleport_residual(2, 1, {1.0, 0.0}) < 1e-12);
}

TEST_CASE("teleportation equation across outcomes and dimensions") {
  for (int d = 2; d <= 3; ++d)
    for (int n = 1; n <= d * d; ++n) {
      const IdentityReport r = teleport_verify(d, n, 17 + n);
      INFO("d=" << d << " n=" << n);
      CHECK(r.passed);
    }
  CHECK_THROWS_MATCHES(teleport_verify(2, 5, 1), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::index_out_of_range;
                       }));
}

TEST_CASE("measurement branch recovers the corrected state") {
  // applying the LHS to |Omega>_AB yields (1/d) |Omega_n> (x) U_n^dag |psi>
  const int d = 3;
  const int n = 4;
  const CVec psi = random_state(d, 5);
  Registry reg = Registry::standard(d);
  reg.add_vector("psi", psi);
  const Diagram lhs_diag = compose(tensor(ket("psi"), omega_projector()),
                                   tensor(omega_n_projector(n), identity(1)));
  const ComplexMatrix lhs = evaluate(lhs_diag, d, reg).matrix;
  const CVec omega_in(omega_vec(d).entries());
  CVec branch(lhs.rows());
  for (std::size_t r = 0; r < lhs.rows(); ++r) {
    Cx v = 0;
    for (std::size_t c = 0; c < lhs.cols(); ++c) v += lhs(r, c) * omega_in[c];
    branch[r] = v;
  }
  const ComplexMatrix omega_n = omega_n_vec(d, n);
  const CVec corrected = matvec(adjoint_of(weyl_basis(d)[n - 1]), psi);
  for (int ca = 0; ca < d * d; ++ca)
    for (int b = 0; b < d; ++b)
      CHECK(std::abs(branch[static_cast<std::size_t>(ca) * d + b] -
                     omega_n(ca, 0) * corrected[b] / static_cast<double>(d)) < 1e-12);
}

TEST_CASE("teleportation outcome probabilities are uniform with unit fidelity") {
  const int d = 3;
  const CVec psi = random_state(d, 23);
  const ComplexMatrix om = omega_vec(d);
  double total = 0;
  for (int n = 1; n <= d * d; ++n) {
    // s_n = (<Omega_n| (x) 1)(|psi> (x) |Omega>)
    const auto un = weyl_basis(d)[n - 1];
    CVec s(d, 0.0);
    const ComplexMatrix omega_n = omega_n_vec(d, n);
    for (int b = 0; b < d; ++b) {
      Cx v = 0;
      for (int c = 0; c < d; ++c)
        for (int a = 0; a < d; ++a)
          v += std::conj(omega_n(static_cast<std::size_t>(c) * d + a, 0)) * psi[c] *
               om(static_cast<std::size_t>(a) * d + b, 0);
      s[b] = v;
    }
    const double p = std::abs(inner(s, s));
    CHECK(std::abs(p - 1.0 / (d * d)) < 1e-12);  // uniform outcome distribution
    CVec fixed = matvec(un, s);
    const double norm = norm_of(fixed);
    for (auto& x : fixed) x /= norm;
    const double fidelity = std::norm(inner(psi, fixed));
    CHECK(std::abs(fidelity - 1.0) < 1e-12);
    total += p * fidelity;
  }
  CHECK(std::abs(total - 1.0) < 1e-9);
}

TEST_CASE("entanglement swapping equation") {
  // trivial corrections: both sides are (1/d) |Omega_n=1>_bc with |Omega>_ad
  CHECK(swap_residual(2, 1, 1, 1) < 1e-12);
  for (int l = 1; l <= 4; ++l)
    for (int n = 1; n <= 4; ++n)
      for (int m = 1; m <= 4; ++m) CHECK(swap_verify(2, l, n, m).passed);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const int l = 1 + static_cast<int>(rng() % 9);
    const int n = 1 + static_cast<int>(rng() % 9);
    const int m = 1 + static_cast<int>(rng() % 9);
    CHECK(swap_verify(3, l, n, m).passed);
  }
  CHECK_THROWS_AS(swap_verify(2, 5, 1, 1), Error);
}

TEST_CASE("tight teleportation: the characteristic equation") {
  const IdentityReport r = tight_teleport_verify(2, 7);
  CHECK(r.passed);
  for (int d = 2; d <= 4; ++d)
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const TightCheck c = tight_teleport_check(d, seed);
      INFO("d=" << d << " seed=" << seed);
      CHECK(c.residual < 1e-9);
      CHECK(c.path_gap < 1e-10);  // diagram closure agrees with direct matrices
    }
}

TEST_CASE("tight dense coding: P[n,m] is the identity") {
  const TightCheck c2 = tight_densecode_check(2);
  CHECK(c2.residual < 1e-12);
  CHECK(c2.path_gap < 1e-10);
  for (int d = 2; d <= 4; ++d) CHECK(tight_densecode_verify(d).passed);
}

TEST_CASE("tight swapping: the characteristic equation") {
  const IdentityReport r = tight_swap_verify(2, 3);
  CHECK(r.passed);
  for (int d = 2; d <= 3; ++d)
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const TightCheck c = tight_swap_check(d, seed);
      INFO("d=" << d << " seed=" << seed);
      CHECK(c.residual < 1e-9);
      CHECK(c.path_gap < 1e-10);
    }
}

TEST_CASE("CNOT from the Pauli sum") {
  Registry reg = Registry::standard(2);
  const ComplexMatrix c = evaluate(cnot_diagram(), 2, reg).matrix;
  // truth table: |00>->|00>, |01>->|01>, |10>->|11>, |11>->|10>
  ComplexMatrix expected(4, 4);
  expected(0, 0) = expected(1, 1) = expected(3, 2) = expected(2, 3) = 1.0;
  CHECK(max_abs_diff(c, expected) < 1e-12);
  CHECK(max_abs_diff(c * c, ComplexMatrix::identity(4)) < 1e-12);
  CHECK(max_abs_diff(adjoint_of(c) * c, ComplexMatrix::identity(4)) < 1e-12);
}

TEST_CASE("identity catalog spot checks") {
  CHECK(verify_identity("transfer", 3, 0).residual < 1e-12);
  CHECK(verify_identity("cup_fusion", 2, 0).passed);
  CHECK(verify_identity("snake_left", 4, 0).residual < 1e-12);
  for (const auto& id : identity_catalog()) {
    const IdentityReport r = verify_identity(id, 2, 9);
    INFO(id);
    CHECK(r.passed);
    CHECK(r.identity_id == id);
  }
  CHECK_THROWS_MATCHES(verify_identity("nonsense", 2, 0), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::unknown_identity;
                       }));
}

TEST_CASE("report passed flag tracks the tolerance") {
  const IdentityReport strict = verify_identity("completeness", 2, 0, 0.0);
  CHECK_FALSE(strict.passed);
  CHECK(strict.residual >= 0.0);
}
