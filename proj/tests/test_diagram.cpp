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
using tlsupport::naive_evaluate;
using tlsupport::random_diagram;
using tlsupport::random_diagram_with_arity;
using tlsupport::test_registry;

namespace {
const Registry& reg2() {
  static const Registry r = test_registry(2);
  return r;
}
const Registry& reg3() {
  static const Registry r = test_registry(3);
  return r;
}
}  // namespace

TEST_CASE("identity diagrams") {
  CHECK(evaluate(identity(0), 2, reg2()).matrix(0, 0) == Cx(1));
  CHECK(max_abs_diff(evaluate(identity(1), 3, reg3()).matrix,
                     ComplexMatrix::identity(3)) == 0.0);
  CHECK_THROWS_AS(identity(-1), Error);
}

TEST_CASE("cups and caps evaluate to the entangled pair") {
  const double s = 1.0 / std::sqrt(2.0);
  const ComplexMatrix cup = evaluate(ket_cup(), 2, reg2()).matrix;
  REQUIRE(cup.rows() == 4);
  REQUIRE(cup.cols() == 1);
  CHECK(std::abs(cup(0, 0) - s) < 1e-15);
  CHECK(std::abs(cup(3, 0) - s) < 1e-15);
  CHECK(cup(1, 0) == Cx(0));

  const ComplexMatrix cap = evaluate(bra_cap(), 2, reg2()).matrix;
  REQUIRE(cap.rows() == 1);
  REQUIRE(cap.cols() == 4);
  CHECK(std::abs(cap(0, 0) - s) < 1e-15);
  CHECK(std::abs(cap(0, 3) - s) < 1e-15);

  // unit norm at every dimension
  for (int d = 2; d <= 5; ++d) {
    Registry reg = Registry::standard(d);
    const ComplexMatrix v = evaluate(ket_cup(), d, reg).matrix;
    CHECK(std::abs((adjoint_of(v) * v)(0, 0) - 1.0) < 1e-12);
  }
}

TEST_CASE("dagger swaps cups, caps, kets and bras structurally") {
  CHECK(dagger(ket_cup()) == bra_cap());
  CHECK(dagger(bra_cap()) == ket_cup());
  CHECK(dagger(ket("v0")) == bra("v0"));
  CHECK(dagger(bra("v0")) == ket("v0"));
}

TEST_CASE("the closed circle has value one") {
  const Diagram circle = compose(ket_cup(), bra_cap());
  REQUIRE(circle.loops.size() == 1);
  CHECK(circle.strands.empty());
  CHECK(circle.scalar == Cx(1));
  for (int d = 2; d <= 5; ++d) {
    Registry reg = Registry::standard(d);
    CHECK(std::abs(evaluate(circle, d, reg).matrix(0, 0) - 1.0) < 1e-12);
  }
}

TEST_CASE("cap over cup is the omega projector") {
  const Diagram om = compose(bra_cap(), ket_cup());
  CHECK(om == omega_projector());
  const ComplexMatrix m = evaluate(om, 2, reg2()).matrix;
  ComplexMatrix expected(4, 4);
  expected(0, 0) = expected(0, 3) = expected(3, 0) = expected(3, 3) = 0.5;
  CHECK(max_abs_diff(m, expected) < 1e-15);
}

TEST_CASE("kets, bras and inner products") {
  Registry reg = Registry::standard(2);
  reg.add_vector("psi", {1.0, 0.0});
  reg.add_vector("phi", {0.6, 0.8});
  const ComplexMatrix k = evaluate(ket("psi"), 2, reg).matrix;
  REQUIRE(k.rows() == 2);
  CHECK(k(0, 0) == Cx(1));
  CHECK(k(1, 0) == Cx(0));

  // <phi|psi>
  const Diagram ip = compose(ket("psi"), bra("phi"));
  REQUIRE(ip.strands.size() == 1);
  CHECK(ip.strands[0].start.kind == EndpointKind::ket_terminal);
  CHECK(ip.strands[0].end.kind == EndpointKind::bra_terminal);
  CHECK(std::abs(evaluate(ip, 2, reg).matrix(0, 0) - Cx(0.6)) < 1e-15);

  // M|psi> via composition
  reg.add_matrix("M", random_matrix(2, 8));
  const ComplexMatrix mv = evaluate(compose(ket("psi"), op_wire("M")), 2, reg).matrix;
  const CVec expect = matvec(reg.matrix("M"), reg.vector("psi"));
  CHECK(std::abs(mv(0, 0) - expect[0]) < 1e-14);
  CHECK(std::abs(mv(1, 0) - expect[1]) < 1e-14);
}

TEST_CASE("composition identity laws hold structurally") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Diagram d = random_diagram(rng);
    CHECK(compose(identity(d.upper_arity), d) == d);
    CHECK(compose(d, identity(d.lower_arity)) == d);
    CHECK(tensor(identity(0), d) == d);
    CHECK(tensor(d, identity(0)) == d);
  }
}

TEST_CASE("tensor shifts the second factor's boundary indices") {
  const Diagram upper_half = tensor(identity(1), ket_cup());
  CHECK(upper_half.upper_arity == 1);
  CHECK(upper_half.lower_arity == 3);
  bool has_shifted_cup = false;
  for (const auto& s : upper_half.strands)
    has_shifted_cup =
        has_shifted_cup ||
        (s.start == Endpoint::bottom(1) && s.end == Endpoint::bottom(2));
  CHECK(has_shifted_cup);
}

TEST_CASE("compose rejects arity mismatches") {
  CHECK_THROWS_MATCHES(compose(bra_cap(), identity(1)), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::arity_mismatch;
                       }));
}

TEST_CASE("evaluate(compose) is the reversed matrix product") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 2);
    const Registry& reg = d == 2 ? reg2() : reg3();
    const int u = static_cast<int>(rng() % 3);
    const int mid = static_cast<int>(rng() % 3);
    const int l = static_cast<int>(rng() % 3);
    const Diagram f = random_diagram_with_arity(rng, u, mid);
    const Diagram s = random_diagram_with_arity(rng, mid, l);
    const ComplexMatrix got = evaluate(compose(f, s), d, reg).matrix;
    const ComplexMatrix expected =
        evaluate(s, d, reg).matrix * evaluate(f, d, reg).matrix;
    CHECK(max_abs_diff(got, expected) < 1e-9);
  }
}

TEST_CASE("evaluate(tensor) is the Kronecker product") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 2;
    const Diagram a = random_diagram(rng);
    const Diagram b = random_diagram(rng);
    const ComplexMatrix got = evaluate(tensor(a, b), d, reg2()).matrix;
    const ComplexMatrix expected =
        kron(evaluate(a, d, reg2()).matrix, evaluate(b, d, reg2()).matrix);
    CHECK(max_abs_diff(got, expected) < 1e-9);
  }
}

TEST_CASE("interchange law") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    const int u1 = static_cast<int>(rng() % 2), m1 = static_cast<int>(rng() % 2),
              l1 = static_cast<int>(rng() % 2);
    const int u2 = static_cast<int>(rng() % 2), m2 = static_cast<int>(rng() % 2),
              l2 = static_cast<int>(rng() % 2);
    const Diagram a = random_diagram_with_arity(rng, u1, m1);
    const Diagram c = random_diagram_with_arity(rng, m1, l1);
    const Diagram b = random_diagram_with_arity(rng, u2, m2);
    const Diagram dd = random_diagram_with_arity(rng, m2, l2);
    const Diagram lhs = compose(tensor(a, b), tensor(c, dd));
    const Diagram rhs = tensor(compose(a, c), compose(b, dd));
    CHECK(approx_equal(lhs, rhs, 1e-12));
    CHECK(max_abs_diff(evaluate(lhs, 2, reg2()).matrix,
                       evaluate(rhs, 2, reg2()).matrix) < 1e-10);
  }
}

TEST_CASE("dagger is a contravariant involution matching the adjoint") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 2);
    const Registry& reg = d == 2 ? reg2() : reg3();
    const Diagram dg = random_diagram(rng);
    CHECK(dagger(dagger(dg)) == dg);
    CHECK(max_abs_diff(evaluate(dagger(dg), d, reg).matrix,
                       adjoint_of(evaluate(dg, d, reg).matrix)) < 1e-9);
  }
}

TEST_CASE("decorating a cup acts on the chosen factor") {
  Registry reg = test_registry(2);
  const ComplexMatrix& m = reg.matrix("M0");
  const ComplexMatrix omega = omega_vec(2);
  const ComplexMatrix left =
      evaluate(decorate(ket_cup(), 0, Leg::near_start, "M0", Flavor::plain), 2, reg)
          .matrix;
  CHECK(max_abs_diff(left, kron(m, ComplexMatrix::identity(2)) * omega) < 1e-12);

  const ComplexMatrix right =
      evaluate(decorate(ket_cup(), 0, Leg::near_end, "M0", Flavor::plain), 2, reg)
          .matrix;
  CHECK(max_abs_diff(right, kron(ComplexMatrix::identity(2), m) * omega) < 1e-12);

  // dagger of the decorated cup is the cap with the adjoint operator
  const Diagram dec = decorate(ket_cup(), 0, Leg::near_start, "M0", Flavor::plain);
  const ComplexMatrix capped = evaluate(dagger(dec), 2, reg).matrix;
  CHECK(max_abs_diff(capped,
                     adjoint_of(omega) * kron(adjoint_of(m), ComplexMatrix::identity(2)))
        < 1e-12);
}

TEST_CASE("decorations picked up against the traversal direction transpose") {
  // gluing op(M) under the right cap leg reads <Omega|(1 (x) M) = <Omega|(M^T (x) 1)
  Registry reg = test_registry(2);
  const ComplexMatrix& m = reg.matrix("M0");
  const ComplexMatrix cap_row = adjoint_of(omega_vec(2));
  const ComplexMatrix got =
      evaluate(compose(tensor(identity(1), op_wire("M0")), bra_cap()), 2, reg).matrix;
  CHECK(max_abs_diff(got, cap_row * kron(ComplexMatrix::identity(2), m)) < 1e-12);
  CHECK(max_abs_diff(got, cap_row * kron(transpose_of(m), ComplexMatrix::identity(2)))
        < 1e-12);
}

TEST_CASE("terminals thread through bends") {
  // <Omega|(|psi> (x) |phi>) = (1/sqrt d) sum_i psi_i phi_i
  Registry reg = Registry::standard(2);
  reg.add_vector("psi", {0.6, 0.8});
  reg.add_vector("phi", {Cx(0, 1), 0.25});
  const Diagram d = compose(tensor(ket("psi"), ket("phi")), bra_cap());
  REQUIRE(d.strands.size() == 1);
  CHECK(d.strands[0].start.kind == EndpointKind::ket_terminal);
  CHECK(d.strands[0].end.kind == EndpointKind::ket_terminal);
  const Cx expected = (0.6 * Cx(0, 1) + 0.8 * 0.25) / std::sqrt(2.0);
  CHECK(std::abs(evaluate(d, 2, reg).matrix(0, 0) - expected) < 1e-14);
}

TEST_CASE("decorating with the identity label changes nothing numerically") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const Diagram d = random_diagram(rng);
    if (d.strands.empty()) continue;
    const Diagram dec = decorate(d, 0, Leg::near_start, "1", Flavor::plain);
    CHECK(max_abs_diff(evaluate(dec, 2, reg2()).matrix,
                       evaluate(d, 2, reg2()).matrix) < 1e-10);
  }
}

TEST_CASE("decorate validates the strand reference") {
  CHECK_THROWS_MATCHES(decorate(identity(1), 5, Leg::near_start, "M0", Flavor::plain),
                       Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::invalid_strand;
                       }));
}

TEST_CASE("planarity: identity yes, swap no, TL generator yes") {
  CHECK(is_tl_planar(identity(4)));
  Diagram swap;
  swap.upper_arity = swap.lower_arity = 2;
  swap.strands.push_back({Endpoint::top(0), Endpoint::bottom(1), {}, -1, 0});
  swap.strands.push_back({Endpoint::top(1), Endpoint::bottom(0), {}, -1, 0});
  detail::sort_diagram(swap);
  swap.validate();
  CHECK_FALSE(is_tl_planar(swap));
  CHECK(is_tl_planar(tl_generator(3, 1)));
  CHECK(is_tl_planar(compose(tl_generator(4, 1), tl_generator(4, 3))));
  CHECK_THROWS_MATCHES(is_tl_planar(ket("v0")), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::terminal_present;
                       }));
}

TEST_CASE("crossing diagrams still evaluate correctly") {
  // the swap matching evaluates to the swap operator
  Diagram swap;
  swap.upper_arity = swap.lower_arity = 2;
  swap.strands.push_back({Endpoint::top(0), Endpoint::bottom(1), {}, -1, 0});
  swap.strands.push_back({Endpoint::top(1), Endpoint::bottom(0), {}, -1, 0});
  detail::sort_diagram(swap);
  const ComplexMatrix m = evaluate(swap, 2, reg2()).matrix;
  ComplexMatrix expected(4, 4);
  expected(0, 0) = expected(1, 2) = expected(2, 1) = expected(3, 3) = 1.0;
  CHECK(max_abs_diff(m, expected) == 0.0);
}

TEST_CASE("snake identities give the 1/d-normalized straight wire") {
  for (int d = 2; d <= 5; ++d) {
    Registry reg = Registry::standard(d);
    const Diagram left =
        compose(tensor(ket_cup(), identity(1)), tensor(identity(1), bra_cap()));
    const Diagram right =
        compose(tensor(identity(1), ket_cup()), tensor(bra_cap(), identity(1)));
    const ComplexMatrix expected =
        scaled(ComplexMatrix::identity(d), 1.0 / static_cast<double>(d));
    CHECK(max_abs_diff(evaluate(left, d, reg).matrix, expected) < 1e-12);
    CHECK(max_abs_diff(evaluate(right, d, reg).matrix, expected) < 1e-12);
  }
}

TEST_CASE("random diagrams satisfy the coverage invariants") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 50; ++trial) {
    const Diagram d = random_diagram(rng);
    CHECK_NOTHROW(d.validate());
    CHECK_NOTHROW(dagger(d).validate());
    const Diagram t = tensor(d, d);
    CHECK_NOTHROW(t.validate());
  }
}

TEST_CASE("evaluate agrees with the brute-force oracle") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 2);
    const Registry& reg = d == 2 ? reg2() : reg3();
    const Diagram dg = random_diagram(rng);
    CHECK(max_abs_diff(evaluate(dg, d, reg).matrix, naive_evaluate(dg, d, reg)) < 1e-9);
  }
}

TEST_CASE("diagram sums: zero, linearity, dagger") {
  const DiagramSum zero = DiagramSum::zero(1, 1);
  CHECK(max_abs(evaluate(zero, 2, reg2()).matrix) == 0.0);

  DiagramSum s = DiagramSum::of(op_wire("M0"), Cx(2.0, 0.0));
  s = add(s, DiagramSum::of(op_wire("M1"), Cx(0.0, 1.0)));
  const ComplexMatrix got = evaluate(s, 2, reg2()).matrix;
  const ComplexMatrix expected =
      scaled(reg2().matrix("M0"), 2.0) + scaled(reg2().matrix("M1"), Cx(0, 1));
  CHECK(max_abs_diff(got, expected) < 1e-12);

  const ComplexMatrix dg = evaluate(dagger(s), 2, reg2()).matrix;
  CHECK(max_abs_diff(dg, adjoint_of(expected)) < 1e-12);

  CHECK_THROWS_MATCHES(add(s, DiagramSum::zero(2, 2)), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::arity_mismatch;
                       }));
}

TEST_CASE("scalar diagrams evaluate to their scalar") {
  const Diagram d = scaled(identity(0), Cx(2.5, -1.0));
  CHECK(evaluate(d, 3, reg3()).matrix(0, 0) == Cx(2.5, -1.0));
}
