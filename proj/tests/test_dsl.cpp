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

#include <random>

#include "test_support.hpp"
#include "tlcalc/dsl.hpp"
#include "tlcalc/registry_io.hpp"

using namespace tlcalc;

TEST_CASE("basic parses") {
  const Expr e = parse("cap ; cup");
  REQUIRE(e.kind == ExprKind::compose);
  CHECK(e.children[0].kind == ExprKind::cap);
  CHECK(e.children[1].kind == ExprKind::cup);

  const Expr f = parse("(op(M) * id(1)) ; cap");
  REQUIRE(f.kind == ExprKind::compose);
  CHECK(f.children[0].kind == ExprKind::tensor);
  CHECK(f.children[0].children[0].label == "M");

  const Expr g = parse("op(M,dag)");
  CHECK(g.flavor == Flavor::adjoint);
  CHECK(parse("op(M,T)").flavor == Flavor::transpose);
  CHECK(parse("op(M,conj)").flavor == Flavor::conjugate);
}

TEST_CASE("cap over cup elaborates to the projector, cup over cap to the circle") {
  CHECK(elaborate(parse("cap ; cup")) == omega_projector());
  CHECK(elaborate(parse("proj")) == omega_projector());

  Registry reg = Registry::standard(5);
  const Diagram circle = elaborate(parse("cup ; cap"));
  const ComplexMatrix v = evaluate(circle, 5, reg).matrix;
  REQUIRE(v.rows() == 1);
  REQUIRE(v.cols() == 1);
  CHECK(std::abs(v(0, 0) - Cx(1)) < 1e-12);
}

TEST_CASE("decorated cap example") {
  Registry reg = tlsupport::test_registry(2);
  const Diagram d = elaborate(parse("(op(M0) * id(1)) ; cap"));
  const ComplexMatrix expected =
      adjoint_of(omega_vec(2)) * kron(reg.matrix("M0"), ComplexMatrix::identity(2));
  CHECK(max_abs_diff(evaluate(d, 2, reg).matrix, expected) < 1e-12);
}

TEST_CASE("wire compositions collapse to the identity") {
  CHECK(elaborate(parse("id(1) ; id(1)")) == identity(1));
  CHECK(elaborate(parse("id(2) ; id(2) ; id(2)")) == identity(2));
}

TEST_CASE("scalars, kets and complex literals") {
  Registry reg = Registry::standard(2);
  reg.add_vector("psi", {Cplx(0, 1), 0.0});
  const Diagram d = elaborate(parse("0.5 * ket(psi)"));
  const ComplexMatrix m = evaluate(d, 2, reg).matrix;
  CHECK(std::abs(m(0, 0) - Cplx(0, 0.5)) < 1e-15);

  CHECK(parse("1+2i").value == Cplx(1, 2));
  CHECK(parse("1-2i").value == Cplx(1, -2));
  CHECK(parse("2i").value == Cplx(0, 2));
  CHECK(parse("-3.5").value == Cplx(-3.5, 0));
  CHECK(parse("1e-3").value == Cplx(1e-3, 0));
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse("id(");
    FAIL("expected a syntax error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::syntax_error);
    CHECK(std::string(e.what()).find("1:") != std::string::npos);
  }
  CHECK_THROWS_AS(parse("op(M,weird)"), Error);
  CHECK_THROWS_AS(parse("cup extra"), Error);
  CHECK_THROWS_AS(parse("unknownthing"), Error);
}

TEST_CASE("arity mismatches report both arities") {
  try {
    elaborate(parse("cap ; id(1)"));
    FAIL("expected an arity error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::arity_mismatch);
    const std::string msg = e.what();
    CHECK(msg.find("0") != std::string::npos);
    CHECK(msg.find("1") != std::string::npos);
  }
}

namespace {

Expr random_ast(std::mt19937_64& rng, int depth) {
  auto pick = [&rng](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  Expr e;
  const int leaf_kinds = 7;
  const int kind = depth <= 0 ? pick(leaf_kinds) : pick(leaf_kinds + 2);
  const std::vector<std::string> labels = {"M", "N", "U3", "psi_1"};
  switch (kind) {
    case 0:
      e.kind = ExprKind::identity;
      e.n = pick(4);
      break;
    case 1: e.kind = ExprKind::cup; break;
    case 2: e.kind = ExprKind::cap; break;
    case 3:
      e.kind = ExprKind::op;
      e.label = labels[pick(4)];
      e.flavor = static_cast<Flavor>(pick(4));
      break;
    case 4:
      e.kind = ExprKind::ket;
      e.label = labels[pick(4)];
      break;
    case 5:
      e.kind = ExprKind::bra;
      e.label = labels[pick(4)];
      break;
    case 6: {
      e.kind = ExprKind::scalar;
      std::uniform_real_distribution<double> u(-10.0, 10.0);
      const int shape = pick(3);
      const double re = u(rng), im = u(rng);
      e.value = shape == 0 ? Cx(re, 0) : shape == 1 ? Cx(0, im) : Cx(re, im);
      break;
    }
    default:
      e.kind = kind == leaf_kinds ? ExprKind::tensor : ExprKind::compose;
      e.children.push_back(random_ast(rng, depth - 1));
      e.children.push_back(random_ast(rng, depth - 1));
      break;
  }
  return e;
}

}  // namespace

TEST_CASE("serialize/parse round trip on generated expressions") {
  std::mt19937_64 rng(91);
  for (int trial = 0; trial < 200; ++trial) {
    const Expr e = random_ast(rng, 4);
    const std::string text = serialize(e);
    INFO(text);
    const Expr back = parse(text);
    CHECK(ast_equal(e, back));
    CHECK(serialize(back) == text);
  }
}

TEST_CASE("registry files round trip") {
  Registry reg(2);
  reg.add_matrix("A", random_matrix(2, 3));
  reg.add_vector("psi", random_state(2, 4));
  const nlohmann::json j = registry_to_json(reg);
  const Registry back = registry_from_json(j);
  CHECK(back.dimension() == 2);
  CHECK(max_abs_diff(back.matrix("A"), reg.matrix("A")) == 0.0);
  CHECK(back.vector("psi") == reg.vector("psi"));
}

TEST_CASE("registry files validate their shapes") {
  nlohmann::json bad = {{"d", 2}, {"matrices", {{"A", {{{1.0, 0.0}}}}}}};
  CHECK_THROWS_MATCHES(registry_from_json(bad), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::dimension_mismatch;
                       }));
  nlohmann::json no_d = {{"matrices", nlohmann::json::object()}};
  CHECK_THROWS_AS(registry_from_json(no_d), Error);
}
