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

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "tlcalc/diagram.hpp"

namespace tlcalc {

// Concrete syntax for diagrams:
//
//   expr   := term { ";" term }          vertical, top to bottom
//   term   := factor { "*" factor }      horizontal, left to right
//   factor := "id(" INT ")" | "cup" | "cap" | "proj"
//           | "op(" LABEL ["," FLAVOR] ")" | "ket(" LABEL ")" | "bra(" LABEL ")"
//           | NUMBER | "(" expr ")"
//   FLAVOR := "dag" | "T" | "conj"
//
// Numbers accept "a+bi" complex literals ("2", "-1.5", "2i", "1-2i", "1e-3").
// `proj` is sugar for the (2,2) projector omega and parses to cap ; cup.

enum class ExprKind {
  identity,
  cup,
  cap,
  op,
  ket,
  bra,
  scalar,
  tensor,
  compose,
};

struct Expr {
  ExprKind kind = ExprKind::identity;
  int n = 0;                  // identity
  std::string label;          // op / ket / bra
  Flavor flavor = Flavor::plain;  // op
  Cx value;                   // scalar
  std::vector<Expr> children; // tensor / compose: exactly two
  int line = 1;
  int col = 1;
};

/// Structural AST equality; source positions are ignored.
inline bool ast_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.n != b.n || a.label != b.label ||
      a.flavor != b.flavor || a.value != b.value ||
      a.children.size() != b.children.size())
    return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!ast_equal(a.children[i], b.children[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Lexing / parsing
// ---------------------------------------------------------------------------

namespace dsl_detail {

enum class Tok { lparen, rparen, semicolon, star, comma, ident, number, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  Cx number;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= src_.size()) {
      t.kind = Tok::end;
      return t;
    }
    const char c = src_[pos_];
    switch (c) {
      case '(': t.kind = Tok::lparen; advance(); return t;
      case ')': t.kind = Tok::rparen; advance(); return t;
      case ';': t.kind = Tok::semicolon; advance(); return t;
      case '*': t.kind = Tok::star; advance(); return t;
      case ',': t.kind = Tok::comma; advance(); return t;
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::ident;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        t.text += src_[pos_];
        advance();
      }
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' ||
        (c == '-' && pos_ + 1 < src_.size() &&
         (std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])) || src_[pos_ + 1] == '.'))) {
      t.kind = Tok::number;
      t.number = lex_complex(t);
      return t;
    }
    fail(ErrorCode::syntax_error, position_message(t) + "unexpected character '" +
                                      std::string(1, c) + "'");
  }

 private:
  void advance() {
    if (pos_ < src_.size()) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      advance();
  }

  static std::string position_message(const Token& t) {
    return "syntax error at " + std::to_string(t.line) + ":" + std::to_string(t.col) + ": ";
  }

  double lex_float(const Token& t) {
    std::string buf;
    if (pos_ < src_.size() && src_[pos_] == '-') {
      buf += '-';
      advance();
    }
    bool digits = false;
    while (pos_ < src_.size() &&
           (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
      digits = digits || std::isdigit(static_cast<unsigned char>(src_[pos_]));
      buf += src_[pos_];
      advance();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      // exponent only when followed by (signed) digits; otherwise it is the
      // start of an identifier such as the flavor separator
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        buf += src_[pos_];
        advance();
        if (src_[pos_] == '+' || src_[pos_] == '-') {
          buf += src_[pos_];
          advance();
        }
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          buf += src_[pos_];
          advance();
        }
      }
    }
    if (!digits)
      fail(ErrorCode::syntax_error, position_message(t) + "malformed number");
    return std::strtod(buf.c_str(), nullptr);
  }

  Cx lex_complex(const Token& t) {
    const double first = lex_float(t);
    if (pos_ < src_.size() && src_[pos_] == 'i' && !continues_identifier(pos_ + 1)) {
      advance();
      return Cx(0.0, first);  // pure imaginary literal like "2i"
    }
    if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
      // try "a+bi" / "a-bi"; back out unless the tail really is <float>i
      const std::size_t mark = pos_;
      const int mark_line = line_, mark_col = col_;
      const double sign = src_[pos_] == '-' ? -1.0 : 1.0;
      advance();
      if (pos_ < src_.size() &&
          (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
        const double second = lex_float(t);
        if (pos_ < src_.size() && src_[pos_] == 'i' && !continues_identifier(pos_ + 1)) {
          advance();
          return Cx(first, sign * second);
        }
      }
      pos_ = mark;
      line_ = mark_line;
      col_ = mark_col;
    }
    return Cx(first, 0.0);
  }

  bool continues_identifier(std::size_t at) const {
    return at < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[at])) || src_[at] == '_');
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { bump(); }

  Expr parse_expr() {
    Expr lhs = parse_term();
    while (cur_.kind == Tok::semicolon) {
      const Token at = cur_;
      bump();
      Expr rhs = parse_term();
      Expr node;
      node.kind = ExprKind::compose;
      node.line = at.line;
      node.col = at.col;
      node.children = {std::move(lhs), std::move(rhs)};
      lhs = std::move(node);
    }
    return lhs;
  }

  void expect_end() {
    if (cur_.kind != Tok::end)
      fail(ErrorCode::syntax_error, where() + "trailing input");
  }

 private:
  Expr parse_term() {
    Expr lhs = parse_factor();
    while (cur_.kind == Tok::star) {
      const Token at = cur_;
      bump();
      Expr rhs = parse_factor();
      Expr node;
      node.kind = ExprKind::tensor;
      node.line = at.line;
      node.col = at.col;
      node.children = {std::move(lhs), std::move(rhs)};
      lhs = std::move(node);
    }
    return lhs;
  }

  Expr parse_factor() {
    Expr node;
    node.line = cur_.line;
    node.col = cur_.col;
    if (cur_.kind == Tok::lparen) {
      bump();
      node = parse_expr();
      expect(Tok::rparen, "')'");
      return node;
    }
    if (cur_.kind == Tok::number) {
      node.kind = ExprKind::scalar;
      node.value = cur_.number;
      bump();
      return node;
    }
    if (cur_.kind != Tok::ident)
      fail(ErrorCode::syntax_error, where() + "expected a diagram factor");
    const std::string head = cur_.text;
    bump();
    if (head == "cup") {
      node.kind = ExprKind::cup;
    } else if (head == "cap") {
      node.kind = ExprKind::cap;
    } else if (head == "proj") {
      // sugar: the (2,2) projector omega, i.e. cap over cup
      Expr capn, cupn;
      capn.kind = ExprKind::cap;
      capn.line = node.line;
      capn.col = node.col;
      cupn.kind = ExprKind::cup;
      cupn.line = node.line;
      cupn.col = node.col;
      node.kind = ExprKind::compose;
      node.children = {std::move(capn), std::move(cupn)};
    } else if (head == "id") {
      node.kind = ExprKind::identity;
      expect(Tok::lparen, "'('");
      if (cur_.kind != Tok::number || cur_.number.imag() != 0 ||
          cur_.number.real() < 0 ||
          cur_.number.real() != static_cast<int>(cur_.number.real()))
        fail(ErrorCode::syntax_error, where() + "id() takes a non-negative integer");
      node.n = static_cast<int>(cur_.number.real());
      bump();
      expect(Tok::rparen, "')'");
    } else if (head == "op") {
      node.kind = ExprKind::op;
      expect(Tok::lparen, "'('");
      node.label = expect_label();
      if (cur_.kind == Tok::comma) {
        bump();
        const std::string f = expect_label();
        if (f == "dag") node.flavor = Flavor::adjoint;
        else if (f == "T") node.flavor = Flavor::transpose;
        else if (f == "conj") node.flavor = Flavor::conjugate;
        else
          fail(ErrorCode::syntax_error,
               where() + "unknown flavor '" + f + "' (expected dag, T or conj)");
      }
      expect(Tok::rparen, "')'");
    } else if (head == "ket" || head == "bra") {
      node.kind = head == "ket" ? ExprKind::ket : ExprKind::bra;
      expect(Tok::lparen, "'('");
      node.label = expect_label();
      expect(Tok::rparen, "')'");
    } else {
      fail(ErrorCode::syntax_error,
           "syntax error at " + std::to_string(node.line) + ":" +
               std::to_string(node.col) + ": unknown construct '" + head + "'");
    }
    return node;
  }

  std::string expect_label() {
    if (cur_.kind != Tok::ident)
      fail(ErrorCode::syntax_error, where() + "expected a label");
    std::string s = cur_.text;
    bump();
    return s;
  }

  void expect(Tok k, const std::string& what) {
    if (cur_.kind != k) fail(ErrorCode::syntax_error, where() + "expected " + what);
    bump();
  }

  std::string where() const {
    return "syntax error at " + std::to_string(cur_.line) + ":" +
           std::to_string(cur_.col) + ": ";
  }

  void bump() { cur_ = lexer_.next(); }

  Lexer lexer_;
  Token cur_;
};

inline std::string format_double(double v) {
  char buf[64];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

inline std::string format_complex(Cx v) {
  if (v.imag() == 0.0) return format_double(v.real());
  if (v.real() == 0.0) return format_double(v.imag()) + "i";
  std::string s = format_double(v.real());
  if (v.imag() >= 0.0) s += "+";
  return s + format_double(v.imag()) + "i";
}

}  // namespace dsl_detail

inline Expr parse(std::string_view text) {
  dsl_detail::Parser p(text);
  Expr e = p.parse_expr();
  p.expect_end();
  return e;
}

// ---------------------------------------------------------------------------
// Serialization (canonical text; parse(serialize(e)) == e structurally)
// ---------------------------------------------------------------------------

namespace dsl_detail {

inline void serialize_into(const Expr& e, std::string& out, int parent_level,
                           bool right_child);

inline int level_of(const Expr& e) {
  switch (e.kind) {
    case ExprKind::compose: return 0;
    case ExprKind::tensor: return 1;
    default: return 2;
  }
}

inline void serialize_into(const Expr& e, std::string& out, int parent_level,
                           bool right_child) {
  const int lvl = level_of(e);
  const bool parens = lvl < parent_level || (lvl == parent_level && right_child && lvl < 2);
  if (parens) out += "(";
  switch (e.kind) {
    case ExprKind::identity: out += "id(" + std::to_string(e.n) + ")"; break;
    case ExprKind::cup: out += "cup"; break;
    case ExprKind::cap: out += "cap"; break;
    case ExprKind::op:
      out += "op(" + e.label;
      switch (e.flavor) {
        case Flavor::plain: break;
        case Flavor::adjoint: out += ",dag"; break;
        case Flavor::transpose: out += ",T"; break;
        case Flavor::conjugate: out += ",conj"; break;
      }
      out += ")";
      break;
    case ExprKind::ket: out += "ket(" + e.label + ")"; break;
    case ExprKind::bra: out += "bra(" + e.label + ")"; break;
    case ExprKind::scalar: out += format_complex(e.value); break;
    case ExprKind::tensor:
      serialize_into(e.children[0], out, 1, false);
      out += " * ";
      serialize_into(e.children[1], out, 1, true);
      break;
    case ExprKind::compose:
      serialize_into(e.children[0], out, 0, false);
      out += " ; ";
      serialize_into(e.children[1], out, 0, true);
      break;
  }
  if (parens) out += ")";
}

}  // namespace dsl_detail

inline std::string serialize(const Expr& e) {
  std::string out;
  dsl_detail::serialize_into(e, out, 0, false);
  return out;
}

// ---------------------------------------------------------------------------
// Elaboration to diagrams
// ---------------------------------------------------------------------------

inline Diagram elaborate(const Expr& e) {
  switch (e.kind) {
    case ExprKind::identity: return identity(e.n);
    case ExprKind::cup: return ket_cup();
    case ExprKind::cap: return bra_cap();
    case ExprKind::op: return op_wire(e.label, e.flavor);
    case ExprKind::ket: return ket(e.label);
    case ExprKind::bra: return bra(e.label);
    case ExprKind::scalar: return scaled(identity(0), e.value);
    case ExprKind::tensor:
      return tensor(elaborate(e.children[0]), elaborate(e.children[1]));
    case ExprKind::compose: {
      const Diagram first = elaborate(e.children[0]);
      const Diagram second = elaborate(e.children[1]);
      if (first.lower_arity != second.upper_arity)
        fail(ErrorCode::arity_mismatch,
             "arity mismatch at " + std::to_string(e.line) + ":" +
                 std::to_string(e.col) + ": upper part ends with " +
                 std::to_string(first.lower_arity) + " wires, lower part expects " +
                 std::to_string(second.upper_arity));
      return compose(first, second);
    }
  }
  fail(ErrorCode::invalid_argument, "elaborate: malformed AST");
}

}  // namespace tlcalc
