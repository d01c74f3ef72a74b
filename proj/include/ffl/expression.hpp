#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ffl/errors.hpp"
#include "ffl/rational.hpp"

namespace ffl {

// Minimal exact expression grammar over the variables t and s:
//   expr    := term (('+'|'-') term)*
//   term    := unary (('*'|'/') unary)*   with juxtaposition as '*'
//   unary   := '-' unary | primary
//   primary := integer | 't' | 's' | '(' expr ')'
//            | ('min'|'max') '(' expr ',' expr ')' | 'abs' '(' expr ')'
// Integer literals combined with '/' give rationals; no transcendental
// functions, so every value stays exact.
class Expression {
public:
  static Expression parse(std::string_view text) {
    Parser p(text);
    NodePtr root = p.parse_expr();
    p.expect_end();
    return Expression(std::move(root), std::string(text));
  }

  Rational eval(const Rational& t, const Rational& s) const {
    return eval_node(*root_, t, s);
  }

  bool uses_t() const { return uses_var(*root_, 't'); }
  bool uses_s() const { return uses_var(*root_, 's'); }

  const std::string& source() const { return source_; }

  bool operator==(const Expression& o) const { return source_ == o.source_; }

private:
  enum class Op { Const, Var, Add, Sub, Mul, Div, Neg, Min, Max, Abs };

  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  struct Node {
    Op op;
    Rational value;  // Const
    char var = 0;    // Var
    NodePtr a, b;
  };

  Expression(NodePtr root, std::string source)
      : root_(std::move(root)), source_(std::move(source)) {}

  static Rational eval_node(const Node& n, const Rational& t, const Rational& s) {
    switch (n.op) {
      case Op::Const: return n.value;
      case Op::Var: return n.var == 't' ? t : s;
      case Op::Add: return eval_node(*n.a, t, s) + eval_node(*n.b, t, s);
      case Op::Sub: return eval_node(*n.a, t, s) - eval_node(*n.b, t, s);
      case Op::Mul: return eval_node(*n.a, t, s) * eval_node(*n.b, t, s);
      case Op::Div: {
        Rational d = eval_node(*n.b, t, s);
        if (d == 0) throw EvalError("division by zero in expression");
        return eval_node(*n.a, t, s) / d;
      }
      case Op::Neg: return -eval_node(*n.a, t, s);
      case Op::Min: {
        Rational x = eval_node(*n.a, t, s), y = eval_node(*n.b, t, s);
        return x < y ? x : y;
      }
      case Op::Max: {
        Rational x = eval_node(*n.a, t, s), y = eval_node(*n.b, t, s);
        return x > y ? x : y;
      }
      case Op::Abs: return rational_abs(eval_node(*n.a, t, s));
    }
    throw EvalError("corrupt expression node");
  }

  static bool uses_var(const Node& n, char v) {
    if (n.op == Op::Var) return n.var == v;
    if (n.a && uses_var(*n.a, v)) return true;
    if (n.b && uses_var(*n.b, v)) return true;
    return false;
  }

  class Parser {
  public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse_expr() {
      NodePtr lhs = parse_term();
      for (;;) {
        skip_ws();
        if (match('+')) lhs = binary(Op::Add, lhs, parse_term());
        else if (match('-')) lhs = binary(Op::Sub, lhs, parse_term());
        else return lhs;
      }
    }

    void expect_end() {
      skip_ws();
      if (pos_ != text_.size()) fail("unexpected trailing input");
    }

  private:
    NodePtr parse_term() {
      NodePtr lhs = parse_unary();
      for (;;) {
        skip_ws();
        if (match('*')) lhs = binary(Op::Mul, lhs, parse_unary());
        else if (match('/')) lhs = binary(Op::Div, lhs, parse_unary());
        else if (starts_primary()) lhs = binary(Op::Mul, lhs, parse_unary());
        else return lhs;
      }
    }

    NodePtr parse_unary() {
      skip_ws();
      if (match('-')) {
        auto n = std::make_shared<Node>();
        n->op = Op::Neg;
        n->a = parse_unary();
        return n;
      }
      return parse_primary();
    }

    NodePtr parse_primary() {
      skip_ws();
      if (pos_ >= text_.size()) fail("unexpected end of expression");
      char c = text_[pos_];
      if (c >= '0' && c <= '9') {
        size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
        auto n = std::make_shared<Node>();
        n->op = Op::Const;
        n->value = Rational(BigInt(std::string(text_.substr(start, pos_ - start))));
        return n;
      }
      if (c == '(') {
        ++pos_;
        NodePtr inner = parse_expr();
        skip_ws();
        if (!match(')')) fail("expected ')'");
        return inner;
      }
      if (is_ident_char(c)) {
        size_t start = pos_;
        while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
        std::string ident(text_.substr(start, pos_ - start));
        if (ident == "t" || ident == "s") {
          auto n = std::make_shared<Node>();
          n->op = Op::Var;
          n->var = ident[0];
          return n;
        }
        if (ident == "min" || ident == "max" || ident == "abs") {
          skip_ws();
          if (!match('(')) fail("expected '(' after '" + ident + "'");
          NodePtr a = parse_expr();
          NodePtr b;
          if (ident != "abs") {
            skip_ws();
            if (!match(',')) fail("expected ',' in '" + ident + "(...)'");
            b = parse_expr();
          }
          skip_ws();
          if (!match(')')) fail("expected ')'");
          auto n = std::make_shared<Node>();
          n->op = ident == "min" ? Op::Min : ident == "max" ? Op::Max : Op::Abs;
          n->a = a;
          n->b = b;
          return n;
        }
        fail("unknown identifier '" + ident + "'");
      }
      fail(std::string("unexpected character '") + c + "'");
      return nullptr;  // unreachable
    }

    bool starts_primary() {
      if (pos_ >= text_.size()) return false;
      char c = text_[pos_];
      return (c >= '0' && c <= '9') || c == '(' || is_ident_char(c);
    }

    static bool is_ident_char(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

    static NodePtr binary(Op op, NodePtr a, NodePtr b) {
      auto n = std::make_shared<Node>();
      n->op = op;
      n->a = std::move(a);
      n->b = std::move(b);
      return n;
    }

    bool match(char c) {
      if (pos_ < text_.size() && text_[pos_] == c) {
        ++pos_;
        return true;
      }
      return false;
    }

    void skip_ws() {
      while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) {
      throw ParseError("expression error: " + msg, 1, static_cast<int>(pos_) + 1);
    }

    std::string_view text_;
    size_t pos_ = 0;
  };

  NodePtr root_;
  std::string source_;
};

}  // namespace ffl
