#include "swirl/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "swirl/errors.hpp"

namespace swirl {

struct Expression::Node {
  enum class Op { constant, variable, add, sub, mul, div, neg, pow, sin, cos, exp, log, sqrt };

  Op op;
  double value = 0.0;  // constant value, or exponent for pow
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
};

using Op = Expression::Node::Op;
using NodePtr = std::shared_ptr<const Expression::Node>;

class ExpressionBuilder {
 public:
  static Expression wrap(NodePtr node) { return Expression(std::move(node)); }
  static const NodePtr& node(const Expression& e) { return e.node_; }

  static NodePtr constant(double v) {
    return std::make_shared<const Expression::Node>(Expression::Node{Op::constant, v, nullptr, nullptr});
  }
  static NodePtr variable() {
    return std::make_shared<const Expression::Node>(Expression::Node{Op::variable, 0.0, nullptr, nullptr});
  }

  static bool is_const(const NodePtr& n) { return n->op == Op::constant; }
  static bool is_const(const NodePtr& n, double v) { return is_const(n) && n->value == v; }

  static NodePtr add(NodePtr a, NodePtr b) {
    if (is_const(a) && is_const(b)) return constant(a->value + b->value);
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    return make(Op::add, std::move(a), std::move(b));
  }
  static NodePtr sub(NodePtr a, NodePtr b) {
    if (is_const(a) && is_const(b)) return constant(a->value - b->value);
    if (is_const(b, 0.0)) return a;
    if (is_const(a, 0.0)) return neg(std::move(b));
    return make(Op::sub, std::move(a), std::move(b));
  }
  static NodePtr mul(NodePtr a, NodePtr b) {
    if (is_const(a) && is_const(b)) return constant(a->value * b->value);
    if (is_const(a, 0.0) || is_const(b, 0.0)) return constant(0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    return make(Op::mul, std::move(a), std::move(b));
  }
  static NodePtr div(NodePtr a, NodePtr b) {
    if (is_const(a) && is_const(b)) return constant(a->value / b->value);
    if (is_const(a, 0.0)) return constant(0.0);
    if (is_const(b, 1.0)) return a;
    return make(Op::div, std::move(a), std::move(b));
  }
  static NodePtr neg(NodePtr a) {
    if (is_const(a)) return constant(-a->value);
    if (a->op == Op::neg) return a->a;
    return make(Op::neg, std::move(a), nullptr);
  }
  static NodePtr pow(NodePtr a, double p) {
    if (p == 0.0) return constant(1.0);
    if (p == 1.0) return a;
    if (is_const(a)) return constant(std::pow(a->value, p));
    return std::make_shared<const Expression::Node>(Expression::Node{Op::pow, p, std::move(a), nullptr});
  }
  static NodePtr call(Op op, NodePtr a) {
    if (is_const(a)) return constant(evaluate_unary(op, a->value));
    return make(op, std::move(a), nullptr);
  }

  static double evaluate_unary(Op op, double x) {
    switch (op) {
      case Op::sin: return std::sin(x);
      case Op::cos: return std::cos(x);
      case Op::exp: return std::exp(x);
      case Op::log: return std::log(x);
      case Op::sqrt: return std::sqrt(x);
      default: return x;
    }
  }

  static double evaluate(const Expression::Node& n, double r) {
    switch (n.op) {
      case Op::constant: return n.value;
      case Op::variable: return r;
      case Op::add: return evaluate(*n.a, r) + evaluate(*n.b, r);
      case Op::sub: return evaluate(*n.a, r) - evaluate(*n.b, r);
      case Op::mul: return evaluate(*n.a, r) * evaluate(*n.b, r);
      case Op::div: return evaluate(*n.a, r) / evaluate(*n.b, r);
      case Op::neg: return -evaluate(*n.a, r);
      case Op::pow: return integer_power(evaluate(*n.a, r), n.value);
      default: return evaluate_unary(n.op, evaluate(*n.a, r));
    }
  }

  static NodePtr derivative(const NodePtr& n) {
    switch (n->op) {
      case Op::constant: return constant(0.0);
      case Op::variable: return constant(1.0);
      case Op::add: return add(derivative(n->a), derivative(n->b));
      case Op::sub: return sub(derivative(n->a), derivative(n->b));
      case Op::mul:
        return add(mul(derivative(n->a), n->b), mul(n->a, derivative(n->b)));
      case Op::div:
        return div(sub(mul(derivative(n->a), n->b), mul(n->a, derivative(n->b))),
                   pow(n->b, 2.0));
      case Op::neg: return neg(derivative(n->a));
      case Op::pow:
        return mul(mul(constant(n->value), pow(n->a, n->value - 1.0)), derivative(n->a));
      case Op::sin: return mul(call(Op::cos, n->a), derivative(n->a));
      case Op::cos: return neg(mul(call(Op::sin, n->a), derivative(n->a)));
      case Op::exp: return mul(n, derivative(n->a));
      case Op::log: return div(derivative(n->a), n->a);
      case Op::sqrt: return div(derivative(n->a), mul(constant(2.0), n));
    }
    return constant(0.0);
  }

  static int precedence(const Expression::Node& n) {
    switch (n.op) {
      case Op::add:
      case Op::sub: return 1;
      case Op::mul:
      case Op::div: return 2;
      case Op::neg: return 3;
      case Op::pow: return 4;
      default: return 5;
    }
  }

  static void print(std::ostream& out, const Expression::Node& n, int parent, bool right) {
    const int p = precedence(n);
    const bool parens = p < parent || (right && p == parent && p < 4);
    if (parens) out << '(';
    switch (n.op) {
      case Op::constant:
        if (n.value < 0.0 && parent > 0) {
          out << '(' << format_number(n.value) << ')';
        } else {
          out << format_number(n.value);
        }
        break;
      case Op::variable: out << 'r'; break;
      case Op::add: binary(out, n, " + ", p); break;
      case Op::sub: binary(out, n, " - ", p); break;
      case Op::mul: binary(out, n, "*", p); break;
      case Op::div: binary(out, n, "/", p); break;
      case Op::neg:
        out << '-';
        print(out, *n.a, p, false);
        break;
      case Op::pow:
        print(out, *n.a, p + 1, false);
        out << '^';
        if (n.value < 0.0) {
          out << '(' << format_number(n.value) << ')';
        } else {
          out << format_number(n.value);
        }
        break;
      case Op::sin: function(out, "sin", n); break;
      case Op::cos: function(out, "cos", n); break;
      case Op::exp: function(out, "exp", n); break;
      case Op::log: function(out, "log", n); break;
      case Op::sqrt: function(out, "sqrt", n); break;
    }
    if (parens) out << ')';
  }

 private:
  static NodePtr make(Op op, NodePtr a, NodePtr b) {
    return std::make_shared<const Expression::Node>(Expression::Node{op, 0.0, std::move(a), std::move(b)});
  }

  static double integer_power(double x, double p) {
    if (p == std::floor(p) && std::abs(p) <= 64.0) {
      auto k = static_cast<int>(std::abs(p));
      double result = 1.0;
      double base = x;
      while (k > 0) {
        if (k & 1) result *= base;
        base *= base;
        k >>= 1;
      }
      return p < 0.0 ? 1.0 / result : result;
    }
    return std::pow(x, p);
  }

  static std::string format_number(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
  }

  static void binary(std::ostream& out, const Expression::Node& n, const char* sym, int p) {
    print(out, *n.a, p, false);
    out << sym;
    print(out, *n.b, p, true);
  }

  static void function(std::ostream& out, const char* name, const Expression::Node& n) {
    out << name << '(';
    print(out, *n.a, 0, false);
    out << ')';
  }
};

Expression::Expression() : node_(ExpressionBuilder::constant(0.0)) {}
Expression::Expression(double constant) : node_(ExpressionBuilder::constant(constant)) {}

Expression Expression::variable() { return Expression(ExpressionBuilder::variable()); }

double Expression::operator()(double r) const { return ExpressionBuilder::evaluate(*node_, r); }

Expression Expression::derivative() const {
  return Expression(ExpressionBuilder::derivative(node_));
}

bool Expression::is_constant() const { return node_->op == Op::constant; }

std::string Expression::to_string() const {
  std::ostringstream out;
  ExpressionBuilder::print(out, *node_, 0, false);
  return out.str();
}

Expression operator+(const Expression& a, const Expression& b) {
  return Expression(ExpressionBuilder::add(a.node_, b.node_));
}
Expression operator-(const Expression& a, const Expression& b) {
  return Expression(ExpressionBuilder::sub(a.node_, b.node_));
}
Expression operator*(const Expression& a, const Expression& b) {
  return Expression(ExpressionBuilder::mul(a.node_, b.node_));
}
Expression operator/(const Expression& a, const Expression& b) {
  return Expression(ExpressionBuilder::div(a.node_, b.node_));
}
Expression operator-(const Expression& a) { return Expression(ExpressionBuilder::neg(a.node_)); }

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    skip_space();
    if (at_end()) throw ParseError("expected expression", pos_);
    auto node = expr();
    skip_space();
    if (!at_end()) {
      throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    }
    return node;
  }

 private:
  using B = ExpressionBuilder;

  NodePtr expr() {
    auto lhs = term();
    for (;;) {
      skip_space();
      if (consume('+')) {
        lhs = B::add(lhs, term());
      } else if (consume('-')) {
        lhs = B::sub(lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    auto lhs = unary();
    for (;;) {
      skip_space();
      if (consume('*')) {
        lhs = B::mul(lhs, unary());
      } else if (consume('/')) {
        lhs = B::div(lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    skip_space();
    if (consume('-')) return B::neg(unary());
    return power();
  }

  NodePtr power() {
    auto base = primary();
    skip_space();
    if (peek() == '^') {
      const std::size_t at = pos_;
      ++pos_;
      auto exponent = unary();
      if (!B::is_const(exponent)) throw ParseError("exponent must not depend on r", at);
      return B::pow(base, exponent->value);
    }
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (at_end()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto inner = expr();
      skip_space();
      if (!consume(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  NodePtr number() {
    double value = 0.0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) throw ParseError("malformed number", pos_);
    pos_ += static_cast<std::size_t>(ptr - first);
    return B::constant(value);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "r") return B::variable();
    if (name == "pi") return B::constant(std::numbers::pi);

    Op op;
    if (name == "sin") {
      op = Op::sin;
    } else if (name == "cos") {
      op = Op::cos;
    } else if (name == "exp") {
      op = Op::exp;
    } else if (name == "log") {
      op = Op::log;
    } else if (name == "sqrt") {
      op = Op::sqrt;
    } else {
      throw ParseError("unknown identifier '" + std::string(name) + "'", start);
    }

    skip_space();
    if (!consume('(')) throw ParseError("expected '(' after " + std::string(name), pos_);
    skip_space();
    if (peek() == ')') {
      throw ParseError("function '" + std::string(name) + "' expects 1 argument, got 0", pos_);
    }
    auto arg = expr();
    skip_space();
    if (peek() == ',') {
      throw ParseError("function '" + std::string(name) + "' expects 1 argument", pos_);
    }
    if (!consume(')')) throw ParseError("expected ')'", pos_);
    return B::call(op, arg);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression parse_expression(std::string_view text) {
  return ExpressionBuilder::wrap(Parser(text).parse());
}

}  // namespace swirl
