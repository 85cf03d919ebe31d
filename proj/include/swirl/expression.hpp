#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace swirl {

/// Immutable expression tree in the single variable r.
///
/// Grammar (whitespace ignored):
///
///     expr    := term (('+' | '-') term)*
///     term    := unary (('*' | '/') unary)*
///     unary   := '-' unary | power
///     power   := primary ('^' unary)?          exponent must not depend on r
///     primary := number | 'r' | 'pi' | func '(' expr ')' | '(' expr ')'
///     func    := sin | cos | exp | log | sqrt
///
/// Nodes are shared and never mutated, so copies are cheap and evaluation is
/// safe from any number of threads.
class Expression {
 public:
  struct Node;

  Expression();  // the constant 0
  explicit Expression(double constant);

  static Expression variable();

  double operator()(double r) const;

  /// Symbolic derivative with respect to r (constant-folded).
  Expression derivative() const;

  bool is_constant() const;
  std::string to_string() const;

  friend Expression operator+(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a, const Expression& b);
  friend Expression operator*(const Expression& a, const Expression& b);
  friend Expression operator/(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a);

 private:
  explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;

  friend class ExpressionBuilder;
};

/// Parses `text` per the grammar above. Throws ParseError carrying the byte
/// offset of the offending token.
Expression parse_expression(std::string_view text);

}  // namespace swirl
