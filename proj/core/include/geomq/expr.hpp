#ifndef GEOMQ_EXPR_HPP
#define GEOMQ_EXPR_HPP

#include <memory>
#include <string>
#include <string_view>

#include "geomq/types.hpp"

namespace geomq {

namespace detail {
struct ExprNode;
}

/// Immutable scalar expression in the coordinates X1, X2, X3.
///
/// Node kinds: constant, variable, negate, add, subtract, multiply, divide,
/// integer power (exponent >= 0), sin, cos, exp, log. The set is closed
/// under differentiation, so exact partials of any order stay inside it.
/// Values are shared-pointer handles; copying is cheap and evaluation is
/// pure, so expressions can be used concurrently.
class Expr {
 public:
  Expr();  // constant 0

  static Expr constant(double value);
  static Expr variable(int axis);  // axis in {1,2,3} -> X1,X2,X3

  /// Parse the ASCII grammar: identifiers X1,X2,X3; operators + - * / ^
  /// (integer exponent >= 0); parentheses; sin(e), cos(e), exp(e), log(e);
  /// decimal literals; whitespace insignificant.
  /// Throws ParseError with the offending position.
  static Expr parse(std::string_view text);

  /// Evaluate at a point. Throws EvalDomainError on division by zero,
  /// log of a non-positive value, or a non-finite result.
  double eval(const Point& p) const;

  /// Exact symbolic partial derivative with respect to X{axis}.
  Expr diff(int axis) const;

  /// Printable form that parses back to an equivalent expression.
  std::string to_string() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  static Expr pow(const Expr& base, int exponent);  // exponent >= 0
  static Expr sin(const Expr& e);
  static Expr cos(const Expr& e);
  static Expr exp(const Expr& e);
  static Expr log(const Expr& e);

 private:
  explicit Expr(std::shared_ptr<const detail::ExprNode> node);
  std::shared_ptr<const detail::ExprNode> node_;
};

/// Central finite difference (e(p+h*e_axis) - e(p-h*e_axis)) / (2h).
/// The independent numerical oracle for Expr::diff.
double fd_partial(const Expr& e, const Point& p, int axis, double h = 1e-5);

}  // namespace geomq

#endif  // GEOMQ_EXPR_HPP
