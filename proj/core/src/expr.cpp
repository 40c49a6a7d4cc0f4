#include "geomq/expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include "geomq/errors.hpp"

namespace geomq {
namespace detail {

enum class Kind {
  kConstant,
  kVariable,
  kNegate,
  kAdd,
  kSubtract,
  kMultiply,
  kDivide,
  kPower,
  kSin,
  kCos,
  kExp,
  kLog,
};

struct ExprNode {
  Kind kind;
  double value = 0.0;  // kConstant
  int axis = 0;        // kVariable (1..3)
  int exponent = 0;    // kPower
  std::shared_ptr<const ExprNode> a;
  std::shared_ptr<const ExprNode> b;
};

using NodePtr = std::shared_ptr<const ExprNode>;

namespace {

NodePtr make_const(double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::kConstant;
  n->value = v;
  return n;
}

NodePtr make_var(int axis) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::kVariable;
  n->axis = axis;
  return n;
}

bool is_const(const NodePtr& n, double v) {
  return n->kind == Kind::kConstant && n->value == v;
}

NodePtr make_unary(Kind k, NodePtr a) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->a = std::move(a);
  return n;
}

NodePtr make_binary(Kind k, NodePtr a, NodePtr b) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

// Light folding keeps derivative trees from drowning in 0s and 1s. No
// general simplification beyond that.
NodePtr make_neg(NodePtr a) {
  if (a->kind == Kind::kConstant) return make_const(-a->value);
  return make_unary(Kind::kNegate, std::move(a));
}

NodePtr make_add(NodePtr a, NodePtr b) {
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  if (a->kind == Kind::kConstant && b->kind == Kind::kConstant)
    return make_const(a->value + b->value);
  return make_binary(Kind::kAdd, std::move(a), std::move(b));
}

NodePtr make_sub(NodePtr a, NodePtr b) {
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return make_neg(std::move(b));
  if (a->kind == Kind::kConstant && b->kind == Kind::kConstant)
    return make_const(a->value - b->value);
  return make_binary(Kind::kSubtract, std::move(a), std::move(b));
}

NodePtr make_mul(NodePtr a, NodePtr b) {
  if (is_const(a, 0.0) || is_const(b, 0.0)) return make_const(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  if (a->kind == Kind::kConstant && b->kind == Kind::kConstant)
    return make_const(a->value * b->value);
  return make_binary(Kind::kMultiply, std::move(a), std::move(b));
}

NodePtr make_div(NodePtr a, NodePtr b) {
  if (is_const(a, 0.0)) return make_const(0.0);
  if (is_const(b, 1.0)) return a;
  return make_binary(Kind::kDivide, std::move(a), std::move(b));
}

NodePtr make_pow(NodePtr base, int exponent) {
  if (exponent < 0) throw Error("integer power exponent must be >= 0");
  if (exponent == 0) return make_const(1.0);
  if (exponent == 1) return base;
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::kPower;
  n->exponent = exponent;
  n->a = std::move(base);
  return n;
}

double eval_node(const ExprNode& n, const Point& p) {
  switch (n.kind) {
    case Kind::kConstant:
      return n.value;
    case Kind::kVariable:
      return p.coord(n.axis);
    case Kind::kNegate:
      return -eval_node(*n.a, p);
    case Kind::kAdd:
      return eval_node(*n.a, p) + eval_node(*n.b, p);
    case Kind::kSubtract:
      return eval_node(*n.a, p) - eval_node(*n.b, p);
    case Kind::kMultiply:
      return eval_node(*n.a, p) * eval_node(*n.b, p);
    case Kind::kDivide: {
      double den = eval_node(*n.b, p);
      if (den == 0.0) throw EvalDomainError("division by zero");
      return eval_node(*n.a, p) / den;
    }
    case Kind::kPower: {
      double base = eval_node(*n.a, p);
      double r = 1.0;
      for (int i = 0; i < n.exponent; ++i) r *= base;
      return r;
    }
    case Kind::kSin:
      return std::sin(eval_node(*n.a, p));
    case Kind::kCos:
      return std::cos(eval_node(*n.a, p));
    case Kind::kExp:
      return std::exp(eval_node(*n.a, p));
    case Kind::kLog: {
      double arg = eval_node(*n.a, p);
      if (arg <= 0.0) throw EvalDomainError("log of non-positive value");
      return std::log(arg);
    }
  }
  throw Error("corrupt expression node");
}

NodePtr diff_node(const NodePtr& n, int axis) {
  switch (n->kind) {
    case Kind::kConstant:
      return make_const(0.0);
    case Kind::kVariable:
      return make_const(n->axis == axis ? 1.0 : 0.0);
    case Kind::kNegate:
      return make_neg(diff_node(n->a, axis));
    case Kind::kAdd:
      return make_add(diff_node(n->a, axis), diff_node(n->b, axis));
    case Kind::kSubtract:
      return make_sub(diff_node(n->a, axis), diff_node(n->b, axis));
    case Kind::kMultiply:
      return make_add(make_mul(diff_node(n->a, axis), n->b),
                      make_mul(n->a, diff_node(n->b, axis)));
    case Kind::kDivide:
      // (u/v)' = (u'v - uv') / v^2
      return make_div(make_sub(make_mul(diff_node(n->a, axis), n->b),
                               make_mul(n->a, diff_node(n->b, axis))),
                      make_pow(n->b, 2));
    case Kind::kPower:
      // (u^k)' = k u^(k-1) u'
      return make_mul(
          make_mul(make_const(static_cast<double>(n->exponent)),
                   make_pow(n->a, n->exponent - 1)),
          diff_node(n->a, axis));
    case Kind::kSin:
      return make_mul(make_unary(Kind::kCos, n->a), diff_node(n->a, axis));
    case Kind::kCos:
      return make_neg(make_mul(make_unary(Kind::kSin, n->a), diff_node(n->a, axis)));
    case Kind::kExp:
      return make_mul(make_unary(Kind::kExp, n->a), diff_node(n->a, axis));
    case Kind::kLog:
      return make_div(diff_node(n->a, axis), n->a);
  }
  throw Error("corrupt expression node");
}

int precedence(Kind k) {
  switch (k) {
    case Kind::kAdd:
    case Kind::kSubtract:
      return 1;
    case Kind::kMultiply:
    case Kind::kDivide:
      return 2;
    case Kind::kNegate:
      return 3;
    case Kind::kPower:
      return 4;
    default:
      return 5;
  }
}

void print_node(const ExprNode& n, std::ostringstream& out, int parent_prec) {
  int prec = precedence(n.kind);
  bool parens = prec < parent_prec;
  if (parens) out << '(';
  switch (n.kind) {
    case Kind::kConstant: {
      std::ostringstream v;
      v.precision(17);
      v << n.value;
      std::string s = v.str();
      if (!s.empty() && s[0] == '-') {
        out << '(' << s << ')';
      } else {
        out << s;
      }
      break;
    }
    case Kind::kVariable:
      out << 'X' << n.axis;
      break;
    case Kind::kNegate:
      out << '-';
      print_node(*n.a, out, prec + 1);
      break;
    case Kind::kAdd:
      print_node(*n.a, out, prec);
      out << " + ";
      print_node(*n.b, out, prec + 1);
      break;
    case Kind::kSubtract:
      print_node(*n.a, out, prec);
      out << " - ";
      print_node(*n.b, out, prec + 1);
      break;
    case Kind::kMultiply:
      print_node(*n.a, out, prec);
      out << "*";
      print_node(*n.b, out, prec + 1);
      break;
    case Kind::kDivide:
      print_node(*n.a, out, prec);
      out << "/";
      print_node(*n.b, out, prec + 1);
      break;
    case Kind::kPower:
      print_node(*n.a, out, prec + 1);
      out << '^' << n.exponent;
      break;
    case Kind::kSin:
      out << "sin(";
      print_node(*n.a, out, 0);
      out << ')';
      break;
    case Kind::kCos:
      out << "cos(";
      print_node(*n.a, out, 0);
      out << ')';
      break;
    case Kind::kExp:
      out << "exp(";
      print_node(*n.a, out, 0);
      out << ')';
      break;
    case Kind::kLog:
      out << "log(";
      print_node(*n.a, out, 0);
      out << ')';
      break;
  }
  if (parens) out << ')';
}

// ---- recursive-descent parser ----

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr e = expression();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  // expression := term (('+'|'-') term)*
  NodePtr expression() {
    NodePtr e = term();
    for (;;) {
      skip_ws();
      if (match('+')) {
        e = make_binary(Kind::kAdd, e, term());
      } else if (match('-')) {
        e = make_binary(Kind::kSubtract, e, term());
      } else {
        return e;
      }
    }
  }

  // term := factor (('*'|'/') factor)*
  NodePtr term() {
    NodePtr e = factor();
    for (;;) {
      skip_ws();
      if (match('*')) {
        e = make_binary(Kind::kMultiply, e, factor());
      } else if (match('/')) {
        e = make_binary(Kind::kDivide, e, factor());
      } else {
        return e;
      }
    }
  }

  // factor := ('-'|'+')* power
  NodePtr factor() {
    skip_ws();
    if (match('-')) return make_unary(Kind::kNegate, factor());
    if (match('+')) return factor();
    return power();
  }

  // power := atom ('^' integer)?
  NodePtr power() {
    NodePtr base = atom();
    skip_ws();
    if (match('^')) {
      skip_ws();
      std::size_t at = pos_;
      if (pos_ < text_.size() && text_[pos_] == '-')
        throw ParseError("integer exponent must be non-negative", at);
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw ParseError("expected integer exponent after '^'", at);
      long v = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        v = v * 10 + (text_[pos_] - '0');
        if (v > 1000000) throw ParseError("exponent too large", at);
        ++pos_;
      }
      return make_pow(base, static_cast<int>(v));
    }
    return base;
  }

  // atom := number | X1|X2|X3 | func '(' expression ')' | '(' expression ')'
  NodePtr atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      std::size_t open_at = pos_;
      ++pos_;
      NodePtr e = expression();
      skip_ws();
      if (!match(')'))
        throw ParseError("unclosed parenthesis", open_at);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  NodePtr number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      ++pos_;
    // optional exponent part, e.g. 1.5e-3
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
          ++pos_;
      } else {
        pos_ = mark;  // 'e' belongs to something else; not a valid exponent
      }
    }
    std::string tok(text_.substr(start, pos_ - start));
    try {
      std::size_t used = 0;
      double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return make_const(v);
    } catch (const std::exception&) {
      throw ParseError("malformed number '" + tok + "'", start);
    }
  }

  NodePtr identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_]))))
      ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    if (name == "X1") return make_var(1);
    if (name == "X2") return make_var(2);
    if (name == "X3") return make_var(3);
    if (name == "sin" || name == "cos" || name == "exp" || name == "log") {
      skip_ws();
      std::size_t open_at = pos_;
      if (!match('('))
        throw ParseError("expected '(' after function name '" + name + "'", pos_);
      NodePtr arg = expression();
      skip_ws();
      if (!match(')'))
        throw ParseError("unclosed parenthesis", open_at);
      if (name == "sin") return make_unary(Kind::kSin, std::move(arg));
      if (name == "cos") return make_unary(Kind::kCos, std::move(arg));
      if (name == "exp") return make_unary(Kind::kExp, std::move(arg));
      return make_unary(Kind::kLog, std::move(arg));
    }
    throw ParseError("unknown identifier '" + name + "'", start);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool match(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace
}  // namespace detail

Expr::Expr() : node_(detail::make_const(0.0)) {}
Expr::Expr(std::shared_ptr<const detail::ExprNode> node) : node_(std::move(node)) {}

Expr Expr::constant(double value) { return Expr(detail::make_const(value)); }

Expr Expr::variable(int axis) {
  if (axis < 1 || axis > 3) throw Error("variable axis must be 1, 2 or 3");
  return Expr(detail::make_var(axis));
}

Expr Expr::parse(std::string_view text) {
  detail::Parser parser(text);
  return Expr(parser.parse());
}

double Expr::eval(const Point& p) const {
  double v = detail::eval_node(*node_, p);
  if (!std::isfinite(v)) throw EvalDomainError("expression evaluated to a non-finite value");
  return v;
}

Expr Expr::diff(int axis) const {
  if (axis < 1 || axis > 3) throw Error("diff axis must be 1, 2 or 3");
  return Expr(detail::diff_node(node_, axis));
}

std::string Expr::to_string() const {
  std::ostringstream out;
  detail::print_node(*node_, out, 0);
  return out.str();
}

Expr operator+(const Expr& a, const Expr& b) {
  return Expr(detail::make_add(a.node_, b.node_));
}
Expr operator-(const Expr& a, const Expr& b) {
  return Expr(detail::make_sub(a.node_, b.node_));
}
Expr operator*(const Expr& a, const Expr& b) {
  return Expr(detail::make_mul(a.node_, b.node_));
}
Expr operator/(const Expr& a, const Expr& b) {
  return Expr(detail::make_div(a.node_, b.node_));
}
Expr operator-(const Expr& a) { return Expr(detail::make_neg(a.node_)); }

Expr Expr::pow(const Expr& base, int exponent) {
  return Expr(detail::make_pow(base.node_, exponent));
}
Expr Expr::sin(const Expr& e) { return Expr(detail::make_unary(detail::Kind::kSin, e.node_)); }
Expr Expr::cos(const Expr& e) { return Expr(detail::make_unary(detail::Kind::kCos, e.node_)); }
Expr Expr::exp(const Expr& e) { return Expr(detail::make_unary(detail::Kind::kExp, e.node_)); }
Expr Expr::log(const Expr& e) { return Expr(detail::make_unary(detail::Kind::kLog, e.node_)); }

double fd_partial(const Expr& e, const Point& p, int axis, double h) {
  return (e.eval(p.shifted(axis, h)) - e.eval(p.shifted(axis, -h))) / (2.0 * h);
}

}  // namespace geomq
