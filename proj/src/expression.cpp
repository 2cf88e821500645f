#include "liespray/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace liespray {

namespace {

enum class Op { number, var, add, sub, mul, div, neg, pow, sqrt, abs };

}  // namespace

struct Expression::Node {
  Op op;
  double value = 0.0;  // number nodes, and the exponent of pow
  int var = -1;        // var nodes (0-based)
  NodePtr a, b;

  Node(Op o, double v, int vr, NodePtr x, NodePtr y)
      : op(o), value(v), var(vr), a(std::move(x)), b(std::move(y)) {}
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Op op, double v = 0.0, int var = -1, NodePtr a = nullptr,
             NodePtr b = nullptr) {
  return std::make_shared<const Node>(op, v, var, std::move(a), std::move(b));
}

NodePtr number(double v) { return make(Op::number, v); }

bool is_const(const NodePtr& n, double v) {
  return n->op == Op::number && n->value == v;
}

// Smart constructors with constant folding.
NodePtr add(NodePtr a, NodePtr b) {
  if (a->op == Op::number && b->op == Op::number) return number(a->value + b->value);
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  return make(Op::add, 0, -1, std::move(a), std::move(b));
}

NodePtr sub(NodePtr a, NodePtr b) {
  if (a->op == Op::number && b->op == Op::number) return number(a->value - b->value);
  if (is_const(b, 0.0)) return a;
  return make(Op::sub, 0, -1, std::move(a), std::move(b));
}

NodePtr neg(NodePtr a) {
  if (a->op == Op::number) return number(-a->value);
  return make(Op::neg, 0, -1, std::move(a));
}

NodePtr mul(NodePtr a, NodePtr b) {
  if (a->op == Op::number && b->op == Op::number) return number(a->value * b->value);
  if (is_const(a, 0.0) || is_const(b, 0.0)) return number(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  return make(Op::mul, 0, -1, std::move(a), std::move(b));
}

NodePtr div(NodePtr a, NodePtr b) {
  if (is_const(a, 0.0)) return number(0.0);
  if (is_const(b, 1.0)) return a;
  return make(Op::div, 0, -1, std::move(a), std::move(b));
}

NodePtr pow_node(NodePtr base, double expo) {
  if (expo == 0.0) return number(1.0);
  if (expo == 1.0) return base;
  if (base->op == Op::number) return number(std::pow(base->value, expo));
  return make(Op::pow, expo, -1, std::move(base));
}

struct Parser {
  const std::string& text;
  size_t pos = 0;
  int n_vars;

  [[noreturn]] void fail(const std::string& msg, size_t at) const {
    std::ostringstream os;
    os << "expression error at column " << (at + 1) << ": " << msg << " in \""
       << text << "\"";
    throw ExpressionError(os.str());
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (eat('+')) {
        lhs = add(lhs, parse_term());
      } else if (eat('-')) {
        lhs = sub(lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (eat('*')) {
        lhs = mul(lhs, parse_unary());
      } else if (eat('/')) {
        lhs = div(lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    if (eat('-')) return neg(parse_unary());
    if (eat('+')) return parse_unary();
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_atom();
    if (eat('^')) {
      double expo = parse_const_exponent();
      return pow_node(base, expo);
    }
    return base;
  }

  // The exponent must be a (possibly signed, possibly parenthesized) number.
  double parse_const_exponent() {
    skip_ws();
    size_t at = pos;
    double sign = 1.0;
    while (eat('-')) sign = -sign;
    if (eat('(')) {
      double v = parse_const_exponent();
      if (!eat(')')) fail("expected ')' after exponent", pos);
      return sign * v;
    }
    skip_ws();
    double v;
    if (!parse_number(v)) fail("exponent must be a numeric constant", at);
    return sign * v;
  }

  bool parse_number(double& out) {
    skip_ws();
    const char* begin = text.c_str() + pos;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) return false;
    // Reject strtod eating "inf"/"nan" spelled as identifiers elsewhere;
    // our grammar only produces them from literals, which is fine.
    pos += static_cast<size_t>(end - begin);
    out = v;
    return true;
  }

  NodePtr parse_atom() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of expression", pos);
    size_t at = pos;
    char c = text[pos];

    if (c == '(') {
      ++pos;
      NodePtr e = parse_expr();
      if (!eat(')')) fail("expected ')'", pos);
      return e;
    }

    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v;
      if (!parse_number(v)) fail("malformed number", at);
      return number(v);
    }

    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      std::string ident = text.substr(start, pos - start);
      if (ident == "sqrt" || ident == "abs") {
        if (!eat('(')) fail("expected '(' after " + ident, pos);
        NodePtr arg = parse_expr();
        if (!eat(')')) fail("expected ')'", pos);
        return make(ident == "sqrt" ? Op::sqrt : Op::abs, 0, -1, std::move(arg));
      }
      if (ident.size() >= 2 && ident[0] == 'u') {
        char* end = nullptr;
        long idx = std::strtol(ident.c_str() + 1, &end, 10);
        if (*end == '\0' && idx >= 1 && idx <= n_vars)
          return make(Op::var, 0, static_cast<int>(idx - 1));
        if (*end == '\0')
          fail("variable " + ident + " out of range (dimension is " +
                   std::to_string(n_vars) + ")",
               at);
      }
      fail("unknown identifier '" + ident + "'", at);
    }

    fail(std::string("unexpected character '") + c + "'", at);
  }
};

double eval_node(const Node& n, const Vector& u) {
  switch (n.op) {
    case Op::number:
      return n.value;
    case Op::var:
      return u[n.var];
    case Op::add:
      return eval_node(*n.a, u) + eval_node(*n.b, u);
    case Op::sub:
      return eval_node(*n.a, u) - eval_node(*n.b, u);
    case Op::mul:
      return eval_node(*n.a, u) * eval_node(*n.b, u);
    case Op::div: {
      double den = eval_node(*n.b, u);
      if (den == 0.0) throw ExpressionError("division by zero in expression");
      return eval_node(*n.a, u) / den;
    }
    case Op::neg:
      return -eval_node(*n.a, u);
    case Op::pow:
      return std::pow(eval_node(*n.a, u), n.value);
    case Op::sqrt: {
      double v = eval_node(*n.a, u);
      if (v < 0.0) throw ExpressionError("sqrt of negative value in expression");
      return std::sqrt(v);
    }
    case Op::abs:
      return std::abs(eval_node(*n.a, u));
  }
  throw ExpressionError("corrupt expression tree");
}

NodePtr diff_node(const NodePtr& n, int var) {
  switch (n->op) {
    case Op::number:
      return number(0.0);
    case Op::var:
      return number(n->var == var ? 1.0 : 0.0);
    case Op::add:
      return add(diff_node(n->a, var), diff_node(n->b, var));
    case Op::sub:
      return sub(diff_node(n->a, var), diff_node(n->b, var));
    case Op::mul:
      return add(mul(diff_node(n->a, var), n->b), mul(n->a, diff_node(n->b, var)));
    case Op::div:
      return div(sub(mul(diff_node(n->a, var), n->b), mul(n->a, diff_node(n->b, var))),
                 mul(n->b, n->b));
    case Op::neg:
      return neg(diff_node(n->a, var));
    case Op::pow:
      // d f^c = c f^(c-1) f'
      return mul(mul(number(n->value), pow_node(n->a, n->value - 1.0)),
                 diff_node(n->a, var));
    case Op::sqrt:
      return div(diff_node(n->a, var),
                 mul(number(2.0), make(Op::sqrt, 0, -1, n->a)));
    case Op::abs:
      // sign(f) f', written f/|f| f'; undefined at f = 0
      return mul(div(n->a, make(Op::abs, 0, -1, n->a)), diff_node(n->a, var));
  }
  throw ExpressionError("corrupt expression tree");
}

bool poly_node(const Node& n) {
  switch (n.op) {
    case Op::number:
    case Op::var:
      return true;
    case Op::add:
    case Op::sub:
    case Op::mul:
      return poly_node(*n.a) && poly_node(*n.b);
    case Op::neg:
      return poly_node(*n.a);
    case Op::pow:
      return n.value >= 0.0 && n.value == std::floor(n.value) && poly_node(*n.a);
    default:
      return false;
  }
}

void print_node(const Node& n, std::ostream& os) {
  switch (n.op) {
    case Op::number:
      os << n.value;
      return;
    case Op::var:
      os << "u" << (n.var + 1);
      return;
    case Op::add:
      os << "(";
      print_node(*n.a, os);
      os << " + ";
      print_node(*n.b, os);
      os << ")";
      return;
    case Op::sub:
      os << "(";
      print_node(*n.a, os);
      os << " - ";
      print_node(*n.b, os);
      os << ")";
      return;
    case Op::mul:
      os << "(";
      print_node(*n.a, os);
      os << " * ";
      print_node(*n.b, os);
      os << ")";
      return;
    case Op::div:
      os << "(";
      print_node(*n.a, os);
      os << " / ";
      print_node(*n.b, os);
      os << ")";
      return;
    case Op::neg:
      os << "(-";
      print_node(*n.a, os);
      os << ")";
      return;
    case Op::pow:
      os << "(";
      print_node(*n.a, os);
      os << "^" << n.value << ")";
      return;
    case Op::sqrt:
      os << "sqrt(";
      print_node(*n.a, os);
      os << ")";
      return;
    case Op::abs:
      os << "abs(";
      print_node(*n.a, os);
      os << ")";
      return;
  }
}

}  // namespace

Expression Expression::parse(const std::string& text, int n_vars) {
  if (n_vars <= 0) throw ExpressionError("expression needs a positive dimension");
  Parser p{text, 0, n_vars};
  NodePtr root = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input", p.pos);
  return Expression(std::move(root), n_vars);
}

double Expression::eval(const Vector& u) const {
  if (u.size() != n_vars_)
    throw DimensionError("expression evaluated with wrong-length vector");
  double v = eval_node(*root_, u);
  if (!std::isfinite(v)) throw ExpressionError("expression evaluated to a non-finite value");
  return v;
}

Expression Expression::derivative(int var) const {
  if (var < 0 || var >= n_vars_) throw DimensionError("derivative variable out of range");
  return Expression(diff_node(root_, var), n_vars_);
}

bool Expression::is_polynomial() const { return poly_node(*root_); }

std::string Expression::to_string() const {
  std::ostringstream os;
  os.precision(17);
  print_node(*root_, os);
  return os.str();
}

}  // namespace liespray
