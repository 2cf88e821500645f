#ifndef LIESPRAY_EXPRESSION_HPP
#define LIESPRAY_EXPRESSION_HPP

#include <memory>
#include <string>

#include "liespray/types.hpp"

namespace liespray {

/// A small arithmetic expression in the variables u1..un.
///
/// Grammar: + - * / ^ sqrt(...) abs(...), numeric literals, parentheses.
/// The exponent of ^ must be a numeric constant. No conditionals.
///
/// Expressions are immutable; copies share the parsed tree.
class Expression {
 public:
  /// Parses `text` over variables u1..u<n_vars>. Throws ExpressionError
  /// with position information on malformed input.
  static Expression parse(const std::string& text, int n_vars);

  /// Evaluates at u (length n_vars). Throws ExpressionError on division
  /// by zero or sqrt of a negative value, and on non-finite results.
  double eval(const Vector& u) const;

  /// Symbolic partial derivative with respect to u<var+1> (0-based var),
  /// with constant folding. abs contributes sign(f)=f/|f|, so the result
  /// is valid away from the kink.
  Expression derivative(int var) const;

  int n_vars() const { return n_vars_; }
  std::string to_string() const;

  /// True when the tree is built from +,-,*,constants and integer powers
  /// only, i.e. the derivative is exact everywhere.
  bool is_polynomial() const;

  struct Node;  // tree node; layout is an implementation detail

 private:
  using NodePtr = std::shared_ptr<const Node>;
  Expression(NodePtr root, int n_vars) : root_(std::move(root)), n_vars_(n_vars) {}

  NodePtr root_;
  int n_vars_ = 0;
};

}  // namespace liespray

#endif  // LIESPRAY_EXPRESSION_HPP
