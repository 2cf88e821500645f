#ifndef LIESPRAY_TYPES_HPP
#define LIESPRAY_TYPES_HPP

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace liespray {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Inputs of mismatched dimension (vector vs algebra, matrix shapes, ...).
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error(what) {}
};

/// A map defined on the slit space was evaluated at y = 0, or a derivative
/// stencil would cross 0.
class SlitDomainError : public Error {
 public:
  explicit SlitDomainError(const std::string& what) : Error(what) {}
};

/// The fundamental tensor failed to be positive definite where it was needed.
class StrongConvexityError : public Error {
 public:
  explicit StrongConvexityError(const std::string& what) : Error(what) {}
};

/// Expression parsing / evaluation failure.
class ExpressionError : public Error {
 public:
  explicit ExpressionError(const std::string& what) : Error(what) {}
};

/// Config file syntax or semantic failure.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

namespace fd {

// Central-difference steps balancing truncation O(h^2) against round-off
// O(eps / h^k) for a k-th order difference of a machine-accurate quantity:
// eps^(1/3) for first, eps^(1/4) for second, eps^(1/5) for third
// differences. step1_noisy widens the first-difference step for operands
// that are themselves finite differences (accurate to ~sqrt(eps) only).
inline double step1(double scale) {
  static const double h0 = std::cbrt(std::numeric_limits<double>::epsilon());
  return h0 * std::max(1.0, scale);
}

inline double step2(double scale) {
  static const double h0 =
      std::pow(std::numeric_limits<double>::epsilon(), 0.25);
  return h0 * std::max(1.0, scale);
}

inline double step3(double scale) {
  static const double h0 =
      std::pow(std::numeric_limits<double>::epsilon(), 0.2);
  return h0 * std::max(1.0, scale);
}

inline double step1_noisy(double scale) {
  static const double h0 =
      std::pow(std::numeric_limits<double>::epsilon(), 1.0 / 6.0);
  return h0 * std::max(1.0, scale);
}

}  // namespace fd

}  // namespace liespray

#endif  // LIESPRAY_TYPES_HPP
