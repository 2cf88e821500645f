#ifndef LIESPRAY_MINKOWSKI_HPP
#define LIESPRAY_MINKOWSKI_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "liespray/expression.hpp"
#include "liespray/types.hpp"

namespace liespray {

/// Sampling-based norm validation summary.
struct NormValidation {
  double homogeneity_residual = 0.0;   // rel. error of F(λy) = λ F(y)
  double g_homogeneity_residual = 0.0; // g_{λy} = g_y, max abs entry defect
  double euler_residual = 0.0;         // rel. error of g_y(y,y) = F(y)^2
  double min_value = 0.0;              // min F over sampled unit directions
  double min_eigenvalue = 0.0;         // min eigenvalue of g over samples
  bool positive = false;
  bool strongly_convex = false;
  std::optional<Vector> witness;       // direction where convexity failed
  bool ok() const { return positive && strongly_convex; }
};

/// A Minkowski norm on the algebra: smooth, positively 1-homogeneous and
/// strongly convex on the slit space. Built-in kinds carry analytic
/// fundamental and Cartan tensors; user expressions fall back to central
/// finite differences (steps eps^(1/3) for second, eps^(1/4) for third
/// derivatives, scaled by |y|).
class MinkowskiNorm {
 public:
  enum class Kind { quadratic, randers, user };
  enum class DerivativeMode { analytic, finite_difference };

  /// F(y) = sqrt(y^T Q y).
  static MinkowskiNorm quadratic(Matrix q);
  /// F(y) = sqrt(y^T Q y) + b . y, strongly convex iff |b|_Q < 1.
  static MinkowskiNorm randers(Matrix q, Vector b);
  /// F given by an expression in u1..un.
  static MinkowskiNorm user(Expression expr);

  int dim() const { return dim_; }
  Kind kind() const { return kind_; }
  DerivativeMode derivative_mode() const { return mode_; }
  /// Forces the finite-difference path even for built-in kinds (testing).
  void set_derivative_mode(DerivativeMode m) { mode_ = m; }

  const Matrix& q() const { return q_; }
  const Vector& b() const { return b_; }

  /// F(y). Throws SlitDomainError at y = 0 and Error on non-finite results.
  double value(const Vector& y) const;

  /// g_y(e_i, e_j) = 1/2 d^2/ds dt F^2(y + s e_i + t e_j) at 0.
  Matrix fundamental_tensor(const Vector& y) const;
  Matrix fundamental_tensor_fd(const Vector& y) const;  // always differences

  /// C_y(u,v,w) = 1/4 d^3 F^2 along (u,v,w); totally symmetric, C_y(y,.,.) = 0.
  double cartan(const Vector& y, const Vector& u, const Vector& v,
                const Vector& w) const;
  double cartan_fd(const Vector& y, const Vector& u, const Vector& v,
                   const Vector& w) const;

  /// Directional derivative along w of f(y) = 1/2 ln det g_y.
  double mean_cartan(const Vector& y, const Vector& w) const;

  /// direction / F(direction); lands on {F = 1}.
  Vector indicatrix_point(const Vector& direction) const;

  /// Samples 2n axis directions plus 64 seeded pseudo-random unit
  /// directions (plus norm-specific worst cases) and checks positivity,
  /// 1-homogeneity of F, 0-homogeneity of g and positive definiteness.
  NormValidation validate(std::uint64_t seed = 0) const;

  std::string describe() const;

 private:
  MinkowskiNorm() = default;

  double squared(const Vector& y) const;  // F^2
  Matrix fundamental_analytic(const Vector& y) const;

  Kind kind_ = Kind::quadratic;
  DerivativeMode mode_ = DerivativeMode::analytic;
  int dim_ = 0;
  Matrix q_;  // quadratic/randers
  Vector b_;  // randers
  std::optional<Expression> expr_;
};

}  // namespace liespray

#endif  // LIESPRAY_MINKOWSKI_HPP
