#ifndef LIESPRAY_SPRAY_HPP
#define LIESPRAY_SPRAY_HPP

#include <optional>
#include <vector>

#include "liespray/expression.hpp"
#include "liespray/lie_algebra.hpp"
#include "liespray/minkowski.hpp"
#include "liespray/types.hpp"

namespace liespray {

enum class SpraySource { zero, metric, closed_form };

/// Eq-style solve for the metric-induced spray vector field at y:
/// g_y(eta(y), u) = g_y(y, [u, y]) for all u, i.e. G x = b with
/// G = (g_y(e_i, e_j)) and b_i = g_y(y, [e_i, y]). Throws
/// StrongConvexityError when G fails to factor as SPD.
Vector eta_from_metric(const LieAlgebra& alg, const MinkowskiNorm& norm,
                       const Vector& y);

/// The spray vector field eta: g \ {0} -> g of a left-invariant spray,
/// positively 2-homogeneous. The zero field is the canonical bi-invariant
/// baseline; metric sprays come from a Minkowski norm; closed forms are
/// user expressions per coordinate.
///
/// Derivatives: zero and closed-form sprays differentiate analytically
/// (expression trees); metric sprays use central differences with steps
/// eps^(1/3) (first) and eps^(1/4) (second derivatives), scaled by |y|
/// and the direction norms. eta is never evaluated at 0 and stencils that
/// would cross 0 raise SlitDomainError.
class SprayVectorField {
 public:
  static SprayVectorField zero(LieAlgebra alg);
  static SprayVectorField metric(LieAlgebra alg, MinkowskiNorm norm);
  static SprayVectorField closed_form(LieAlgebra alg,
                                      std::vector<Expression> components);

  const LieAlgebra& algebra() const { return alg_; }
  const MinkowskiNorm* norm() const { return norm_ ? &*norm_ : nullptr; }
  SpraySource source() const { return source_; }
  int dim() const { return alg_.dim(); }
  bool analytic_derivatives() const { return source_ != SpraySource::metric; }

  Vector eta(const Vector& y) const;

  /// Derivative of eta at y in direction v.
  Vector d_eta(const Vector& y, const Vector& v) const;
  /// Jacobian matrix, column j = d_eta(y, e_j).
  Matrix d_eta_jacobian(const Vector& y) const;
  /// trace of the Jacobian (exact for zero / closed-form sprays).
  double d_eta_trace(const Vector& y) const;
  /// Second derivative D^2 eta(y)[v, u] (symmetric in v, u).
  Vector d2_eta(const Vector& y, const Vector& v, const Vector& u) const;

  /// Connection operator N(y,v) = 1/2 D eta(y,v) - 1/2 [y,v].
  Vector connection(const Vector& y, const Vector& v) const;
  /// DN(y,v,u): derivative of N(.,v) at y along u,
  /// equal to 1/2 D^2 eta(y)[v,u] - 1/2 [u,v].
  Vector d_connection(const Vector& y, const Vector& v, const Vector& u) const;

 private:
  SprayVectorField(LieAlgebra alg, SpraySource src) : alg_(std::move(alg)), source_(src) {}

  void check_y(const Vector& y) const;

  LieAlgebra alg_;
  SpraySource source_;
  std::optional<MinkowskiNorm> norm_;
  std::vector<Expression> comps_;
  // symbolic partials for closed forms: d1_[i][j] = d eta^i / d u^j,
  // d2_[i][j][k] the second partials
  std::vector<std::vector<Expression>> d1_;
  std::vector<std::vector<std::vector<Expression>>> d2_;
};

}  // namespace liespray

#endif  // LIESPRAY_SPRAY_HPP
