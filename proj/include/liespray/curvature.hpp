#ifndef LIESPRAY_CURVATURE_HPP
#define LIESPRAY_CURVATURE_HPP

#include <Eigen/Eigenvalues>

#include "liespray/spray.hpp"
#include "liespray/types.hpp"

namespace liespray {

/// Curvature of a left-invariant spray at one direction y, with the
/// independent frame-coefficient route evaluated alongside as an oracle.
struct CurvatureReport {
  Vector y;
  double s_value = 0.0;
  double s_oracle = 0.0;
  Matrix r_matrix;  // column j = coordinates of R_y(e_j)
  Matrix r_oracle;
  double s_delta = 0.0;  // |s_value - s_oracle|
  double r_delta = 0.0;  // max componentwise |r_matrix - r_oracle|
  double r_trace = 0.0;
  Eigen::VectorXcd eigenvalues;  // diagnostics only
  double r_y_norm = 0.0;         // |R_y(y)|, reported, not asserted
  // max |A - A^T| for A = g_y R_y; NaN when the spray carries no metric
  double lowered_symmetry_residual = std::numeric_limits<double>::quiet_NaN();
};

/// S(y) = tr(N(y,.) + ad(y)) = 1/2 tr D eta(y) + 1/2 tr ad(y).
/// Exact (no differencing) for zero and closed-form sprays.
double s_curvature(const SprayVectorField& spray, const Vector& y);

/// Frame-coefficient route: 1/2 sum_i d eta^i/d u^i by central differences
/// plus 1/2 c_lj^j u^l. Cross-check only; never reuses the primary path.
double s_curvature_frame_oracle(const SprayVectorField& spray, const Vector& y);

/// R_y(v) = DN(y,v,eta(y)) - N(y,N(y,v)) + N(y,[y,v]) - [y,N(y,v)].
Vector riemann(const SprayVectorField& spray, const Vector& y, const Vector& v);

/// Columns R_y(e_j).
Matrix riemann_matrix(const SprayVectorField& spray, const Vector& y);

/// Frame-coefficient route for the q-th column (0-based q), evaluated at
/// the identity with independent finite-difference partials of eta:
///   3/4 J [y,e_q] + 1/2 [e_q, eta] + 1/2 D^2eta[eta, e_q]
///   - 1/4 J (J e_q) + 1/4 [J e_q, y] - 1/4 [y,[y,e_q]].
Vector riemann_frame_oracle(const SprayVectorField& spray, const Vector& y, int q);

CurvatureReport curvature_report(const SprayVectorField& spray, const Vector& y);

}  // namespace liespray

#endif  // LIESPRAY_CURVATURE_HPP
