#include "liespray/curvature.hpp"

#include <cmath>

namespace liespray {

double s_curvature(const SprayVectorField& spray, const Vector& y) {
  return 0.5 * spray.d_eta_trace(y) + 0.5 * spray.algebra().ad_matrix(y).trace();
}

double s_curvature_frame_oracle(const SprayVectorField& spray, const Vector& y) {
  const LieAlgebra& alg = spray.algebra();
  const int n = alg.dim();
  const double h = fd::step1(y.norm());
  double dsum = 0.0;
  for (int i = 0; i < n; ++i) {
    Vector ei = alg.basis_vector(i);
    dsum += (spray.eta(y + h * ei)[i] - spray.eta(y - h * ei)[i]) / (2.0 * h);
  }
  double csum = 0.0;  // c_lj^j u^l
  for (int l = 0; l < n; ++l)
    for (int j = 0; j < n; ++j) csum += alg.structure_constant(l, j, j) * y[l];
  return 0.5 * dsum + 0.5 * csum;
}

Vector riemann(const SprayVectorField& spray, const Vector& y, const Vector& v) {
  const LieAlgebra& alg = spray.algebra();
  Vector eta_y = spray.eta(y);
  Vector nv = spray.connection(y, v);
  return spray.d_connection(y, v, eta_y) - spray.connection(y, nv) +
         spray.connection(y, alg.bracket(y, v)) - alg.bracket(y, nv);
}

Matrix riemann_matrix(const SprayVectorField& spray, const Vector& y) {
  const int n = spray.dim();
  Matrix r(n, n);
  for (int j = 0; j < n; ++j) r.col(j) = riemann(spray, y, spray.algebra().basis_vector(j));
  return r;
}

Vector riemann_frame_oracle(const SprayVectorField& spray, const Vector& y, int q) {
  const LieAlgebra& alg = spray.algebra();
  const int n = alg.dim();
  if (q < 0 || q >= n) throw DimensionError("frame oracle: q out of range");
  const Vector eq = alg.basis_vector(q);

  // Independent finite-difference partials of eta (the oracle must not
  // reuse the spray's analytic derivative path).
  const double h2 = fd::step1(y.norm());
  Matrix jac(n, n);
  for (int r = 0; r < n; ++r) {
    Vector er = alg.basis_vector(r);
    jac.col(r) = (spray.eta(y + h2 * er) - spray.eta(y - h2 * er)) / (2.0 * h2);
  }

  Vector eta_y = spray.eta(y);

  // 1/2 eta^p d^2 eta / du^p du^q as one cross difference along (eta, e_q).
  Vector hess_term = Vector::Zero(n);
  if (eta_y.norm() > 0.0) {
    const double base = fd::step2(y.norm());
    const double ha = base / std::max(1.0, eta_y.norm());
    const double hb = base;
    hess_term = (spray.eta(y + ha * eta_y + hb * eq) - spray.eta(y + ha * eta_y - hb * eq) -
                 spray.eta(y - ha * eta_y + hb * eq) + spray.eta(y - ha * eta_y - hb * eq)) /
                (4.0 * ha * hb);
  }

  Vector jeq = jac * eq;
  return 0.75 * (jac * alg.bracket(y, eq)) + 0.5 * alg.bracket(eq, eta_y) +
         0.5 * hess_term - 0.25 * (jac * jeq) + 0.25 * alg.bracket(jeq, y) -
         0.25 * alg.bracket(y, alg.bracket(y, eq));
}

CurvatureReport curvature_report(const SprayVectorField& spray, const Vector& y) {
  const int n = spray.dim();
  CurvatureReport rep;
  rep.y = y;
  rep.s_value = s_curvature(spray, y);
  rep.s_oracle = s_curvature_frame_oracle(spray, y);
  rep.s_delta = std::abs(rep.s_value - rep.s_oracle);
  rep.r_matrix = riemann_matrix(spray, y);
  rep.r_oracle.resize(n, n);
  for (int q = 0; q < n; ++q) rep.r_oracle.col(q) = riemann_frame_oracle(spray, y, q);
  rep.r_delta = (rep.r_matrix - rep.r_oracle).cwiseAbs().maxCoeff();
  rep.r_trace = rep.r_matrix.trace();
  Eigen::EigenSolver<Matrix> es(rep.r_matrix, /*computeEigenvectors=*/false);
  rep.eigenvalues = es.eigenvalues();
  rep.r_y_norm = riemann(spray, y, y).norm();
  if (spray.norm()) {
    Matrix g = spray.norm()->fundamental_tensor(y);
    Matrix lowered = g * rep.r_matrix;
    rep.lowered_symmetry_residual = (lowered - lowered.transpose()).cwiseAbs().maxCoeff();
  }
  return rep;
}

}  // namespace liespray
