#include "liespray/spray.hpp"

#include <Eigen/Cholesky>
#include <cmath>

namespace liespray {

Vector eta_from_metric(const LieAlgebra& alg, const MinkowskiNorm& norm,
                       const Vector& y) {
  if (y.norm() == 0.0) throw SlitDomainError("eta: evaluated at y = 0");
  Matrix g = norm.fundamental_tensor(y);
  // b_i = g_y(y, [e_i, y]) = -(ad(y)^T g y)_i
  Vector b = -(alg.ad_matrix(y).transpose() * (g * y));
  Eigen::LLT<Matrix> llt(g);
  if (llt.info() != Eigen::Success)
    throw StrongConvexityError(
        "fundamental tensor is not positive definite at the requested y; "
        "the norm is not strongly convex there");
  return llt.solve(b);
}

SprayVectorField SprayVectorField::zero(LieAlgebra alg) {
  return SprayVectorField(std::move(alg), SpraySource::zero);
}

SprayVectorField SprayVectorField::metric(LieAlgebra alg, MinkowskiNorm norm) {
  if (norm.dim() != alg.dim())
    throw DimensionError("metric spray: norm dimension must match the algebra");
  SprayVectorField s(std::move(alg), SpraySource::metric);
  s.norm_ = std::move(norm);
  return s;
}

SprayVectorField SprayVectorField::closed_form(LieAlgebra alg,
                                               std::vector<Expression> components) {
  if (static_cast<int>(components.size()) != alg.dim())
    throw DimensionError("closed-form spray: one expression per coordinate required");
  for (const auto& e : components)
    if (e.n_vars() != alg.dim())
      throw DimensionError("closed-form spray: expression variable count mismatch");
  SprayVectorField s(std::move(alg), SpraySource::closed_form);
  const int n = s.alg_.dim();
  s.comps_ = std::move(components);
  s.d1_.resize(n);
  s.d2_.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) s.d1_[i].push_back(s.comps_[i].derivative(j));
    s.d2_[i].resize(n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) s.d2_[i][j].push_back(s.d1_[i][j].derivative(k));
  }
  return s;
}

void SprayVectorField::check_y(const Vector& y) const {
  if (y.size() != dim()) throw DimensionError("spray: wrong vector length");
  if (y.norm() == 0.0) throw SlitDomainError("spray: evaluated at y = 0");
}

Vector SprayVectorField::eta(const Vector& y) const {
  check_y(y);
  switch (source_) {
    case SpraySource::zero:
      return Vector::Zero(dim());
    case SpraySource::metric:
      return eta_from_metric(alg_, *norm_, y);
    case SpraySource::closed_form: {
      Vector out(dim());
      for (int i = 0; i < dim(); ++i) out[i] = comps_[i].eval(y);
      return out;
    }
  }
  throw Error("corrupt spray source");
}

Vector SprayVectorField::d_eta(const Vector& y, const Vector& v) const {
  check_y(y);
  if (v.norm() == 0.0) return Vector::Zero(dim());
  switch (source_) {
    case SpraySource::zero:
      return Vector::Zero(dim());
    case SpraySource::closed_form: {
      Vector out = Vector::Zero(dim());
      for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j)
          if (v[j] != 0.0) out[i] += d1_[i][j].eval(y) * v[j];
      return out;
    }
    case SpraySource::metric: {
      const double h = fd::step1(y.norm()) / std::max(1.0, v.norm());
      if (h * v.norm() >= y.norm())
        throw SlitDomainError("d_eta: derivative stencil would cross y = 0");
      return (eta(y + h * v) - eta(y - h * v)) / (2.0 * h);
    }
  }
  throw Error("corrupt spray source");
}

Matrix SprayVectorField::d_eta_jacobian(const Vector& y) const {
  Matrix j(dim(), dim());
  for (int c = 0; c < dim(); ++c) j.col(c) = d_eta(y, alg_.basis_vector(c));
  return j;
}

double SprayVectorField::d_eta_trace(const Vector& y) const {
  check_y(y);
  switch (source_) {
    case SpraySource::zero:
      return 0.0;
    case SpraySource::closed_form: {
      double tr = 0.0;
      for (int i = 0; i < dim(); ++i) tr += d1_[i][i].eval(y);
      return tr;
    }
    case SpraySource::metric: {
      double tr = 0.0;
      for (int i = 0; i < dim(); ++i) tr += d_eta(y, alg_.basis_vector(i))[i];
      return tr;
    }
  }
  throw Error("corrupt spray source");
}

Vector SprayVectorField::d2_eta(const Vector& y, const Vector& v,
                                const Vector& u) const {
  check_y(y);
  if (v.norm() == 0.0 || u.norm() == 0.0) return Vector::Zero(dim());
  switch (source_) {
    case SpraySource::zero:
      return Vector::Zero(dim());
    case SpraySource::closed_form: {
      Vector out = Vector::Zero(dim());
      for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j) {
          if (v[j] == 0.0) continue;
          for (int k = 0; k < dim(); ++k)
            if (u[k] != 0.0) out[i] += d2_[i][j][k].eval(y) * v[j] * u[k];
        }
      return out;
    }
    case SpraySource::metric: {
      const double base = fd::step2(y.norm());
      const double hv = base / std::max(1.0, v.norm());
      const double hu = base / std::max(1.0, u.norm());
      if (hv * v.norm() + hu * u.norm() >= y.norm())
        throw SlitDomainError("d2_eta: derivative stencil would cross y = 0");
      return (eta(y + hv * v + hu * u) - eta(y + hv * v - hu * u) -
              eta(y - hv * v + hu * u) + eta(y - hv * v - hu * u)) /
             (4.0 * hv * hu);
    }
  }
  throw Error("corrupt spray source");
}

Vector SprayVectorField::connection(const Vector& y, const Vector& v) const {
  return 0.5 * d_eta(y, v) - 0.5 * alg_.bracket(y, v);
}

Vector SprayVectorField::d_connection(const Vector& y, const Vector& v,
                                      const Vector& u) const {
  if (u.size() == dim() && u.norm() == 0.0) return Vector::Zero(dim());
  return 0.5 * d2_eta(y, v, u) - 0.5 * alg_.bracket(u, v);
}

}  // namespace liespray
