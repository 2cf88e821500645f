#include "liespray/minkowski.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>
#include <sstream>

namespace liespray {

namespace {

void check_nonzero(const Vector& y, const char* where) {
  if (y.norm() == 0.0)
    throw SlitDomainError(std::string(where) + ": evaluated at y = 0");
}

}  // namespace

MinkowskiNorm MinkowskiNorm::quadratic(Matrix q) {
  if (q.rows() != q.cols() || q.rows() == 0)
    throw DimensionError("quadratic norm needs a square matrix");
  MinkowskiNorm n;
  n.kind_ = Kind::quadratic;
  n.mode_ = DerivativeMode::analytic;
  n.dim_ = static_cast<int>(q.rows());
  n.q_ = 0.5 * (q + q.transpose());
  return n;
}

MinkowskiNorm MinkowskiNorm::randers(Matrix q, Vector b) {
  if (q.rows() != q.cols() || q.rows() == 0)
    throw DimensionError("randers norm needs a square matrix");
  if (b.size() != q.rows())
    throw DimensionError("randers norm: b length must match Q");
  MinkowskiNorm n;
  n.kind_ = Kind::randers;
  n.mode_ = DerivativeMode::analytic;
  n.dim_ = static_cast<int>(q.rows());
  n.q_ = 0.5 * (q + q.transpose());
  n.b_ = std::move(b);
  return n;
}

MinkowskiNorm MinkowskiNorm::user(Expression expr) {
  MinkowskiNorm n;
  n.kind_ = Kind::user;
  n.mode_ = DerivativeMode::finite_difference;
  n.dim_ = expr.n_vars();
  n.expr_ = std::move(expr);
  return n;
}

double MinkowskiNorm::value(const Vector& y) const {
  check_nonzero(y, "norm");
  if (y.size() != dim_) throw DimensionError("norm: wrong vector length");
  double f;
  switch (kind_) {
    case Kind::quadratic: {
      double q = y.dot(q_ * y);
      if (q <= 0.0)
        throw Error("quadratic form is not positive at the evaluated direction");
      f = std::sqrt(q);
      break;
    }
    case Kind::randers: {
      double q = y.dot(q_ * y);
      if (q <= 0.0)
        throw Error("randers base form is not positive at the evaluated direction");
      f = std::sqrt(q) + b_.dot(y);
      break;
    }
    case Kind::user:
      f = expr_->eval(y);
      break;
  }
  if (!std::isfinite(f)) throw Error("norm evaluated to a non-finite value");
  return f;
}

double MinkowskiNorm::squared(const Vector& y) const {
  double f = value(y);
  return f * f;
}

Matrix MinkowskiNorm::fundamental_analytic(const Vector& y) const {
  if (kind_ == Kind::quadratic) return q_;
  // randers: g = (F/a) Q - (beta/a^3) yl yl^T + (yl b^T + b yl^T)/a + b b^T
  // with a = sqrt(y^T Q y), yl = Q y, beta = b.y.
  Vector yl = q_ * y;
  double a2 = y.dot(yl);
  double a = std::sqrt(a2);
  double beta = b_.dot(y);
  double f = a + beta;
  Matrix g = (f / a) * q_;
  g -= (beta / (a2 * a)) * (yl * yl.transpose());
  g += (yl * b_.transpose() + b_ * yl.transpose()) / a;
  g += b_ * b_.transpose();
  return g;
}

Matrix MinkowskiNorm::fundamental_tensor_fd(const Vector& y) const {
  check_nonzero(y, "fundamental tensor");
  const double h = fd::step2(y.norm());
  Matrix g(dim_, dim_);
  const double phi0 = squared(y);
  for (int i = 0; i < dim_; ++i) {
    Vector ei = Vector::Zero(dim_);
    ei[i] = h;
    g(i, i) = 0.5 * (squared(y + ei) - 2.0 * phi0 + squared(y - ei)) / (h * h);
    for (int j = i + 1; j < dim_; ++j) {
      Vector ej = Vector::Zero(dim_);
      ej[j] = h;
      double v = (squared(y + ei + ej) - squared(y + ei - ej) -
                  squared(y - ei + ej) + squared(y - ei - ej)) /
                 (4.0 * h * h);
      g(i, j) = g(j, i) = 0.5 * v;
    }
  }
  if (!g.allFinite())
    throw Error("fundamental tensor is non-finite (norm not smooth here?)");
  return g;
}

Matrix MinkowskiNorm::fundamental_tensor(const Vector& y) const {
  check_nonzero(y, "fundamental tensor");
  if (mode_ == DerivativeMode::analytic && kind_ != Kind::user)
    return fundamental_analytic(y);
  return fundamental_tensor_fd(y);
}

double MinkowskiNorm::cartan_fd(const Vector& y, const Vector& u, const Vector& v,
                                const Vector& w) const {
  check_nonzero(y, "cartan tensor");
  const double base = fd::step3(y.norm());
  const double hu = base / std::max(1.0, u.norm());
  const double hv = base / std::max(1.0, v.norm());
  const double hw = base / std::max(1.0, w.norm());
  if (u.norm() == 0.0 || v.norm() == 0.0 || w.norm() == 0.0) return 0.0;
  double acc = 0.0;
  for (int s1 : {-1, 1})
    for (int s2 : {-1, 1})
      for (int s3 : {-1, 1})
        acc += s1 * s2 * s3 * squared(y + s1 * hu * u + s2 * hv * v + s3 * hw * w);
  return acc / (8.0 * hu * hv * hw) / 4.0;
}

double MinkowskiNorm::cartan(const Vector& y, const Vector& u, const Vector& v,
                             const Vector& w) const {
  check_nonzero(y, "cartan tensor");
  if (mode_ != DerivativeMode::analytic || kind_ == Kind::user)
    return cartan_fd(y, u, v, w);
  if (kind_ == Kind::quadratic) return 0.0;
  // randers, fully symmetric closed form:
  // 2C(u,v,w) = S3(Q,b)/a - (beta/a^3) S3(Q,yl) - S3(yl yl,b)/a^3
  //             + 3 beta (yl.u)(yl.v)(yl.w)/a^5
  Vector yl = q_ * y;
  double a2 = y.dot(yl);
  double a = std::sqrt(a2);
  double beta = b_.dot(y);
  double quv = u.dot(q_ * v), quw = u.dot(q_ * w), qvw = v.dot(q_ * w);
  double yu = yl.dot(u), yv = yl.dot(v), yw = yl.dot(w);
  double bu = b_.dot(u), bv = b_.dot(v), bw = b_.dot(w);
  double s3_qb = quv * bw + quw * bv + qvw * bu;
  double s3_qy = quv * yw + quw * yv + qvw * yu;
  double s3_yyb = yu * yv * bw + yu * yw * bv + yv * yw * bu;
  double c2 = s3_qb / a - (beta / (a2 * a)) * s3_qy - s3_yyb / (a2 * a) +
              3.0 * beta * yu * yv * yw / (a2 * a2 * a);
  return 0.5 * c2;
}

double MinkowskiNorm::mean_cartan(const Vector& y, const Vector& w) const {
  check_nonzero(y, "mean cartan");
  if (w.norm() == 0.0) return 0.0;
  const bool analytic_g = (mode_ == DerivativeMode::analytic && kind_ != Kind::user);
  const double h = (analytic_g ? fd::step1(y.norm()) : fd::step1_noisy(y.norm())) /
                   std::max(1.0, w.norm());
  auto f = [&](const Vector& p) {
    Matrix g = fundamental_tensor(p);
    Eigen::LLT<Matrix> llt(g);
    if (llt.info() != Eigen::Success)
      throw StrongConvexityError("singular fundamental tensor in mean-cartan stencil");
    double logdet = 0.0;
    for (int i = 0; i < dim_; ++i) logdet += std::log(llt.matrixL()(i, i));
    return logdet;  // = 1/2 ln det g
  };
  return (f(y + h * w) - f(y - h * w)) / (2.0 * h);
}

Vector MinkowskiNorm::indicatrix_point(const Vector& direction) const {
  check_nonzero(direction, "indicatrix point");
  return direction / value(direction);
}

NormValidation MinkowskiNorm::validate(std::uint64_t seed) const {
  NormValidation report;
  std::vector<Vector> dirs;
  for (int i = 0; i < dim_; ++i) {
    dirs.push_back(Vector::Unit(dim_, i));
    dirs.push_back(-Vector::Unit(dim_, i));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int k = 0; k < 64; ++k) {
    Vector d(dim_);
    do {
      for (int i = 0; i < dim_; ++i) d[i] = gauss(rng);
    } while (d.norm() < 1e-8);
    dirs.push_back(d / d.norm());
  }
  if (kind_ == Kind::randers) {
    // The worst direction for a randers norm opposes b.
    Eigen::LLT<Matrix> llt(q_);
    if (llt.info() == Eigen::Success && b_.norm() > 0.0) {
      Vector qb = llt.solve(b_);
      if (qb.norm() > 0.0) {
        dirs.push_back(qb / qb.norm());
        dirs.push_back(-qb / qb.norm());
      }
    }
  }

  report.positive = true;
  report.strongly_convex = true;
  report.min_value = std::numeric_limits<double>::infinity();
  report.min_eigenvalue = std::numeric_limits<double>::infinity();

  for (const Vector& d : dirs) {
    double f = 0.0;
    bool finite = true;
    try {
      f = value(d);
    } catch (const Error&) {
      finite = false;
    }
    if (!finite || f <= 0.0) {
      report.positive = false;
      report.strongly_convex = false;
      report.min_value = std::min(report.min_value, finite ? f : 0.0);
      if (!report.witness) report.witness = d;
    } else {
      report.min_value = std::min(report.min_value, f);
      for (double lam : {0.5, 2.0, 10.0}) {
        double rel = std::abs(value(lam * d) - lam * f) / (lam * f);
        report.homogeneity_residual = std::max(report.homogeneity_residual, rel);
      }
    }

    // Eigen analysis also where F failed: that is where the witness lives.
    try {
      Matrix g = fundamental_tensor(d);
      Eigen::SelfAdjointEigenSolver<Matrix> es(g);
      double lam_min = es.eigenvalues().minCoeff();
      report.min_eigenvalue = std::min(report.min_eigenvalue, lam_min);
      if (lam_min <= 0.0) {
        report.strongly_convex = false;
        if (!report.witness) report.witness = d;
      }
      if (finite && f > 0.0) {
        double euler = std::abs(d.dot(g * d) - f * f) / (f * f);
        report.euler_residual = std::max(report.euler_residual, euler);
        for (double lam : {0.5, 2.0, 10.0}) {
          Matrix gl = fundamental_tensor(lam * d);
          report.g_homogeneity_residual =
              std::max(report.g_homogeneity_residual, (gl - g).cwiseAbs().maxCoeff());
        }
      }
    } catch (const Error&) {
      report.strongly_convex = false;
      if (!report.witness) report.witness = d;
    }
  }
  return report;
}

std::string MinkowskiNorm::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::quadratic:
      os << "quadratic(dim " << dim_ << ")";
      break;
    case Kind::randers:
      os << "randers(dim " << dim_ << ")";
      break;
    case Kind::user:
      os << "user(" << expr_->to_string() << ")";
      break;
  }
  return os.str();
}

}  // namespace liespray
