#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "helpers.hpp"
#include "liespray/minkowski.hpp"

using namespace liespray;
using liespray::testing::vec2;
using liespray::testing::VecSampler;

namespace {

MinkowskiNorm euclidean(int n) { return MinkowskiNorm::quadratic(Matrix::Identity(n, n)); }

MinkowskiNorm randers03() {
  return MinkowskiNorm::randers(Matrix::Identity(2, 2), vec2(0.3, 0.0));
}

}  // namespace

TEST_CASE("quadratic fundamental tensor is Q") {
  Matrix q(2, 2);
  q << 2.0, 0.3, 0.3, 1.0;
  MinkowskiNorm norm = MinkowskiNorm::quadratic(q);
  VecSampler sample(2);
  for (int i = 0; i < 10; ++i) CHECK(norm.fundamental_tensor(sample()) == q);

  // Euler identity at y = (1,0) with Q = I
  MinkowskiNorm eu = euclidean(2);
  Vector y = vec2(1, 0);
  CHECK(y.dot(eu.fundamental_tensor(y) * y) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(eu.value(y) == 1.0);
}

TEST_CASE("randers fundamental tensor: positive definite and Euler identity") {
  MinkowskiNorm norm = randers03();
  Vector y = vec2(0, 1);  // e2
  Matrix g = norm.fundamental_tensor(y);
  Eigen::SelfAdjointEigenSolver<Matrix> es(g);
  CHECK(es.eigenvalues().minCoeff() > 0.0);
  double f = norm.value(y);
  CHECK(std::abs(y.dot(g * y) - f * f) < 1e-8);

  // finite-difference Hessian agrees with the closed form
  Matrix gfd = norm.fundamental_tensor_fd(y);
  CHECK((g - gfd).cwiseAbs().maxCoeff() < 1e-6);
  VecSampler sample(2, 31);
  for (int i = 0; i < 20; ++i) {
    Vector p = sample();
    CHECK((norm.fundamental_tensor(p) - norm.fundamental_tensor_fd(p))
              .cwiseAbs()
              .maxCoeff() < 1e-6);
  }
}

TEST_CASE("fundamental tensor is 0-homogeneous") {
  MinkowskiNorm norm = randers03();
  VecSampler sample(2, 5);
  for (int i = 0; i < 10; ++i) {
    Vector y = sample();
    Matrix g = norm.fundamental_tensor(y);
    for (double lam : {0.5, 2.0, 10.0})
      CHECK((norm.fundamental_tensor(lam * y) - g).cwiseAbs().maxCoeff() < 1e-12);
    Matrix gfd = norm.fundamental_tensor_fd(y);
    for (double lam : {0.5, 2.0, 10.0})
      CHECK((norm.fundamental_tensor_fd(lam * y) - gfd).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("cartan tensor basics") {
  MinkowskiNorm eu = euclidean(2);
  VecSampler sample(2, 11);
  for (int i = 0; i < 10; ++i) {
    Vector y = sample(), u = sample(), v = sample(), w = sample();
    CHECK(eu.cartan(y, u, v, w) == 0.0);
    CHECK(std::abs(eu.cartan_fd(y, u, v, w)) < 1e-5);
  }

  MinkowskiNorm rd = randers03();
  Vector y = vec2(0, 1);
  Vector u = vec2(1, 0);
  // homogeneity contraction: C_y(y, ., .) = 0
  CHECK(std::abs(rd.cartan(y, y, u, u)) < 1e-14);
  CHECK(std::abs(rd.cartan_fd(y, y, u, u)) < 1e-5);

  // nonzero and symmetric under all six argument orders
  Vector a = vec2(1, 0), b = vec2(0.2, 0.9), c = vec2(-0.4, 0.5);
  double base = rd.cartan_fd(y, a, b, c);
  CHECK(std::abs(base) > 1e-4);
  for (auto& [p, q, r] : std::vector<std::array<Vector, 3>>{
           {a, c, b}, {b, a, c}, {b, c, a}, {c, a, b}, {c, b, a}}) {
    CHECK(rd.cartan_fd(y, p, q, r) == doctest::Approx(base).epsilon(1e-7));
  }

  // analytic route agrees with the triple finite difference
  VecSampler s2(2, 13);
  for (int i = 0; i < 20; ++i) {
    Vector yy = s2(), uu = s2(), vv = s2(), ww = s2();
    CHECK(rd.cartan(yy, uu, vv, ww) ==
          doctest::Approx(rd.cartan_fd(yy, uu, vv, ww)).epsilon(2e-5).scale(1.0));
  }
}

TEST_CASE("mean cartan tensor") {
  MinkowskiNorm eu = euclidean(2);
  VecSampler sample(2, 17);
  for (int i = 0; i < 5; ++i) {
    CHECK(std::abs(eu.mean_cartan(sample(), sample())) < 1e-9);
  }

  // dimension 2: I(w) = C_y(w,w,w) for the g_y-unit normal w
  MinkowskiNorm rd = randers03();
  for (int i = 0; i < 10; ++i) {
    Vector y = rd.indicatrix_point(sample());
    Matrix g = rd.fundamental_tensor(y);
    Vector gy = g * y;
    Vector w = vec2(-gy[1], gy[0]);
    w /= std::sqrt(w.dot(g * w));
    CHECK(std::abs(y.dot(g * w)) < 1e-13);
    CHECK(rd.mean_cartan(y, w) == doctest::Approx(rd.cartan(y, w, w, w)).epsilon(1e-5));
  }
}

TEST_CASE("mean cartan vanishes at indicatrix extrema of f") {
  // f(theta) = 1/2 ln det g on the randers indicatrix; at its extrema the
  // derivative along the indicatrix (= I(w) direction) vanishes.
  MinkowskiNorm rd = randers03();
  auto f_of = [&](double theta) {
    Vector y = rd.indicatrix_point(vec2(std::cos(theta), std::sin(theta)));
    return 0.5 * std::log(rd.fundamental_tensor(y).determinant());
  };
  // locate an extremum by golden-free coarse scan + refinement
  double best_theta = 0.0, best_val = -1e300;
  for (int k = 0; k < 720; ++k) {
    double theta = 2 * M_PI * k / 720;
    double v = f_of(theta);
    if (v > best_val) {
      best_val = v;
      best_theta = theta;
    }
  }
  double lo = best_theta - 0.02, hi = best_theta + 0.02;
  for (int it = 0; it < 60; ++it) {
    double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if (f_of(m1) < f_of(m2))
      lo = m1;
    else
      hi = m2;
  }
  double theta_star = 0.5 * (lo + hi);
  Vector y = rd.indicatrix_point(vec2(std::cos(theta_star), std::sin(theta_star)));
  Matrix g = rd.fundamental_tensor(y);
  Vector gy = g * y;
  Vector w = vec2(-gy[1], gy[0]);
  w /= std::sqrt(w.dot(g * w));
  CHECK(std::abs(rd.mean_cartan(y, w)) < 1e-5);
  CHECK(std::abs(rd.cartan(y, w, w, w)) < 1e-5);
}

TEST_CASE("indicatrix points") {
  MinkowskiNorm eu = euclidean(2);
  CHECK(eu.indicatrix_point(vec2(3, 4)).isApprox(vec2(0.6, 0.8)));
  MinkowskiNorm rd = randers03();
  CHECK(std::abs(rd.value(rd.indicatrix_point(vec2(0, 1))) - 1.0) < 1e-12);
  VecSampler sample(2, 23);
  for (int i = 0; i < 20; ++i)
    CHECK(std::abs(rd.value(rd.indicatrix_point(sample())) - 1.0) < 1e-12);
  CHECK_THROWS_AS(eu.indicatrix_point(Vector::Zero(2)), SlitDomainError);
}

TEST_CASE("norm validation accepts good norms and rejects |b| >= 1") {
  CHECK(euclidean(3).validate().ok());
  CHECK(randers03().validate().ok());

  MinkowskiNorm bad = MinkowskiNorm::randers(Matrix::Identity(2, 2), vec2(1.2, 0.0));
  NormValidation v = bad.validate();
  CHECK_FALSE(v.ok());
  CHECK(v.min_eigenvalue <= 0.0);
  CHECK(v.witness.has_value());

  // marginal |b| = 1 is also rejected
  MinkowskiNorm marginal = MinkowskiNorm::randers(Matrix::Identity(2, 2), vec2(1.0, 0.0));
  CHECK_FALSE(marginal.validate().ok());
}

TEST_CASE("user expression norm runs through the finite-difference path") {
  MinkowskiNorm user = MinkowskiNorm::user(Expression::parse("sqrt(u1^2 + u2^2)", 2));
  CHECK(user.derivative_mode() == MinkowskiNorm::DerivativeMode::finite_difference);
  CHECK(user.validate().ok());
  VecSampler sample(2, 41);
  for (int i = 0; i < 10; ++i) {
    Vector y = sample();
    CHECK((user.fundamental_tensor(y) - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <
          1e-6);
  }
  CHECK_THROWS_AS(user.value(Vector::Zero(2)), SlitDomainError);
}

TEST_CASE("norm positive 1-homogeneity") {
  for (MinkowskiNorm norm : {euclidean(2), randers03()}) {
    VecSampler sample(2, 53);
    for (int i = 0; i < 20; ++i) {
      Vector y = sample();
      double f = norm.value(y);
      for (double lam : {0.5, 2.0, 10.0})
        CHECK(std::abs(norm.value(lam * y) - lam * f) / (lam * f) < 1e-8);
    }
  }
}
