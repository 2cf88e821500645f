#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "liespray/lie_algebra.hpp"

using namespace liespray;
using liespray::testing::vec2;
using liespray::testing::vec3;
using liespray::testing::VecSampler;

TEST_CASE("aff(1) bracket table") {
  LieAlgebra aff1 = builtin_algebra("aff1");
  CHECK(aff1.structure_constant(0, 1, 1) == 1.0);  // [e1,e2] = e2
  Vector b = aff1.bracket(aff1.basis_vector(0), aff1.basis_vector(1));
  CHECK(b.isApprox(aff1.basis_vector(1)));
  // antisymmetry: [y, y] = 0
  VecSampler sample(2);
  for (int i = 0; i < 20; ++i) {
    Vector y = sample();
    CHECK(aff1.bracket(y, y).norm() == 0.0);
  }
}

TEST_CASE("heisenberg bracket by bilinearity") {
  LieAlgebra h3 = builtin_algebra("heisenberg3");
  // [e1 + e2, e2] = [e1,e2] = e3
  Vector a = h3.basis_vector(0) + h3.basis_vector(1);
  CHECK(h3.bracket(a, h3.basis_vector(1)).isApprox(h3.basis_vector(2)));
  CHECK(h3.bracket(h3.basis_vector(0), h3.basis_vector(2)).norm() == 0.0);
  CHECK(h3.bracket(h3.basis_vector(1), h3.basis_vector(2)).norm() == 0.0);
}

TEST_CASE("ad matrices") {
  LieAlgebra aff1 = builtin_algebra("aff1");
  Matrix ad1 = aff1.ad_matrix(aff1.basis_vector(0));
  CHECK(ad1 * aff1.basis_vector(1) == aff1.basis_vector(1));  // e2 -> e2
  CHECK((ad1 * aff1.basis_vector(0)).norm() == 0.0);          // e1 -> 0
  CHECK(ad1.trace() == 1.0);

  LieAlgebra ab = builtin_algebra("abelian(4)");
  VecSampler sample(4);
  for (int i = 0; i < 5; ++i) CHECK(ab.ad_matrix(sample()).norm() == 0.0);

  LieAlgebra su2 = builtin_algebra("su2");
  Matrix ade1 = su2.ad_matrix(su2.basis_vector(0));
  CHECK(ade1 * su2.basis_vector(1) == su2.basis_vector(2));    // e2 -> e3
  CHECK(ade1 * su2.basis_vector(2) == -su2.basis_vector(1));   // e3 -> -e2
  CHECK(ade1.trace() == 0.0);
}

TEST_CASE("ad acts exactly as the bracket") {
  for (const char* name : {"aff1", "su2", "sl2", "heisenberg3"}) {
    LieAlgebra alg = builtin_algebra(name);
    VecSampler sample(alg.dim(), 7);
    for (int i = 0; i < 10; ++i) {
      Vector y = sample(), v = sample();
      CHECK((alg.ad_matrix(y) * v - alg.bracket(y, v)).norm() < 1e-14);
    }
  }
}

TEST_CASE("bracket is bilinear") {
  LieAlgebra sl2 = builtin_algebra("sl2");
  VecSampler sample(3, 99);
  for (int i = 0; i < 20; ++i) {
    Vector a = sample(), b = sample(), c = sample();
    double lam = 0.37 * (i + 1);
    Vector lhs = sl2.bracket(a + lam * b, c);
    Vector rhs = sl2.bracket(a, c) + lam * sl2.bracket(b, c);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13 * std::max(1.0, rhs.norm()));
  }
}

TEST_CASE("catalog algebras validate cleanly") {
  for (const char* name : {"abelian(2)", "abelian(3)", "heisenberg3", "aff1", "su2", "sl2"}) {
    CAPTURE(name);
    LieAlgebra alg = builtin_algebra(name);
    AlgebraValidation v = alg.validate();
    CHECK(v.antisymmetry_residual < 1e-12);
    CHECK(v.jacobi_residual < 1e-12);
    CHECK(v.rep_residual < 1e-12);
    CHECK(alg.rep().has_value());
  }
  CHECK(builtin_algebra("heisenberg3").validate().unimodular);
  CHECK(builtin_algebra("su2").validate().unimodular);
  CHECK_FALSE(builtin_algebra("aff1").validate().unimodular);
  CHECK_THROWS_AS(builtin_algebra("nope"), ConfigError);
}

TEST_CASE("jacobi violation is reported, not silenced") {
  // antisymmetric c with [e1,e2]=e3, [e1,e3]=e1 breaks Jacobi
  std::vector<Matrix> c(3, Matrix::Zero(3, 3));
  c[2](0, 1) = 1.0;
  c[2](1, 0) = -1.0;
  c[0](0, 2) = 1.0;
  c[0](2, 0) = -1.0;
  LieAlgebra bad(3, c, "bad");
  AlgebraValidation v = bad.validate();
  CHECK(v.antisymmetry_residual < 1e-15);
  CHECK(v.jacobi_residual > 0.5);
}

TEST_CASE("heisenberg center is detected and rep-less algebras warn") {
  LieAlgebra h3 = builtin_algebra("heisenberg3");
  AlgebraValidation v = h3.validate();
  CHECK(v.has_center);
  CHECK_FALSE(v.rep_missing_for_center);  // builtin carries the triangular rep

  LieAlgebra bare(3, h3.structure_tensor(), "bare_h3");
  AlgebraValidation v2 = bare.validate();
  CHECK(v2.has_center);
  CHECK(v2.rep_missing_for_center);

  CHECK_FALSE(builtin_algebra("su2").validate().has_center);
}

TEST_CASE("derived subalgebra of aff(1) is the e2 line") {
  LieAlgebra aff1 = builtin_algebra("aff1");
  Matrix d = aff1.derived_subalgebra();
  REQUIRE(d.cols() == 1);
  CHECK(std::abs(std::abs(d(1, 0)) - 1.0) < 1e-14);
  CHECK(std::abs(d(0, 0)) < 1e-14);
  CHECK(builtin_algebra("abelian(2)").derived_subalgebra().cols() == 0);
  CHECK(builtin_algebra("su2").derived_subalgebra().cols() == 3);
}

TEST_CASE("algebra file round trip is bit exact") {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  // random antisymmetric structure tensor (Jacobi not needed for io)
  std::vector<Matrix> c(3, Matrix::Zero(3, 3));
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        double v = coef(rng) / 3.0;
        c[k](i, j) = v;
        c[k](j, i) = -v;
      }
  MatrixRep rep;
  rep.size = 2;
  for (int i = 0; i < 3; ++i) {
    Matrix m(2, 2);
    m << coef(rng), coef(rng), coef(rng), coef(rng);
    rep.basis_images.push_back(m);
  }
  LieAlgebra alg(3, c, "random", rep);

  LieAlgebra back = read_algebra(write_algebra(alg));
  CHECK(back.dim() == 3);
  CHECK(back.name() == "random");
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(back.structure_constant(i, j, k) == alg.structure_constant(i, j, k));
  REQUIRE(back.rep().has_value());
  for (int i = 0; i < 3; ++i)
    CHECK(back.rep()->basis_images[i] == alg.rep()->basis_images[i]);

  // builtin catalog round trip too
  for (const char* name : {"aff1", "su2", "heisenberg3"}) {
    LieAlgebra a = builtin_algebra(name);
    LieAlgebra b = read_algebra(write_algebra(a));
    for (int k = 0; k < a.dim(); ++k)
      for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
          CHECK(b.structure_constant(i, j, k) == a.structure_constant(i, j, k));
  }
}

TEST_CASE("algebra file errors") {
  CHECK_THROWS_AS(read_algebra("name = x\n"), ConfigError);             // missing dim
  CHECK_THROWS_AS(read_algebra("dim = 2\nc = (1, 2, 3, 1)\n"), ConfigError);  // k range
  CHECK_THROWS_WITH_AS(read_algebra("dim = 2\nbogus = 1\n"),
                       doctest::Contains("bogus"), ConfigError);
}
