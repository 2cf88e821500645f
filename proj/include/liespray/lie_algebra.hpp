#ifndef LIESPRAY_LIE_ALGEBRA_HPP
#define LIESPRAY_LIE_ALGEBRA_HPP

#include <optional>
#include <string>
#include <vector>

#include "liespray/types.hpp"

namespace liespray {

/// Matrix realization of the algebra: n images rho(e_i) of size m x m with
/// rho([x,y]) = [rho(x), rho(y)]. Needed to rebuild group elements when a
/// geodesic is reconstructed as a matrix curve.
struct MatrixRep {
  int size = 0;
  std::vector<Matrix> basis_images;
  bool faithful = true;
};

/// Validation summary for an algebra (report-only, never throws).
struct AlgebraValidation {
  double antisymmetry_residual = 0.0;
  double jacobi_residual = 0.0;
  double rep_residual = 0.0;  // homomorphism defect, 0 when no rep
  bool unimodular = false;
  bool has_center = false;  // nontrivial center
  bool rep_missing_for_center = false;  // center nontrivial and no rep supplied
  bool ok(double tol = 1e-12) const {
    return antisymmetry_residual < tol && jacobi_residual < tol && rep_residual < tol;
  }
};

/// Finite-dimensional real Lie algebra given by structure constants
/// c_{ij}^k in a fixed basis, [e_i, e_j] = c_{ij}^k e_k.
///
/// Immutable after construction; safe to share across threads.
class LieAlgebra {
 public:
  /// c[k](i,j) = c_{ij}^k (0-based). Shape checks throw DimensionError.
  LieAlgebra(int dim, std::vector<Matrix> c, std::string name,
             std::optional<MatrixRep> rep = std::nullopt);

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  const std::optional<MatrixRep>& rep() const { return rep_; }

  double structure_constant(int i, int j, int k) const { return c_[k](i, j); }
  const std::vector<Matrix>& structure_tensor() const { return c_; }

  /// [a,b]^k = a^i b^j c_{ij}^k.
  Vector bracket(const Vector& a, const Vector& b) const;

  /// Matrix of ad(y) = [y, .]; column j holds the coordinates of [y, e_j].
  Matrix ad_matrix(const Vector& y) const;

  /// rho(y) = y^i rho(e_i). Throws when no rep is attached.
  Matrix rep_matrix(const Vector& y) const;

  /// Basis vector e_i as a coordinate vector.
  Vector basis_vector(int i) const;

  AlgebraValidation validate() const;

  /// Basis of the derived subalgebra [g, g] (orthonormal columns).
  Matrix derived_subalgebra() const;

 private:
  int dim_;
  std::vector<Matrix> c_;  // c_[k](i,j) = c_{ij}^k
  std::string name_;
  std::optional<MatrixRep> rep_;
};

/// Catalog: abelian(n), heisenberg3, aff1, su2, sl2, each with its standard
/// matrix representation. Accepts "abelian(3)" or "abelian3". Throws on
/// unknown names.
LieAlgebra builtin_algebra(const std::string& name);

/// Names accepted by builtin_algebra (abelian listed generically).
std::vector<std::string> builtin_algebra_names();

/// Serialization: structured text with keys dim, name, c-triples (1-based),
/// and the optional rep. Floats are written with 17 significant digits so a
/// write-then-read round trip is bit exact.
std::string write_algebra(const LieAlgebra& alg);
LieAlgebra read_algebra(const std::string& text);
void write_algebra_file(const LieAlgebra& alg, const std::string& path);
LieAlgebra read_algebra_file(const std::string& path);

}  // namespace liespray

#endif  // LIESPRAY_LIE_ALGEBRA_HPP
