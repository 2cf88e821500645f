#include "liespray/lie_algebra.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <sstream>

#include "liespray/text_config.hpp"

namespace liespray {

LieAlgebra::LieAlgebra(int dim, std::vector<Matrix> c, std::string name,
                       std::optional<MatrixRep> rep)
    : dim_(dim), c_(std::move(c)), name_(std::move(name)), rep_(std::move(rep)) {
  if (dim_ <= 0) throw DimensionError("algebra dimension must be positive");
  if (static_cast<int>(c_.size()) != dim_)
    throw DimensionError("structure tensor must have dim slices");
  for (const auto& ck : c_)
    if (ck.rows() != dim_ || ck.cols() != dim_)
      throw DimensionError("structure tensor slice has wrong shape");
  if (rep_) {
    if (rep_->size <= 0 || static_cast<int>(rep_->basis_images.size()) != dim_)
      throw DimensionError("matrix rep must supply one image per basis vector");
    for (const auto& m : rep_->basis_images)
      if (m.rows() != rep_->size || m.cols() != rep_->size)
        throw DimensionError("matrix rep image has wrong shape");
  }
}

Vector LieAlgebra::bracket(const Vector& a, const Vector& b) const {
  if (a.size() != dim_ || b.size() != dim_)
    throw DimensionError("bracket: vector does not match algebra dimension");
  Vector out(dim_);
  for (int k = 0; k < dim_; ++k) out[k] = a.dot(c_[k] * b);
  return out;
}

Matrix LieAlgebra::ad_matrix(const Vector& y) const {
  if (y.size() != dim_)
    throw DimensionError("ad: vector does not match algebra dimension");
  Matrix ad(dim_, dim_);
  for (int k = 0; k < dim_; ++k) ad.row(k) = y.transpose() * c_[k];
  return ad;
}

Matrix LieAlgebra::rep_matrix(const Vector& y) const {
  if (!rep_)
    throw Error("algebra '" + name_ +
                "' has no matrix representation; supply one (builtin algebras "
                "include theirs)");
  if (y.size() != dim_)
    throw DimensionError("rep: vector does not match algebra dimension");
  Matrix m = Matrix::Zero(rep_->size, rep_->size);
  for (int i = 0; i < dim_; ++i) m += y[i] * rep_->basis_images[i];
  return m;
}

Vector LieAlgebra::basis_vector(int i) const {
  if (i < 0 || i >= dim_) throw DimensionError("basis index out of range");
  Vector e = Vector::Zero(dim_);
  e[i] = 1.0;
  return e;
}

AlgebraValidation LieAlgebra::validate() const {
  AlgebraValidation v;

  for (int k = 0; k < dim_; ++k)
    v.antisymmetry_residual = std::max(
        v.antisymmetry_residual, (c_[k] + c_[k].transpose()).cwiseAbs().maxCoeff());

  // Jacobi: sum_m (c_ij^m c_mk^l + c_jk^m c_mi^l + c_ki^m c_mj^l) = 0
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        for (int l = 0; l < dim_; ++l) {
          double s = 0.0;
          for (int m = 0; m < dim_; ++m)
            s += c_[m](i, j) * c_[l](m, k) + c_[m](j, k) * c_[l](m, i) +
                 c_[m](k, i) * c_[l](m, j);
          v.jacobi_residual = std::max(v.jacobi_residual, std::abs(s));
        }

  v.unimodular = true;
  for (int l = 0; l < dim_; ++l) {
    double tr = 0.0;
    for (int j = 0; j < dim_; ++j) tr += c_[j](l, j);
    if (std::abs(tr) > 1e-12) v.unimodular = false;
  }

  if (rep_) {
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) {
        Matrix comm = rep_->basis_images[i] * rep_->basis_images[j] -
                      rep_->basis_images[j] * rep_->basis_images[i];
        for (int k = 0; k < dim_; ++k) comm -= c_[k](i, j) * rep_->basis_images[k];
        v.rep_residual = std::max(v.rep_residual, comm.cwiseAbs().maxCoeff());
      }
  }

  // Center = kernel of y -> ad(y); stack ad(e_i) columns and look at rank.
  Matrix stacked(dim_ * dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    Matrix adi = ad_matrix(basis_vector(i));
    stacked.col(i) = Eigen::Map<Vector>(adi.data(), dim_ * dim_);
  }
  Eigen::JacobiSVD<Matrix> svd(stacked);
  double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > 1e-12 * std::max(1.0, smax)) ++rank;
  v.has_center = rank < dim_;
  v.rep_missing_for_center = v.has_center && !rep_.has_value();

  return v;
}

Matrix LieAlgebra::derived_subalgebra() const {
  Matrix brackets(dim_, dim_ * (dim_ - 1) / 2);
  int col = 0;
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j)
      brackets.col(col++) = bracket(basis_vector(i), basis_vector(j));
  if (brackets.cols() == 0) return Matrix(dim_, 0);
  Eigen::JacobiSVD<Matrix> svd(brackets, Eigen::ComputeThinU);
  double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > 1e-12 * std::max(1.0, smax)) ++rank;
  return svd.matrixU().leftCols(rank);
}

namespace {

std::vector<Matrix> zero_tensor(int n) {
  return std::vector<Matrix>(n, Matrix::Zero(n, n));
}

// Sets c_{ij}^k = v and c_{ji}^k = -v.
void set_c(std::vector<Matrix>& c, int i, int j, int k, double v) {
  c[k](i, j) = v;
  c[k](j, i) = -v;
}

LieAlgebra make_abelian(int n) {
  // Translation group R^n realized as (n+1)x(n+1) affine matrices.
  MatrixRep rep;
  rep.size = n + 1;
  for (int i = 0; i < n; ++i) {
    Matrix m = Matrix::Zero(n + 1, n + 1);
    m(i, n) = 1.0;
    rep.basis_images.push_back(m);
  }
  rep.faithful = true;
  return LieAlgebra(n, zero_tensor(n), "abelian" + std::to_string(n), rep);
}

LieAlgebra make_heisenberg3() {
  auto c = zero_tensor(3);
  set_c(c, 0, 1, 2, 1.0);  // [e1,e2] = e3
  MatrixRep rep;
  rep.size = 3;
  Matrix e1 = Matrix::Zero(3, 3), e2 = Matrix::Zero(3, 3), e3 = Matrix::Zero(3, 3);
  e1(0, 1) = 1.0;
  e2(1, 2) = 1.0;
  e3(0, 2) = 1.0;
  rep.basis_images = {e1, e2, e3};
  rep.faithful = true;  // the triangular rep is faithful; ad is not (center)
  return LieAlgebra(3, std::move(c), "heisenberg3", rep);
}

LieAlgebra make_aff1() {
  auto c = zero_tensor(2);
  set_c(c, 0, 1, 1, 1.0);  // [e1,e2] = e2
  MatrixRep rep;
  rep.size = 2;
  Matrix e1 = Matrix::Zero(2, 2), e2 = Matrix::Zero(2, 2);
  e1(0, 0) = 1.0;
  e2(0, 1) = 1.0;
  rep.basis_images = {e1, e2};
  rep.faithful = true;
  return LieAlgebra(2, std::move(c), "aff1", rep);
}

// Realification of a complex m x m matrix A + iB as [[A, -B], [B, A]].
Matrix realify(const Matrix& re, const Matrix& im) {
  const int m = static_cast<int>(re.rows());
  Matrix out(2 * m, 2 * m);
  out.topLeftCorner(m, m) = re;
  out.topRightCorner(m, m) = -im;
  out.bottomLeftCorner(m, m) = im;
  out.bottomRightCorner(m, m) = re;
  return out;
}

LieAlgebra make_su2() {
  auto c = zero_tensor(3);
  set_c(c, 0, 1, 2, 1.0);  // [e1,e2] = e3
  set_c(c, 1, 2, 0, 1.0);  // [e2,e3] = e1
  set_c(c, 2, 0, 1, 1.0);  // [e3,e1] = e2
  // e_k = -(i/2) sigma_k, realified to 4x4.
  Matrix z = Matrix::Zero(2, 2), re(2, 2), im(2, 2);
  MatrixRep rep;
  rep.size = 4;
  re.setZero();
  im << 0, -0.5, -0.5, 0;  // e1 = [[0, -i/2], [-i/2, 0]]
  rep.basis_images.push_back(realify(re, im));
  re << 0, -0.5, 0.5, 0;  // e2 = [[0, -1/2], [1/2, 0]]
  im.setZero();
  rep.basis_images.push_back(realify(re, im));
  re.setZero();
  im << -0.5, 0, 0, 0.5;  // e3 = [[-i/2, 0], [0, i/2]]
  rep.basis_images.push_back(realify(re, im));
  rep.faithful = true;
  (void)z;
  return LieAlgebra(3, std::move(c), "su2", rep);
}

LieAlgebra make_sl2() {
  auto c = zero_tensor(3);
  set_c(c, 0, 1, 1, 2.0);   // [h,e] = 2e
  set_c(c, 0, 2, 2, -2.0);  // [h,f] = -2f
  set_c(c, 1, 2, 0, 1.0);   // [e,f] = h
  MatrixRep rep;
  rep.size = 2;
  Matrix h(2, 2), e(2, 2), f(2, 2);
  h << 1, 0, 0, -1;
  e << 0, 1, 0, 0;
  f << 0, 0, 1, 0;
  rep.basis_images = {h, e, f};
  rep.faithful = true;
  return LieAlgebra(3, std::move(c), "sl2", rep);
}

}  // namespace

LieAlgebra builtin_algebra(const std::string& name) {
  if (name == "heisenberg3") return make_heisenberg3();
  if (name == "aff1") return make_aff1();
  if (name == "su2") return make_su2();
  if (name == "sl2") return make_sl2();
  if (name.rfind("abelian", 0) == 0) {
    std::string rest = name.substr(7);
    if (!rest.empty() && rest.front() == '(' && rest.back() == ')')
      rest = rest.substr(1, rest.size() - 2);
    char* end = nullptr;
    long n = std::strtol(rest.c_str(), &end, 10);
    if (!rest.empty() && *end == '\0' && n >= 1 && n <= 64)
      return make_abelian(static_cast<int>(n));
  }
  throw ConfigError("unknown builtin algebra '" + name +
                    "' (known: abelian(n), heisenberg3, aff1, su2, sl2)");
}

std::vector<std::string> builtin_algebra_names() {
  return {"abelian(n)", "heisenberg3", "aff1", "su2", "sl2"};
}

std::string write_algebra(const LieAlgebra& alg) {
  TextConfigWriter w;
  w.put_integer("dim", alg.dim());
  w.put_string("name", alg.name());
  for (int k = 0; k < alg.dim(); ++k)
    for (int i = 0; i < alg.dim(); ++i)
      for (int j = 0; j < alg.dim(); ++j) {
        double v = alg.structure_constant(i, j, k);
        if (v != 0.0)
          w.put_tuple("c", {static_cast<double>(i + 1), static_cast<double>(j + 1),
                            static_cast<double>(k + 1), v});
      }
  if (alg.rep()) {
    const MatrixRep& rep = *alg.rep();
    w.put_integer("rep.size", rep.size);
    for (int i = 0; i < alg.dim(); ++i) {
      std::vector<double> flat;
      for (int r = 0; r < rep.size; ++r)
        for (int cidx = 0; cidx < rep.size; ++cidx)
          flat.push_back(rep.basis_images[i](r, cidx));
      w.put_numbers("rep.e" + std::to_string(i + 1), flat);
    }
  }
  return w.str();
}

LieAlgebra read_algebra(const std::string& text) {
  TextConfig cfg = TextConfig::parse(text);
  long dim = cfg.get_integer("dim");
  if (dim <= 0) throw ConfigError("algebra dim must be positive");
  std::string name = cfg.has("name") ? cfg.get_string("name") : "user";

  auto c = std::vector<Matrix>(dim, Matrix::Zero(dim, dim));
  if (cfg.has("c")) {
    for (const auto& e : cfg.entries("c")) {
      if (e.tokens.size() % 4 != 0)
        throw ConfigError("line " + std::to_string(e.line) +
                          ": c entries are (i, j, k, value) quadruples");
      for (size_t t = 0; t < e.tokens.size(); t += 4) {
        long i = static_cast<long>(parse_double(e.tokens[t], e.line));
        long j = static_cast<long>(parse_double(e.tokens[t + 1], e.line));
        long k = static_cast<long>(parse_double(e.tokens[t + 2], e.line));
        double v = parse_double(e.tokens[t + 3], e.line);
        if (i < 1 || i > dim || j < 1 || j > dim || k < 1 || k > dim)
          throw ConfigError("line " + std::to_string(e.line) +
                            ": c index out of range (1-based)");
        c[k - 1](i - 1, j - 1) = v;
      }
    }
  }

  std::optional<MatrixRep> rep;
  if (cfg.has("rep.size")) {
    MatrixRep r;
    r.size = static_cast<int>(cfg.get_integer("rep.size"));
    for (int i = 0; i < dim; ++i) {
      std::string key = "rep.e" + std::to_string(i + 1);
      std::vector<double> flat = cfg.get_numbers(key);
      if (static_cast<int>(flat.size()) != r.size * r.size)
        throw ConfigError("key '" + key + "' must have rep.size^2 numbers");
      Matrix m(r.size, r.size);
      for (int rr = 0; rr < r.size; ++rr)
        for (int cc = 0; cc < r.size; ++cc) m(rr, cc) = flat[rr * r.size + cc];
      r.basis_images.push_back(m);
    }
    rep = std::move(r);
  }

  auto leftover = cfg.unconsumed_keys();
  if (!leftover.empty())
    throw ConfigError("unknown key '" + leftover.front() + "' (line " +
                      std::to_string(cfg.line_of(leftover.front())) +
                      ") in algebra definition");

  return LieAlgebra(static_cast<int>(dim), std::move(c), std::move(name),
                    std::move(rep));
}

void write_algebra_file(const LieAlgebra& alg, const std::string& path) {
  write_text_file(path, write_algebra(alg));
}

LieAlgebra read_algebra_file(const std::string& path) {
  return read_algebra(read_text_file(path));
}

}  // namespace liespray
