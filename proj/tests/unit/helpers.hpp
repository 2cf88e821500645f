#ifndef LIESPRAY_TESTS_HELPERS_HPP
#define LIESPRAY_TESTS_HELPERS_HPP

#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "liespray/types.hpp"

namespace liespray::testing {

// Seeded random algebra vectors with |y| in [lo, hi]; keeps tests
// deterministic and away from the slit point.
class VecSampler {
 public:
  explicit VecSampler(int dim, std::uint64_t seed = 12345, double lo = 0.5,
                      double hi = 2.0)
      : dim_(dim), lo_(lo), hi_(hi), rng_(seed) {}

  Vector operator()() {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> radius(lo_, hi_);
    Vector v(dim_);
    do {
      for (int i = 0; i < dim_; ++i) v[i] = gauss(rng_);
    } while (v.norm() < 1e-6);
    return radius(rng_) * v / v.norm();
  }

 private:
  int dim_;
  double lo_, hi_;
  std::mt19937_64 rng_;
};

inline Matrix expm(const Matrix& m) { return m.exp(); }

inline Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

inline Vector vec3(double a, double b, double c) {
  Vector v(3);
  v << a, b, c;
  return v;
}

}  // namespace liespray::testing

#endif
