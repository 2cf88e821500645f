// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Each criterion carries its tolerance and runtime budget inline.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "liespray/curvature.hpp"
#include "liespray/geodesic.hpp"
#include "liespray/surface.hpp"

using namespace liespray;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
};

class Sampler {
 public:
  explicit Sampler(int dim, std::uint64_t seed) : dim_(dim), rng_(seed) {}
  Vector operator()() {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> radius(0.5, 2.0);
    Vector v(dim_);
    do {
      for (int i = 0; i < dim_; ++i) v[i] = gauss(rng_);
    } while (v.norm() < 1e-6);
    return radius(rng_) * v / v.norm();
  }

 private:
  int dim_;
  std::mt19937_64 rng_;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

MinkowskiNorm euclidean(int n) { return MinkowskiNorm::quadratic(Matrix::Identity(n, n)); }

MinkowskiNorm randers_b1(int n, double b1) {
  Vector b = Vector::Zero(n);
  b[0] = b1;
  return MinkowskiNorm::randers(Matrix::Identity(n, n), b);
}

// ---- criterion bodies ------------------------------------------------

Outcome bi_invariant_baseline() {
  Outcome out;
  double max_r_err = 0.0;
  bool s_exact = true;
  for (const char* name :
       {"abelian(2)", "abelian(3)", "heisenberg3", "aff1", "su2", "sl2"}) {
    LieAlgebra alg = builtin_algebra(name);
    SprayVectorField spray = SprayVectorField::zero(alg);
    Sampler sample(alg.dim(), 1001);
    for (int i = 0; i < 100; ++i) {
      Vector y = sample();
      if (s_curvature(spray, y) != 0.5 * alg.ad_matrix(y).trace()) s_exact = false;
      Matrix ad = alg.ad_matrix(y);
      Matrix expect = -0.25 * ad * ad;
      max_r_err = std::max(
          max_r_err, (riemann_matrix(spray, y) - expect).cwiseAbs().maxCoeff());
    }
  }
  out.pass = s_exact && max_r_err < 1e-12;
  out.detail = std::string("S exact: ") + (s_exact ? "yes" : "NO") +
               ", max ||R + ad^2/4|| = " + fmt(max_r_err) + " (limit 1e-12)";
  return out;
}

Outcome heisenberg_flat() {
  Outcome out;
  LieAlgebra alg = builtin_algebra("heisenberg3");
  SprayVectorField spray = SprayVectorField::zero(alg);
  Sampler sample(3, 1002);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i)
    worst = std::max(worst, riemann_matrix(spray, sample()).cwiseAbs().maxCoeff());
  out.pass = worst < 1e-12;
  out.detail = "max ||R|| = " + fmt(worst) + " (limit 1e-12)";
  return out;
}

Outcome su2_metric_degeneracy() {
  Outcome out;
  LieAlgebra alg = builtin_algebra("su2");
  MinkowskiNorm norm = euclidean(3);
  Sampler sample(3, 1003);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i)
    worst = std::max(worst, eta_from_metric(alg, norm, sample()).norm());
  out.pass = worst < 1e-9;
  out.detail = "max |eta| = " + fmt(worst) + " (limit 1e-9)";
  return out;
}

Outcome hyperbolic_aff1() {
  Outcome out;
  SprayVectorField spray =
      SprayVectorField::metric(builtin_algebra("aff1"), euclidean(2));
  double worst = 0.0;
  Sampler sample(2, 1004);
  for (int i = 0; i < 50; ++i) {
    Vector y = sample(), v = sample();
    Vector expect = -(y.squaredNorm() * v - y.dot(v) * y);
    worst = std::max(worst,
                     (riemann(spray, y, v) - expect).cwiseAbs().maxCoeff());
  }
  Vector r12 = riemann(spray, vec2(1, 0), vec2(0, 1));
  double pin = (r12 - vec2(0, -1)).cwiseAbs().maxCoeff();
  worst = std::max(worst, pin);
  out.pass = worst < 1e-5;
  out.detail = "max componentwise error = " + fmt(worst) +
               ", |R_e1(e2) + e2| = " + fmt(pin) + " (limit 1e-5)";
  return out;
}

Outcome two_route_agreement() {
  Outcome out;
  double worst_s = 0.0, worst_r = 0.0;
  for (const char* name : {"aff1", "su2"}) {
    LieAlgebra alg = builtin_algebra(name);
    SprayVectorField spray =
        SprayVectorField::metric(alg, randers_b1(alg.dim(), 0.3));
    Sampler sample(alg.dim(), 1005);
    for (int i = 0; i < 50; ++i) {
      CurvatureReport rep = curvature_report(spray, sample());
      worst_s = std::max(worst_s, rep.s_delta);
      worst_r = std::max(worst_r, rep.r_delta);
    }
  }
  out.pass = worst_s < 1e-6 && worst_r < 1e-5;
  out.detail = "max |S delta| = " + fmt(worst_s) + " (limit 1e-6), max |R delta| = " +
               fmt(worst_r) + " (limit 1e-5)";
  return out;
}

Outcome theorem_d_reconstruction() {
  Outcome out;
  double worst_exp = 0.0;
  for (const char* name : {"su2", "heisenberg3", "aff1", "abelian(3)"}) {
    LieAlgebra alg = builtin_algebra(name);
    SprayVectorField spray = SprayVectorField::zero(alg);
    Sampler sample(alg.dim(), 1006);
    Vector x = sample();
    IntegratorConfig cfg;
    cfg.t_begin = 0;
    cfg.t_end = 1;
    cfg.output_samples = 101;
    GeodesicTrace trace = geodesic(spray, x, std::nullopt, cfg);
    Matrix rho = alg.rep_matrix(x);
    // scaling-and-squaring oracle for exp(t rho) via repeated squaring of
    // a Pade-free Taylor core at small argument
    for (size_t i = 0; i < trace.times.size(); ++i) {
      Matrix a = trace.times[i] * rho;
      Matrix term = Matrix::Identity(a.rows(), a.cols());
      Matrix expa = term;
      int squarings = 0;
      while (a.cwiseAbs().maxCoeff() > 0.25) {
        a *= 0.5;
        ++squarings;
      }
      for (int k = 1; k <= 20; ++k) {
        term = term * a / k;
        expa += term;
      }
      for (int s = 0; s < squarings; ++s) expa = expa * expa;
      worst_exp =
          std::max(worst_exp, (trace.c_values[i] - expa).cwiseAbs().maxCoeff());
    }
  }

  SprayVectorField aff =
      SprayVectorField::metric(builtin_algebra("aff1"), euclidean(2));
  IntegratorConfig cfg;
  cfg.t_begin = 0;
  cfg.t_end = 5;
  cfg.output_samples = 1001;
  GeodesicTrace trace = geodesic(aff, vec2(1, 1), std::nullopt, cfg);
  GeodesicResiduals resid = verify_geodesic_ode(trace, aff);

  out.pass = worst_exp < 1e-8 && resid.algebra_residual < 1e-6;
  out.detail = "max |c - exp| = " + fmt(worst_exp) +
               " (limit 1e-8), correspondence residual = " +
               fmt(resid.algebra_residual) + " (limit 1e-6)";
  return out;
}

Outcome incompleteness() {
  Outcome out;
  auto mk = [](const std::string& s) { return Expression::parse(s, 2); };
  SprayVectorField field = SprayVectorField::closed_form(
      builtin_algebra("abelian(2)"),
      {mk("-sqrt(u1^2 + u2^2) * u1"), mk("-sqrt(u1^2 + u2^2) * u2")});
  double worst_rel = 0.0;
  bool all_backward_ok = true;
  for (double r0 : {0.5, 1.0, 2.0}) {
    Vector y0 = vec2(0.0, r0);
    IntegratorConfig cfg;
    cfg.t_begin = -50;
    cfg.t_end = 50;
    cfg.output_samples = 501;
    AlgebraCurve curve = integrate_eta(field, y0, cfg);
    if (!curve.blowup) {
      all_backward_ok = false;
      continue;
    }
    worst_rel = std::max(worst_rel,
                         std::abs(curve.blowup->time_estimate - 1.0 / r0) * r0);
    // backward side must reach -50
    if (curve.times.front() != -50.0) all_backward_ok = false;
  }
  out.pass = worst_rel < 0.01 && all_backward_ok;
  out.detail = "max relative t* error = " + fmt(worst_rel) +
               " (limit 0.01), backward horizon reached: " +
               (all_backward_ok ? "yes" : "NO");
  return out;
}

Outcome norm_conservation() {
  Outcome out;
  double worst = 0.0;
  for (int which = 0; which < 2; ++which) {
    MinkowskiNorm norm = which == 0 ? euclidean(2) : randers_b1(2, 0.3);
    SprayVectorField spray =
        SprayVectorField::metric(builtin_algebra("aff1"), norm);
    IntegratorConfig cfg;
    cfg.t_begin = 0;
    cfg.t_end = 10;
    cfg.output_samples = 501;
    cfg.abs_tol = 1e-12;
    cfg.rel_tol = 1e-10;
    Vector y0 = vec2(1, 1);
    AlgebraCurve curve = integrate_eta(spray, y0, cfg);
    double f0 = norm.value(y0);
    for (const auto& y : curve.values)
      worst = std::max(worst, std::abs(norm.value(y) - f0));
  }
  out.pass = worst < 1e-7;
  out.detail = "max |F(y(t)) - F(y0)| = " + fmt(worst) + " (limit 1e-7)";
  return out;
}

Outcome surface_suite() {
  Outcome out;
  LieAlgebra aff1 = builtin_algebra("aff1");
  bool pass = true;
  std::string detail;

  double worst_pairing = 0.0, worst_identity = 0.0;
  double euclid_max_c = 0.0, randers_dev = 0.0;
  for (int which = 0; which < 2; ++which) {
    MinkowskiNorm norm = which == 0 ? euclidean(2) : randers_b1(2, 0.3);
    IndicatrixScan scan = scan_indicatrix(aff1, norm, 720);
    EtaZeros zeros = eta_zeros(scan, aff1, norm);
    if (zeros.angles.size() != 2) pass = false;
    for (double p : zeros.derived_pairing)
      worst_pairing = std::max(worst_pairing, std::abs(p));

    for (size_t k = 0; k < scan.angles.size(); ++k) {
      double iw = norm.mean_cartan(scan.points[k], scan.w[k]);
      worst_identity =
          std::max(worst_identity, std::abs(scan.cartan_scalar[k] - iw));
    }

    // Cartan series on one arc
    double z0 = zeros.angles[0], z1 = zeros.angles[1];
    double mid = 0.5 * (z0 + z1);
    Vector d(2);
    d << std::cos(mid), std::sin(mid);
    IntegratorConfig cfg;
    cfg.t_begin = -6;
    cfg.t_end = 6;
    cfg.output_samples = 801;
    CartanFlowSeries series =
        cartan_along_flow(aff1, norm, norm.indicatrix_point(d), cfg);
    if (which == 0) {
      for (double c : series.cartan)
        euclid_max_c = std::max(euclid_max_c, std::abs(c));
    } else {
      randers_dev = series.max_deviation;
    }
  }
  pass = pass && worst_pairing < 1e-7 && euclid_max_c < 1e-6 && randers_dev > 1e-3 &&
         worst_identity < 1e-5;
  out.pass = pass;
  out.detail = "zeros pairing = " + fmt(worst_pairing) +
               " (limit 1e-7), euclid |C| = " + fmt(euclid_max_c) +
               " (limit 1e-6), randers deviation = " + fmt(randers_dev) +
               " (must exceed 1e-3), mean-cartan delta = " + fmt(worst_identity) +
               " (limit 1e-5)";
  return out;
}

Outcome homogeneity_suite() {
  Outcome out;
  double worst = 0.0;
  struct Case {
    const char* algebra;
    bool randers;
  };
  for (Case c : {Case{"aff1", false}, Case{"aff1", true}, Case{"su2", true}}) {
    LieAlgebra alg = builtin_algebra(c.algebra);
    MinkowskiNorm norm = c.randers ? randers_b1(alg.dim(), 0.3) : euclidean(alg.dim());
    SprayVectorField spray = SprayVectorField::metric(alg, norm);
    Sampler sample(alg.dim(), 1010);
    for (int i = 0; i < 10; ++i) {
      Vector y = sample(), v = sample();
      Vector eta = spray.eta(y);
      Vector n = spray.connection(y, v);
      double s = s_curvature(spray, y);
      Matrix r = riemann_matrix(spray, y);
      for (double lam : {0.5, 2.0}) {
        double e1 = (spray.eta(lam * y) - lam * lam * eta).norm() /
                    std::max(1.0, eta.norm());
        double e2 = (spray.connection(lam * y, v) - lam * n).norm() /
                    std::max(1.0, n.norm());
        double e3 = std::abs(s_curvature(spray, lam * y) - lam * s) /
                    std::max(1.0, std::abs(s));
        double e4 = (riemann_matrix(spray, lam * y) - lam * lam * r)
                        .cwiseAbs()
                        .maxCoeff() /
                    std::max(1.0, r.cwiseAbs().maxCoeff());
        worst = std::max({worst, e1, e2, e3, e4});
      }
    }
  }
  out.pass = worst < 1e-5;
  out.detail = "max relative homogeneity defect = " + fmt(worst) + " (limit 1e-5)";
  return out;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "bi-invariant baseline: S = tr(ad)/2 exactly, R = -ad^2/4 to 1e-12", 1.0,
       bi_invariant_baseline},
      {2, "heisenberg flatness: ||R|| < 1e-12", 1.0, heisenberg_flat},
      {3, "su(2) bi-invariant metric degeneracy: |eta| < 1e-9", 1.0,
       su2_metric_degeneracy},
      {4, "hyperbolic aff(1): constant curvature -1 within 1e-5", 5.0, hyperbolic_aff1},
      {5, "two-route curvature agreement on randers sprays", 30.0, two_route_agreement},
      {6, "geodesic reconstruction: matrix exponential and residuals", 10.0,
       theorem_d_reconstruction},
      {7, "incompleteness: forward blow-up at 1/|y0| within 1%", 5.0, incompleteness},
      {8, "norm conservation along metric flows over [0,10]", 10.0, norm_conservation},
      {9, "surface suite: zeros, Cartan series, mean-Cartan identity", 60.0,
       surface_suite},
      {10, "homogeneity of eta, N, S, R under y -> lambda y", 10.0, homogeneity_suite},
  };

  int failures = 0;
  for (auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_budget = secs < c.budget_s;
    bool pass = outcome.pass && in_budget;
    if (!pass) ++failures;
    std::printf("[%s] criterion %2d: %s — %s [%.2f s, budget %.0f s]\n",
                pass ? "PASS" : "FAIL", c.id, c.name.c_str(), outcome.detail.c_str(),
                secs, c.budget_s);
  }
  if (failures == 0)
    std::printf("acceptance: all %zu criteria passed\n", criteria.size());
  else
    std::printf("acceptance: %d criteria FAILED\n", failures);
  return failures;
}
