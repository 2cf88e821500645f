#include "liespray/surface.hpp"

#include <cmath>
#include <numbers>

#include "liespray/spray.hpp"

namespace liespray {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_2d(const LieAlgebra& alg) {
  if (alg.dim() != 2)
    throw DimensionError("surface analysis needs a 2-dimensional algebra, got dim " +
                         std::to_string(alg.dim()));
}

Vector angle_point(const MinkowskiNorm& norm, double theta) {
  Vector d(2);
  d << std::cos(theta), std::sin(theta);
  return norm.indicatrix_point(d);
}

// Oriented g_y-unit vector with g_y(y, w) = 0 and det(y, w) > 0.
Vector oriented_normal(const Matrix& g, const Vector& y) {
  Vector gy = g * y;
  Vector v(2);
  v << -gy[1], gy[0];
  double norm2 = v.dot(g * v);
  if (!(norm2 > 0.0))
    throw StrongConvexityError("indicatrix normal: g is not positive definite here");
  Vector w = v / std::sqrt(norm2);
  if (y[0] * w[1] - y[1] * w[0] < 0.0) w = -w;
  return w;
}

}  // namespace

IndicatrixScan scan_indicatrix(const LieAlgebra& alg, const MinkowskiNorm& norm,
                               int resolution) {
  require_2d(alg);
  if (norm.dim() != 2) throw DimensionError("surface analysis needs a 2-d norm");
  if (resolution < 8) throw Error("indicatrix scan: resolution must be at least 8");

  SprayVectorField spray = SprayVectorField::metric(alg, norm);

  IndicatrixScan scan;
  scan.angles.reserve(resolution);
  double max_tangential = 0.0;
  Vector prev_w;
  for (int k = 0; k < resolution; ++k) {
    double theta = kTwoPi * k / resolution;
    Vector y = angle_point(norm, theta);
    Matrix g = norm.fundamental_tensor(y);
    Vector w = oriented_normal(g, y);
    Vector eta = spray.eta(y);
    double tangential = w.dot(g * eta);

    scan.angles.push_back(theta);
    scan.points.push_back(y);
    scan.w.push_back(w);
    scan.eta_tangential.push_back(tangential);
    scan.cartan_scalar.push_back(norm.cartan(y, w, w, w));

    scan.max_f_residual = std::max(scan.max_f_residual, std::abs(norm.value(y) - 1.0));
    scan.max_w_residual = std::max(scan.max_w_residual, std::abs(y.dot(g * w)));
    scan.max_w_residual = std::max(scan.max_w_residual, std::abs(w.dot(g * w) - 1.0));
    if (k > 0) {
      scan.orientation_min_dot = std::min(scan.orientation_min_dot, prev_w.dot(w));
    }
    prev_w = w;
    max_tangential = std::max(max_tangential, std::abs(tangential));
  }
  scan.eta_identically_zero = max_tangential < 1e-12;
  return scan;
}

EtaZeros eta_zeros(const IndicatrixScan& scan, const LieAlgebra& alg,
                   const MinkowskiNorm& norm) {
  require_2d(alg);
  EtaZeros out;
  if (scan.eta_identically_zero) {
    out.eta_identically_zero = true;
    return out;
  }

  SprayVectorField spray = SprayVectorField::metric(alg, norm);
  auto tangential_at = [&](double theta) {
    Vector y = angle_point(norm, theta);
    Matrix g = norm.fundamental_tensor(y);
    Vector w = oriented_normal(g, y);
    return w.dot(g * spray.eta(y));
  };

  const int m = static_cast<int>(scan.angles.size());
  for (int k = 0; k < m; ++k) {
    double t0 = scan.eta_tangential[k];
    double t1 = scan.eta_tangential[(k + 1) % m];
    double a = scan.angles[k];
    double b = k + 1 < m ? scan.angles[k + 1] : kTwoPi;
    double root;
    if (t0 == 0.0) {
      root = a;
    } else if (t0 * t1 < 0.0) {
      // bisection to 1e-10 in angle
      double fa = t0;
      double lo = a, hi = b;
      while (hi - lo > 1e-10) {
        double mid = 0.5 * (lo + hi);
        double fm = tangential_at(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if (fa * fm < 0.0) {
          hi = mid;
        } else {
          lo = mid;
          fa = fm;
        }
      }
      root = 0.5 * (lo + hi);
    } else {
      continue;
    }
    out.angles.push_back(root);
    out.points.push_back(angle_point(norm, root));
  }

  if (out.angles.empty())
    throw Error("eta zeros: no sign change found; the scan resolution is degenerate");

  Matrix derived = alg.derived_subalgebra();
  if (derived.cols() == 1) {
    Vector d = derived.col(0);
    for (const Vector& y : out.points) {
      Matrix g = norm.fundamental_tensor(y);
      out.derived_pairing.push_back(y.dot(g * d));
    }
  }
  return out;
}

CartanFlowSeries cartan_along_flow(const LieAlgebra& alg, const MinkowskiNorm& norm,
                                   const Vector& y_start, const IntegratorConfig& cfg) {
  require_2d(alg);
  SprayVectorField spray = SprayVectorField::metric(alg, norm);
  if (spray.eta(y_start).norm() < 1e-13)
    throw Error("cartan flow: start point is a zero of eta (the flow is stationary)");

  AlgebraCurve curve = integrate_eta(spray, y_start, cfg);

  CartanFlowSeries series;
  series.times = curve.times;
  series.points = curve.values;

  // Sample order along the curve: outward from t = 0 on each side so the
  // orientation of w propagates by continuity from the start point.
  const size_t n = curve.times.size();
  size_t i0 = 0;
  for (size_t i = 0; i < n; ++i)
    if (curve.times[i] == 0.0) i0 = i;

  series.cartan.assign(n, 0.0);
  std::vector<Vector> ws(n);
  auto eval_point = [&](size_t i, const Vector& w_prev) -> Vector {
    const Vector& y = series.points[i];
    Matrix g = norm.fundamental_tensor(y);
    Vector w = oriented_normal(g, y);
    if (w_prev.size() && w.dot(w_prev) < 0.0) w = -w;  // guard; det keeps the sign
    ws[i] = w;
    series.cartan[i] = norm.cartan(y, w, w, w);
    series.max_f_residual =
        std::max(series.max_f_residual, std::abs(norm.value(y) - 1.0));
    series.max_w_residual = std::max(series.max_w_residual, std::abs(y.dot(g * w)));
    series.max_w_residual =
        std::max(series.max_w_residual, std::abs(w.dot(g * w) - 1.0));
    double eta_norm = spray.eta(y).norm();
    if (eta_norm < 1e-13 && !series.hit_eta_zero) {
      series.hit_eta_zero = true;
      series.asymptote = y;
    }
    return w;
  };

  Vector w_prev;
  w_prev = eval_point(i0, Vector());
  Vector w_seed = w_prev;
  for (size_t i = i0 + 1; i < n; ++i) w_prev = eval_point(i, w_prev);
  w_prev = w_seed;
  for (size_t i = i0; i-- > 0;) w_prev = eval_point(i, w_prev);

  double sum = 0.0;
  for (double c : series.cartan) sum += c;
  series.mean = sum / static_cast<double>(n);
  for (double c : series.cartan)
    series.max_deviation = std::max(series.max_deviation, std::abs(c - series.mean));
  return series;
}

LandsbergReport landsberg_diagnostic(const LieAlgebra& alg, const MinkowskiNorm& norm,
                                     const LandsbergOptions& opts) {
  require_2d(alg);
  LandsbergReport report;
  report.tolerance = opts.constancy_tolerance;
  report.scan = scan_indicatrix(alg, norm, opts.resolution);
  report.zeros = eta_zeros(report.scan, alg, norm);

  for (double c : report.scan.cartan_scalar)
    report.max_abs_cartan = std::max(report.max_abs_cartan, std::abs(c));

  if (report.zeros.eta_identically_zero) {
    // Abelian-type branch: the flow is stationary, every Cartan series is
    // constant, and the metric is locally Minkowskian.
    report.eta_identically_zero = true;
    report.locally_minkowskian = true;
    report.landsberg_consistent = true;
    report.arc_constants_equal = true;
    report.riemannian = report.max_abs_cartan < opts.constancy_tolerance;
    return report;
  }

  report.zero_count = static_cast<int>(report.zeros.angles.size());
  if (report.zero_count != 2) return report;  // degenerate; scan data speaks for itself

  double z0 = report.zeros.angles[0];
  double z1 = report.zeros.angles[1];
  double mids[2] = {0.5 * (z0 + z1), std::fmod(0.5 * (z1 + z0 + kTwoPi), kTwoPi)};

  IntegratorConfig cfg = opts.integrator;
  cfg.t_begin = -opts.flow_time;
  cfg.t_end = opts.flow_time;

  for (int arc = 0; arc < 2; ++arc) {
    Vector start = angle_point(norm, mids[arc]);
    CartanFlowSeries series = cartan_along_flow(alg, norm, start, cfg);
    report.arc_constant[arc] = series.mean;
    report.arc_deviation[arc] = series.max_deviation;
    report.max_deviation = std::max(report.max_deviation, series.max_deviation);
  }

  report.landsberg_consistent = report.max_deviation < opts.constancy_tolerance;
  report.arc_constants_equal =
      std::abs(report.arc_constant[0] - report.arc_constant[1]) < opts.constancy_tolerance;
  report.riemannian = report.landsberg_consistent && report.arc_constants_equal &&
                      report.max_abs_cartan < opts.constancy_tolerance;
  return report;
}

}  // namespace liespray
