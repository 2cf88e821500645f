#ifndef LIESPRAY_GEODESIC_HPP
#define LIESPRAY_GEODESIC_HPP

#include <optional>
#include <vector>

#include "liespray/ode.hpp"
#include "liespray/spray.hpp"
#include "liespray/types.hpp"

namespace liespray {

/// Integration window and controls. The window must contain 0 (the curve
/// is anchored by y(0) = y0); a < 0 integrates the flow backward as well.
struct IntegratorConfig {
  OdeMethod method = OdeMethod::rk45;
  double initial_step = 1e-2;
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  double t_begin = 0.0;
  double t_end = 1.0;
  double blowup_norm_cap = 1e8;
  int output_samples = 201;
  bool orthonormalize = false;  // polar-project the group curve each step

  void check() const;
  OdeOptions ode_options() const;
};

struct BlowupRecord {
  double time_estimate = 0.0;
  Vector direction;  // normalized last state
};

/// Sampled integral curve of -eta on the algebra.
struct AlgebraCurve {
  std::vector<double> times;  // ascending, contains 0
  std::vector<Vector> values;
  OdeStatus status = OdeStatus::reached_end;
  std::optional<BlowupRecord> blowup;
};

/// Sampled matrix curve in the group, aligned with an AlgebraCurve grid.
struct GroupCurve {
  std::vector<double> times;
  std::vector<Matrix> values;
};

/// Finite-difference residuals of the geodesic equations on a trace.
/// Stride-2 residuals rerun the same stencil at doubled spacing: when they
/// exceed the stride-1 values by the differencing order, the measurement is
/// differencing-limited rather than integrator-limited.
struct GeodesicResiduals {
  double algebra_residual = std::numeric_limits<double>::quiet_NaN();
  double algebra_residual_stride2 = std::numeric_limits<double>::quiet_NaN();
  double pullback_residual = std::numeric_limits<double>::quiet_NaN();
  double pullback_residual_stride2 = std::numeric_limits<double>::quiet_NaN();
  double differencing_error_estimate = std::numeric_limits<double>::quiet_NaN();
  bool differencing_dominated = false;
  bool grid_too_coarse = false;
};

struct GeodesicTrace {
  std::vector<double> times;
  std::vector<Vector> y_values;
  std::vector<Matrix> c_values;  // empty when the algebra has no rep
  bool has_group_curve = false;
  OdeStatus status = OdeStatus::reached_end;
  std::optional<BlowupRecord> blowup;
  double speed_drift = std::numeric_limits<double>::quiet_NaN();  // metric sprays
  double pullback_residual = std::numeric_limits<double>::quiet_NaN();
};

/// Solves y' = -eta(y), y(0) = y0 over [t_begin, t_end], halting early
/// with a blow-up record when |y| exceeds blowup_norm_cap or the adaptive
/// step collapses.
AlgebraCurve integrate_eta(const SprayVectorField& spray, const Vector& y0,
                           const IntegratorConfig& cfg);

/// Solves C' = C rho(y(t)), C(0) = I on the curve's grid, interpolating
/// y linearly between samples. Requires a matrix rep on the algebra.
GroupCurve reconstruct_group_curve(const LieAlgebra& alg, const AlgebraCurve& yc,
                                   const IntegratorConfig& cfg);

/// Full pipeline: algebra flow, group reconstruction when a rep exists,
/// left translation by g0, and diagnostics.
GeodesicTrace geodesic(const SprayVectorField& spray, const Vector& y0,
                       const std::optional<Matrix>& g0, const IntegratorConfig& cfg);

/// Checks (a) u' + eta(y) = 0 by differencing y and (b) c^-1 c' = rho(y)
/// by differencing c (4th-order interior stencils, per uniform side).
GeodesicResiduals verify_geodesic_ode(const GeodesicTrace& trace,
                                      const SprayVectorField& spray);

enum class RayFate { reached_horizon, blowup };

struct RayClassification {
  RayFate fate = RayFate::reached_horizon;
  std::optional<double> t_star;  // blow-up estimate
  double last_time = 0.0;
};

struct ProbeEntry {
  Vector y0;
  RayClassification forward;
  RayClassification backward;
};

struct CompletenessReport {
  double horizon = 0.0;
  std::vector<ProbeEntry> entries;
  int blowup_forward = 0;
  int blowup_backward = 0;
};

/// Integrates the flow of -eta from each start vector over [0, T] and
/// [-T, 0] and classifies each ray. Report-only; never throws for
/// blow-ups.
CompletenessReport completeness_probe(const SprayVectorField& spray,
                                      const std::vector<Vector>& starts, double horizon,
                                      const IntegratorConfig& cfg);

/// Output grid over [a, b] containing 0, uniform on each side of 0.
std::vector<double> sample_grid(double a, double b, int n);

}  // namespace liespray

#endif  // LIESPRAY_GEODESIC_HPP
