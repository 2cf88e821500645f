#ifndef LIESPRAY_SURFACE_HPP
#define LIESPRAY_SURFACE_HPP

#include <optional>
#include <vector>

#include "liespray/geodesic.hpp"
#include "liespray/lie_algebra.hpp"
#include "liespray/minkowski.hpp"
#include "liespray/types.hpp"

namespace liespray {

/// One sweep of the indicatrix {F = 1} of a 2-dimensional algebra. At each
/// angle: the indicatrix point y, the oriented g_y-unit vector w with
/// g_y(y, w) = 0 (det(y, w) > 0 throughout; the determinant cannot vanish
/// so this is the continuous extension of the theta = 0 choice), the
/// tangential component g_y(eta, w) of the metric spray vector field, and
/// the Cartan scalar C_y(w, w, w).
struct IndicatrixScan {
  std::vector<double> angles;
  std::vector<Vector> points;
  std::vector<Vector> w;
  std::vector<double> eta_tangential;
  std::vector<double> cartan_scalar;
  bool eta_identically_zero = false;
  double max_f_residual = 0.0;    // |F(point) - 1|
  double max_w_residual = 0.0;    // max of |g(y,w)| and |g(w,w) - 1|
  double orientation_min_dot = 1.0;  // min consecutive w dot (continuity)
};

IndicatrixScan scan_indicatrix(const LieAlgebra& alg, const MinkowskiNorm& norm,
                               int resolution);

/// Refined zeros of the tangential component on the indicatrix.
struct EtaZeros {
  bool eta_identically_zero = false;
  std::vector<double> angles;         // refined to 1e-10 in angle
  std::vector<Vector> points;
  std::vector<double> derived_pairing;  // g_y(y, d) at each zero, d spanning [g,g]
};

/// Brackets sign changes of the scan and bisects to 1e-10. When the derived
/// subalgebra is one-dimensional (aff(1)-type) the pairing g_y(y, d) is
/// evaluated at each root; it must vanish there. Throws when the scan shows
/// no sign change although eta is not identically zero.
EtaZeros eta_zeros(const IndicatrixScan& scan, const LieAlgebra& alg,
                   const MinkowskiNorm& norm);

/// Cartan scalar transported along the flow of -eta started on the
/// indicatrix. The flow is tangent to the indicatrix, so F stays 1 up to
/// integration error; w(t) is the oriented unit normal as in the scan.
struct CartanFlowSeries {
  std::vector<double> times;
  std::vector<Vector> points;
  std::vector<double> cartan;  // C_{y(t)}(w,w,w)
  double mean = 0.0;
  double max_deviation = 0.0;  // max |C - mean|
  double max_f_residual = 0.0;
  double max_w_residual = 0.0;
  bool hit_eta_zero = false;   // flow reached a zero within tolerance
  std::optional<Vector> asymptote;  // the zero it converged to
};

CartanFlowSeries cartan_along_flow(const LieAlgebra& alg, const MinkowskiNorm& norm,
                                   const Vector& y_start, const IntegratorConfig& cfg);

/// Two-dimensional Landsberg diagnostic: runs the Cartan series on both
/// open arcs between the two eta zeros and applies the conclusion chain
/// (constant series on both arcs, equal constants, vanishing Cartan
/// scalar).
struct LandsbergReport {
  bool eta_identically_zero = false;
  bool locally_minkowskian = false;  // abelian-type branch
  int zero_count = 0;
  double arc_constant[2] = {0.0, 0.0};
  double arc_deviation[2] = {0.0, 0.0};
  double max_deviation = 0.0;
  bool landsberg_consistent = false;
  bool arc_constants_equal = false;
  double max_abs_cartan = 0.0;  // over the scan
  bool riemannian = false;
  double tolerance = 0.0;
  IndicatrixScan scan;
  EtaZeros zeros;
};

struct LandsbergOptions {
  int resolution = 720;
  double flow_time = 8.0;           // arcs are sampled over [-T, T]
  double constancy_tolerance = 1e-4;  // third-difference noise floor
  IntegratorConfig integrator;      // span is overridden per arc
};

LandsbergReport landsberg_diagnostic(const LieAlgebra& alg, const MinkowskiNorm& norm,
                                     const LandsbergOptions& opts);

}  // namespace liespray

#endif  // LIESPRAY_SURFACE_HPP
