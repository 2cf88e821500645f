#ifndef LIESPRAY_CONFIG_HPP
#define LIESPRAY_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "liespray/geodesic.hpp"
#include "liespray/lie_algebra.hpp"
#include "liespray/minkowski.hpp"
#include "liespray/records.hpp"
#include "liespray/spray.hpp"
#include "liespray/text_config.hpp"

namespace liespray {

/// Fully resolved run configuration. Parsing fills defaults, rejects
/// unknown keys, and validates semantics (files exist, tolerances
/// positive, strong convexity of a supplied norm).
struct RunConfig {
  LieAlgebra algebra{1, {Matrix::Zero(1, 1)}, "unset"};
  std::optional<MinkowskiNorm> norm;
  SpraySource spray_source = SpraySource::zero;
  std::vector<std::string> spray_exprs;

  std::optional<Vector> y0;
  std::optional<Matrix> g0;

  double t_begin = 0.0;
  double t_end = 5.0;
  OdeMethod method = OdeMethod::rk45;
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  double initial_step = 1e-2;
  double blowup_cap = 1e8;
  int output_samples = 501;
  bool orthonormalize = false;

  int resolution = 720;      // surface scan
  double flow_time = 8.0;    // surface arcs, [-T, T]
  double landsberg_tol = 1e-4;

  int samples = 100;     // curvature sample count
  int directions = 16;   // completeness probe rays
  double radius = 1.0;   // probe start radius
  double horizon = 50.0;

  std::uint64_t seed = 0;
  double s_check_tol = 1e-6;  // curvature oracle agreement
  double r_check_tol = 1e-5;
  double residual_check_tol = 1e-5;  // geodesic correspondence
  double drift_check_tol = 1e-7;     // norm conservation

  Json echo;  // resolved values, for the manifest

  SprayVectorField make_spray() const;
  IntegratorConfig integrator() const;
};

/// `base_dir` resolves relative algebra.file references.
RunConfig parse_run_config(const TextConfig& text, const std::string& base_dir);
RunConfig parse_run_config_text(const std::string& text, const std::string& base_dir);

}  // namespace liespray

#endif  // LIESPRAY_CONFIG_HPP
