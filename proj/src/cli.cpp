#include "liespray/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "liespray/curvature.hpp"
#include "liespray/surface.hpp"

namespace liespray {

namespace {

std::vector<Vector> sample_directions(int count, int dim, std::uint64_t seed,
                                      double radius) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Vector> dirs;
  dirs.reserve(count);
  while (static_cast<int>(dirs.size()) < count) {
    Vector d(dim);
    for (int i = 0; i < dim; ++i) d[i] = gauss(rng);
    if (d.norm() < 1e-8) continue;
    dirs.push_back(radius * d / d.norm());
  }
  return dirs;
}

std::string fmt(double v) { return format_double(v); }

void add_check(RunManifest& man, const std::string& name, bool pass,
               const std::string& detail) {
  man.checks.push_back({name, pass, detail});
}

void run_validate(const RunConfig& cfg, RunResult& res) {
  AlgebraValidation av = cfg.algebra.validate();
  Json arec{{"name", cfg.algebra.name()},
            {"dim", cfg.algebra.dim()},
            {"antisymmetry_residual", av.antisymmetry_residual},
            {"jacobi_residual", av.jacobi_residual},
            {"rep_residual", av.rep_residual},
            {"unimodular", av.unimodular},
            {"has_center", av.has_center},
            {"has_rep", cfg.algebra.rep().has_value()}};
  res.records.add("algebra_validation", arec);
  add_check(res.manifest, "algebra_antisymmetry", av.antisymmetry_residual < 1e-12,
            "residual " + fmt(av.antisymmetry_residual));
  add_check(res.manifest, "algebra_jacobi", av.jacobi_residual < 1e-12,
            "residual " + fmt(av.jacobi_residual));
  if (cfg.algebra.rep())
    add_check(res.manifest, "rep_homomorphism", av.rep_residual < 1e-12,
              "residual " + fmt(av.rep_residual));
  if (av.rep_missing_for_center)
    res.manifest.warnings.push_back(
        "algebra has a nontrivial center and no matrix rep; group "
        "reconstruction will be unavailable and ad is not faithful");

  if (cfg.norm) {
    NormValidation nv = cfg.norm->validate(cfg.seed);
    Json nrec{{"norm", cfg.norm->describe()},
              {"homogeneity_residual", nv.homogeneity_residual},
              {"g_homogeneity_residual", nv.g_homogeneity_residual},
              {"euler_residual", nv.euler_residual},
              {"min_value", nv.min_value},
              {"min_eigenvalue", nv.min_eigenvalue},
              {"positive", nv.positive},
              {"strongly_convex", nv.strongly_convex}};
    res.records.add("norm_validation", nrec);
    add_check(res.manifest, "norm_positive", nv.positive, "min F " + fmt(nv.min_value));
    add_check(res.manifest, "norm_strongly_convex", nv.strongly_convex,
              "min eigenvalue " + fmt(nv.min_eigenvalue));
    add_check(res.manifest, "norm_homogeneity", nv.homogeneity_residual < 1e-8,
              "residual " + fmt(nv.homogeneity_residual));
  }

  if (cfg.spray_source == SpraySource::metric && cfg.norm) {
    SprayVectorField spray = cfg.make_spray();
    double tangency = 0.0, homogeneity = 0.0;
    for (const Vector& y : sample_directions(32, cfg.algebra.dim(), cfg.seed + 1, 1.0)) {
      Vector eta = spray.eta(y);
      Matrix g = cfg.norm->fundamental_tensor(y);
      tangency = std::max(tangency, std::abs(eta.dot(g * y)));
      for (double lam : {0.5, 2.0}) {
        Vector scaled = spray.eta(lam * y);
        double rel = (scaled - lam * lam * eta).norm() / std::max(1.0, eta.norm());
        homogeneity = std::max(homogeneity, rel);
      }
    }
    res.records.add("spray_validation",
                    Json{{"tangency_residual", tangency},
                         {"homogeneity_residual", homogeneity}});
    add_check(res.manifest, "spray_tangency", tangency < 1e-8,
              "max |g_y(eta,y)| " + fmt(tangency));
    add_check(res.manifest, "spray_homogeneity", homogeneity < 1e-6,
              "residual " + fmt(homogeneity));
  }
}

void run_curvature(const RunConfig& cfg, RunResult& res) {
  SprayVectorField spray = cfg.make_spray();
  double max_s_delta = 0.0, max_r_delta = 0.0;
  for (const Vector& y : sample_directions(cfg.samples, cfg.algebra.dim(), cfg.seed, 1.0)) {
    CurvatureReport rep = curvature_report(spray, y);
    max_s_delta = std::max(max_s_delta, rep.s_delta);
    max_r_delta = std::max(max_r_delta, rep.r_delta);
    Json eig_re = Json::array(), eig_im = Json::array();
    for (int i = 0; i < rep.eigenvalues.size(); ++i) {
      eig_re.push_back(rep.eigenvalues[i].real());
      eig_im.push_back(rep.eigenvalues[i].imag());
    }
    Json rec{{"y", vector_to_json(rep.y)},
             {"S", rep.s_value},
             {"S_oracle", rep.s_oracle},
             {"S_delta", rep.s_delta},
             {"R", matrix_to_json(rep.r_matrix)},
             {"R_delta", rep.r_delta},
             {"R_trace", rep.r_trace},
             {"R_eigenvalues_re", eig_re},
             {"R_eigenvalues_im", eig_im},
             {"R_y_norm", rep.r_y_norm}};
    if (!std::isnan(rep.lowered_symmetry_residual))
      rec["lowered_symmetry_residual"] = rep.lowered_symmetry_residual;
    res.records.add("curvature_sample", rec);
  }
  res.records.add("curvature_summary",
                  Json{{"samples", cfg.samples},
                       {"max_S_delta", max_s_delta},
                       {"max_R_delta", max_r_delta}});
  add_check(res.manifest, "s_curvature_oracle_agreement", max_s_delta < cfg.s_check_tol,
            "max delta " + fmt(max_s_delta) + " vs tol " + fmt(cfg.s_check_tol));
  add_check(res.manifest, "riemann_oracle_agreement", max_r_delta < cfg.r_check_tol,
            "max delta " + fmt(max_r_delta) + " vs tol " + fmt(cfg.r_check_tol));
}

void run_geodesic(const RunConfig& cfg, RunResult& res) {
  if (!cfg.y0) throw ConfigError("geodesic needs y0 in the config");
  SprayVectorField spray = cfg.make_spray();
  GeodesicTrace trace = geodesic(spray, *cfg.y0, cfg.g0, cfg.integrator());

  for (size_t i = 0; i < trace.times.size(); ++i) {
    Json rec{{"t", trace.times[i]}, {"y", vector_to_json(trace.y_values[i])}};
    if (trace.has_group_curve) rec["c"] = matrix_to_json(trace.c_values[i]);
    if (spray.norm()) rec["F"] = spray.norm()->value(trace.y_values[i]);
    res.records.add("geodesic_sample", rec);
  }

  GeodesicResiduals resid = verify_geodesic_ode(trace, spray);
  Json summary{{"status", trace.status == OdeStatus::reached_end ? "reached_end"
                          : trace.status == OdeStatus::blowup_cap ? "blowup_cap"
                                                                  : "step_underflow"},
               {"samples", trace.times.size()},
               {"has_group_curve", trace.has_group_curve}};
  if (trace.blowup) {
    summary["blowup_time_estimate"] = trace.blowup->time_estimate;
    summary["blowup_direction"] = vector_to_json(trace.blowup->direction);
  }
  if (!std::isnan(trace.speed_drift)) summary["speed_drift"] = trace.speed_drift;
  if (!std::isnan(resid.algebra_residual)) {
    summary["algebra_residual"] = resid.algebra_residual;
    summary["algebra_residual_stride2"] = resid.algebra_residual_stride2;
    summary["differencing_error_estimate"] = resid.differencing_error_estimate;
    summary["differencing_dominated"] = resid.differencing_dominated;
  }
  if (!std::isnan(resid.pullback_residual))
    summary["pullback_residual"] = resid.pullback_residual;
  summary["grid_too_coarse"] = resid.grid_too_coarse;
  res.records.add("geodesic_summary", summary);

  add_check(res.manifest, "completed_span", trace.status == OdeStatus::reached_end,
            trace.blowup ? "stopped early, blow-up estimate t* = " +
                               fmt(trace.blowup->time_estimate)
                         : "full span integrated");
  if (!std::isnan(resid.algebra_residual))
    add_check(res.manifest, "algebra_ode_residual",
              resid.algebra_residual < cfg.residual_check_tol,
              "max |u' + eta(y)| = " + fmt(resid.algebra_residual) +
                  (resid.differencing_dominated ? " (differencing dominated)" : ""));
  if (!std::isnan(resid.pullback_residual))
    add_check(res.manifest, "pullback_residual",
              resid.pullback_residual < cfg.residual_check_tol,
              "max |c^-1 c' - rho(y)| = " + fmt(resid.pullback_residual));
  if (resid.grid_too_coarse)
    res.manifest.warnings.push_back(
        "output grid too coarse for residual stencils; increase output_samples");
  if (spray.norm())
    add_check(res.manifest, "norm_conservation", trace.speed_drift < cfg.drift_check_tol,
              "max |F(y(t)) - F(y0)| = " + fmt(trace.speed_drift));
}

void run_flow(const RunConfig& cfg, RunResult& res) {
  SprayVectorField spray = cfg.make_spray();
  std::vector<Vector> starts =
      sample_directions(cfg.directions, cfg.algebra.dim(), cfg.seed, cfg.radius);
  IntegratorConfig icfg = cfg.integrator();
  icfg.t_begin = 0.0;
  icfg.t_end = cfg.horizon;
  CompletenessReport report = completeness_probe(spray, starts, cfg.horizon, icfg);

  auto classify = [](const RayClassification& c) {
    Json j{{"fate", c.fate == RayFate::reached_horizon ? "reached_horizon" : "blowup"},
           {"last_time", c.last_time}};
    if (c.t_star) j["t_star"] = *c.t_star;
    return j;
  };
  double tmin = 0, tmax = 0;
  bool any = false;
  for (const auto& e : report.entries) {
    res.records.add("flow_ray", Json{{"y0", vector_to_json(e.y0)},
                                     {"forward", classify(e.forward)},
                                     {"backward", classify(e.backward)}});
    if (e.forward.t_star) {
      double t = *e.forward.t_star;
      tmin = any ? std::min(tmin, t) : t;
      tmax = any ? std::max(tmax, t) : t;
      any = true;
    }
  }
  Json summary{{"directions", cfg.directions},
               {"horizon", cfg.horizon},
               {"blowup_forward", report.blowup_forward},
               {"blowup_backward", report.blowup_backward}};
  if (any) {
    summary["t_star_min"] = tmin;
    summary["t_star_max"] = tmax;
  }
  res.records.add("flow_summary", summary);
  add_check(res.manifest, "probe_completed", true,
            std::to_string(report.blowup_forward) + "/" +
                std::to_string(cfg.directions) + " forward rays blow up");
}

void run_surface(const RunConfig& cfg, RunResult& res) {
  if (cfg.algebra.dim() != 2)
    throw ConfigError("surface needs a 2-dimensional algebra");
  if (!cfg.norm) throw ConfigError("surface needs a norm block");

  LandsbergOptions opts;
  opts.resolution = cfg.resolution;
  opts.flow_time = cfg.flow_time;
  opts.constancy_tolerance = cfg.landsberg_tol;
  opts.integrator = cfg.integrator();
  LandsbergReport report = landsberg_diagnostic(cfg.algebra, *cfg.norm, opts);

  // Mean-Cartan identity across the scan (the dimension-2 cross check).
  double identity_delta = 0.0;
  const IndicatrixScan& scan = report.scan;
  for (size_t k = 0; k < scan.angles.size(); ++k) {
    double iw = cfg.norm->mean_cartan(scan.points[k], scan.w[k]);
    double delta = std::abs(scan.cartan_scalar[k] - iw);
    identity_delta = std::max(identity_delta, delta);
    res.records.add("surface_scan",
                    Json{{"theta", scan.angles[k]},
                         {"y", vector_to_json(scan.points[k])},
                         {"w", vector_to_json(scan.w[k])},
                         {"F", cfg.norm->value(scan.points[k])},
                         {"eta_tangential", scan.eta_tangential[k]},
                         {"cartan_scalar", scan.cartan_scalar[k]},
                         {"mean_cartan", iw}});
  }

  for (size_t z = 0; z < report.zeros.angles.size(); ++z) {
    Json zrec{{"theta", report.zeros.angles[z]},
              {"y", vector_to_json(report.zeros.points[z])}};
    if (z < report.zeros.derived_pairing.size())
      zrec["derived_pairing"] = report.zeros.derived_pairing[z];
    res.records.add("surface_zero", zrec);
  }

  res.records.add(
      "surface_summary",
      Json{{"eta_identically_zero", report.eta_identically_zero},
           {"locally_minkowskian", report.locally_minkowskian},
           {"zero_count", report.zero_count},
           {"arc_constant_1", report.arc_constant[0]},
           {"arc_constant_2", report.arc_constant[1]},
           {"arc_deviation_1", report.arc_deviation[0]},
           {"arc_deviation_2", report.arc_deviation[1]},
           {"max_deviation", report.max_deviation},
           {"landsberg_consistent", report.landsberg_consistent},
           {"arc_constants_equal", report.arc_constants_equal},
           {"max_abs_cartan", report.max_abs_cartan},
           {"riemannian", report.riemannian},
           {"tolerance", report.tolerance},
           {"mean_cartan_identity_delta", identity_delta}});

  add_check(res.manifest, "scan_on_indicatrix", scan.max_f_residual < 1e-10,
            "max |F - 1| = " + fmt(scan.max_f_residual));
  add_check(res.manifest, "scan_normal_orthonormal", scan.max_w_residual < 1e-8,
            "max residual " + fmt(scan.max_w_residual));
  bool zeros_ok = report.eta_identically_zero || report.zero_count % 2 == 0;
  add_check(res.manifest, "zeros_count_even", zeros_ok,
            "count " + std::to_string(report.zero_count));
  if (!report.zeros.derived_pairing.empty()) {
    double worst = 0.0;
    for (double p : report.zeros.derived_pairing) worst = std::max(worst, std::abs(p));
    add_check(res.manifest, "zero_characterization", worst < 1e-7,
              "max |g_y(y, d)| = " + fmt(worst));
  }
  add_check(res.manifest, "mean_cartan_identity", identity_delta < 1e-5,
            "max |C(w,w,w) - I(w)| = " + fmt(identity_delta));
}

void write_output_dir(const std::string& dir, const RunResult& res) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  write_text_file((fs::path(dir) / "records.jsonl").string(), res.records.to_jsonl());
  write_text_file((fs::path(dir) / "table.txt").string(), res.records.to_table());
  write_text_file((fs::path(dir) / "manifest.json").string(),
                  res.manifest.to_json().dump(2) + "\n");
}

}  // namespace

RunResult run_command(const std::string& command, const RunConfig& cfg) {
  RunResult res;
  res.manifest.command = command;
  res.manifest.config_echo = cfg.echo;
  auto start = std::chrono::steady_clock::now();
  try {
    if (command == "validate") {
      run_validate(cfg, res);
    } else if (command == "curvature") {
      run_curvature(cfg, res);
    } else if (command == "geodesic") {
      run_geodesic(cfg, res);
    } else if (command == "flow") {
      run_flow(cfg, res);
    } else if (command == "surface") {
      run_surface(cfg, res);
    } else {
      throw ConfigError("unknown subcommand '" + command + "'");
    }
    res.manifest.status = res.manifest.all_checks_pass() ? "ok" : "check_failed";
    res.exit_code = res.manifest.status == "ok" ? 0 : 1;
  } catch (const ConfigError& e) {
    res.manifest.status = "error";
    res.manifest.error_name = "config_error";
    res.manifest.error_detail = e.what();
    res.exit_code = 2;
  } catch (const Error& e) {
    res.manifest.status = "error";
    res.manifest.error_name = "runtime_error";
    res.manifest.error_detail = e.what();
    res.exit_code = 3;
  } catch (const std::exception& e) {
    res.manifest.status = "error";
    res.manifest.error_name = "internal_error";
    res.manifest.error_detail = e.what();
    res.exit_code = 3;
  }
  res.manifest.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"left-invariant spray geometry on Lie groups"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.fallthrough();

  std::string config_path;
  std::string out_dir;
  std::string format = "records";
  std::vector<std::string> overrides;
  std::optional<long> seed_flag;

  app.add_option("--config", config_path, "run configuration file");
  app.add_option("--out", out_dir, "directory for records.jsonl, table.txt, manifest.json");
  app.add_option("--format", format, "stdout format: records | table")
      ->check(CLI::IsMember({"records", "table"}));
  app.add_option("--set", overrides, "override a config key, KEY=VALUE (repeatable)");
  app.add_option("--seed", seed_flag, "override the run seed");

  std::vector<std::string> commands = {"validate", "curvature", "geodesic", "flow",
                                       "surface"};
  for (const auto& name : commands) app.add_subcommand(name);
  app.require_subcommand(1);

  // CLI11 wants argv in reverse order for its vector interface.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  std::string command = app.get_subcommands().front()->get_name();

  RunResult res;
  try {
    if (config_path.empty()) throw ConfigError("--config is required");
    TextConfig cfg_text = TextConfig::parse_file(config_path);
    std::string override_text;
    for (const auto& kv : overrides) {
      auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw ConfigError("--set expects KEY=VALUE, got '" + kv + "'");
      override_text += kv.substr(0, eq) + " = " + kv.substr(eq + 1) + "\n";
    }
    if (seed_flag) override_text += "seed = " + std::to_string(*seed_flag) + "\n";
    if (!override_text.empty())
      cfg_text.merge_override(TextConfig::parse(override_text));

    std::string base_dir =
        std::filesystem::path(config_path).parent_path().string();
    RunConfig cfg = parse_run_config(cfg_text, base_dir.empty() ? "." : base_dir);
    res = run_command(command, cfg);
  } catch (const ConfigError& e) {
    res.manifest.command = command;
    res.manifest.status = "error";
    res.manifest.error_name = "config_error";
    res.manifest.error_detail = e.what();
    res.exit_code = 2;
  } catch (const std::exception& e) {
    res.manifest.command = command;
    res.manifest.status = "error";
    res.manifest.error_name = "runtime_error";
    res.manifest.error_detail = e.what();
    res.exit_code = 3;
  }

  out << (format == "table" ? res.records.to_table() : res.records.to_jsonl());
  if (!out_dir.empty()) {
    try {
      write_output_dir(out_dir, res);
    } catch (const std::exception& e) {
      err << "failed to write output directory: " << e.what() << "\n";
      if (res.exit_code == 0) res.exit_code = 3;
    }
  } else {
    err << res.manifest.to_json().dump() << "\n";
  }
  return res.exit_code;
}

}  // namespace liespray
