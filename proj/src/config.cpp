#include "liespray/config.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

namespace liespray {

namespace {

Matrix numbers_to_matrix(const std::vector<double>& flat, int n, const std::string& key) {
  if (static_cast<int>(flat.size()) != n * n)
    throw ConfigError("key '" + key + "' must hold " + std::to_string(n * n) +
                      " row-major numbers");
  Matrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = flat[r * n + c];
  return m;
}

LieAlgebra resolve_algebra(const TextConfig& cfg, const std::string& base_dir) {
  const bool has_builtin = cfg.has("algebra.builtin");
  const bool has_file = cfg.has("algebra.file");
  const bool has_inline = cfg.has("algebra.dim");
  if (has_builtin + has_file + has_inline != 1)
    throw ConfigError(
        "exactly one of algebra.builtin, algebra.file or inline algebra.dim "
        "must be given");
  if (has_builtin) return builtin_algebra(cfg.get_string("algebra.builtin"));
  if (has_file) {
    std::filesystem::path p = cfg.get_raw("algebra.file");
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    if (!std::filesystem::exists(p))
      throw ConfigError("algebra.file does not exist: " + p.string());
    return read_algebra_file(p.string());
  }

  // Inline definition, re-serialized through the algebra reader so both
  // paths share one code path.
  TextConfigWriter w;
  w.put_integer("dim", cfg.get_integer("algebra.dim"));
  if (cfg.has("algebra.name")) w.put_string("name", cfg.get_string("algebra.name"));
  if (cfg.has("algebra.c"))
    for (const auto& e : cfg.entries("algebra.c")) {
      std::vector<double> nums;
      for (const auto& t : e.tokens) nums.push_back(parse_double(t, e.line));
      w.put_numbers("c", nums);
    }
  if (cfg.has("algebra.rep.size")) {
    long size = cfg.get_integer("algebra.rep.size");
    w.put_integer("rep.size", size);
    long dim = 0;
    // number of rep.e<i> keys must match dim; collected below
    for (dim = 1;; ++dim) {
      std::string key = "algebra.rep.e" + std::to_string(dim);
      if (!cfg.has(key)) break;
      w.put_numbers("rep.e" + std::to_string(dim), cfg.get_numbers(key));
    }
  }
  return read_algebra(w.str());
}

std::optional<MinkowskiNorm> resolve_norm(const TextConfig& cfg, const LieAlgebra& alg,
                                          std::uint64_t seed) {
  if (!cfg.has("norm.kind")) return std::nullopt;
  const std::string kind = cfg.get_string("norm.kind");
  const int n = alg.dim();

  MinkowskiNorm norm = MinkowskiNorm::quadratic(Matrix::Identity(n, n));
  if (kind == "quadratic") {
    Matrix q = cfg.has("norm.Q") ? numbers_to_matrix(cfg.get_numbers("norm.Q"), n, "norm.Q")
                                 : Matrix::Identity(n, n);
    norm = MinkowskiNorm::quadratic(q);
  } else if (kind == "randers") {
    Matrix q = cfg.has("norm.Q") ? numbers_to_matrix(cfg.get_numbers("norm.Q"), n, "norm.Q")
                                 : Matrix::Identity(n, n);
    std::vector<double> bv = cfg.get_numbers("norm.b");
    if (static_cast<int>(bv.size()) != n)
      throw ConfigError("norm.b must hold " + std::to_string(n) + " numbers");
    Vector b(n);
    for (int i = 0; i < n; ++i) b[i] = bv[i];
    norm = MinkowskiNorm::randers(q, b);
  } else if (kind == "user") {
    std::string expr = cfg.get_raw("norm.expr");
    norm = MinkowskiNorm::user(Expression::parse(expr, n));
  } else {
    throw ConfigError("norm.kind must be quadratic, randers or user, got '" + kind + "'");
  }
  if (cfg.has("norm.derivative_mode")) {
    std::string mode = cfg.get_string("norm.derivative_mode");
    if (mode == "finite_difference")
      norm.set_derivative_mode(MinkowskiNorm::DerivativeMode::finite_difference);
    else if (mode != "analytic")
      throw ConfigError("norm.derivative_mode must be analytic or finite_difference");
  }

  NormValidation val = norm.validate(seed);
  if (!val.ok()) {
    std::ostringstream os;
    os << "norm not strongly convex: min F = " << val.min_value
       << ", min eigenvalue of g = " << val.min_eigenvalue;
    if (val.witness) {
      os << " (witness direction";
      for (int i = 0; i < val.witness->size(); ++i) os << " " << (*val.witness)[i];
      os << ")";
    }
    throw ConfigError(os.str());
  }
  return norm;
}

void require_positive(double v, const char* key) {
  if (!(v > 0.0)) throw ConfigError(std::string(key) + " must be positive");
}

}  // namespace

SprayVectorField RunConfig::make_spray() const {
  switch (spray_source) {
    case SpraySource::zero:
      return SprayVectorField::zero(algebra);
    case SpraySource::metric:
      if (!norm)
        throw ConfigError("spray.source = metric requires a norm block");
      return SprayVectorField::metric(algebra, *norm);
    case SpraySource::closed_form: {
      std::vector<Expression> comps;
      for (const auto& text : spray_exprs)
        comps.push_back(Expression::parse(text, algebra.dim()));
      return SprayVectorField::closed_form(algebra, comps);
    }
  }
  throw ConfigError("corrupt spray source");
}

IntegratorConfig RunConfig::integrator() const {
  IntegratorConfig cfg;
  cfg.method = method;
  cfg.initial_step = initial_step;
  cfg.abs_tol = abs_tol;
  cfg.rel_tol = rel_tol;
  cfg.t_begin = t_begin;
  cfg.t_end = t_end;
  cfg.blowup_norm_cap = blowup_cap;
  cfg.output_samples = output_samples;
  cfg.orthonormalize = orthonormalize;
  return cfg;
}

RunConfig parse_run_config_text(const std::string& text, const std::string& base_dir) {
  return parse_run_config(TextConfig::parse(text), base_dir);
}

RunConfig parse_run_config(const TextConfig& cfg, const std::string& base_dir) {
  RunConfig rc;

  if (cfg.has("seed")) rc.seed = static_cast<std::uint64_t>(cfg.get_integer("seed"));

  rc.algebra = resolve_algebra(cfg, base_dir);
  rc.norm = resolve_norm(cfg, rc.algebra, rc.seed);

  if (cfg.has("spray.source")) {
    std::string src = cfg.get_string("spray.source");
    if (src == "zero") {
      rc.spray_source = SpraySource::zero;
    } else if (src == "metric") {
      rc.spray_source = SpraySource::metric;
      if (!rc.norm) throw ConfigError("spray.source = metric requires a norm block");
    } else if (src == "closed_form") {
      rc.spray_source = SpraySource::closed_form;
    } else {
      throw ConfigError("spray.source must be zero, metric or closed_form, got '" +
                        src + "'");
    }
  } else if (rc.norm) {
    rc.spray_source = SpraySource::metric;
  }

  if (rc.spray_source == SpraySource::closed_form) {
    for (int i = 1; i <= rc.algebra.dim(); ++i) {
      std::string key = "spray.eta" + std::to_string(i);
      if (!cfg.has(key))
        throw ConfigError("closed-form spray needs '" + key + "' (one per coordinate)");
      rc.spray_exprs.push_back(cfg.get_raw(key));
    }
    // Parse now so malformed expressions fail at config time.
    for (const auto& text : rc.spray_exprs) Expression::parse(text, rc.algebra.dim());
  }

  if (cfg.has("y0")) {
    std::vector<double> v = cfg.get_numbers("y0");
    if (static_cast<int>(v.size()) != rc.algebra.dim())
      throw ConfigError("y0 must hold " + std::to_string(rc.algebra.dim()) + " numbers");
    Vector y(rc.algebra.dim());
    for (size_t i = 0; i < v.size(); ++i) y[i] = v[i];
    rc.y0 = y;
  }
  if (cfg.has("g0")) {
    const auto& e = cfg.entries("g0");
    if (e.size() == 1 && e[0].tokens.size() == 1 && e[0].tokens[0] == "identity") {
      // default; leave unset
    } else {
      if (!rc.algebra.rep()) throw ConfigError("g0 given but the algebra has no rep");
      int m = rc.algebra.rep()->size;
      Matrix g = numbers_to_matrix(cfg.get_numbers("g0"), m, "g0");
      rc.g0 = g;
    }
  }

  if (cfg.has("t_span")) {
    std::vector<double> span = cfg.get_numbers("t_span");
    if (span.size() != 2 || !(span[0] < span[1]))
      throw ConfigError("t_span must be two numbers a b with a < b");
    rc.t_begin = span[0];
    rc.t_end = span[1];
    if (!(rc.t_begin <= 0.0 && 0.0 <= rc.t_end))
      throw ConfigError("t_span must contain 0 (the curve is anchored at t = 0)");
  }
  if (cfg.has("method")) {
    std::string m = cfg.get_string("method");
    if (m == "rk4")
      rc.method = OdeMethod::rk4;
    else if (m == "rk45")
      rc.method = OdeMethod::rk45;
    else
      throw ConfigError("method must be rk4 or rk45, got '" + m + "'");
  }

  if (cfg.has("abs_tol")) rc.abs_tol = cfg.get_number("abs_tol");
  if (cfg.has("rel_tol")) rc.rel_tol = cfg.get_number("rel_tol");
  if (cfg.has("initial_step")) rc.initial_step = cfg.get_number("initial_step");
  if (cfg.has("blowup_cap")) rc.blowup_cap = cfg.get_number("blowup_cap");
  if (cfg.has("output_samples"))
    rc.output_samples = static_cast<int>(cfg.get_integer("output_samples"));
  if (cfg.has("orthonormalize"))
    rc.orthonormalize = cfg.get_string("orthonormalize") == "true";
  if (cfg.has("resolution")) rc.resolution = static_cast<int>(cfg.get_integer("resolution"));
  if (cfg.has("flow_time")) rc.flow_time = cfg.get_number("flow_time");
  if (cfg.has("landsberg_tol")) rc.landsberg_tol = cfg.get_number("landsberg_tol");
  if (cfg.has("samples")) rc.samples = static_cast<int>(cfg.get_integer("samples"));
  if (cfg.has("directions")) rc.directions = static_cast<int>(cfg.get_integer("directions"));
  if (cfg.has("radius")) rc.radius = cfg.get_number("radius");
  if (cfg.has("horizon")) rc.horizon = cfg.get_number("horizon");
  if (cfg.has("check.s_tol")) rc.s_check_tol = cfg.get_number("check.s_tol");
  if (cfg.has("check.r_tol")) rc.r_check_tol = cfg.get_number("check.r_tol");
  if (cfg.has("check.residual_tol"))
    rc.residual_check_tol = cfg.get_number("check.residual_tol");
  if (cfg.has("check.drift_tol")) rc.drift_check_tol = cfg.get_number("check.drift_tol");

  require_positive(rc.abs_tol, "abs_tol");
  require_positive(rc.rel_tol, "rel_tol");
  require_positive(rc.initial_step, "initial_step");
  require_positive(rc.blowup_cap, "blowup_cap");
  require_positive(rc.flow_time, "flow_time");
  require_positive(rc.landsberg_tol, "landsberg_tol");
  require_positive(rc.radius, "radius");
  require_positive(rc.horizon, "horizon");
  require_positive(rc.s_check_tol, "check.s_tol");
  require_positive(rc.r_check_tol, "check.r_tol");
  require_positive(rc.residual_check_tol, "check.residual_tol");
  require_positive(rc.drift_check_tol, "check.drift_tol");
  if (rc.samples < 1) throw ConfigError("samples must be at least 1");
  if (rc.directions < 1) throw ConfigError("directions must be at least 1");
  if (rc.resolution < 8) throw ConfigError("resolution must be at least 8");
  if (rc.output_samples < 2) throw ConfigError("output_samples must be at least 2");

  auto leftover = cfg.unconsumed_keys();
  if (!leftover.empty())
    throw ConfigError("unknown key '" + leftover.front() + "' (line " +
                      std::to_string(cfg.line_of(leftover.front())) + ")");

  // Resolved echo for the manifest (stable key order via nlohmann's map).
  Json echo;
  echo["algebra"] = rc.algebra.name();
  echo["algebra_dim"] = rc.algebra.dim();
  if (rc.norm) echo["norm"] = rc.norm->describe();
  echo["spray_source"] = rc.spray_source == SpraySource::zero         ? "zero"
                         : rc.spray_source == SpraySource::metric     ? "metric"
                                                                      : "closed_form";
  if (!rc.spray_exprs.empty()) echo["spray_exprs"] = rc.spray_exprs;
  if (rc.y0) echo["y0"] = vector_to_json(*rc.y0);
  if (rc.g0) echo["g0"] = matrix_to_json(*rc.g0);
  echo["t_span"] = Json::array({rc.t_begin, rc.t_end});
  echo["method"] = rc.method == OdeMethod::rk4 ? "rk4" : "rk45";
  echo["abs_tol"] = rc.abs_tol;
  echo["rel_tol"] = rc.rel_tol;
  echo["initial_step"] = rc.initial_step;
  echo["blowup_cap"] = rc.blowup_cap;
  echo["output_samples"] = rc.output_samples;
  echo["orthonormalize"] = rc.orthonormalize;
  echo["resolution"] = rc.resolution;
  echo["flow_time"] = rc.flow_time;
  echo["landsberg_tol"] = rc.landsberg_tol;
  echo["samples"] = rc.samples;
  echo["directions"] = rc.directions;
  echo["radius"] = rc.radius;
  echo["horizon"] = rc.horizon;
  echo["seed"] = rc.seed;
  echo["check"] = Json{{"s_tol", rc.s_check_tol},
                       {"r_tol", rc.r_check_tol},
                       {"residual_tol", rc.residual_check_tol},
                       {"drift_tol", rc.drift_check_tol}};
  rc.echo = std::move(echo);
  return rc;
}

}  // namespace liespray
