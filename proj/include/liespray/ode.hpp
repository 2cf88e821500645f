#ifndef LIESPRAY_ODE_HPP
#define LIESPRAY_ODE_HPP

#include <cmath>
#include <deque>
#include <functional>
#include <optional>
#include <vector>

#include "liespray/types.hpp"

namespace liespray {

enum class OdeMethod { rk4, rk45 };

enum class OdeStatus { reached_end, blowup_cap, step_underflow };

struct OdeOptions {
  OdeMethod method = OdeMethod::rk45;
  double initial_step = 1e-2;
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  double norm_cap = 1e8;  // stop once |y| exceeds this
};

template <class State>
struct OdeSolution {
  std::vector<double> t;  // sample times actually reached (ascending or descending)
  std::vector<State> y;
  OdeStatus status = OdeStatus::reached_end;
  double last_time = 0.0;  // last accepted time
  // 1/|y| vs t fit over the trailing accepted steps; the zero crossing
  // estimates the blow-up time for |y| ~ C/(t* - t) profiles.
  std::optional<double> blowup_time;
  std::vector<std::pair<double, double>> tail;  // (t, |y|) of trailing steps
};

namespace detail {

template <class State>
double state_norm(const State& s) {
  return s.norm();
}

// Extrapolates t* from 1/|y| ~ (t* - t)/C: least-squares line through
// (t, 1/|y|), root at -intercept/slope.
inline std::optional<double> fit_blowup(const std::vector<std::pair<double, double>>& tail,
                                        double direction) {
  if (tail.size() < 2) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(tail.size());
  for (auto [t, r] : tail) {
    double inv = 1.0 / r;
    sx += t;
    sy += inv;
    sxx += t * t;
    sxy += t * inv;
  }
  double denom = n * sxx - sx * sx;
  if (denom == 0.0) return std::nullopt;
  double slope = (n * sxy - sx * sy) / denom;
  double intercept = (sy - slope * sx) / n;
  if (slope * direction >= 0.0) return std::nullopt;  // not shrinking toward 0
  double t_star = -intercept / slope;
  // must lie ahead of the last accepted time
  if ((t_star - tail.back().first) * direction < 0.0) return std::nullopt;
  return t_star;
}

}  // namespace detail

/// Integrates y' = f(t, y) recording the state exactly at `sample_times`
/// (strictly monotone, first entry = start). Stops early on |y| > norm_cap
/// or on adaptive step collapse below 1e-12 * max(1, |t|); in both cases
/// the last accepted point is appended and a blow-up time is fitted from
/// the trailing steps.
template <class State, class RHS,
          class PostStep = std::function<void(double, State&)>>
OdeSolution<State> integrate_ode(
    const RHS& f, State y0, const std::vector<double>& sample_times,
    const OdeOptions& opt, PostStep post_step = [](double, State&) {}) {
  OdeSolution<State> sol;
  if (sample_times.empty()) throw Error("integrate_ode: no sample times");
  const double direction = sample_times.size() > 1 && sample_times.back() < sample_times.front()
                               ? -1.0
                               : 1.0;
  if (opt.initial_step <= 0) throw Error("integrate_ode: step must be positive");
  if (opt.abs_tol <= 0 || opt.rel_tol <= 0)
    throw Error("integrate_ode: tolerances must be positive");

  // Dormand-Prince 5(4) tableau.
  static const double A[7][6] = {
      {},
      {1.0 / 5},
      {3.0 / 40, 9.0 / 40},
      {44.0 / 45, -56.0 / 15, 32.0 / 9},
      {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
      {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
      {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
  static const double C[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
  static const double B5[7] = {35.0 / 384,    0.0,        500.0 / 1113, 125.0 / 192,
                               -2187.0 / 6784, 11.0 / 84, 0.0};
  static const double B4[7] = {5179.0 / 57600,    0.0,          7571.0 / 16695,
                               393.0 / 640,       -92097.0 / 339200,
                               187.0 / 2100,      1.0 / 40};

  double t = sample_times.front();
  State y = y0;
  sol.t.push_back(t);
  sol.y.push_back(y);
  sol.last_time = t;

  std::deque<std::pair<double, double>> tail;
  auto push_tail = [&](double tt, double r) {
    tail.emplace_back(tt, r);
    if (tail.size() > 10) tail.pop_front();
  };
  push_tail(t, detail::state_norm(y));

  auto finish_early = [&](OdeStatus status) {
    sol.status = status;
    sol.last_time = t;
    if (sol.t.empty() || sol.t.back() != t) {
      sol.t.push_back(t);
      sol.y.push_back(y);
    }
    sol.tail.assign(tail.begin(), tail.end());
    sol.blowup_time = detail::fit_blowup(sol.tail, direction);
    return sol;
  };

  double h = opt.initial_step * direction;

  for (size_t target_idx = 1; target_idx < sample_times.size(); ++target_idx) {
    const double target = sample_times[target_idx];
    while ((target - t) * direction > 1e-14 * std::max(1.0, std::abs(target))) {
      // Clamp the step to land on the target.
      if ((t + h - target) * direction > 0.0) h = target - t;
      if (std::abs(h) < 1e-12 * std::max(1.0, std::abs(t)))
        return finish_early(OdeStatus::step_underflow);

      if (opt.method == OdeMethod::rk4) {
        State k1 = f(t, y);
        State k2 = f(t + 0.5 * h, State(y + 0.5 * h * k1));
        State k3 = f(t + 0.5 * h, State(y + 0.5 * h * k2));
        State k4 = f(t + h, State(y + h * k3));
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
        if (!y.allFinite()) return finish_early(OdeStatus::blowup_cap);
        post_step(t, y);
        push_tail(t, detail::state_norm(y));
        if (detail::state_norm(y) > opt.norm_cap)
          return finish_early(OdeStatus::blowup_cap);
        h = opt.initial_step * direction;
        continue;
      }

      // rk45 adaptive
      State k[7];
      k[0] = f(t, y);
      bool stage_finite = true;
      State y5 = y;
      State y4 = y;
      for (int s = 1; s < 7 && stage_finite; ++s) {
        State acc = y;
        for (int j = 0; j < s; ++j)
          if (A[s][j] != 0.0) acc = acc + (h * A[s][j]) * k[j];
        if (!acc.allFinite()) {
          stage_finite = false;
          break;
        }
        k[s] = f(t + C[s] * h, acc);
      }
      if (stage_finite) {
        State acc5 = y;
        State acc4 = y;
        for (int s = 0; s < 7; ++s) {
          if (B5[s] != 0.0) acc5 = acc5 + (h * B5[s]) * k[s];
          if (B4[s] != 0.0) acc4 = acc4 + (h * B4[s]) * k[s];
        }
        y5 = acc5;
        y4 = acc4;
      }

      if (!stage_finite || !y5.allFinite()) {
        h *= 0.5;
        continue;
      }

      // weighted RMS error
      double err = 0.0;
      {
        auto e = (y5 - y4).eval();
        auto scale = (opt.abs_tol +
                      opt.rel_tol * y.cwiseAbs().cwiseMax(y5.cwiseAbs()).array())
                         .eval();
        double sum = 0.0;
        const auto& earr = e.reshaped();
        const auto& sarr = scale.reshaped();
        for (Eigen::Index i = 0; i < earr.size(); ++i) {
          double r = earr[i] / sarr[i];
          sum += r * r;
        }
        err = std::sqrt(sum / static_cast<double>(earr.size()));
      }

      if (err <= 1.0) {
        t += h;
        y = y5;
        post_step(t, y);
        push_tail(t, detail::state_norm(y));
        if (detail::state_norm(y) > opt.norm_cap)
          return finish_early(OdeStatus::blowup_cap);
        double grow = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
        h *= std::min(5.0, std::max(0.2, grow));
      } else {
        h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      }
    }
    t = target;
    sol.t.push_back(t);
    sol.y.push_back(y);
    sol.last_time = t;
  }

  sol.tail.assign(tail.begin(), tail.end());
  return sol;
}

}  // namespace liespray

#endif  // LIESPRAY_ODE_HPP
