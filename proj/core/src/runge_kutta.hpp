#pragma once

// Explicit Runge-Kutta drivers shared by the matrix and scalar integrations.

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qfloquet/error.hpp"
#include "qfloquet/integrator.hpp"

namespace qfloquet::detail {

template <class State>
struct Samples {
  std::vector<double> times;
  std::vector<State> states;

  void push(double t, const State& y) {
    times.push_back(t);
    states.push_back(y);
  }
};

// Requested times strictly inside (t0, t1], sorted and deduplicated.
inline std::vector<double> stop_times(double t0, double t1, std::span<const double> requested) {
  std::vector<double> stops;
  for (double t : requested) {
    if (!(t >= t0 && t <= t1)) {
      throw Error(ErrorCode::InvalidArgument,
                  "sample time " + std::to_string(t) + " outside the integration interval");
    }
    if (t > t0) stops.push_back(t);
  }
  stops.push_back(t1);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
  return stops;
}

// Dormand-Prince 5(4) with FSAL. `norm` measures states for error control.
template <class State, class Field, class Norm>
Samples<State> dormand_prince(Field&& f, double t0, double t1, const State& y0,
                              const IntegratorConfig& cfg, std::span<const double> requested,
                              Norm&& norm) {
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const std::vector<double> stops = stop_times(t0, t1, requested);
  const double span = t1 - t0;
  const double h_min = 1e-13 * span;

  Samples<State> out;
  out.push(t0, y0);

  double t = t0;
  State y = y0;
  State k1 = f(t, y);

  double h;
  {
    const double d0 = norm(y);
    const double d1 = norm(k1);
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * span : 0.01 * d0 / d1;
    h = std::min({h, span, cfg.max_step});
  }

  std::size_t next_stop = 0;
  while (next_stop < stops.size()) {
    const double stop = stops[next_stop];
    double step = h;
    bool lands = false;
    if (t + step >= stop - 1e-14 * span) {
      step = stop - t;
      lands = true;
    }

    const State k2 = f(t + step / 5, y + (step * a21) * k1);
    const State k3 = f(t + 3 * step / 10, y + step * (a31 * k1 + a32 * k2));
    const State k4 = f(t + 4 * step / 5, y + step * (a41 * k1 + a42 * k2 + a43 * k3));
    const State k5 =
        f(t + 8 * step / 9, y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const State k6 =
        f(t + step, y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const State y_new = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const double t_new = lands ? stop : t + step;
    const State k7 = f(t_new, y_new);

    const State err_vec = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double scale = cfg.abs_tol + cfg.rel_tol * std::max(norm(y), norm(y_new));
    const double err = norm(err_vec) / scale;

    if (err <= 1.0) {
      t = t_new;
      y = y_new;
      k1 = k7;
      if (lands) {
        out.push(t, y);
        ++next_stop;
      } else if (cfg.record_steps) {
        out.push(t, y);
      }
      const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      // A step shortened to land on a stop says nothing about the next one.
      h = std::min(lands && step < h ? h : h * factor, cfg.max_step);
    } else {
      h = step * std::max(0.2, 0.9 * std::pow(err, -0.2));
      if (!(h >= h_min)) {
        throw Error(ErrorCode::StepUnderflow,
                    "step size underflow at t = " + std::to_string(t));
      }
    }
  }
  return out;
}

// Classical fourth-order Runge-Kutta with equal steps of at most cfg.step
// between consecutive stops.
template <class State, class Field>
Samples<State> classical_rk4(Field&& f, double t0, double t1, const State& y0,
                             const IntegratorConfig& cfg, std::span<const double> requested) {
  const std::vector<double> stops = stop_times(t0, t1, requested);
  Samples<State> out;
  out.push(t0, y0);
  double t = t0;
  State y = y0;
  for (double stop : stops) {
    const double segment = stop - t;
    const auto steps =
        static_cast<long>(std::max(1.0, std::ceil(segment / cfg.step - 1e-9)));
    const double h = segment / static_cast<double>(steps);
    const double start = t;
    for (long s = 0; s < steps; ++s) {
      const State k1 = f(t, y);
      const State k2 = f(t + h / 2, y + (h / 2) * k1);
      const State k3 = f(t + h / 2, y + (h / 2) * k2);
      const State k4 = f(t + h, y + h * k3);
      y = y + (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t = s + 1 == steps ? stop : start + static_cast<double>(s + 1) * h;
      if (cfg.record_steps || s + 1 == steps) out.push(t, y);
    }
  }
  return out;
}

template <class State, class Field, class Norm>
Samples<State> run_method(Field&& f, double t0, double t1, const State& y0,
                          const IntegratorConfig& cfg, std::span<const double> requested,
                          Norm&& norm) {
  if (cfg.method == Method::RK4Fixed) return classical_rk4(f, t0, t1, y0, cfg, requested);
  return dormand_prince(f, t0, t1, y0, cfg, requested, norm);
}

}  // namespace qfloquet::detail
