#include "qfloquet/integrator.hpp"

#include <algorithm>
#include <cmath>

#include "qfloquet/error.hpp"
#include "runge_kutta.hpp"

namespace qfloquet {

IntegratorConfig IntegratorConfig::rk4(double step) {
  IntegratorConfig cfg;
  cfg.method = Method::RK4Fixed;
  cfg.step = step;
  return cfg;
}

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "integrator tolerances must be positive");
  }
  if (!(max_step > 0.0)) throw Error(ErrorCode::InvalidArgument, "max_step must be positive");
  if (method == Method::RK4Fixed && !(step > 0.0 && std::isfinite(step))) {
    throw Error(ErrorCode::InvalidArgument, "RK4 step must be positive");
  }
}

const QMatrix& Trajectory::at(double t) const {
  const auto it = std::lower_bound(times.begin(), times.end(), t);
  if (it == times.end() || *it != t) {
    throw Error(ErrorCode::InvalidArgument, "no sample at t = " + std::to_string(t));
  }
  return states[static_cast<std::size_t>(it - times.begin())];
}

Trajectory integrate(const MatrixSpec& spec, double t0, double t1, const QMatrix& m0,
                     const IntegratorConfig& cfg, std::span<const double> sample_times) {
  cfg.validate();
  if (m0.rows() != spec.n) {
    throw Error(ErrorCode::DimensionMismatch, "initial matrix has " +
                                                  std::to_string(m0.rows()) +
                                                  " rows, system order is " +
                                                  std::to_string(spec.n));
  }
  if (!(t1 > t0)) throw Error(ErrorCode::InvalidArgument, "integration needs t1 > t0");

  detail::Samples<QMatrix> samples;
  if (spec.depends_on_time()) {
    auto field = [&spec](double t, const QMatrix& m) { return spec.eval(t) * m; };
    samples = detail::run_method(field, t0, t1, m0, cfg, sample_times,
                                 [](const QMatrix& m) { return sum_norm(m); });
  } else {
    const QMatrix a = spec.eval(t0);
    auto field = [&a](double, const QMatrix& m) { return a * m; };
    samples = detail::run_method(field, t0, t1, m0, cfg, sample_times,
                                 [](const QMatrix& m) { return sum_norm(m); });
  }
  return {std::move(samples.times), std::move(samples.states)};
}

std::vector<double> re_trace_integral(const MatrixSpec& spec, double t0,
                                      std::span<const double> times) {
  std::vector<double> out(times.size(), 0.0);
  if (times.empty()) return out;
  const double t1 = *std::max_element(times.begin(), times.end());
  if (!(t1 > t0)) return out;

  IntegratorConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.abs_tol = 1e-14;
  cfg.record_steps = false;
  auto field = [&spec](double t, double) { return spec.re_trace(t); };
  const auto samples = detail::run_method(field, t0, t1, 0.0, cfg, times,
                                          [](double v) { return std::abs(v); });
  for (std::size_t k = 0; k < times.size(); ++k) {
    const auto it = std::lower_bound(samples.times.begin(), samples.times.end(), times[k]);
    out[k] = samples.states[static_cast<std::size_t>(it - samples.times.begin())];
  }
  return out;
}

double liouville_residual(const Trajectory& traj, const MatrixSpec& spec) {
  if (traj.times.empty()) return 0.0;
  const double t0 = traj.times.front();
  const std::vector<double> integrals = re_trace_integral(spec, t0, traj.times);
  const double q0 = qdet(traj.states.front());
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double expected = std::exp(2.0 * integrals[k]) * q0;
    const double r = std::abs(qdet(traj.states[k]) - expected) / std::max(1.0, expected);
    worst = std::max(worst, r);
  }
  return worst;
}

}  // namespace qfloquet
