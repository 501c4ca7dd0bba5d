#pragma once

#include <limits>
#include <span>
#include <vector>

#include "qfloquet/qmatrix.hpp"
#include "qfloquet/time_expr.hpp"

namespace qfloquet {

enum class Method { DP54Adaptive, RK4Fixed };

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
  Method method = Method::DP54Adaptive;
  /// Nominal step for RK4Fixed; the interval is split into equal steps no
  /// longer than this.
  double step = 1e-2;
  /// Record every accepted step, not only t0, t1 and the requested times.
  bool record_steps = true;

  static IntegratorConfig rk4(double step);
  /// Throws Error(InvalidArgument) on nonpositive tolerances or steps.
  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<QMatrix> states;

  double final_time() const { return times.back(); }
  const QMatrix& final_state() const { return states.back(); }
  /// State recorded at exactly `t`; throws Error(InvalidArgument) if absent.
  const QMatrix& at(double t) const;
};

/// Solves M' = A(t) M on [t0, t1] from M(t0) = m0 with Runge-Kutta steps
/// carried out in quaternion arithmetic. Each time in `sample_times` (all in
/// [t0, t1]) is hit exactly by a step.
///
/// Throws Error(StepUnderflow) when the adaptive step falls below
/// 1e-13 (t1 - t0); expression errors propagate.
Trajectory integrate(const MatrixSpec& spec, double t0, double t1, const QMatrix& m0,
                     const IntegratorConfig& cfg = {},
                     std::span<const double> sample_times = {});

/// Values of the integral of Re tr A(s) from t0 to each of `times`
/// (ascending, all >= t0), from the scalar equation s' = Re tr A(t).
std::vector<double> re_trace_integral(const MatrixSpec& spec, double t0,
                                      std::span<const double> times);

/// max_k |qdet M(t_k) - L_k| / max(1, L_k) with
/// L_k = exp(2 * integral Re tr A) * qdet M(t_0).
double liouville_residual(const Trajectory& traj, const MatrixSpec& spec);

}  // namespace qfloquet
