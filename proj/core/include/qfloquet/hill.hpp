#pragma once

#include <string>

#include "qfloquet/integrator.hpp"
#include "qfloquet/qmatrix.hpp"
#include "qfloquet/stability.hpp"
#include "qfloquet/time_expr.hpp"

namespace qfloquet {

/// u'' + a(t) u = 0 with a(t + T) = a(t) and quaternion-valued a.
struct HillProblem {
  TimeExpr a;
  double period = 0.0;

  static HillProblem parse(const std::string& a_source, double period, ParseOptions options = {});
};

/// Tolerance on the Re tr M(T) = +-2 band and on M(T) = +-I.
inline constexpr double kHillTol = 1e-6;

/// [[0, 1], [-a(t), 0]] with period T.
MatrixSpec companion(const HillProblem& p);

struct KDiagnostics {
  double kappa1 = 0.0;  ///< larger eigenvalue of K = M M^dagger
  double kappa2 = 0.0;
  /// max_i |kappa_i^2 - ||M||_F^2 kappa_i + 1|; reported, not asserted.
  double root_residual = 0.0;
};

/// Eigenvalues of the Hermitian K = M M^dagger for a 2x2 M.
KDiagnostics k_matrix_diagnostics(const QMatrix& m);

struct HillReport {
  QMatrix monodromy;
  double re_trace = 0.0;
  double frob_sq = 0.0;
  double qdet = 0.0;
  StandardSpectrum multipliers;
  KDiagnostics k;
  /// max_i |kappa_i - |rho_i|^2|, pairing the larger kappa with the larger
  /// modulus. Zero only when M(T) is normal.
  double kappa_modulus_gap = 0.0;
  /// |Re rho_1 + Re rho_2 - Re tr M(T)| and ||rho_1||rho_2| - 1|.
  double trace_sum_residual = 0.0;
  double product_residual = 0.0;
  StabilityVerdict verdict_trace;
  StabilityVerdict verdict_frobenius;
  /// Authoritative channel.
  StabilityVerdict verdict_multipliers;
};

/// Verdict from Re tr M(T) alone: unstable outside [-2, 2], undetermined
/// inside, and at +-2 stable iff M(T) = +-I.
StabilityVerdict trace_verdict(const QMatrix& mono, double tol = kHillTol);
/// Unstable when ||M(T)||_F^2 > 2 + tol, undetermined otherwise.
StabilityVerdict frobenius_verdict(const QMatrix& mono, double tol = kHillTol);

/// Assembles every diagnostic from a 2x2 monodromy matrix.
HillReport hill_report(const QMatrix& mono);

HillReport analyze(const HillProblem& p, const IntegratorConfig& cfg = {});

/// Real-coefficient table: unstable for |tr| > 2, stable (not
/// asymptotically) for |tr| < 2, and at +-2 stable iff M(T) = +-I.
/// Throws Error(NotRealCoefficient) if |Ve a(t)| > 1e-12 on the 64-point grid.
StabilityVerdict classify_real(const HillProblem& p, const IntegratorConfig& cfg = {});

}  // namespace qfloquet
