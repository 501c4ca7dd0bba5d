#pragma once

#include <vector>

#include "qfloquet/integrator.hpp"
#include "qfloquet/qmatrix.hpp"
#include "qfloquet/stability.hpp"
#include "qfloquet/time_expr.hpp"

namespace qfloquet {

/// Grid points used for the periodicity test of A(t).
inline constexpr int kPeriodicityGrid = 64;
inline constexpr double kPeriodicityTol = 1e-8;

/// max_k ||A(t_k) - A(t_k + T)|| over t_k = k T / 64, relative to
/// max(1, max_k ||A(t_k)||). Requires spec.period.
double periodicity_residual(const MatrixSpec& spec);

/// Throws Error(NotPeriodic) when the spec has no period or fails the grid
/// test.
void require_periodic(const MatrixSpec& spec);

/// Principal fundamental matrix at t = T.
QMatrix monodromy(const MatrixSpec& spec, const IntegratorConfig& cfg = {});

/// Standard eigenvalues of the monodromy matrix. Throws Error(Singular).
StandardSpectrum characteristic_multipliers(const QMatrix& mono);

/// (ln|rho| + i arg(rho)) / T for every multiplier, repeated by algebraic
/// multiplicity; arg lies in [0, pi]. Throws Error(ZeroMultiplier).
std::vector<ComplexPair> characteristic_exponents(const StandardSpectrum& multipliers,
                                                  double period);

/// Samples per period of the stored P(t) and M(t).
inline constexpr int kNormalFormSamples = 64;

struct FloquetData {
  double period = 0.0;
  QMatrix monodromy;
  QMatrix b;  ///< expm(T b) = monodromy
  StandardSpectrum multipliers;
  std::vector<ComplexPair> exponents;
  StandardSpectrum b_spectrum;
  double log_residual = 0.0;
  bool branch_adjusted = false;

  /// t_k = k T / 64 for k = 0..128, and M(t_k) on that grid.
  std::vector<double> times;
  std::vector<QMatrix> fundamental;
  /// P(t_k) = M(t_k) expm(-t_k b) for k = 0..64.
  std::vector<QMatrix> p_samples;
  /// max_k ||P(t_k) - P(t_k + T)||, and the bound it was held to.
  double periodicity_residual = 0.0;
  double periodicity_bound = 0.0;
};

/// Integrates over [0, 2T] and factors M(t) = P(t) expm(t B). Throws
/// Error(PeriodicityViolation) when P fails the 2T comparison.
FloquetData normal_form(const MatrixSpec& spec, const IntegratorConfig& cfg = {});

StabilityVerdict classify_periodic(const FloquetData& fd, double tol = kStabilityTol);

enum class PeriodicKind { TPeriodic, TwoTPeriodic };

struct PeriodicSolution {
  PeriodicKind kind = PeriodicKind::TPeriodic;
  ComplexPair multiplier;
  QVector initial;  ///< eta; the solution is x(t) = M(t) eta
  /// max_k ||x(t_k + T) - x(t_k) rho|| / ||x(0)|| over the stored grid.
  double residual = 0.0;
};

/// One witness per multiplier within kEigenClusterTol of 1 or -1.
std::vector<PeriodicSolution> periodic_solutions(const FloquetData& fd);

struct ProductCheck {
  /// |prod |rho_j| - exp(I)| / exp(I), I the integral of Re tr A over a period.
  double product_residual = 0.0;
  /// |Re sum mu_j - I / T|.
  double exponent_sum_residual = 0.0;
};

ProductCheck multiplier_product_check(const FloquetData& fd, const MatrixSpec& spec);

/// Norm samples used to corroborate a verdict: ||expm(t A)|| for t = 0..40
/// or ||monodromy^k|| for k = 0..40.
struct GrowthProfile {
  std::vector<double> norms;
  VerdictKind suggests = VerdictKind::Stable;
};

GrowthProfile growth_profile_constant(const QMatrix& a, int horizon = 40);
GrowthProfile growth_profile_periodic(const QMatrix& mono, int periods = 40);

}  // namespace qfloquet
