#include "qfloquet/floquet.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "complex_linalg.hpp"
#include "qfloquet/error.hpp"

namespace qfloquet {

double periodicity_residual(const MatrixSpec& spec) {
  if (!spec.period) throw Error(ErrorCode::NotPeriodic, "system has no period");
  const double period = *spec.period;
  double worst = 0.0;
  double scale = 1.0;
  for (int k = 0; k < kPeriodicityGrid; ++k) {
    const double t = period * k / kPeriodicityGrid;
    const QMatrix a = spec.eval(t);
    worst = std::max(worst, sum_norm(a - spec.eval(t + period)));
    scale = std::max(scale, sum_norm(a));
  }
  return worst / scale;
}

void require_periodic(const MatrixSpec& spec) {
  const double residual = periodicity_residual(spec);
  if (!(residual <= kPeriodicityTol)) {
    throw Error(ErrorCode::NotPeriodic,
                "A(t + T) differs from A(t) by " + std::to_string(residual) + " (relative)");
  }
}

QMatrix monodromy(const MatrixSpec& spec, const IntegratorConfig& cfg) {
  require_periodic(spec);
  IntegratorConfig quiet = cfg;
  quiet.record_steps = false;
  return integrate(spec, 0.0, *spec.period, QMatrix::identity(spec.n), quiet).final_state();
}

StandardSpectrum characteristic_multipliers(const QMatrix& mono) {
  if (!mono.is_square()) throw Error(ErrorCode::NonSquare, "monodromy must be square");
  if (detail::numerically_singular(adjoint(mono).matrix()))
    throw Error(ErrorCode::Singular, "monodromy matrix is singular");
  return standard_eigenvalues(mono);
}

std::vector<ComplexPair> characteristic_exponents(const StandardSpectrum& multipliers,
                                                  double period) {
  if (!(period > 0.0)) throw Error(ErrorCode::InvalidArgument, "period must be positive");
  std::vector<ComplexPair> out;
  for (const auto& rho : multipliers.flattened()) {
    const double modulus = std::abs(rho);
    if (!(modulus > 0.0)) throw Error(ErrorCode::ZeroMultiplier, "zero multiplier");
    // Standard multipliers have Im >= 0, so arg is already in [0, pi].
    out.emplace_back(std::log(modulus) / period, std::abs(std::arg(rho)) / period);
  }
  return out;
}

FloquetData normal_form(const MatrixSpec& spec, const IntegratorConfig& cfg) {
  require_periodic(spec);
  const double period = *spec.period;
  constexpr int n_samples = kNormalFormSamples;

  FloquetData fd;
  fd.period = period;
  for (int k = 0; k <= 2 * n_samples; ++k) fd.times.push_back(period * k / n_samples);
  IntegratorConfig quiet = cfg;
  quiet.record_steps = false;
  const Trajectory traj =
      integrate(spec, 0.0, fd.times.back(), QMatrix::identity(spec.n), quiet, fd.times);
  for (double t : fd.times) fd.fundamental.push_back(traj.at(t));

  fd.monodromy = fd.fundamental[n_samples];
  fd.multipliers = characteristic_multipliers(fd.monodromy);
  fd.exponents = characteristic_exponents(fd.multipliers, period);

  const LogResult log = logm_detail(fd.monodromy);
  fd.b = (1.0 / period) * log.log;
  fd.log_residual = log.residual;
  fd.branch_adjusted = log.branch_adjusted;
  fd.b_spectrum = standard_eigenvalues(fd.b);

  std::vector<QMatrix> p_all;
  double p_max = 0.0;
  for (std::size_t k = 0; k < fd.times.size(); ++k) {
    p_all.push_back(fd.fundamental[k] * expm(-fd.times[k] * fd.b));
    p_max = std::max(p_max, sum_norm(p_all.back()));
  }
  for (int k = 0; k <= n_samples; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    fd.periodicity_residual =
        std::max(fd.periodicity_residual, sum_norm(p_all[idx] - p_all[idx + n_samples]));
  }
  p_all.resize(n_samples + 1);
  fd.p_samples = std::move(p_all);
  fd.periodicity_bound = 1e-6 * std::max(1.0, p_max);
  if (!(fd.periodicity_residual <= fd.periodicity_bound)) {
    throw Error(ErrorCode::PeriodicityViolation,
                "P(t) is not T-periodic: residual " + std::to_string(fd.periodicity_residual));
  }
  return fd;
}

StabilityVerdict classify_periodic(const FloquetData& fd, double tol) {
  return classify_multipliers(fd.multipliers, tol);
}

std::vector<PeriodicSolution> periodic_solutions(const FloquetData& fd) {
  std::vector<PeriodicSolution> out;
  const std::size_t shift = kNormalFormSamples;
  for (const auto& entry : fd.multipliers.entries) {
    PeriodicSolution sol;
    if (std::abs(entry.value - ComplexPair(1.0, 0.0)) <= kEigenClusterTol)
      sol.kind = PeriodicKind::TPeriodic;
    else if (std::abs(entry.value - ComplexPair(-1.0, 0.0)) <= kEigenClusterTol)
      sol.kind = PeriodicKind::TwoTPeriodic;
    else
      continue;
    sol.multiplier = entry.value;
    sol.initial = right_eigenvector(fd.monodromy, entry.value);
    const Quaternion rho(entry.value);
    const double x0 = sum_norm(sol.initial);
    for (std::size_t k = 0; k + shift < fd.fundamental.size(); ++k) {
      const QVector now = fd.fundamental[k] * std::span<const Quaternion>(sol.initial);
      const QVector later = fd.fundamental[k + shift] * std::span<const Quaternion>(sol.initial);
      const QVector scaled = right_scale(now, rho);
      double r = 0.0;
      for (std::size_t i = 0; i < now.size(); ++i) r += norm(later[i] - scaled[i]);
      sol.residual = std::max(sol.residual, r / x0);
    }
    out.push_back(std::move(sol));
  }
  return out;
}

ProductCheck multiplier_product_check(const FloquetData& fd, const MatrixSpec& spec) {
  const std::array<double, 1> end{fd.period};
  const double integral = re_trace_integral(spec, 0.0, end)[0];
  double log_product = 0.0;
  for (const auto& rho : fd.multipliers.flattened()) log_product += std::log(std::abs(rho));
  ProductCheck check;
  // |prod - e^I| / e^I = |exp(log_product - I) - 1|
  check.product_residual = std::abs(std::expm1(log_product - integral));
  double re_sum = 0.0;
  for (const auto& mu : fd.exponents) re_sum += mu.real();
  check.exponent_sum_residual = std::abs(re_sum - integral / fd.period);
  return check;
}

namespace {

VerdictKind suggest(const std::vector<double>& norms) {
  const double start = norms.front();
  const double peak = *std::max_element(norms.begin(), norms.end());
  if (peak > 10.0 * start) return VerdictKind::Unstable;
  if (norms.back() < 0.1 * start) return VerdictKind::AsymptoticallyStable;
  return VerdictKind::Stable;
}

}  // namespace

GrowthProfile growth_profile_constant(const QMatrix& a, int horizon) {
  GrowthProfile g;
  for (int t = 0; t <= horizon; ++t) g.norms.push_back(sum_norm(expm(static_cast<double>(t) * a)));
  g.suggests = suggest(g.norms);
  return g;
}

GrowthProfile growth_profile_periodic(const QMatrix& mono, int periods) {
  GrowthProfile g;
  QMatrix power = QMatrix::identity(mono.rows());
  for (int k = 0; k <= periods; ++k) {
    g.norms.push_back(sum_norm(power));
    power = power * mono;
  }
  g.suggests = suggest(g.norms);
  return g;
}

}  // namespace qfloquet
