#include "qfloquet/hill.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "qfloquet/error.hpp"
#include "qfloquet/floquet.hpp"

namespace qfloquet {

HillProblem HillProblem::parse(const std::string& a_source, double period, ParseOptions options) {
  if (!(period > 0.0 && std::isfinite(period))) {
    throw Error(ErrorCode::InvalidArgument, "period must be positive and finite");
  }
  return {qfloquet::parse(a_source, options), period};
}

MatrixSpec companion(const HillProblem& p) {
  ParseOptions options;
  options.allow_parameter = true;
  return MatrixSpec::parse(2, {"0", "1", "-(" + p.a.render() + ")", "0"}, p.period, options);
}

KDiagnostics k_matrix_diagnostics(const QMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) {
    throw Error(ErrorCode::DimensionMismatch, "K diagnostics need a 2x2 matrix");
  }
  const QMatrix k = m * dagger(m);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(adjoint(k).matrix(),
                                                      Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();  // ascending; each value twice
  KDiagnostics d;
  d.kappa1 = 0.5 * (ev(2) + ev(3));
  d.kappa2 = 0.5 * (ev(0) + ev(1));
  const double f = frobenius_sq(m);
  for (double kappa : {d.kappa1, d.kappa2}) {
    d.root_residual = std::max(d.root_residual, std::abs(kappa * kappa - f * kappa + 1.0));
  }
  return d;
}

namespace {

// Shared by the quaternion and real tables, which differ only in what
// |tr| < 2 means.
StabilityVerdict trace_table(const QMatrix& mono, double tol, VerdictKind inside,
                             const char* quantity) {
  const double tr = trace(mono).w;
  StabilityVerdict v;
  v.evidence.push_back({tr, quantity, tol, std::abs(tr) - 2.0});
  if (std::abs(tr) > 2.0 + tol) {
    v.kind = VerdictKind::Unstable;
  } else if (std::abs(tr) < 2.0 - tol) {
    v.kind = inside;
  } else {
    const double sign = tr > 0 ? 1.0 : -1.0;
    const double dist = sum_norm(mono - sign * QMatrix::identity(2));
    v.evidence.push_back({sign, "||M(T)-sI||", tol, dist - tol});
    v.kind = dist <= tol ? VerdictKind::Stable : VerdictKind::Unstable;
  }
  return v;
}

}  // namespace

StabilityVerdict trace_verdict(const QMatrix& mono, double tol) {
  return trace_table(mono, tol, VerdictKind::Undetermined, "|Re tr M(T)|-2");
}

StabilityVerdict frobenius_verdict(const QMatrix& mono, double tol) {
  const double f = frobenius_sq(mono);
  StabilityVerdict v;
  v.evidence.push_back({f, "||M(T)||_F^2-2", tol, f - 2.0});
  v.kind = f > 2.0 + tol ? VerdictKind::Unstable : VerdictKind::Undetermined;
  return v;
}

HillReport hill_report(const QMatrix& mono) {
  HillReport r;
  r.monodromy = mono;
  r.re_trace = trace(mono).w;
  r.frob_sq = frobenius_sq(mono);
  r.qdet = qdet(mono);
  r.multipliers = characteristic_multipliers(mono);
  r.k = k_matrix_diagnostics(mono);

  std::vector<ComplexPair> rho = r.multipliers.flattened();
  std::sort(rho.begin(), rho.end(),
            [](ComplexPair a, ComplexPair b) { return std::abs(a) > std::abs(b); });
  r.kappa_modulus_gap = std::max(std::abs(r.k.kappa1 - std::norm(rho[0])),
                                 std::abs(r.k.kappa2 - std::norm(rho[1])));
  r.trace_sum_residual = std::abs(rho[0].real() + rho[1].real() - r.re_trace);
  r.product_residual = std::abs(std::abs(rho[0]) * std::abs(rho[1]) - 1.0);

  r.verdict_trace = trace_verdict(mono);
  r.verdict_frobenius = frobenius_verdict(mono);
  r.verdict_multipliers = classify_multipliers(r.multipliers);
  return r;
}

HillReport analyze(const HillProblem& p, const IntegratorConfig& cfg) {
  return hill_report(monodromy(companion(p), cfg));
}

StabilityVerdict classify_real(const HillProblem& p, const IntegratorConfig& cfg) {
  for (int k = 0; k < kPeriodicityGrid; ++k) {
    const Quaternion a = p.a.eval(p.period * k / kPeriodicityGrid);
    if (vec_norm(a) > 1e-12) {
      throw Error(ErrorCode::NotRealCoefficient,
                  "a(t) has a vector part at t = " +
                      std::to_string(p.period * k / kPeriodicityGrid));
    }
  }
  return trace_table(monodromy(companion(p), cfg), kHillTol, VerdictKind::Stable,
                     "|tr M(T)|-2");
}

}  // namespace qfloquet
