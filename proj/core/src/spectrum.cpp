#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "complex_linalg.hpp"
#include "qfloquet/error.hpp"
#include "qfloquet/qmatrix.hpp"

namespace qfloquet {

std::vector<ComplexPair> StandardSpectrum::flattened() const {
  std::vector<ComplexPair> out;
  for (const auto& e : entries) out.insert(out.end(), static_cast<std::size_t>(e.algebraic), e.value);
  return out;
}

int StandardSpectrum::total_multiplicity() const {
  int total = 0;
  for (const auto& e : entries) total += e.algebraic;
  return total;
}

int StandardSpectrum::find(ComplexPair value, double tol) const {
  int best = -1;
  double best_dist = tol;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const double d = std::abs(entries[i].value - value);
    if (d <= best_dist) {
      best = static_cast<int>(i);
      best_dist = d;
    }
  }
  return best;
}

namespace {

bool by_real_then_imag(ComplexPair a, ComplexPair b) {
  return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
}

struct PairedEigenvalue {
  ComplexPair value;
  bool real = false;
};

// Folds the 2n adjoint eigenvalues into n representatives with Im >= 0.
std::vector<PairedEigenvalue> pair_conjugates(const Eigen::VectorXcd& eigs, double tau_pair) {
  std::vector<ComplexPair> upper, lower, reals;
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    const ComplexPair z = eigs(i);
    if (z.imag() > tau_pair)
      upper.push_back(z);
    else if (z.imag() < -tau_pair)
      lower.push_back(z);
    else
      reals.push_back(z);
  }
  if (upper.size() != lower.size() || reals.size() % 2 != 0) {
    throw Error(ErrorCode::PairingFailure,
                "adjoint eigenvalues do not split into conjugate pairs (" +
                    std::to_string(upper.size()) + " upper, " + std::to_string(lower.size()) +
                    " lower, " + std::to_string(reals.size()) + " real)");
  }

  std::vector<PairedEigenvalue> out;
  std::sort(upper.begin(), upper.end(), by_real_then_imag);
  std::vector<bool> used(lower.size(), false);
  for (const auto& u : upper) {
    std::size_t best = lower.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < lower.size(); ++k) {
      if (used[k]) continue;
      const double d = std::abs(u - std::conj(lower[k]));
      if (d < best_dist) {
        best = k;
        best_dist = d;
      }
    }
    if (best_dist > tau_pair) {
      throw Error(ErrorCode::PairingFailure,
                  "no conjugate partner within tolerance for an adjoint eigenvalue");
    }
    used[best] = true;
    out.push_back({0.5 * (u + std::conj(lower[best])), false});
  }

  std::sort(reals.begin(), reals.end(), by_real_then_imag);
  for (std::size_t k = 0; k < reals.size(); k += 2) {
    if (std::abs(reals[k] - std::conj(reals[k + 1])) > tau_pair) {
      throw Error(ErrorCode::PairingFailure, "real adjoint eigenvalues of odd multiplicity");
    }
    out.push_back({{0.5 * (reals[k].real() + reals[k + 1].real()), 0.0}, true});
  }
  return out;
}

}  // namespace

StandardSpectrum standard_eigenvalues(const QMatrix& a) {
  const AdjointMatrix chi(a);
  const auto n = static_cast<int>(a.rows());
  StandardSpectrum spectrum;
  if (n == 0) return spectrum;

  Eigen::ComplexEigenSolver<ComplexMatrix> solver(chi.matrix(), false);
  const double tau_pair = 1e-7 * std::max(1.0, sum_norm(a));
  auto paired = pair_conjugates(solver.eigenvalues(), tau_pair);
  std::sort(paired.begin(), paired.end(),
            [](const auto& l, const auto& r) { return by_real_then_imag(l.value, r.value); });

  struct Cluster {
    ComplexPair sum;
    int count = 0;
    int real_votes = 0;
    ComplexPair mean() const { return sum / static_cast<double>(count); }
  };
  std::vector<Cluster> clusters;
  for (const auto& p : paired) {
    auto it = std::find_if(clusters.begin(), clusters.end(), [&](const Cluster& c) {
      return std::abs(c.mean() - p.value) <= kEigenClusterTol;
    });
    if (it == clusters.end()) {
      clusters.push_back({p.value, 1, p.real ? 1 : 0});
    } else {
      it->sum += p.value;
      ++it->count;
      if (p.real) ++it->real_votes;
    }
  }

  const ComplexMatrix& m = chi.matrix();
  const double tau_rank = 1e-9 * detail::spectral_norm(m) * 2.0 * n;
  const auto dim = m.rows();
  for (const auto& c : clusters) {
    ComplexPair value = c.mean();
    const bool real = 2 * c.real_votes >= c.count;
    if (real) value.imag(0.0);
    value.imag(std::abs(value.imag()));
    const ComplexMatrix shifted = m - value * ComplexMatrix::Identity(dim, dim);
    int kernel = detail::nullity(shifted, tau_rank);
    if (real) kernel /= 2;
    const int geometric = std::clamp(kernel, 1, c.count);
    spectrum.entries.push_back({value, c.count, geometric});
  }
  return spectrum;
}

QVector right_eigenvector(const QMatrix& a, ComplexPair lambda) {
  const StandardSpectrum spectrum = standard_eigenvalues(a);
  const int idx = spectrum.find(standardize(lambda));
  if (idx < 0) {
    throw Error(ErrorCode::NotAnEigenvalue, "value is not a standard eigenvalue of the matrix");
  }
  const ComplexPair value = spectrum.entries[static_cast<std::size_t>(idx)].value;
  const ComplexMatrix chi = adjoint(a).matrix();
  const auto dim = chi.rows();
  const auto n = dim / 2;
  const ComplexMatrix shifted = chi - value * ComplexMatrix::Identity(dim, dim);
  Eigen::JacobiSVD<ComplexMatrix> svd(shifted, Eigen::ComputeFullV);

  const Quaternion lam(value);
  const double bound = kResidualTol * std::max(1.0, sum_norm(a));
  auto residual = [&](const QVector& eta) {
    const QVector lhs = a * std::span<const Quaternion>(eta);
    const QVector rhs = right_scale(eta, lam);
    double r = 0.0;
    for (std::size_t i = 0; i < eta.size(); ++i) r += norm(lhs[i] - rhs[i]);
    return r;
  };
  auto normalized = [](QVector eta) {
    const double s = sum_norm(eta);
    if (s == 0.0) return eta;
    for (auto& q : eta) q = q / s;
    return eta;
  };
  // The derived convention first; the others only guard against a sign slip.
  auto candidates = [&](const Eigen::VectorXcd& u) {
    std::vector<QVector> out;
    out.push_back(unembed(u));
    QVector plain(static_cast<std::size_t>(n)), conj_free(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
      const ComplexPair x = u(i);
      const ComplexPair y = u(n + i);
      plain[static_cast<std::size_t>(i)] = {x.real(), x.imag(), y.real(), y.imag()};
      const ComplexPair yc = std::conj(y);
      conj_free[static_cast<std::size_t>(i)] = {x.real(), x.imag(), yc.real(), yc.imag()};
    }
    out.push_back(std::move(plain));
    out.push_back(std::move(conj_free));
    return out;
  };

  QVector best;
  double best_res = std::numeric_limits<double>::infinity();
  const auto& v = svd.matrixV();
  // Columns of V for the smallest singular values span the numerical kernel.
  for (Eigen::Index col = dim - 1; col >= std::max<Eigen::Index>(0, dim - 4); --col) {
    for (auto& eta : candidates(v.col(col))) {
      eta = normalized(std::move(eta));
      if (sum_norm(eta) == 0.0) continue;
      const double r = residual(eta);
      if (r < best_res) {
        best_res = r;
        best = std::move(eta);
      }
    }
    if (best_res <= bound) break;
  }
  if (!(best_res <= bound)) {
    throw Error(ErrorCode::RecoveryFailure,
                "eigenvector residual " + std::to_string(best_res) + " exceeds tolerance");
  }
  return best;
}

bool spectral_map_check(const QMatrix& a) {
  try {
    std::vector<ComplexPair> expected;
    for (const auto& lam : standard_eigenvalues(a).flattened()) {
      expected.push_back(standardize(qexp(Quaternion(lam))));
    }
    std::vector<ComplexPair> actual = standard_eigenvalues(expm(a)).flattened();
    if (expected.size() != actual.size()) return false;
    std::vector<bool> used(actual.size(), false);
    for (const auto& e : expected) {
      std::size_t best = actual.size();
      double best_dist = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < actual.size(); ++k) {
        if (used[k]) continue;
        const double d = std::abs(e - actual[k]);
        if (d < best_dist) {
          best = k;
          best_dist = d;
        }
      }
      if (best_dist > kEigenClusterTol * std::max(1.0, std::abs(e))) return false;
      used[best] = true;
    }
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace qfloquet
