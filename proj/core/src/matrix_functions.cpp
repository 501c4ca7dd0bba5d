#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "complex_linalg.hpp"
#include "qfloquet/error.hpp"
#include "qfloquet/qmatrix.hpp"

namespace qfloquet {

namespace {

void require_square(const QMatrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::NonSquare, "matrix function of a non-square matrix");
}

double log_residual(const QMatrix& b, const QMatrix& c) {
  return sum_norm(expm(b) - c) / std::max(sum_norm(c), std::numeric_limits<double>::min());
}

constexpr std::array<Quaternion, 4> kUnits{Quaternion(1.0), Quaternion::unit_i(),
                                           Quaternion::unit_j(), Quaternion::unit_k()};

// Commutator map X -> C X - X C as a real 4n^2 x 4n^2 matrix, with its SVD.
// Right singular vectors with small singular values span the (approximate)
// centralizer of C.
class CommutatorSvd {
 public:
  explicit CommutatorSvd(const QMatrix& c) : n_(c.rows()) {
    const auto dim = static_cast<Eigen::Index>(4 * n_ * n_);
    Eigen::MatrixXd map(dim, dim);
    for (std::size_t e = 0; e < n_ * n_; ++e) {
      for (std::size_t u = 0; u < 4; ++u) {
        QMatrix basis(n_, n_);
        basis.entries()[e] = kUnits[u];
        const QMatrix comm = c * basis - basis * c;
        const auto col = static_cast<Eigen::Index>(4 * e + u);
        for (std::size_t k = 0; k < n_ * n_; ++k) {
          const Quaternion& q = comm.entries()[k];
          const auto row = static_cast<Eigen::Index>(4 * k);
          map(row, col) = q.w;
          map(row + 1, col) = q.x;
          map(row + 2, col) = q.y;
          map(row + 3, col) = q.z;
        }
      }
    }
    svd_.compute(map, Eigen::ComputeFullV);
  }

  std::vector<QMatrix> basis(double rel_tol) const {
    const auto& sv = svd_.singularValues();
    const auto& v = svd_.matrixV();
    const double cutoff = rel_tol * std::max(1.0, sv(0));
    std::vector<QMatrix> out;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
      if (sv(k) > cutoff) continue;
      QMatrix z(n_, n_);
      for (std::size_t e = 0; e < n_ * n_; ++e) {
        const auto row = static_cast<Eigen::Index>(4 * e);
        z.entries()[e] = {v(row, k), v(row + 1, k), v(row + 2, k), v(row + 3, k)};
      }
      out.push_back(std::move(z));
    }
    return out;
  }

 private:
  std::size_t n_;
  Eigen::BDCSVD<Eigen::MatrixXd> svd_;
};

// log on the upper half plane: arguments in [0, pi] for Im >= 0, cut along
// the negative imaginary axis.
ComplexMatrix log_upper(const ComplexMatrix& k) {
  const Eigen::Index n = k.rows();
  const ComplexPair i(0.0, 1.0);
  ComplexMatrix l = detail::logm_principal(-i * k);
  l += (i * (std::numbers::pi / 2.0)) * ComplexMatrix::Identity(n, n);
  return l;
}

// Builds a logarithm from a complex structure: an n-dimensional invariant
// subspace V of adjoint(C) whose image under u -> J conj(u) complements it.
// V is the upper-half-plane spectral subspace of adjoint(C + eps Z) for Z in
// the centralizer of C, which is also invariant under adjoint(C).
std::optional<QMatrix> structured_log(const QMatrix& c, const QMatrix& z, double scale) {
  const auto n = static_cast<Eigen::Index>(c.rows());
  const ComplexMatrix chi = adjoint(c).matrix();
  const ComplexMatrix chi_z = adjoint(z).matrix();
  const double z_norm = detail::spectral_norm(chi_z);
  if (z_norm == 0.0) return std::nullopt;
  const double eps = 0.25 * scale / z_norm;

  detail::SchurForm form = detail::schur(chi + eps * chi_z);
  const double split_tol = 1e-8 * scale;
  for (Eigen::Index k = 0; k < 2 * n; ++k) {
    if (std::abs(form.triangular(k, k).imag()) <= split_tol) return std::nullopt;
  }
  const int upper =
      detail::reorder_schur(form, [](ComplexPair v) { return v.imag() > 0.0; });
  if (upper != n) return std::nullopt;

  const ComplexMatrix w = form.unitary.leftCols(n);
  const ComplexMatrix k = w.adjoint() * chi * w;
  const ComplexMatrix l = log_upper(k);

  ComplexMatrix s(2 * n, 2 * n);
  s.leftCols(n) = w;
  s.topRightCorner(n, n) = w.bottomRows(n).conjugate();
  s.bottomRightCorner(n, n) = -w.topRows(n).conjugate();
  ComplexMatrix d = ComplexMatrix::Zero(2 * n, 2 * n);
  d.topLeftCorner(n, n) = l;
  d.bottomRightCorner(n, n) = l.conjugate();
  const ComplexMatrix chi_b = s * d * s.partialPivLu().inverse();
  return AdjointMatrix::from_complex(chi_b).to_qmatrix();
}

}  // namespace

QMatrix expm(const QMatrix& a) {
  require_square(a);
  const AdjointMatrix chi(a);
  return AdjointMatrix::from_complex(detail::expm_pade13(chi.matrix())).to_qmatrix_checked();
}

LogResult logm_detail(const QMatrix& c) {
  require_square(c);
  const std::size_t n = c.rows();
  if (n == 0) return {};
  const ComplexMatrix chi = adjoint(c).matrix();
  if (detail::numerically_singular(chi)) {
    throw Error(ErrorCode::Singular, "logarithm of a singular matrix");
  }

  Eigen::ComplexEigenSolver<ComplexMatrix> solver(chi, false);
  const auto& eigs = solver.eigenvalues();
  const double rho = eigs.cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, rho);
  bool near_negative_axis = false;
  for (Eigen::Index k = 0; k < eigs.size(); ++k) {
    if (eigs(k).real() < 0.0 && std::abs(eigs(k).imag()) <= 1e-4 * scale) {
      near_negative_axis = true;
    }
  }

  if (!near_negative_axis) {
    const QMatrix b =
        AdjointMatrix::from_complex(detail::logm_principal(chi)).to_qmatrix();
    const double residual = log_residual(b, c);
    if (residual <= kLogTol) return {b, residual, false};
  }

  std::mt19937_64 rng(0x5eedf00dULL);
  std::normal_distribution<double> gauss;
  LogResult best{QMatrix(), std::numeric_limits<double>::infinity(), near_negative_axis};
  const CommutatorSvd commutator(c);
  for (double rel_tol : {1e-13, 1e-11, 1e-9, 1e-7}) {
    const std::vector<QMatrix> basis = commutator.basis(rel_tol);
    for (int attempt = 0; attempt < 3; ++attempt) {
      QMatrix z(n, n);
      for (const auto& v : basis) z += gauss(rng) * v;
      const auto b = structured_log(c, z, scale);
      if (!b) continue;
      const double residual = log_residual(*b, c);
      if (residual < best.residual) {
        best.log = *b;
        best.residual = residual;
      }
      if (residual <= kLogTol) return best;
    }
  }
  throw Error(ErrorCode::LogFailure,
              "no logarithm within tolerance (best residual " + std::to_string(best.residual) +
                  ")");
}

QMatrix logm(const QMatrix& c) { return logm_detail(c).log; }

}  // namespace qfloquet
