#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qfloquet/quaternion.hpp"

namespace qfloquet {

using ComplexMatrix = Eigen::MatrixXcd;
using QVector = std::vector<Quaternion>;

/// Dense row-major matrix of quaternions.
///
/// Every A splits uniquely as A = A1 + A2 j with complex A1 (from w, x) and
/// A2 (from y, z); the linear algebra below runs on the complex adjoint
/// [[A1, A2], [-conj(A2), conj(A1)]].
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);
  QMatrix(std::initializer_list<std::initializer_list<Quaternion>> rows);

  static QMatrix identity(std::size_t n);
  static QMatrix zero(std::size_t rows, std::size_t cols);
  static QMatrix diagonal(std::span<const Quaternion> diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return entries_.empty(); }

  Quaternion& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Quaternion& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  std::span<const Quaternion> entries() const { return entries_; }
  std::span<Quaternion> entries() { return entries_; }

  QMatrix& operator+=(const QMatrix& o);
  QMatrix& operator-=(const QMatrix& o);
  QMatrix& operator*=(double s);

  bool operator==(const QMatrix&) const = default;

  /// Complex parts of the A = A1 + A2 j split.
  ComplexMatrix part1() const;
  ComplexMatrix part2() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Quaternion> entries_;
};

QMatrix operator+(QMatrix a, const QMatrix& b);
QMatrix operator-(QMatrix a, const QMatrix& b);
QMatrix operator-(QMatrix a);
QMatrix operator*(QMatrix a, double s);
QMatrix operator*(double s, QMatrix a);
QMatrix operator*(const QMatrix& a, const QMatrix& b);
/// Scalar multiplication from the left (q A) and from the right (A q).
QMatrix operator*(const Quaternion& q, const QMatrix& a);
QMatrix operator*(const QMatrix& a, const Quaternion& q);

QVector operator*(const QMatrix& a, std::span<const Quaternion> v);
/// Right scalar multiplication eta * lambda.
QVector right_scale(std::span<const Quaternion> v, const Quaternion& lambda);
double sum_norm(std::span<const Quaternion> v);

/// Conjugate transpose A^dagger.
QMatrix dagger(const QMatrix& a);
Quaternion trace(const QMatrix& a);

/// Sum of entry moduli. Submultiplicative.
double sum_norm(const QMatrix& a);
/// Sum of squared entry moduli.
double frobenius_sq(const QMatrix& a);
double max_abs_diff(const QMatrix& a, const QMatrix& b);

std::string to_string(const QMatrix& a, NumberFormat format = NumberFormat::Shortest,
                      int precision = 6);

/// Relative tolerance on the block structure after complex operations.
inline constexpr double kOmegaTol = 1e-10;

/// 2n x 2n complex adjoint of an n x n quaternion matrix.
class AdjointMatrix {
 public:
  explicit AdjointMatrix(const QMatrix& a);

  /// Wraps a complex matrix that is expected to carry the block structure.
  /// Nothing is checked here; see omega_residual().
  static AdjointMatrix from_complex(ComplexMatrix m);

  std::size_t order() const { return n_; }
  const ComplexMatrix& matrix() const { return m_; }

  /// max |block mismatch| / max(1, max |entry|).
  double omega_residual() const;

  /// Averages the redundant blocks and maps back. Exact for matrices built
  /// by the constructor.
  QMatrix to_qmatrix() const;

  /// Like to_qmatrix() but throws Error(OmegaViolation) when the residual
  /// exceeds `tol`.
  QMatrix to_qmatrix_checked(double tol = kOmegaTol) const;

 private:
  AdjointMatrix() = default;
  std::size_t n_ = 0;
  ComplexMatrix m_;
};

AdjointMatrix adjoint(const QMatrix& a);

/// Embedding of column vectors that matches the adjoint: eta = x + y j maps
/// to (x, -conj(y)), so adjoint(A) * embed(eta) = embed(A eta).
Eigen::VectorXcd embed(std::span<const Quaternion> v);
QVector unembed(const Eigen::VectorXcd& u);

struct QDet {
  double value = 0.0;
  double imag_residue = 0.0;  ///< discarded imaginary part of det(adjoint)
};

/// q-determinant det(adjoint(A)); real and nonnegative.
QDet qdet_detail(const QMatrix& a);
double qdet(const QMatrix& a);

QMatrix inverse(const QMatrix& a);

// ---------------------------------------------------------------------------
// Spectra

inline constexpr double kEigenClusterTol = 1e-6;
inline constexpr double kResidualTol = 1e-9;

struct StandardEigenvalue {
  ComplexPair value;  ///< Im >= 0
  int algebraic = 1;
  int geometric = 1;
};

/// Distinct standard eigenvalues with multiplicities; total algebraic
/// multiplicity equals the matrix order.
struct StandardSpectrum {
  std::vector<StandardEigenvalue> entries;

  /// Each eigenvalue repeated by algebraic multiplicity.
  std::vector<ComplexPair> flattened() const;
  int total_multiplicity() const;
  /// Index of the entry within `tol` of `value`, or -1.
  int find(ComplexPair value, double tol = kEigenClusterTol) const;
};

/// Standard eigenvalues from the 2n eigenvalues of the adjoint, which come
/// in conjugate pairs. Throws NonSquare or PairingFailure.
StandardSpectrum standard_eigenvalues(const QMatrix& a);

/// Nonzero eta with A eta = eta lambda, verified against the residual bound
/// kResidualTol * sum_norm(A).
QVector right_eigenvector(const QMatrix& a, ComplexPair lambda);

/// Multiset comparison of standardize(exp(lambda)) over the spectrum of A
/// with the spectrum of expm(A).
bool spectral_map_check(const QMatrix& a);

// ---------------------------------------------------------------------------
// Matrix functions

QMatrix expm(const QMatrix& a);

inline constexpr double kLogTol = 1e-8;

struct LogResult {
  QMatrix log;
  double residual = 0.0;         ///< sum_norm(expm(log) - C) / sum_norm(C)
  bool branch_adjusted = false;  ///< C had eigenvalues on the negative axis
};

/// A quaternion logarithm B with expm(B) = C. Off the negative real axis this
/// is the principal logarithm of the adjoint; otherwise the branch is chosen
/// per conjugate class. Throws Singular or LogFailure.
LogResult logm_detail(const QMatrix& c);
QMatrix logm(const QMatrix& c);

}  // namespace qfloquet
