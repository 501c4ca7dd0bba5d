#include "qfloquet/qmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qfloquet/error.hpp"

namespace qfloquet {

QMatrix::QMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Quaternion>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw Error(ErrorCode::DimensionMismatch, "ragged matrix initializer");
    }
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

QMatrix QMatrix::zero(std::size_t rows, std::size_t cols) { return QMatrix(rows, cols); }

QMatrix QMatrix::diagonal(std::span<const Quaternion> diag) {
  QMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

namespace {

void require_same_shape(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix shapes differ");
  }
}

void require_square(const QMatrix& a) {
  if (!a.is_square()) {
    throw Error(ErrorCode::NonSquare, "matrix is " + std::to_string(a.rows()) + "x" +
                                          std::to_string(a.cols()));
  }
}

}  // namespace

QMatrix& QMatrix::operator+=(const QMatrix& o) {
  require_same_shape(*this, o);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
  require_same_shape(*this, o);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

QMatrix& QMatrix::operator*=(double s) {
  for (auto& q : entries_) q *= s;
  return *this;
}

ComplexMatrix QMatrix::part1() const {
  ComplexMatrix m(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      const auto& q = (*this)(r, c);
      m(r, c) = {q.w, q.x};
    }
  return m;
}

ComplexMatrix QMatrix::part2() const {
  ComplexMatrix m(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      const auto& q = (*this)(r, c);
      m(r, c) = {q.y, q.z};
    }
  return m;
}

QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
QMatrix operator-(QMatrix a) { return a *= -1.0; }
QMatrix operator*(QMatrix a, double s) { return a *= s; }
QMatrix operator*(double s, QMatrix a) { return a *= s; }

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "inner dimensions differ");
  }
  QMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Quaternion& lhs = a(r, k);
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += lhs * b(k, c);
    }
  return out;
}

QMatrix operator*(const Quaternion& q, const QMatrix& a) {
  QMatrix out = a;
  for (auto& e : out.entries()) e = q * e;
  return out;
}

QMatrix operator*(const QMatrix& a, const Quaternion& q) {
  QMatrix out = a;
  for (auto& e : out.entries()) e = e * q;
  return out;
}

QVector operator*(const QMatrix& a, std::span<const Quaternion> v) {
  if (a.cols() != v.size()) {
    throw Error(ErrorCode::DimensionMismatch, "vector length differs from column count");
  }
  QVector out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out[r] += a(r, c) * v[c];
  return out;
}

QVector right_scale(std::span<const Quaternion> v, const Quaternion& lambda) {
  QVector out(v.begin(), v.end());
  for (auto& e : out) e = e * lambda;
  return out;
}

double sum_norm(std::span<const Quaternion> v) {
  double s = 0.0;
  for (const auto& q : v) s += norm(q);
  return s;
}

QMatrix dagger(const QMatrix& a) {
  QMatrix out(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = conj(a(r, c));
  return out;
}

Quaternion trace(const QMatrix& a) {
  require_square(a);
  Quaternion t;
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

double sum_norm(const QMatrix& a) { return sum_norm(a.entries()); }

double frobenius_sq(const QMatrix& a) {
  double s = 0.0;
  for (const auto& q : a.entries()) s += norm_sq(q);
  return s;
}

double max_abs_diff(const QMatrix& a, const QMatrix& b) {
  require_same_shape(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    m = std::max(m, norm(a.entries()[i] - b.entries()[i]));
  return m;
}

std::string to_string(const QMatrix& a, NumberFormat format, int precision) {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < a.rows(); ++r) {
    os << (r == 0 ? "[" : ", [");
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (c != 0) os << ", ";
      os << to_string(a(r, c), format, precision);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------

AdjointMatrix::AdjointMatrix(const QMatrix& a) {
  require_square(a);
  n_ = a.rows();
  const ComplexMatrix a1 = a.part1();
  const ComplexMatrix a2 = a.part2();
  const auto n = static_cast<Eigen::Index>(n_);
  m_.resize(2 * n, 2 * n);
  m_.topLeftCorner(n, n) = a1;
  m_.topRightCorner(n, n) = a2;
  m_.bottomLeftCorner(n, n) = -a2.conjugate();
  m_.bottomRightCorner(n, n) = a1.conjugate();
}

AdjointMatrix AdjointMatrix::from_complex(ComplexMatrix m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0) {
    throw Error(ErrorCode::DimensionMismatch, "adjoint matrices are 2n x 2n");
  }
  AdjointMatrix out;
  out.n_ = static_cast<std::size_t>(m.rows() / 2);
  out.m_ = std::move(m);
  return out;
}

double AdjointMatrix::omega_residual() const {
  const auto n = static_cast<Eigen::Index>(n_);
  if (n == 0) return 0.0;
  const double d1 =
      (m_.topLeftCorner(n, n) - m_.bottomRightCorner(n, n).conjugate()).cwiseAbs().maxCoeff();
  const double d2 =
      (m_.topRightCorner(n, n) + m_.bottomLeftCorner(n, n).conjugate()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  return 0.5 * std::max(d1, d2) / scale;
}

QMatrix AdjointMatrix::to_qmatrix() const {
  const auto n = static_cast<Eigen::Index>(n_);
  const ComplexMatrix a1 =
      0.5 * (m_.topLeftCorner(n, n) + m_.bottomRightCorner(n, n).conjugate());
  const ComplexMatrix a2 =
      0.5 * (m_.topRightCorner(n, n) - m_.bottomLeftCorner(n, n).conjugate());
  QMatrix out(n_, n_);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      out(r, c) = {a1(r, c).real(), a1(r, c).imag(), a2(r, c).real(), a2(r, c).imag()};
  return out;
}

QMatrix AdjointMatrix::to_qmatrix_checked(double tol) const {
  const double residual = omega_residual();
  if (!(residual <= tol)) {
    throw Error(ErrorCode::OmegaViolation,
                "adjoint block structure violated (residual " + std::to_string(residual) + ")");
  }
  return to_qmatrix();
}

AdjointMatrix adjoint(const QMatrix& a) { return AdjointMatrix(a); }

Eigen::VectorXcd embed(std::span<const Quaternion> v) {
  const auto n = static_cast<Eigen::Index>(v.size());
  Eigen::VectorXcd u(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& q = v[static_cast<std::size_t>(i)];
    u(i) = {q.w, q.x};
    u(n + i) = -std::conj(ComplexPair{q.y, q.z});
  }
  return u;
}

QVector unembed(const Eigen::VectorXcd& u) {
  const Eigen::Index n = u.size() / 2;
  QVector v(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const ComplexPair x = u(i);
    const ComplexPair y = -std::conj(u(n + i));
    v[static_cast<std::size_t>(i)] = {x.real(), x.imag(), y.real(), y.imag()};
  }
  return v;
}

QDet qdet_detail(const QMatrix& a) {
  require_square(a);
  if (a.rows() == 0) return {1.0, 0.0};
  const ComplexPair det = adjoint(a).matrix().partialPivLu().determinant();
  return {det.real(), std::abs(det.imag())};
}

double qdet(const QMatrix& a) { return qdet_detail(a).value; }

QMatrix inverse(const QMatrix& a) {
  require_square(a);
  const AdjointMatrix chi(a);
  Eigen::FullPivLU<ComplexMatrix> lu(chi.matrix());
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::Singular, "matrix is singular");
  }
  return AdjointMatrix::from_complex(lu.inverse()).to_qmatrix_checked();
}

}  // namespace qfloquet
