#pragma once

// Test-only reference computations. None of these call into the library's
// adjoint, eigen or matrix-function code paths.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qfloquet/qmatrix.hpp"
#include "qfloquet/quaternion.hpp"

namespace oracle {

using qfloquet::ComplexPair;
using qfloquet::QMatrix;
using qfloquet::Quaternion;

inline constexpr double kPi = std::numbers::pi;

/// Real 4x4 matrix of left multiplication by p in the basis (1, i, j, k).
inline std::array<std::array<double, 4>, 4> left_mult(const Quaternion& p) {
  return {{{p.w, -p.x, -p.y, -p.z},
           {p.x, p.w, -p.z, p.y},
           {p.y, p.z, p.w, -p.x},
           {p.z, -p.y, p.x, p.w}}};
}

inline Quaternion product(const Quaternion& p, const Quaternion& q) {
  const auto l = left_mult(p);
  const std::array<double, 4> v{q.w, q.x, q.y, q.z};
  std::array<double, 4> r{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) r[a] += l[a][b] * v[b];
  return {r[0], r[1], r[2], r[3]};
}

inline double dist(const Quaternion& p, const Quaternion& q) {
  return std::sqrt(qfloquet::norm_sq(p - q));
}

/// 30-term power series of exp, products through left_mult.
inline Quaternion series_exp(const Quaternion& q) {
  Quaternion sum{1.0};
  Quaternion term{1.0};
  for (int k = 1; k <= 30; ++k) {
    term = product(term, q) * (1.0 / k);
    sum += term;
  }
  return sum;
}

/// Entrywise quaternion product through left_mult.
inline QMatrix matmul(const QMatrix& a, const QMatrix& b) {
  QMatrix c(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t col = 0; col < b.cols(); ++col)
      for (std::size_t k = 0; k < a.cols(); ++k) c(r, col) += product(a(r, k), b(k, col));
  return c;
}

inline double max_entry_dist(const QMatrix& a, const QMatrix& b) {
  double d = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) d = std::max(d, dist(a(r, c), b(r, c)));
  return d;
}

inline double max_entry_norm(const QMatrix& a) {
  double m = 0.0;
  for (const auto& q : a.entries()) m = std::max(m, std::sqrt(qfloquet::norm_sq(q)));
  return m;
}

/// Scaled Taylor series with repeated squaring, all in quaternion arithmetic.
inline QMatrix taylor_expm(const QMatrix& a) {
  int squarings = 0;
  double scale = 1.0;
  while (max_entry_norm(a) * static_cast<double>(a.rows()) * scale > 0.25) {
    scale *= 0.5;
    ++squarings;
  }
  QMatrix x = a;
  x *= scale;
  QMatrix sum = QMatrix::identity(a.rows());
  QMatrix term = QMatrix::identity(a.rows());
  for (int k = 1; k <= 30; ++k) {
    term = matmul(term, x);
    term *= 1.0 / k;
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = matmul(sum, sum);
  return sum;
}

/// Complex adjoint assembled directly from components.
inline Eigen::MatrixXcd chi(const QMatrix& a) {
  const auto n = static_cast<Eigen::Index>(a.rows());
  Eigen::MatrixXcd m(2 * n, 2 * n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const Quaternion& q = a(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
      const ComplexPair a1{q.w, q.x};
      const ComplexPair a2{q.y, q.z};
      m(r, c) = a1;
      m(r, c + n) = a2;
      m(r + n, c) = -std::conj(a2);
      m(r + n, c + n) = std::conj(a1);
    }
  }
  return m;
}

/// Compares two multisets of standard eigenvalues by greedy matching.
inline double multiset_distance(std::vector<ComplexPair> a, std::vector<ComplexPair> b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (const auto& x : a) {
    std::size_t best = 0;
    double best_d = INFINITY;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double d = std::abs(x - b[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    worst = std::max(worst, best_d);
    b.erase(b.begin() + static_cast<long>(best));
  }
  return worst;
}

class Random {
 public:
  explicit Random(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

  Quaternion quaternion(double scale = 1.0) {
    return {scale * uniform(), scale * uniform(), scale * uniform(), scale * uniform()};
  }

  QMatrix matrix(std::size_t n, double scale = 1.0) {
    QMatrix m(n, n);
    for (auto& q : m.entries()) q = quaternion(scale);
    return m;
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

/// Expression literal for a quaternion, e.g. "(0.25 + (-0.5)*i + 0*j + 1*k)".
inline std::string literal(const Quaternion& q) {
  std::ostringstream os;
  os.precision(17);
  auto part = [&](double v) {
    if (v < 0)
      os << "(" << v << ")";
    else
      os << v;
  };
  os << "(";
  part(q.w);
  os << " + ";
  part(q.x);
  os << "*i + ";
  part(q.y);
  os << "*j + ";
  part(q.z);
  os << "*k)";
  return os.str();
}

/// Random smooth pi-periodic n x n system: c0 + c1 cos(2t) + c2 sin(2t)
/// with quaternion coefficients of modulus up to `scale` per component.
inline std::vector<std::string> random_periodic_entries(Random& rng, std::size_t n,
                                                        double scale = 0.5) {
  std::vector<std::string> entries;
  for (std::size_t e = 0; e < n * n; ++e) {
    entries.push_back(literal(rng.quaternion(scale)) + " + " + literal(rng.quaternion(scale)) +
                      "*cos(2*t) + " + literal(rng.quaternion(scale)) + "*sin(2*t)");
  }
  return entries;
}

}  // namespace oracle
