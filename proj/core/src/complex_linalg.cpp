#include "complex_linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace qfloquet::detail {

using Complex = std::complex<double>;

ComplexMatrix expm_pade13(const ComplexMatrix& a) {
  static constexpr std::array<double, 14> b{
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};
  static constexpr double theta13 = 5.371920351148152;

  const Eigen::Index n = a.rows();
  if (n == 0) return a;
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  }
  const ComplexMatrix x = a / std::ldexp(1.0, squarings);
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix x2 = x * x;
  const ComplexMatrix x4 = x2 * x2;
  const ComplexMatrix x6 = x4 * x2;

  const ComplexMatrix u_inner = x6 * (b[13] * x6 + b[11] * x4 + b[9] * x2) + b[7] * x6 +
                                b[5] * x4 + b[3] * x2 + b[1] * id;
  const ComplexMatrix u = x * u_inner;
  const ComplexMatrix v = x6 * (b[12] * x6 + b[10] * x4 + b[8] * x2) + b[6] * x6 +
                          b[4] * x4 + b[2] * x2 + b[0] * id;

  ComplexMatrix r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) r = r * r;
  return r;
}

ComplexMatrix sqrtm_triangular(const ComplexMatrix& t) {
  const Eigen::Index n = t.rows();
  ComplexMatrix r = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    r(j, j) = std::sqrt(t(j, j));
    for (Eigen::Index i = j - 1; i >= 0; --i) {
      Complex s = t(i, j);
      for (Eigen::Index k = i + 1; k < j; ++k) s -= r(i, k) * r(k, j);
      r(i, j) = s / (r(i, i) + r(j, j));
    }
  }
  return r;
}

SchurForm schur(const ComplexMatrix& a) {
  Eigen::ComplexSchur<ComplexMatrix> cs(a, true);
  return {cs.matrixU(), cs.matrixT()};
}

ComplexMatrix logm_principal(const ComplexMatrix& a) {
  const Eigen::Index n = a.rows();
  if (n == 0) return a;
  SchurForm form = schur(a);
  ComplexMatrix t = form.triangular;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);

  int roots = 0;
  auto norm1 = [](const ComplexMatrix& m) { return m.cwiseAbs().colwise().sum().maxCoeff(); };
  while (norm1(t - id) > 0.25 && roots < 64) {
    t = sqrtm_triangular(t);
    ++roots;
  }

  // log(I + y) = sum (-1)^{k+1} y^k / k; ||y|| <= 1/4 needs < 30 terms.
  const ComplexMatrix y = t - id;
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  ComplexMatrix power = y;
  for (int k = 1; k <= 80; ++k) {
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    const ComplexMatrix term = (sign / k) * power;
    sum += term;
    if (norm1(term) <= 1e-18 * std::max(1.0, norm1(sum))) break;
    power = power * y;
  }
  ComplexMatrix log_t = std::ldexp(1.0, roots) * sum;
  for (Eigen::Index i = 0; i < n; ++i) {
    log_t(i, i) = std::log(form.triangular(i, i));
  }
  return form.unitary * log_t.triangularView<Eigen::Upper>() * form.unitary.adjoint();
}

namespace {

// LAPACK zlartg: [c s; -conj(s) c] [f; g] = [r; 0] with real c.
void givens(Complex f, Complex g, double& c, Complex& s) {
  const double af = std::abs(f);
  const double ag = std::abs(g);
  if (ag == 0.0) {
    c = 1.0;
    s = 0.0;
    return;
  }
  if (af == 0.0) {
    c = 0.0;
    s = std::conj(g) / ag;
    return;
  }
  const double d = std::hypot(af, ag);
  c = af / d;
  s = (f / af) * std::conj(g) / d;
}

// x <- c x + s y, y <- c y - conj(s) x  (LAPACK zrot)
template <class X, class Y>
void rotate(X&& x, Y&& y, double c, Complex s) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const Complex xi = x(i);
    const Complex yi = y(i);
    x(i) = c * xi + s * yi;
    y(i) = c * yi - std::conj(s) * xi;
  }
}

void swap_adjacent(SchurForm& form, Eigen::Index k) {
  ComplexMatrix& t = form.triangular;
  const Eigen::Index n = t.rows();
  const Complex t11 = t(k, k);
  const Complex t22 = t(k + 1, k + 1);
  double c = 0.0;
  Complex s;
  givens(t(k, k + 1), t22 - t11, c, s);
  if (k + 2 < n) {
    auto row_k = t.row(k).tail(n - k - 2);
    auto row_k1 = t.row(k + 1).tail(n - k - 2);
    rotate(row_k, row_k1, c, s);
  }
  if (k > 0) {
    auto col_k = t.col(k).head(k);
    auto col_k1 = t.col(k + 1).head(k);
    rotate(col_k, col_k1, c, std::conj(s));
  }
  t(k, k) = t22;
  t(k + 1, k + 1) = t11;
  auto q_k = form.unitary.col(k);
  auto q_k1 = form.unitary.col(k + 1);
  rotate(q_k, q_k1, c, std::conj(s));
}

}  // namespace

int reorder_schur(SchurForm& form, const std::function<bool(Complex)>& leading) {
  const Eigen::Index n = form.triangular.rows();
  int placed = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!leading(form.triangular(j, j))) continue;
    for (Eigen::Index k = j - 1; k >= placed; --k) swap_adjacent(form, k);
    ++placed;
  }
  return placed;
}

int nullity(const ComplexMatrix& a, double tol) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const auto& sv = svd.singularValues();
  int count = static_cast<int>(std::max(a.rows(), a.cols()) - sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) <= tol) ++count;
  return count;
}

double spectral_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

bool numerically_singular(const ComplexMatrix& a) {
  if (a.size() == 0) return false;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const auto& sv = svd.singularValues();
  return !(sv(sv.size() - 1) > 1e-12 * std::max(1.0, sv(0)));
}

}  // namespace qfloquet::detail
