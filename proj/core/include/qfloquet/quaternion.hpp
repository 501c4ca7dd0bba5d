#pragma once

#include <complex>
#include <iosfwd>
#include <string>

namespace qfloquet {

/// Complex numbers are the sub-field span{1, i} of the quaternions.
using ComplexPair = std::complex<double>;

/// q = w + x i + y j + z k with Hamilton's rules ij = k, jk = i, ki = j.
///
/// Multiplication is not commutative; every product in this library keeps
/// the operand order it is written in.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_ = 0.0, double y_ = 0.0,
                       double z_ = 0.0)
      : w(w_), x(x_), y(y_), z(z_) {}
  constexpr explicit Quaternion(ComplexPair c) : w(c.real()), x(c.imag()) {}

  static constexpr Quaternion unit_i() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quaternion unit_j() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quaternion unit_k() { return {0.0, 0.0, 0.0, 1.0}; }

  constexpr double real() const { return w; }
  constexpr Quaternion vec() const { return {0.0, x, y, z}; }

  constexpr bool operator==(const Quaternion&) const = default;

  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w;
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w;
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    w *= s;
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a *= (1.0 / s); }

constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
  return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
          p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
          p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
          p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

constexpr Quaternion conj(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }

/// |q|^2 = q conj(q).
constexpr double norm_sq(const Quaternion& q) {
  return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z;
}
double norm(const Quaternion& q);

/// |Ve(q)|, the modulus of the vector part.
double vec_norm(const Quaternion& q);

/// conj(q) / |q|^2. Throws Error(DivisionByZero) for q == 0.
Quaternion inverse(const Quaternion& q);

/// p * inverse(q): division is right multiplication by the inverse.
Quaternion operator/(const Quaternion& p, const Quaternion& q);

/// Vector parts below this modulus use the sinc series in qexp.
inline constexpr double kSincThreshold = 1e-8;

/// Closed-form exponential e^{w}(cos|v| + v sin|v| / |v|).
Quaternion qexp(const Quaternion& q);

/// Absolute tolerance on Re and |Ve| used by `similar`.
inline constexpr double kSimilarityTol = 1e-9;

/// p and q lie in the same class {a^{-1} q a}: equal real part and equal
/// vector-part modulus.
bool similar(const Quaternion& p, const Quaternion& q,
             double tol = kSimilarityTol);

/// The class representative Re(q) + |Ve(q)| i, which has Im >= 0.
ComplexPair standardize(const Quaternion& q);

/// Maps a complex number to its standard representative (Re, |Im|).
inline ComplexPair standardize(ComplexPair c) {
  return {c.real(), std::abs(c.imag())};
}

enum class NumberFormat { Shortest, Fixed, Scientific };

/// Renders `a+bi+cj+dk` with all four terms present. This is a display
/// format; expressions spell products out (`b*i`).
std::string to_string(const Quaternion& q,
                      NumberFormat format = NumberFormat::Shortest,
                      int precision = 6);

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

}  // namespace qfloquet
