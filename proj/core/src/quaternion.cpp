#include "qfloquet/quaternion.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "qfloquet/error.hpp"

namespace qfloquet {

double norm(const Quaternion& q) {
  return std::sqrt(norm_sq(q));
}

double vec_norm(const Quaternion& q) {
  return std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
}

Quaternion inverse(const Quaternion& q) {
  const double n2 = norm_sq(q);
  if (n2 == 0.0) {
    throw Error(ErrorCode::DivisionByZero, "inverse of the zero quaternion");
  }
  return conj(q) / n2;
}

Quaternion operator/(const Quaternion& p, const Quaternion& q) {
  return p * inverse(q);
}

Quaternion qexp(const Quaternion& q) {
  const double v = vec_norm(q);
  const double scale = std::exp(q.w);
  // sin(v)/v; the series avoids 0/0 for (nearly) real q.
  const double sinc = v < kSincThreshold ? 1.0 - v * v / 6.0 : std::sin(v) / v;
  return {scale * std::cos(v), scale * sinc * q.x, scale * sinc * q.y,
          scale * sinc * q.z};
}

bool similar(const Quaternion& p, const Quaternion& q, double tol) {
  return std::abs(p.w - q.w) <= tol && std::abs(vec_norm(p) - vec_norm(q)) <= tol;
}

ComplexPair standardize(const Quaternion& q) {
  return {q.w, vec_norm(q)};
}

namespace {

std::string format_number(double v, NumberFormat format, int precision) {
  std::array<char, 64> buf{};
  switch (format) {
    case NumberFormat::Shortest: {
      auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
      return std::string(buf.data(), res.ptr);
    }
    case NumberFormat::Fixed:
      std::snprintf(buf.data(), buf.size(), "%.*f", precision, v);
      break;
    case NumberFormat::Scientific:
      std::snprintf(buf.data(), buf.size(), "%.*e", precision, v);
      break;
  }
  return std::string(buf.data());
}

}  // namespace

std::string to_string(const Quaternion& q, NumberFormat format, int precision) {
  std::string out = format_number(q.w, format, precision);
  const std::array<std::pair<double, char>, 3> parts{
      {{q.x, 'i'}, {q.y, 'j'}, {q.z, 'k'}}};
  for (const auto& [value, unit] : parts) {
    // signbit keeps "-0" rendered as a subtraction.
    if (std::signbit(value)) {
      out += '-';
      out += format_number(-value, format, precision);
    } else {
      out += '+';
      out += format_number(value, format, precision);
    }
    out += unit;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << to_string(q);
}

}  // namespace qfloquet
