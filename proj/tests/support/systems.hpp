#pragma once

// Reference systems shared by the unit and acceptance tests, with their
// closed-form or published characteristic data.

#include <cmath>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qfloquet/qmatrix.hpp"
#include "qfloquet/stability.hpp"

namespace systems {

using qfloquet::ComplexPair;
using qfloquet::QMatrix;
using qfloquet::Quaternion;
using qfloquet::VerdictKind;

struct ConstantCase {
  const char* name;
  QMatrix a;
  std::vector<ComplexPair> eigenvalues;  ///< standard, with multiplicity
  VerdictKind verdict;
};

inline const Quaternion I{0, 1, 0, 0};
inline const Quaternion J{0, 0, 1, 0};
inline const Quaternion K{0, 0, 0, 1};

inline std::vector<ConstantCase> constant_cases() {
  return {
      {"constant-1",
       QMatrix{{I, J, J}, {K, 1, K}, {0, 0, 1}},
       {{0, 0}, {1, 0}, {1, 1}},
       VerdictKind::Unstable},
      {"constant-2",
       QMatrix{{I, 1, 0}, {0, J, 0}, {0, 1, K}},
       {{0, 1}, {0, 1}, {0, 1}},
       VerdictKind::Unstable},
      {"constant-3",
       QMatrix{{Quaternion(-1, 0, 2, -1), Quaternion(-1, 2, 1, 0)},
               {Quaternion(0, -1, 1, 2), Quaternion(-2, -1, 0, 1)}},
       {{0, 0}, {-3, 3}},
       VerdictKind::Stable},
      {"constant-4",
       QMatrix{{Quaternion(-1, 1, 0, -1), Quaternion(0, -1, 0, 0)},
               {Quaternion(1, 1, -1, 1), Quaternion(-2, 0, 0, -1)}},
       {{-1, 0}, {-1, 0.5}},
       VerdictKind::AsymptoticallyStable},
  };
}

struct PeriodicCase {
  const char* name;
  std::vector<std::string> entries;  ///< 2x2, row-major, period pi
  std::vector<ComplexPair> multipliers;
  VerdictKind verdict;
};

inline std::vector<PeriodicCase> periodic_cases() {
  const double ep = std::exp(oracle::kPi);
  const double em = std::exp(-oracle::kPi);
  return {
      {"periodic-1", {"1", "1", "0", "i + 2*exp(2*i*t)*j"}, {{ep, 0}, {-1, 0}},
       VerdictKind::Unstable},
      {"periodic-2", {"k", "1", "0", "i + 2*exp(2*i*t)*j"}, {{-1, 0}, {-1, 0}},
       VerdictKind::Unstable},
      {"periodic-3", {"k/2", "exp(-2*i*t)", "0", "i + 2*j*cos(2*t) + 2*k*sin(2*t)"},
       {{0, 1}, {-1, 0}}, VerdictKind::Stable},
      {"periodic-4", {"i/2 - 1", "exp(2*j*t)*exp(-k*sin(2*t))", "0", "2*k*cos(2*t) - 1"},
       {{0, em}, {em, 0}}, VerdictKind::AsymptoticallyStable},
  };
}

/// Closed-form monodromy of periodic-1 at t = pi.
inline QMatrix periodic_1_monodromy() {
  const double ep = std::exp(oracle::kPi);
  return QMatrix{{Quaternion(ep), Quaternion(3, -1, 4, 2) * ((1.0 + ep) / 10.0)},
                 {Quaternion(0), Quaternion(-1)}};
}

inline const char* const kHill1 = "2 + j*cos(2*t)^2 + k*sin(2*t)";
inline const char* const kHill2 = "-1 + j*cos(2*t) + k*sin(2*t)";
inline const char* const kHill3 = "-1 + j*exp(cos(2*t)) + k*sin(2*t)";

}  // namespace systems
