#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qfloquet/qmatrix.hpp"

namespace qfloquet {

enum class VerdictKind { AsymptoticallyStable, Stable, Unstable, Undetermined };

std::string_view to_string(VerdictKind kind);

/// One tested quantity behind a verdict.
struct Evidence {
  ComplexPair value;     ///< eigenvalue or multiplier (or the scalar tested)
  std::string quantity;  ///< e.g. "Re(lambda)", "|rho|-1", "gm<am"
  double threshold = 0.0;
  double margin = 0.0;   ///< signed distance the verdict rests on
};

struct StabilityVerdict {
  VerdictKind kind = VerdictKind::Undetermined;
  std::vector<Evidence> evidence;
};

inline constexpr double kStabilityTol = 1e-7;

/// Input to the band classifier: a signed margin m (Re lambda, or |rho| - 1)
/// plus multiplicities. m < -tol is decaying, m > tol growing, and anything in
/// between sits on the neutral band where gm < am means secular growth.
struct MarginItem {
  ComplexPair value;
  double margin = 0.0;
  int algebraic = 1;
  int geometric = 1;
};

/// Shared rule for constant and periodic systems. When some margin lies
/// within tol/2 of a band edge and moving it across that edge would change
/// the verdict, the result is Undetermined.
StabilityVerdict classify_margins(const std::vector<MarginItem>& items, std::string_view quantity,
                                  double tol = kStabilityTol);

/// Standard eigenvalues of A tested on Re(lambda). Throws NonSquare.
StabilityVerdict classify_constant(const QMatrix& a, double tol = kStabilityTol);

/// Multipliers tested on |rho| - 1.
StabilityVerdict classify_multipliers(const StandardSpectrum& multipliers,
                                      double tol = kStabilityTol);

}  // namespace qfloquet
