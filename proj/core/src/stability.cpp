#include "qfloquet/stability.hpp"

#include <cmath>

namespace qfloquet {

std::string_view to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::AsymptoticallyStable:
      return "asymptotically stable";
    case VerdictKind::Stable:
      return "stable";
    case VerdictKind::Unstable:
      return "unstable";
    case VerdictKind::Undetermined:
      return "undetermined";
  }
  return "undetermined";
}

namespace {

enum class Zone { Decaying, Neutral, Growing };

Zone zone_of(double margin, double tol) {
  if (margin < -tol) return Zone::Decaying;
  if (margin > tol) return Zone::Growing;
  return Zone::Neutral;
}

VerdictKind verdict_of(const std::vector<MarginItem>& items, const std::vector<Zone>& zones) {
  bool all_decaying = true;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (zones[k] == Zone::Growing) return VerdictKind::Unstable;
    if (zones[k] == Zone::Neutral) {
      all_decaying = false;
      if (items[k].geometric < items[k].algebraic) return VerdictKind::Unstable;
    }
  }
  return all_decaying ? VerdictKind::AsymptoticallyStable : VerdictKind::Stable;
}

}  // namespace

StabilityVerdict classify_margins(const std::vector<MarginItem>& items, std::string_view quantity,
                                  double tol) {
  StabilityVerdict verdict;
  std::vector<Zone> zones;
  for (const auto& item : items) {
    zones.push_back(zone_of(item.margin, tol));
    verdict.evidence.push_back({item.value, std::string(quantity), tol, item.margin});
    if (item.geometric < item.algebraic) {
      verdict.evidence.push_back({item.value, "gm<am", 0.0,
                                  static_cast<double>(item.geometric - item.algebraic)});
    }
  }
  verdict.kind = verdict_of(items, zones);

  for (std::size_t k = 0; k < items.size(); ++k) {
    const double m = items[k].margin;
    if (std::abs(std::abs(m) - tol) >= tol / 2) continue;
    // Near an edge: try the zone on the other side of it.
    std::vector<Zone> flipped = zones;
    if (m < 0)
      flipped[k] = zones[k] == Zone::Decaying ? Zone::Neutral : Zone::Decaying;
    else
      flipped[k] = zones[k] == Zone::Growing ? Zone::Neutral : Zone::Growing;
    if (verdict_of(items, flipped) != verdict.kind) {
      verdict.kind = VerdictKind::Undetermined;
      break;
    }
  }
  return verdict;
}

StabilityVerdict classify_constant(const QMatrix& a, double tol) {
  std::vector<MarginItem> items;
  for (const auto& e : standard_eigenvalues(a).entries) {
    items.push_back({e.value, e.value.real(), e.algebraic, e.geometric});
  }
  return classify_margins(items, "Re(lambda)", tol);
}

StabilityVerdict classify_multipliers(const StandardSpectrum& multipliers, double tol) {
  std::vector<MarginItem> items;
  for (const auto& e : multipliers.entries) {
    items.push_back({e.value, std::abs(e.value) - 1.0, e.algebraic, e.geometric});
  }
  return classify_margins(items, "|rho|-1", tol);
}

}  // namespace qfloquet
