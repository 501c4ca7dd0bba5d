#include <gtest/gtest.h>

#include "qfloquet/stability.hpp"
#include "systems.hpp"

using namespace qfloquet;

namespace {

VerdictKind classify(std::vector<MarginItem> items) { return classify_margins(items, "m").kind; }

}  // namespace

TEST(ClassifyMargins, Bands) {
  EXPECT_EQ(classify({{{}, -1.0}, {{}, -0.5}}), VerdictKind::AsymptoticallyStable);
  EXPECT_EQ(classify({{{}, -1.0}, {{}, 0.0}}), VerdictKind::Stable);
  EXPECT_EQ(classify({{{}, -1.0}, {{}, 0.3}}), VerdictKind::Unstable);
  EXPECT_EQ(classify({}), VerdictKind::AsymptoticallyStable);
}

TEST(ClassifyMargins, DefectiveNeutralItemIsUnstable) {
  EXPECT_EQ(classify({{{}, 0.0, 2, 1}}), VerdictKind::Unstable);
  EXPECT_EQ(classify({{{}, 0.0, 2, 2}}), VerdictKind::Stable);
  // Defective but decaying is harmless.
  EXPECT_EQ(classify({{{}, -0.1, 3, 1}}), VerdictKind::AsymptoticallyStable);
}

TEST(ClassifyMargins, NearEdgeIsUndeterminedOnlyWhenItMatters) {
  const double tol = kStabilityTol;
  // Just inside the neutral band at the growing edge: flipping gives Unstable.
  EXPECT_EQ(classify({{{}, 0.9 * tol}}), VerdictKind::Undetermined);
  // Just outside on the decaying side: flipping to neutral changes
  // AsymptoticallyStable to Stable.
  EXPECT_EQ(classify({{{}, -1.1 * tol}}), VerdictKind::Undetermined);
  // Another item already makes it unstable, so the edge does not matter.
  EXPECT_EQ(classify({{{}, 0.9 * tol}, {{}, 1.0}}), VerdictKind::Unstable);
  // Far from both edges.
  EXPECT_EQ(classify({{{}, 0.1 * tol}}), VerdictKind::Stable);
}

TEST(ClassifyMargins, EvidenceListsEveryItem) {
  const auto v = classify_margins({{{1, 2}, -0.5, 2, 1}, {{3, 0}, 0.0}}, "Re(lambda)");
  ASSERT_EQ(v.evidence.size(), 3u);  // two margins and one gm<am entry
  EXPECT_EQ(v.evidence[0].quantity, "Re(lambda)");
  EXPECT_EQ(v.evidence[1].quantity, "gm<am");
  EXPECT_DOUBLE_EQ(v.evidence[0].margin, -0.5);
}

TEST(ClassifyConstant, ReferenceSystems) {
  for (const auto& c : systems::constant_cases())
    EXPECT_EQ(classify_constant(c.a).kind, c.verdict) << c.name;
}

TEST(ClassifyConstant, SimpleCases) {
  EXPECT_EQ(classify_constant(QMatrix{{Quaternion(0)}}).kind, VerdictKind::Stable);
  EXPECT_EQ(classify_constant(QMatrix{{Quaternion(-1, 3)}}).kind, VerdictKind::AsymptoticallyStable);
  EXPECT_EQ(classify_constant(QMatrix{{Quaternion(0, 1), Quaternion(1)}, {Quaternion(0), Quaternion(0, 1)}}).kind,
            VerdictKind::Unstable);
}

TEST(VerdictKind, Names) {
  EXPECT_EQ(to_string(VerdictKind::AsymptoticallyStable), "asymptotically stable");
  EXPECT_EQ(to_string(VerdictKind::Stable), "stable");
  EXPECT_EQ(to_string(VerdictKind::Unstable), "unstable");
  EXPECT_EQ(to_string(VerdictKind::Undetermined), "undetermined");
}
