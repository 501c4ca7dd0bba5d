#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qfloquet/error.hpp"
#include "qfloquet/qmatrix.hpp"

using namespace qfloquet;

TEST(Expm, MatchesTaylorOracle) {
  oracle::Random rng(30);
  for (int n = 0; n < 100; ++n) {
    const auto size = static_cast<std::size_t>(rng.integer(1, 5));
    const QMatrix a = rng.matrix(size, rng.uniform(0.1, 3.0));
    const QMatrix e = expm(a);
    const QMatrix ref = oracle::taylor_expm(a);
    EXPECT_LT(oracle::max_entry_dist(e, ref), 1e-10 * std::max(1.0, oracle::max_entry_norm(ref)));
  }
}

TEST(Expm, ScalarCaseIsQexp) {
  const Quaternion q{0.3, -1.2, 0.4, 2.0};
  EXPECT_LT(oracle::dist(expm(QMatrix{{q}})(0, 0), qexp(q)), 1e-14);
}

TEST(Expm, DiagonalAndNilpotent) {
  const QMatrix d = QMatrix::diagonal(QVector{Quaternion(0, oracle::kPi), Quaternion(1)});
  const QMatrix e = expm(d);
  EXPECT_LT(oracle::dist(e(0, 0), Quaternion(-1)), 1e-14);
  EXPECT_LT(oracle::dist(e(1, 1), Quaternion(std::exp(1.0))), 1e-14);

  // exp([[0, q], [0, 0]]) = [[1, q], [0, 1]].
  const Quaternion q{1, 2, 3, 4};
  const QMatrix n{{Quaternion(0), q}, {Quaternion(0), Quaternion(0)}};
  EXPECT_LT(oracle::max_entry_dist(expm(n), QMatrix{{Quaternion(1), q}, {Quaternion(0), Quaternion(1)}}),
            1e-14);
}

TEST(Logm, InvertsExpmOnRandomMatrices) {
  oracle::Random rng(31);
  for (int n = 0; n < 100; ++n) {
    const QMatrix c = rng.matrix(4);
    const LogResult r = logm_detail(c);
    EXPECT_LE(r.residual, kLogTol);
    EXPECT_LT(sum_norm(oracle::taylor_expm(r.log) - c) / sum_norm(c), 1e-8);
  }
}

TEST(Logm, PrincipalBranchForSmallMatrices) {
  oracle::Random rng(32);
  for (int n = 0; n < 30; ++n) {
    const QMatrix a = rng.matrix(3, 0.2);
    const LogResult r = logm_detail(expm(a));
    EXPECT_FALSE(r.branch_adjusted);
    EXPECT_LT(oracle::max_entry_dist(r.log, a), 1e-10);
  }
}

TEST(Logm, NegativeIdentity) {
  const QMatrix c = -1.0 * QMatrix::identity(2);
  const LogResult r = logm_detail(c);
  EXPECT_TRUE(r.branch_adjusted);
  EXPECT_LT(oracle::max_entry_dist(oracle::taylor_expm(r.log), c), 1e-10);
}

TEST(Logm, DefectiveNegativeEigenvalue) {
  // Jordan block at -1 in quaternion form.
  const QMatrix c{{Quaternion(-1), Quaternion(0.5, 0.5, -0.5, 0.5)}, {Quaternion(0), Quaternion(-1)}};
  const LogResult r = logm_detail(c);
  EXPECT_TRUE(r.branch_adjusted);
  EXPECT_LT(sum_norm(oracle::taylor_expm(r.log) - c) / sum_norm(c), 1e-8);
}

TEST(Logm, SingularThrows) {
  const QMatrix c{{Quaternion(1), Quaternion(2)}, {Quaternion(2), Quaternion(4)}};
  try {
    logm(c);
    FAIL() << "expected Singular";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Singular);
  }
}

TEST(Logm, LargeButUnimodular) {
  // qdet = 1 with norm ~ e^{2 pi}; must not be mistaken for singular.
  const double g = std::exp(2 * oracle::kPi);
  const QMatrix c{{Quaternion(g), Quaternion(0)}, {Quaternion(0), Quaternion(1 / g)}};
  EXPECT_NEAR(qdet(c), 1.0, 1e-9);
  const QMatrix b = logm(c);
  EXPECT_NEAR(b(0, 0).w, 2 * oracle::kPi, 1e-12);
  EXPECT_NEAR(b(1, 1).w, -2 * oracle::kPi, 1e-12);
}
