#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qfloquet/error.hpp"
#include "qfloquet/qmatrix.hpp"
#include "systems.hpp"

using namespace qfloquet;

namespace {

// S D S^{-1} with D diagonal has the standardized diagonal as spectrum.
QMatrix conjugated_diagonal(oracle::Random& rng, const QVector& diag) {
  const std::size_t n = diag.size();
  const QMatrix s = rng.matrix(n) + 2.0 * QMatrix::identity(n);
  return s * QMatrix::diagonal(diag) * inverse(s);
}

}  // namespace

TEST(StandardEigenvalues, TriangularMatrixUsesDiagonalClasses) {
  const QMatrix a{{Quaternion(1, 0, 2), Quaternion(5, 1, 1, 1)}, {Quaternion(0), Quaternion(-2, 0, 0, 3)}};
  const auto s = standard_eigenvalues(a);
  EXPECT_LT(oracle::multiset_distance(s.flattened(), {{1, 2}, {-2, 3}}), 1e-12);
  EXPECT_EQ(s.total_multiplicity(), 2);
}

TEST(StandardEigenvalues, SimilarityInvariance) {
  oracle::Random rng(20);
  for (int n = 0; n < 50; ++n) {
    const QVector diag{rng.quaternion(), rng.quaternion(2.0), rng.quaternion(0.5)};
    const QMatrix a = conjugated_diagonal(rng, diag);
    std::vector<ComplexPair> expected;
    for (const auto& q : diag) expected.push_back(standardize(q));
    EXPECT_LT(oracle::multiset_distance(standard_eigenvalues(a).flattened(), expected), 1e-8);
  }
}

TEST(StandardEigenvalues, ImaginaryPartsNonnegative) {
  oracle::Random rng(21);
  for (int n = 0; n < 50; ++n) {
    for (const auto& e : standard_eigenvalues(rng.matrix(4)).entries) {
      EXPECT_GE(e.value.imag(), 0.0);
      EXPECT_GE(e.algebraic, e.geometric);
      EXPECT_GE(e.geometric, 1);
    }
  }
}

TEST(StandardEigenvalues, JordanBlockMultiplicities) {
  const QMatrix jb{{Quaternion(0, 1), Quaternion(1)}, {Quaternion(0), Quaternion(0, 1)}};
  const auto s = standard_eigenvalues(jb);
  ASSERT_EQ(s.entries.size(), 1u);
  EXPECT_EQ(s.entries[0].algebraic, 2);
  EXPECT_EQ(s.entries[0].geometric, 1);

  // i and j are similar: diag(i, j) is not a Jordan block.
  const auto d = standard_eigenvalues(QMatrix{{Quaternion(0, 1), Quaternion(0)}, {Quaternion(0), Quaternion(0, 0, 1)}});
  ASSERT_EQ(d.entries.size(), 1u);
  EXPECT_EQ(d.entries[0].algebraic, 2);
  EXPECT_EQ(d.entries[0].geometric, 2);
}

TEST(StandardEigenvalues, ReferenceConstantSystems) {
  for (const auto& c : systems::constant_cases()) {
    const auto s = standard_eigenvalues(c.a);
    EXPECT_EQ(s.total_multiplicity(), static_cast<int>(c.a.rows())) << c.name;
  }
  // The three-fold i of constant-2 has one Jordan chain of length two.
  const auto s2 = standard_eigenvalues(systems::constant_cases()[1].a);
  ASSERT_EQ(s2.entries.size(), 1u);
  EXPECT_EQ(s2.entries[0].algebraic, 3);
  EXPECT_EQ(s2.entries[0].geometric, 2);
}

TEST(StandardEigenvalues, MatchesIndependentAdjointSpectrum) {
  // Eigenvalues of the directly assembled adjoint, upper half plane only.
  oracle::Random rng(22);
  for (int n = 0; n < 30; ++n) {
    const QMatrix a = rng.matrix(3);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(oracle::chi(a), false);
    std::vector<ComplexPair> all(solver.eigenvalues().begin(), solver.eigenvalues().end());
    std::sort(all.begin(), all.end(), [](ComplexPair x, ComplexPair y) { return x.imag() > y.imag(); });
    all.resize(3);
    EXPECT_LT(oracle::multiset_distance(standard_eigenvalues(a).flattened(), all), 1e-9);
  }
}

TEST(RightEigenvector, SatisfiesRightEigenEquation) {
  oracle::Random rng(23);
  for (int n = 0; n < 30; ++n) {
    const QMatrix a = rng.matrix(3);
    for (const auto& e : standard_eigenvalues(a).entries) {
      const QVector eta = right_eigenvector(a, e.value);
      const QVector lhs = a * eta;
      const QVector rhs = right_scale(eta, Quaternion(e.value));
      double resid = 0.0;
      for (std::size_t k = 0; k < eta.size(); ++k) resid += oracle::dist(lhs[k], rhs[k]);
      EXPECT_LT(resid, 1e-8);
      EXPECT_NEAR(sum_norm(eta), 1.0, 1e-12);
    }
  }
}

TEST(RightEigenvector, RejectsNonEigenvalue) {
  const QMatrix a{{Quaternion(1), Quaternion(0)}, {Quaternion(0), Quaternion(2)}};
  try {
    right_eigenvector(a, {5, 0});
    FAIL() << "expected NotAnEigenvalue";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAnEigenvalue);
  }
}

TEST(SpectralMap, HoldsOnRandomMatrices) {
  oracle::Random rng(24);
  for (int n = 0; n < 50; ++n) EXPECT_TRUE(spectral_map_check(rng.matrix(4)));
}

TEST(StandardEigenvalues, NonSquareThrows) {
  EXPECT_THROW(standard_eigenvalues(QMatrix(2, 3)), Error);
}
