#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qfloquet/error.hpp"
#include "qfloquet/floquet.hpp"
#include "systems.hpp"

using namespace qfloquet;

namespace {

constexpr double kPi = oracle::kPi;

MatrixSpec spec_of(const systems::PeriodicCase& c) { return MatrixSpec::parse(2, c.entries, kPi); }

}  // namespace

TEST(Periodicity, DetectsNonPeriodicCoefficients) {
  EXPECT_LT(periodicity_residual(MatrixSpec::parse(1, {"cos(2*t)"}, kPi)), 1e-12);
  EXPECT_GT(periodicity_residual(MatrixSpec::parse(1, {"cos(t)"}, kPi)), 0.1);
  try {
    require_periodic(MatrixSpec::parse(1, {"t"}, 1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPeriodic);
  }
  EXPECT_THROW(require_periodic(MatrixSpec::parse(1, {"1"})), Error);  // no period
}

TEST(Multipliers, ScalarClosedForm) {
  // x' = (0.1 + i + cos 2t) x over T = pi: rho = e^{0.1 pi} e^{i pi}.
  const MatrixSpec spec = MatrixSpec::parse(1, {"0.1 + i + cos(2*t)"}, kPi);
  const auto rho = characteristic_multipliers(monodromy(spec));
  ASSERT_EQ(rho.entries.size(), 1u);
  EXPECT_NEAR(rho.entries[0].value.real(), -std::exp(0.1 * kPi), 1e-8);
  EXPECT_NEAR(rho.entries[0].value.imag(), 0.0, 1e-8);
}

TEST(Exponents, StandardBranch) {
  StandardSpectrum s;
  s.entries.push_back({{-1, 0}, 1, 1});
  s.entries.push_back({{0, std::exp(1.0)}, 1, 1});
  const auto mu = characteristic_exponents(s, 2.0);
  ASSERT_EQ(mu.size(), 2u);
  EXPECT_NEAR(mu[0].real(), 0.0, 1e-15);
  EXPECT_NEAR(mu[0].imag(), kPi / 2, 1e-15);
  EXPECT_NEAR(mu[1].real(), 0.5, 1e-15);
  EXPECT_NEAR(mu[1].imag(), kPi / 4, 1e-15);
}

TEST(NormalForm, ReferenceSystems) {
  for (const auto& c : systems::periodic_cases()) {
    const MatrixSpec spec = spec_of(c);
    const FloquetData fd = normal_form(spec);
    EXPECT_LT(oracle::multiset_distance(fd.multipliers.flattened(), c.multipliers), 1e-6) << c.name;
    EXPECT_EQ(classify_periodic(fd).kind, c.verdict) << c.name;
    EXPECT_LE(fd.log_residual, kLogTol) << c.name;
    EXPECT_LE(fd.periodicity_residual, 1e-6) << c.name;
    EXPECT_LT(multiplier_product_check(fd, spec).product_residual, 1e-7) << c.name;
    EXPECT_LT(liouville_residual(Trajectory{fd.times, fd.fundamental}, spec), 1e-7) << c.name;
    EXPECT_EQ(fd.times.size(), 2u * kNormalFormSamples + 1);
    EXPECT_EQ(fd.p_samples.size(), static_cast<std::size_t>(kNormalFormSamples) + 1);
    // P(0) = I.
    EXPECT_LT(oracle::max_entry_dist(fd.p_samples.front(), QMatrix::identity(2)), 1e-12) << c.name;
  }
}

TEST(NormalForm, BSpectrumOfFirstReferenceSystem) {
  const FloquetData fd = normal_form(spec_of(systems::periodic_cases()[0]));
  EXPECT_LT(oracle::multiset_distance(fd.b_spectrum.flattened(), {{0, 1}, {1, 0}}), 1e-6);
  EXPECT_LT(oracle::max_entry_dist(expm(kPi * fd.b), fd.monodromy),
            1e-8 * oracle::max_entry_norm(fd.monodromy));
}

TEST(NormalForm, ExpOfTBEqualsMonodromyOnRandomSystems) {
  oracle::Random rng(60);
  for (int n = 0; n < 5; ++n) {
    const MatrixSpec spec = MatrixSpec::parse(2, oracle::random_periodic_entries(rng, 2), kPi);
    const FloquetData fd = normal_form(spec);
    EXPECT_LT(sum_norm(oracle::taylor_expm(kPi * fd.b) - fd.monodromy) / sum_norm(fd.monodromy), 1e-8);
    EXPECT_LE(fd.periodicity_residual, fd.periodicity_bound);
  }
}

TEST(PeriodicSolutions, WitnessForMinusOne) {
  const FloquetData fd = normal_form(spec_of(systems::periodic_cases()[0]));
  const auto sols = periodic_solutions(fd);
  ASSERT_EQ(sols.size(), 1u);
  EXPECT_EQ(sols[0].kind, PeriodicKind::TwoTPeriodic);
  EXPECT_LT(sols[0].residual, 1e-6);
}

TEST(PeriodicSolutions, WitnessForOne) {
  // x' = diag(i cos 2t, 1) x has a T-periodic first component.
  const MatrixSpec spec = MatrixSpec::parse(2, {"i*cos(2*t)", "0", "0", "1"}, kPi);
  const auto sols = periodic_solutions(normal_form(spec));
  ASSERT_EQ(sols.size(), 1u);
  EXPECT_EQ(sols[0].kind, PeriodicKind::TPeriodic);
  EXPECT_LT(sols[0].residual, 1e-6);
}

TEST(GrowthProfile, AgreesWithVerdicts) {
  EXPECT_EQ(growth_profile_constant(QMatrix{{Quaternion(0.5)}}).suggests, VerdictKind::Unstable);
  EXPECT_EQ(growth_profile_constant(QMatrix{{Quaternion(-0.5, 1)}}).suggests,
            VerdictKind::AsymptoticallyStable);
  EXPECT_EQ(growth_profile_constant(QMatrix{{Quaternion(0, 1)}}).suggests, VerdictKind::Stable);
  EXPECT_EQ(growth_profile_periodic(-1.0 * QMatrix::identity(2)).suggests, VerdictKind::Stable);
  EXPECT_EQ(growth_profile_periodic(QMatrix{{Quaternion(-1), Quaternion(1)}, {Quaternion(0), Quaternion(-1)}}).suggests,
            VerdictKind::Unstable);
}
