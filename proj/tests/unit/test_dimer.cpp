#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>

#include "dimerlab/dimer.hpp"
#include "dimerlab/error.hpp"
#include "dimerlab/numerics/roots.hpp"
#include "generators.hpp"

using namespace dimerlab;
using std::numbers::pi;

namespace {

// Independent transcription of H, used as the oracle for the gradient checks.
double h_oracle(double z, double theta, double mu, double eta) {
  return 2.0 * std::sqrt(1.0 - z * z) * std::cos(theta) -
         eta * (std::pow(1.0 + z, mu + 1.0) + std::pow(1.0 - z, mu + 1.0)) / (std::pow(2.0, mu) * (mu + 1.0));
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no dimerlab::Error thrown";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(DimerParams, RejectsNonPositiveOrNonFinite) {
  EXPECT_NO_THROW(DimerParams(1.0, 1.0));
  EXPECT_EQ(kind_of([] { DimerParams(0.0, 1.0); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { DimerParams(1.0, -2.0); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { DimerParams(std::nan(""), 1.0); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { DimerParams(1.0, HUGE_VAL); }), ErrorKind::InvalidArgument);
}

TEST(PhasePoint, WrapsThetaAndChecksZ) {
  const PhasePoint p(0.2, -pi / 2);
  EXPECT_NEAR(p.theta(), 1.5 * pi, 1e-15);
  EXPECT_NEAR(PhasePoint(0.0, 5.0 * pi).theta(), pi, 1e-14);
  EXPECT_EQ(PhasePoint(0.0, 2.0 * pi).theta(), 0.0);
  EXPECT_THROW(PhasePoint(1.0 + 1e-9, 0.0), Error);
}

TEST(AmplitudePair, ChecksNormAtConstruction) {
  EXPECT_NO_THROW(AmplitudePair(1.0, 0.0));
  EXPECT_THROW(AmplitudePair(1.0, 0.1), Error);
}

TEST(Hamiltonian, ClosedFormValues) {
  EXPECT_NEAR(hamiltonian({0.0, 0.0}, {1.0, 1e-300}), 2.0, 1e-15);
  EXPECT_NEAR(hamiltonian({0.0, pi}, {1.0, 2.0}), -2.0 - 2.0 * 2.0 / (2.0 * 2.0), 1e-14);
  for (double theta : {0.0, 1.0, pi, 4.0}) {
    EXPECT_NEAR(hamiltonian({1.0, theta}, {2.0, 3.0}), -3.0 * 8.0 / (4.0 * 3.0), 1e-14);
  }
}

TEST(VectorField, ClosedFormValues) {
  const auto v0 = vector_field({0.0, 0.0}, {2.5, 3.0});
  EXPECT_EQ(v0.dz, 0.0);
  EXPECT_EQ(v0.dtheta, 0.0);
  EXPECT_NEAR(vector_field({0.0, pi / 2}, {1.0, 1.0}).dz, 2.0, 1e-15);

  const DimerParams p(1.0, 2.0);
  const double expected = 2.0 * 0.5 / std::sqrt(0.75) - 2.0 * (1.5 - 0.5) / 2.0;
  EXPECT_NEAR(vector_field({0.5, pi}, p).dtheta, expected, 1e-14);
  EXPECT_NEAR(f_pm(0.5, Sign::Minus, p), expected, 1e-14);
  const double fd = (h_oracle(0.5 + 1e-6, pi, 1.0, 2.0) - h_oracle(0.5 - 1e-6, pi, 1.0, 2.0)) / 2e-6;
  EXPECT_NEAR(vector_field({0.5, pi}, p).dtheta, fd, 1e-8);
}

TEST(VectorField, EndpointIsSingular) {
  EXPECT_EQ(kind_of([] { vector_field({1.0, 0.3}, {1.0, 1.0}); }), ErrorKind::EndpointSingularity);
  EXPECT_EQ(kind_of([] { f_pm(-1.0, Sign::Plus, {1.0, 1.0}); }), ErrorKind::EndpointSingularity);
}

TEST(FPm, OddAndVanishingAtZero) {
  proptest::Gen gen(11);
  for (int i = 0; i < 200; ++i) {
    const auto p = gen.params();
    const double z = gen.uniform(-0.99, 0.99);
    EXPECT_NEAR(f_pm(z, Sign::Minus, p), -f_pm(-z, Sign::Minus, p), 1e-12 * (1.0 + std::abs(f_pm(z, Sign::Minus, p))));
    EXPECT_EQ(f_pm(0.0, Sign::Plus, p), 0.0);
    EXPECT_EQ(f_pm(0.0, Sign::Minus, p), 0.0);
  }
}

TEST(FPm, LinearCaseAtEtaStarHasOnlyTheTrivialRoot) {
  // mu = 1, eta = 2: f_-(z) = 2z (1/sqrt(1 - z^2) - 1) > 0 for z > 0.
  const DimerParams p(1.0, 2.0);
  for (double z = 0.01; z < 0.99; z += 0.01) {
    EXPECT_NEAR(f_pm(z, Sign::Minus, p), 2.0 * z * (1.0 / std::sqrt(1.0 - z * z) - 1.0), 1e-13);
    EXPECT_GT(f_pm(z, Sign::Minus, p), 0.0);
  }
}

TEST(FPm, PlusBranchStrictlyDecreasing) {
  proptest::Gen gen(12);
  const auto grid = numerics::uniform_grid(-0.999, 0.999, 10'000);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = gen.params();
    double prev = f_pm(grid[0], Sign::Plus, p);
    for (std::size_t i = 1; i < grid.size(); ++i) {
      const double cur = f_pm(grid[i], Sign::Plus, p);
      ASSERT_LT(cur, prev) << "mu = " << p.mu() << ", eta = " << p.eta() << ", z = " << grid[i];
      prev = cur;
    }
  }
}

TEST(EtaOfZ, ClosedFormValues) {
  EXPECT_NEAR(eta_of_z(0.5, 1.0), 2.0 / std::sqrt(0.75), 1e-14);
  EXPECT_NEAR(eta_of_z(1.0 / std::sqrt(3.0), 4.0), std::sqrt(27.0 / 2.0), 1e-13);
  EXPECT_NEAR(eta_of_z(1e-6, 5.0), 6.4, 1e-9);
  EXPECT_EQ(eta_of_z(-0.3, 2.7), eta_of_z(0.3, 2.7));
  EXPECT_EQ(kind_of([] { eta_of_z(0.0, 2.0); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of([] { eta_of_z(1.0, 2.0); }), ErrorKind::EndpointSingularity);
}

TEST(EtaOfZ, RootsOfFMinusLieOnTheCurve) {
  proptest::Gen gen(13);
  for (int i = 0; i < 200; ++i) {
    const double mu = gen.uniform(0.2, 8.0);
    const double z = gen.uniform(0.01, 0.98);
    const DimerParams p(mu, eta_of_z(z, mu));
    EXPECT_NEAR(f_pm(z, Sign::Minus, p), 0.0, 1e-11 * (1.0 + p.eta()));
  }
}

TEST(EtaOfZ, ConvergesQuadraticallyToEtaStar) {
  for (double mu : {0.5, 1.0, 2.0, 5.0, 7.5}) {
    for (int k = 3; k <= 8; ++k) {
      const double z = std::pow(10.0, -k);
      const double err = eta_of_z(z, mu) - eta_star(mu);
      // eta(z) - eta* = d2eta/2 z^2 + O(z^4).
      EXPECT_NEAR(err, 0.5 * d2eta_at_zero(mu) * z * z, 1e-3 * std::abs(d2eta_at_zero(mu)) * z * z + 1e-13)
          << "mu = " << mu << ", z = " << z;
    }
  }
}

TEST(Constants, EtaStar) {
  EXPECT_EQ(eta_star(1.0), 2.0);
  EXPECT_EQ(eta_star(5.0), 6.4);
  EXPECT_EQ(eta_star(4.0), 4.0);
}

TEST(Constants, MuThreshold) {
  const double m = mu_threshold();
  EXPECT_NEAR(m, 3.302775637731995, 1e-15);
  EXPECT_NEAR(m * m - 3.0 * m - 1.0, 0.0, 1e-12);
  EXPECT_NEAR(d2eta_at_zero(m), 0.0, 1e-12);
}

TEST(Constants, SecondDerivativeMatchesFiniteDifference) {
  // Oracle: central difference of eta(z) at z = 1e-3, using eta(-z) = eta(z).
  for (double mu : {0.3, 1.0, 2.0, 3.0, 4.0, 5.0, 8.0}) {
    const double h = 1e-3;
    const double fd = 2.0 * (eta_of_z(h, mu) - eta_star(mu)) / (h * h);
    EXPECT_NEAR(d2eta_at_zero(mu), fd, 1e-4 * std::abs(fd)) << "mu = " << mu;
  }
  EXPECT_NEAR(d2eta_at_zero(1.0), 2.0, 1e-14);
  EXPECT_NEAR(d2eta_at_zero(5.0), -19.2, 1e-12);
}

TEST(Constants, NinthNormalizationIsAThirdOfTheSecondDerivative) {
  EXPECT_NEAR(d2eta_at_zero_over_three(1.0), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(d2eta_at_zero_over_three(5.0), -6.4, 1e-13);
}

TEST(Constants, SignLaw) {
  const double m = mu_threshold();
  for (int i = 0; i < 100; ++i) {
    const double mu = 0.1 + (10.0 - 0.1) * (i + 0.5) / 100.0;
    if (mu < m) {
      EXPECT_GT(d2eta_at_zero(mu), 0.0) << mu;
    } else {
      EXPECT_LT(d2eta_at_zero(mu), 0.0) << mu;
    }
  }
}

TEST(GFunc, Values) {
  for (double mu : {0.5, 1.0, 4.0}) {
    EXPECT_EQ(g_func(0.0, mu), 1.0);
    EXPECT_EQ(g_func(-1.0, mu), 0.0);
  }
  EXPECT_NEAR(g_func(1.0 / std::sqrt(3.0), 4.0) - g_func(-1.0 / std::sqrt(3.0), 4.0), 0.0, 1e-10);
  EXPECT_NEAR(fold_condition(1.0 / std::sqrt(3.0), 4.0), 0.0, 1e-10);
}

TEST(FoldCondition, SignChangeIffAboveThreshold) {
  const auto grid = numerics::uniform_grid(0.01, 0.99, 10'000);
  for (double mu : {1.0, 2.0, 3.0, 3.3027, 3.31, 3.5, 4.0, 5.0, 8.0}) {
    const auto br = numerics::sign_change_brackets([mu](double z) { return fold_condition(z, mu); }, grid);
    EXPECT_EQ(!br.empty(), mu > mu_threshold()) << "mu = " << mu;
  }
}

TEST(FoldCondition, RootIsArgminOfEta) {
  const auto grid = numerics::uniform_grid(0.01, 0.99, 10'000);
  for (double mu : {3.5, 4.0, 5.0, 8.0}) {
    auto g = [mu](double z) { return fold_condition(z, mu); };
    const auto br = numerics::sign_change_brackets(g, grid);
    ASSERT_EQ(br.size(), 1u) << mu;
    const double root = numerics::bisect(g, br[0]);
    const auto fold = fold_point(mu);
    ASSERT_TRUE(fold.has_value());
    EXPECT_NEAR(root, fold->z, 1e-8) << "mu = " << mu;
  }
  EXPECT_NEAR(fold_point(4.0)->z, 1.0 / std::sqrt(3.0), 1e-8);
}

TEST(EtaPlus, QuotedValues) {
  EXPECT_NEAR(*eta_plus(4.0), std::sqrt(27.0 / 2.0), 1e-9);
  EXPECT_NEAR(*eta_plus(5.0), 4.41, 5e-3);
  EXPECT_FALSE(eta_plus(2.0).has_value());
  EXPECT_FALSE(eta_plus(mu_threshold()).has_value());
  EXPECT_FALSE(eta_plus(1.0).has_value());
}

TEST(EtaPlus, AgreesWithBruteForceScan) {
  // Oracle: exhaustive scan of eta(z) at resolution 1e-6.
  for (double mu : {4.0, 5.0, 8.0}) {
    double best = HUGE_VAL;
    for (int k = 1; k < 1'000'000; ++k) best = std::min(best, eta_of_z(k * 1e-6, mu));
    EXPECT_NEAR(*eta_plus(mu), best, 1e-9) << "mu = " << mu;
    EXPECT_LE(*eta_plus(mu), best);
  }
}

TEST(EtaPlus, BelowThresholdEtaIsMonotone) {
  for (double mu : {0.5, 1.0, 2.0, 3.0}) {
    double prev = eta_of_z(1e-4, mu);
    for (double z = 2e-3; z < 0.999; z += 1e-3) {
      const double cur = eta_of_z(z, mu);
      EXPECT_GT(cur, prev) << "mu = " << mu << ", z = " << z;
      prev = cur;
    }
  }
}

TEST(Charts, ConversionExamples) {
  const double r = 1.0 / std::sqrt(2.0);
  const auto a = to_phase(AmplitudePair(r, r));
  EXPECT_TRUE(a.phase_defined);
  EXPECT_NEAR(a.point.z(), 0.0, 1e-15);
  EXPECT_NEAR(a.point.theta(), 0.0, 1e-15);

  const auto b = to_phase(AmplitudePair(1.0, 0.0));
  EXPECT_FALSE(b.phase_defined);
  EXPECT_EQ(b.point.z(), 1.0);
  EXPECT_EQ(b.point.theta(), 0.0);

  const auto c = to_phase(AmplitudePair(std::polar(r, pi / 3), std::polar(r, -pi / 6)));
  EXPECT_NEAR(c.point.z(), 0.0, 1e-15);
  EXPECT_NEAR(c.point.theta(), pi / 2, 1e-14);
}

TEST(Charts, RoundTripProperty) {
  proptest::Gen gen(21);
  for (int i = 0; i < 1000; ++i) {
    const PhasePoint p(gen.uniform(-0.999, 0.999), gen.angle());
    const auto back = to_phase(to_amplitudes(p, gen.uniform(-10.0, 10.0)));
    ASSERT_TRUE(back.phase_defined);
    EXPECT_NEAR(back.point.z(), p.z(), 1e-12);
    double d = std::abs(back.point.theta() - p.theta());
    d = std::min(d, 2.0 * pi - d);
    EXPECT_LT(d, 1e-12);
  }
}

TEST(AmplitudeHamiltonian, Examples) {
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(amplitude_hamiltonian(AmplitudePair(r, r), {1.0, 1e-300}), -1.0, 1e-15);
  EXPECT_NEAR(amplitude_hamiltonian(AmplitudePair(1.0, 0.0), {1.0, 2.0}), 1.0, 1e-15);
  EXPECT_NEAR(amplitude_hamiltonian(AmplitudePair(1.0, 0.0), {1.0, 2.0}), -hamiltonian({1.0, 0.7}, {1.0, 2.0}) / 2.0,
              1e-15);
}

TEST(Properties, ChartIdentity) {
  proptest::Gen gen(31);
  for (int i = 0; i < 1000; ++i) {
    const auto a = gen.amplitudes(1e-3);
    const auto p = gen.params();
    const auto conv = to_phase(a);
    ASSERT_TRUE(conv.phase_defined);
    EXPECT_NEAR(amplitude_hamiltonian(a, p), -hamiltonian(conv.point, p) / 2.0, 1e-12);
  }
}

TEST(Properties, GradientMatchesFiniteDifferences) {
  proptest::Gen gen(32);
  const double h = 1e-6;
  for (int i = 0; i < 1000; ++i) {
    const auto p = gen.params();
    const auto x = gen.interior_point(0.95);
    const double z = x.z(), t = x.theta(), mu = p.mu(), eta = p.eta();
    const auto v = vector_field(x, p);
    const double dhdz = (h_oracle(z + h, t, mu, eta) - h_oracle(z - h, t, mu, eta)) / (2 * h);
    const double dhdt = (h_oracle(z, t + h, mu, eta) - h_oracle(z, t - h, mu, eta)) / (2 * h);
    EXPECT_NEAR(v.dtheta, dhdz, 1e-6) << "z = " << z << ", theta = " << t;
    EXPECT_NEAR(v.dz, -dhdt, 1e-6) << "z = " << z << ", theta = " << t;
  }
}

TEST(Properties, MirrorSymmetry) {
  proptest::Gen gen(33);
  for (int i = 0; i < 1000; ++i) {
    const auto p = gen.params();
    const auto x = gen.interior_point(0.99);
    const PhasePoint m(-x.z(), x.theta());
    EXPECT_NEAR(hamiltonian(x, p), hamiltonian(m, p), 1e-12 * std::max(1.0, std::abs(hamiltonian(x, p))));
    EXPECT_NEAR(f_pm(x.z(), Sign::Minus, p), -f_pm(m.z(), Sign::Minus, p),
                1e-12 * std::max(1.0, std::abs(f_pm(x.z(), Sign::Minus, p))));
    if (x.z() != 0.0) {
      EXPECT_NEAR(eta_of_z(x.z(), p.mu()), eta_of_z(m.z(), p.mu()), 1e-12 * eta_of_z(x.z(), p.mu()));
    }
  }
}
