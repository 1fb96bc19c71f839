#pragma once

// Seeded random inputs for property tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

#include "dimerlab/dimer.hpp"

namespace dimerlab::proptest {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  double angle() { return uniform(0.0, 2.0 * std::numbers::pi); }

  DimerParams params(double mu_lo = 0.2, double mu_hi = 8.0, double eta_lo = 0.05, double eta_hi = 10.0) {
    const double mu = uniform(mu_lo, mu_hi);
    const double eta = uniform(eta_lo, eta_hi);
    return {mu, eta};
  }

  PhasePoint interior_point(double z_max = 0.99) { return {uniform(-z_max, z_max), angle()}; }

  /// Unit-norm pair with min(|a_R|, |a_L|) > min_modulus.
  AmplitudePair amplitudes(double min_modulus = 0.0) {
    const double lo = min_modulus * min_modulus;
    const double pr = uniform(lo, 1.0 - lo);
    const double r = std::sqrt(pr);
    const double l = std::sqrt(1.0 - pr);
    return AmplitudePair::unchecked(std::polar(r, angle()), std::polar(l, angle()));
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace dimerlab::proptest
