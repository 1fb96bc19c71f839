#pragma once

// Closed-form mathematics of the two-mode (dimer) model of a nonlinear
// Schroedinger equation in a symmetric double well.
//
// Amplitudes (a_R, a_L) evolve by
//     i a_R' = -a_L + eta |a_R|^(2 mu) a_R
//     i a_L' = -a_R + eta |a_L|^(2 mu) a_L
// and, in the chart z = |a_R|^2 - |a_L|^2, theta = arg a_R - arg a_L, by the
// canonical equations theta' = dH/dz, z' = -dH/dtheta with
//     H(z, theta) = 2 sqrt(1 - z^2) cos(theta)
//                   - eta [(1+z)^(mu+1) + (1-z)^(mu+1)] / (2^mu (mu+1)).

#include <complex>
#include <optional>

namespace dimerlab {

/// Guard distance from the chart singularity at z = +-1.
inline constexpr double kEndpointGuard = 1e-12;

/// Nonlinearity power mu and dimensionless strength eta, both > 0 and finite.
class DimerParams {
 public:
  DimerParams(double mu, double eta);

  double mu() const noexcept { return mu_; }
  double eta() const noexcept { return eta_; }

 private:
  double mu_;
  double eta_;
};

/// Imbalance z in [-1, 1] and relative phase theta in [0, 2 pi).
class PhasePoint {
 public:
  PhasePoint(double z, double theta);

  double z() const noexcept { return z_; }
  double theta() const noexcept { return theta_; }

 private:
  double z_;
  double theta_;
};

/// Wraps an angle into [0, 2 pi).
double wrap_angle(double theta);

/// Complex mode amplitudes on the unit sphere |a_R|^2 + |a_L|^2 = 1.
class AmplitudePair {
 public:
  static constexpr double kNormTolerance = 1e-12;

  AmplitudePair(std::complex<double> a_right, std::complex<double> a_left);

  /// No normalization check; for integrator states whose norm drift is a
  /// diagnostic rather than a contract violation.
  static AmplitudePair unchecked(std::complex<double> a_right, std::complex<double> a_left) noexcept;

  std::complex<double> right() const noexcept { return a_r_; }
  std::complex<double> left() const noexcept { return a_l_; }
  double norm_squared() const noexcept { return std::norm(a_r_) + std::norm(a_l_); }

 private:
  AmplitudePair() = default;
  std::complex<double> a_r_;
  std::complex<double> a_l_;
};

enum class Stability { Center, Saddle, Degenerate };

const char* to_string(Stability s) noexcept;

enum class Sign { Plus, Minus };

struct PhaseVelocity {
  double dz;
  double dtheta;
};

double hamiltonian(const PhasePoint& p, const DimerParams& params);

/// (dz/dtau, dtheta/dtau).  Throws EndpointSingularity within the guard of
/// z = +-1, where the amplitude chart must be used instead.
PhaseVelocity vector_field(const PhasePoint& p, const DimerParams& params);

/// Stationarity function along theta = 0 (Plus) or theta = pi (Minus):
///     f(z) = -+ 2z / sqrt(1 - z^2) - eta [(1+z)^mu - (1-z)^mu] 2^-mu.
double f_pm(double z, Sign sign, const DimerParams& params);

/// Strength at which z is a theta = pi stationary point, for z in (0, 1);
/// extended evenly to (-1, 0).  z = 0 is a DomainError (use eta_star).
double eta_of_z(double z, double mu);

/// Same as eta_of_z with extended-precision arithmetic; used where eta(z)
/// must be compared near its flat minimum.
long double eta_of_z_extended(long double z, long double mu);

/// Pitchfork strength 2^mu / mu = lim_{z -> 0} eta(z).
double eta_star(double mu);

/// (3 + sqrt 13) / 2, the positive root of mu^2 - 3 mu - 1.
double mu_threshold() noexcept;

/// Second derivative of eta(z) at z = 0:  2^mu (3 mu + 1 - mu^2) / (3 mu).
double d2eta_at_zero(double mu);

/// Same numerator over 9 mu: one third of d2eta_at_zero, with the same sign
/// and zeros.  Kept for comparison with that normalization.
double d2eta_at_zero_over_three(double mu);

/// g(z, mu) = (mu z^2 - mu z + 1)(1 + z)^mu.
double g_func(double z, double mu);

/// g(z) - g(-z); vanishes exactly where d eta / dz = 0 on (0, 1).
double fold_condition(double z, double mu);

struct FoldPoint {
  double z;
  double eta;
};

/// Interior minimum of eta(z) on (0, 1) (the saddle-node point), present only
/// for mu > mu_threshold().
std::optional<FoldPoint> fold_point(double mu);

/// Saddle-node strength eta+ = min_{0<z<1} eta(z); nullopt when
/// mu <= mu_threshold() (callers then treat eta+ as eta*).
std::optional<double> eta_plus(double mu);

struct PhaseConversion {
  PhasePoint point;
  bool phase_defined;
};

/// (a_R, a_L) -> (z, theta).  When either amplitude is below the guard the
/// phase is meaningless: theta is set to 0 and phase_defined is false.
PhaseConversion to_phase(const AmplitudePair& a);

/// (z, theta) -> amplitudes with a_R = p e^{i(gamma + theta)}, a_L = q e^{i gamma}.
AmplitudePair to_amplitudes(const PhasePoint& p, double global_phase = 0.0);

/// Conserved energy of the amplitude equations,
///     -(conj(a_R) a_L + conj(a_L) a_R) + eta (|a_R|^(2mu+2) + |a_L|^(2mu+2)) / (mu+1),
/// equal to -H/2 in the phase chart.
double amplitude_hamiltonian(const AmplitudePair& a, const DimerParams& params);

}  // namespace dimerlab
