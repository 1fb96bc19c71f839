#include "dimerlab/dimer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dimerlab/error.hpp"
#include "dimerlab/numerics/roots.hpp"

namespace dimerlab {

namespace {

constexpr const char* kModule = "dimer_core";
constexpr double kTwoPi = 2.0 * std::numbers::pi;

[[noreturn]] void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, kModule, msg); }

void require_interior(double z, const char* what) {
  if (!(std::abs(z) < 1.0 - kEndpointGuard)) {
    fail(ErrorKind::EndpointSingularity,
         std::string(what) + ": |z| = " + std::to_string(std::abs(z)) + " is within the endpoint guard");
  }
}

// (1+z)^mu - (1-z)^mu for |z| < 1 without cancellation near z = 0:
// (1-z)^mu * expm1(mu log((1+z)/(1-z))) and log((1+z)/(1-z)) = 2 atanh z.
template <typename Real>
Real power_difference(Real z, Real mu) {
  using std::atanh, std::expm1, std::pow;
  return pow(Real(1) - z, mu) * expm1(Real(2) * mu * atanh(z));
}

// Coarse-scan resolution and bracket tolerance for the fold search.
constexpr int kFoldScanPoints = 10'000;
constexpr double kFoldScanEdge = 1e-6;
constexpr double kFoldTolerance = 1e-12;

}  // namespace

DimerParams::DimerParams(double mu, double eta) : mu_(mu), eta_(eta) {
  if (!std::isfinite(mu) || !(mu > 0.0)) fail(ErrorKind::InvalidArgument, "mu must be finite and > 0");
  if (!std::isfinite(eta) || !(eta > 0.0)) fail(ErrorKind::InvalidArgument, "eta must be finite and > 0");
}

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

PhasePoint::PhasePoint(double z, double theta) : z_(z), theta_(0.0) {
  if (!std::isfinite(z) || z < -1.0 || z > 1.0) fail(ErrorKind::InvalidArgument, "z must lie in [-1, 1]");
  if (!std::isfinite(theta)) fail(ErrorKind::InvalidArgument, "theta must be finite");
  theta_ = wrap_angle(theta);
}

AmplitudePair::AmplitudePair(std::complex<double> a_right, std::complex<double> a_left)
    : a_r_(a_right), a_l_(a_left) {
  const double n = norm_squared();
  if (!std::isfinite(n) || std::abs(n - 1.0) > kNormTolerance) {
    fail(ErrorKind::InvalidArgument, "amplitudes must satisfy |a_R|^2 + |a_L|^2 = 1");
  }
}

AmplitudePair AmplitudePair::unchecked(std::complex<double> a_right, std::complex<double> a_left) noexcept {
  AmplitudePair a;
  a.a_r_ = a_right;
  a.a_l_ = a_left;
  return a;
}

const char* to_string(Stability s) noexcept {
  switch (s) {
    case Stability::Center: return "Center";
    case Stability::Saddle: return "Saddle";
    case Stability::Degenerate: return "Degenerate";
  }
  return "Unknown";
}

double hamiltonian(const PhasePoint& p, const DimerParams& params) {
  const double z = p.z();
  const double mu = params.mu();
  const double kinetic = 2.0 * std::sqrt(std::max(0.0, 1.0 - z * z)) * std::cos(p.theta());
  const double power_sum = std::pow(1.0 + z, mu + 1.0) + std::pow(1.0 - z, mu + 1.0);
  return kinetic - params.eta() * power_sum / (std::exp2(mu) * (mu + 1.0));
}

PhaseVelocity vector_field(const PhasePoint& p, const DimerParams& params) {
  const double z = p.z();
  require_interior(z, "vector_field");
  const double root = std::sqrt(1.0 - z * z);
  const double theta = p.theta();
  const double dz = 2.0 * root * std::sin(theta);
  const double dtheta = -2.0 * z * std::cos(theta) / root -
                        params.eta() * power_difference(z, params.mu()) / std::exp2(params.mu());
  return {dz, dtheta};
}

double f_pm(double z, Sign sign, const DimerParams& params) {
  require_interior(z, "f_pm");
  const double s = sign == Sign::Plus ? -1.0 : 1.0;
  return s * 2.0 * z / std::sqrt(1.0 - z * z) -
         params.eta() * power_difference(z, params.mu()) / std::exp2(params.mu());
}

double eta_of_z(double z, double mu) {
  if (!(mu > 0.0)) fail(ErrorKind::InvalidArgument, "eta_of_z: mu must be > 0");
  require_interior(z, "eta_of_z");
  if (z == 0.0) fail(ErrorKind::DomainError, "eta_of_z: z = 0 is a removable singularity, use eta_star");
  const double a = std::abs(z);
  return std::exp2(mu + 1.0) * a / (std::sqrt(1.0 - a * a) * power_difference(a, mu));
}

long double eta_of_z_extended(long double z, long double mu) {
  const long double a = std::abs(z);
  return std::exp2(mu + 1.0L) * a / (std::sqrt(1.0L - a * a) * power_difference(a, mu));
}

double eta_star(double mu) {
  if (!(mu > 0.0)) fail(ErrorKind::InvalidArgument, "eta_star: mu must be > 0");
  return std::exp2(mu) / mu;
}

double mu_threshold() noexcept { return (3.0 + std::sqrt(13.0)) / 2.0; }

double d2eta_at_zero(double mu) {
  if (!(mu > 0.0)) fail(ErrorKind::InvalidArgument, "d2eta_at_zero: mu must be > 0");
  return std::exp2(mu) * (3.0 * mu + 1.0 - mu * mu) / (3.0 * mu);
}

double d2eta_at_zero_over_three(double mu) { return d2eta_at_zero(mu) / 3.0; }

double g_func(double z, double mu) { return (mu * z * z - mu * z + 1.0) * std::pow(1.0 + z, mu); }

double fold_condition(double z, double mu) { return g_func(z, mu) - g_func(-z, mu); }

std::optional<FoldPoint> fold_point(double mu) {
  if (!(mu > 0.0)) fail(ErrorKind::InvalidArgument, "fold_point: mu must be > 0");
  // At and below the threshold eta(z) increases monotonically from eta*.
  if (mu <= mu_threshold() + 1e-12) return std::nullopt;

  const auto grid = numerics::uniform_grid(kFoldScanEdge, 1.0 - kFoldScanEdge, kFoldScanPoints);
  std::size_t best = 0;
  double best_eta = eta_of_z(grid[0], mu);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double e = eta_of_z(grid[i], mu);
    if (e < best_eta) {
      best_eta = e;
      best = i;
    }
  }
  const double lo = best == 0 ? 1e-9 : grid[best - 1];
  const double hi = grid[std::min(best + 1, grid.size() - 1)];

  const long double mu_l = mu;
  const auto res = numerics::golden_section_minimize(
      [mu_l](double z) { return eta_of_z_extended(z, mu_l); }, lo, hi, kFoldTolerance);
  if (!res.converged) {
    fail(ErrorKind::ConvergenceFailure, "fold_point: golden-section search did not reach 1e-12");
  }
  return FoldPoint{res.x, eta_of_z(res.x, mu)};
}

std::optional<double> eta_plus(double mu) {
  const auto fp = fold_point(mu);
  if (!fp) return std::nullopt;
  return fp->eta;
}

PhaseConversion to_phase(const AmplitudePair& a) {
  const double nr = std::norm(a.right());
  const double nl = std::norm(a.left());
  const double z = std::clamp(nr - nl, -1.0, 1.0);
  const bool defined = std::abs(a.right()) > kEndpointGuard && std::abs(a.left()) > kEndpointGuard;
  const double theta = defined ? std::arg(a.right()) - std::arg(a.left()) : 0.0;
  return {PhasePoint(z, theta), defined};
}

AmplitudePair to_amplitudes(const PhasePoint& p, double global_phase) {
  const double pr = std::sqrt(0.5 * (1.0 + p.z()));
  const double pl = std::sqrt(0.5 * (1.0 - p.z()));
  return AmplitudePair::unchecked(std::polar(pr, global_phase + p.theta()), std::polar(pl, global_phase));
}

double amplitude_hamiltonian(const AmplitudePair& a, const DimerParams& params) {
  const double mu = params.mu();
  const double coupling = -2.0 * std::real(std::conj(a.right()) * a.left());
  const double nonlinear = std::pow(std::norm(a.right()), mu + 1.0) + std::pow(std::norm(a.left()), mu + 1.0);
  return coupling + params.eta() * nonlinear / (mu + 1.0);
}

}  // namespace dimerlab
