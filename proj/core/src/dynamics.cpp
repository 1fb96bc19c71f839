#include "dimerlab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "dimerlab/error.hpp"
#include "dimerlab/numerics/ode.hpp"

namespace dimerlab {

namespace {

constexpr const char* kModule = "dynamics";

[[noreturn]] void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, kModule, msg); }

void check_common(double tau_end, double dt_init, double tol, const IntegrationOptions& options) {
  if (!(tau_end > 0.0) || !std::isfinite(tau_end)) fail(ErrorKind::InvalidArgument, "tau_end must be > 0");
  if (!(dt_init > 0.0)) fail(ErrorKind::InvalidArgument, "dt_init must be > 0");
  if (!(tol >= 1e-14 && tol <= 1e-6)) fail(ErrorKind::InvalidArgument, "tol must lie in [1e-14, 1e-6]");
  if (!(options.sample_stride > 0.0)) fail(ErrorKind::InvalidArgument, "sample_stride must be > 0");
}

numerics::OdeSettings settings_for(double tau_end, double dt_init, double tol, const IntegrationOptions& o) {
  numerics::OdeSettings s;
  s.t_end = tau_end;
  s.dt_init = dt_init;
  s.tol = tol;
  s.sample_stride = o.sample_stride;
  return s;
}

void handle_failure(numerics::OdeStatus status, double tau) {
  if (status == numerics::OdeStatus::StepUnderflow) {
    fail(ErrorKind::StepUnderflow, "step size fell below 1e-14 near tau = " + std::to_string(tau));
  }
  if (status == numerics::OdeStatus::StepBudgetExceeded) {
    fail(ErrorKind::StepUnderflow, "step budget exhausted near tau = " + std::to_string(tau));
  }
}

}  // namespace

std::vector<double> Trajectory::imbalance() const {
  std::vector<double> z;
  z.reserve(times.size());
  if (const auto* ps = std::get_if<std::vector<PhasePoint>>(&states)) {
    for (const auto& p : *ps) z.push_back(p.z());
  } else {
    for (const auto& a : std::get<std::vector<AmplitudePair>>(states)) {
      z.push_back(std::norm(a.right()) - std::norm(a.left()));
    }
  }
  return z;
}

Trajectory integrate_phase(const PhasePoint& p0, const DimerParams& params, double tau_end, double dt_init,
                           double tol, const IntegrationOptions& options) {
  check_common(tau_end, dt_init, tol, options);
  const double z_limit = 1.0 - kChartEscapeDistance;
  if (std::abs(p0.z()) > z_limit) fail(ErrorKind::InvalidArgument, "|z0| must be <= 1 - 10 * endpoint guard");

  const double dir = options.reverse_time ? -1.0 : 1.0;
  // Stages may probe up to the singularity guard, so an orbit heading for
  // z = +-1 is accepted past z_limit and stops instead of creeping towards it.
  const double stage_limit = 1.0 - kEndpointGuard;
  auto rhs = [&](const numerics::Vec<2>& y, numerics::Vec<2>& dy) {
    if (!(std::abs(y[0]) < stage_limit) || !std::isfinite(y[1])) return false;
    const auto v = vector_field(PhasePoint(y[0], y[1]), params);
    dy = {dir * v.dz, dir * v.dtheta};
    return true;
  };
  double z_last = p0.z();
  auto post = [&](numerics::Vec<2>& y) {
    y[1] = wrap_angle(y[1]);
    z_last = y[0];
    return std::abs(y[0]) < z_limit;
  };

  Trajectory traj{Chart::PhaseChart, TrajectoryStatus::Completed, {}, std::vector<PhasePoint>{}, {}, 0.0, 0.0};
  auto& states = std::get<std::vector<PhasePoint>>(traj.states);
  auto observe = [&](double t, const numerics::Vec<2>& y) {
    const PhasePoint p(y[0], y[1]);
    const double e = hamiltonian(p, params);
    traj.times.push_back(t);
    states.push_back(p);
    traj.energies.push_back(e);
    traj.energy_drift = std::max(traj.energy_drift, std::abs(e - traj.energies.front()));
  };

  const auto status = numerics::integrate_dp45<2>(rhs, {p0.z(), p0.theta()},
                                                  settings_for(tau_end, dt_init, tol, options), post, observe);
  const bool near_pole = 1.0 - std::abs(z_last) < kPoleConditioning;
  if (status == numerics::OdeStatus::DomainExit ||
      (near_pole && status != numerics::OdeStatus::Completed)) {
    traj.status = TrajectoryStatus::ChartEscape;
  } else {
    handle_failure(status, traj.times.empty() ? 0.0 : traj.times.back());
  }
  return traj;
}

Trajectory integrate_amplitudes(const AmplitudePair& a0, const DimerParams& params, double tau_end,
                                double dt_init, double tol, const IntegrationOptions& options) {
  check_common(tau_end, dt_init, tol, options);
  const double dir = options.reverse_time ? -1.0 : 1.0;
  const double mu = params.mu();
  const double eta = params.eta();

  // a' = i a_other - i eta |a|^(2 mu) a, split into real and imaginary parts.
  auto rhs = [&](const numerics::Vec<4>& y, numerics::Vec<4>& dy) {
    const double gr = eta * std::pow(y[0] * y[0] + y[1] * y[1], mu);
    const double gl = eta * std::pow(y[2] * y[2] + y[3] * y[3], mu);
    dy[0] = dir * (-y[3] + gr * y[1]);
    dy[1] = dir * (y[2] - gr * y[0]);
    dy[2] = dir * (-y[1] + gl * y[3]);
    dy[3] = dir * (y[0] - gl * y[2]);
    return std::isfinite(dy[0] + dy[1] + dy[2] + dy[3]);
  };
  auto post = [](numerics::Vec<4>&) { return true; };

  Trajectory traj{Chart::AmplitudeChart, TrajectoryStatus::Completed, {}, std::vector<AmplitudePair>{}, {}, 0.0,
                  0.0};
  auto& states = std::get<std::vector<AmplitudePair>>(traj.states);
  const double norm0 = a0.norm_squared();
  auto observe = [&](double t, const numerics::Vec<4>& y) {
    const auto a = AmplitudePair::unchecked({y[0], y[1]}, {y[2], y[3]});
    const double e = amplitude_hamiltonian(a, params);
    traj.times.push_back(t);
    states.push_back(a);
    traj.energies.push_back(e);
    traj.energy_drift = std::max(traj.energy_drift, std::abs(e - traj.energies.front()));
    traj.norm_drift = std::max(traj.norm_drift, std::abs(a.norm_squared() - norm0));
  };

  const numerics::Vec<4> y0{a0.right().real(), a0.right().imag(), a0.left().real(), a0.left().imag()};
  const auto status =
      numerics::integrate_dp45<4>(rhs, y0, settings_for(tau_end, dt_init, tol, options), post, observe);
  if (status != numerics::OdeStatus::Completed) {
    if (status == numerics::OdeStatus::DomainExit) fail(ErrorKind::StepUnderflow, "non-finite amplitudes");
    handle_failure(status, traj.times.empty() ? 0.0 : traj.times.back());
  }
  return traj;
}

std::optional<double> beating_period(const Trajectory& traj) {
  // Hysteresis keeps round-off wiggles of a z = 0 trajectory from counting.
  constexpr double kArm = 1e-8;
  const auto z = traj.imbalance();
  const auto& t = traj.times;
  std::vector<double> crossings;
  bool armed = false;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] < -kArm) armed = true;
    if (armed && i > 0 && z[i - 1] < 0.0 && z[i] >= 0.0) {
      const double frac = -z[i - 1] / (z[i] - z[i - 1]);
      crossings.push_back(t[i - 1] + frac * (t[i] - t[i - 1]));
      armed = false;
    }
  }
  if (crossings.size() < 2) return std::nullopt;
  return (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
}

}  // namespace dimerlab
