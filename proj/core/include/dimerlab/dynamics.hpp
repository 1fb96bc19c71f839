#pragma once

// Time integration of the dimer equations in the (z, theta) chart and in the
// amplitude chart, with energy and norm monitoring.

#include <optional>
#include <variant>
#include <vector>

#include "dimerlab/dimer.hpp"

namespace dimerlab {

enum class Chart { PhaseChart, AmplitudeChart };

enum class TrajectoryStatus {
  Completed,
  /// Phase chart only: the orbit came within 10 * kEndpointGuard of z = +-1,
  /// or the step size collapsed within kPoleConditioning of it, where theta
  /// is too ill-conditioned to resolve.  The trajectory up to that point is
  /// kept; re-run in the amplitude chart.
  ChartEscape,
};

struct Trajectory {
  Chart chart;
  TrajectoryStatus status = TrajectoryStatus::Completed;
  std::vector<double> times;
  std::variant<std::vector<PhasePoint>, std::vector<AmplitudePair>> states;
  std::vector<double> energies;  // H in the phase chart, H_amp in the amplitude chart
  double energy_drift = 0.0;     // max |E(tau) - E(0)| over samples
  double norm_drift = 0.0;       // max ||a|^2 - |a(0)|^2|, amplitude chart only

  std::size_t size() const noexcept { return times.size(); }
  /// Imbalance at every sample, whatever the chart.
  std::vector<double> imbalance() const;
};

struct IntegrationOptions {
  double sample_stride = 0.01;
  /// Integrate the reversed flow (vector field negated).
  bool reverse_time = false;
};

inline constexpr double kChartEscapeDistance = 10.0 * kEndpointGuard;
inline constexpr double kPoleConditioning = 1e-5;

/// tol must lie in [1e-14, 1e-6]; |z0| <= 1 - 10 * kEndpointGuard.  Throws
/// StepUnderflow if the step size collapses for accuracy reasons away from
/// the poles.
Trajectory integrate_phase(const PhasePoint& p0, const DimerParams& params, double tau_end, double dt_init,
                           double tol, const IntegrationOptions& options = {});

Trajectory integrate_amplitudes(const AmplitudePair& a0, const DimerParams& params, double tau_end,
                                double dt_init, double tol, const IntegrationOptions& options = {});

/// Mean spacing of successive upward zero crossings of z(tau) (linear
/// interpolation between samples).  nullopt unless z changes sign at least
/// twice, e.g. for self-trapped or stationary trajectories.
std::optional<double> beating_period(const Trajectory& traj);

}  // namespace dimerlab
