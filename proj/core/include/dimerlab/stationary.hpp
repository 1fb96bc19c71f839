#pragma once

// Stationary points of the dimer flow, their stability, continuation over eta
// into bifurcation branches, and phase-portrait sampling.

#include <cstddef>
#include <string_view>
#include <vector>

#include "dimerlab/dimer.hpp"

namespace dimerlab {

/// |H_zz * H_theta_theta| at or below this is reported as Degenerate.
inline constexpr double kDegenerateTolerance = 1e-9;

struct StabilityResult {
  Stability stability;
  double hessian_product;
};

struct StationaryPoint {
  PhasePoint point;
  DimerParams params;
  Stability stability;
  double hessian_product;
};

/// Center/saddle test at a stationary point with theta in {0, pi}.  Throws
/// NotStationary if the vector field does not vanish (to 1e-8).
StabilityResult classify_stability(const PhasePoint& point, const DimerParams& params);

struct StationarySearchOptions {
  /// Sign-change scan resolution over (-1 + edge, 1 - edge).
  std::size_t grid_points = 10'000;
  double edge = 1e-6;
};

/// All fixed points: (0, 0) and (0, pi) always, then the nonzero roots of
/// f_-(z) on theta = pi ordered by z.
std::vector<StationaryPoint> find_stationary_points(const DimerParams& params,
                                                    const StationarySearchOptions& options = {});

enum class BranchLabel { SymmetricTheta0, AntisymmetricThetaPi, AsymmetricStable, AsymmetricUnstable };

std::string_view to_string(BranchLabel label) noexcept;

struct BranchSample {
  double eta;
  double z;
  Stability stability;
};

struct Branch {
  BranchLabel label;
  double theta;  // 0 or pi
  std::vector<BranchSample> samples;
};

struct BifurcationOptions {
  /// Largest |dz| between consecutive samples still threaded into one branch.
  double jump_guard = 0.1;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  StationarySearchOptions search{};
};

/// Stationary points for n_samples strengths uniformly spaced over
/// [eta_lo, eta_hi], threaded into branches by nearest-z continuation.  The
/// output is independent of the thread count.
std::vector<Branch> bifurcation_diagram(double mu, double eta_lo, double eta_hi, std::size_t n_samples,
                                        const BifurcationOptions& options = {});

struct PhasePortrait {
  DimerParams params;
  std::vector<double> z_values;      // nz points spanning [-1, 1]
  std::vector<double> theta_values;  // ntheta points spanning [0, 2 pi)
  std::vector<double> energy;        // row-major, energy[i * ntheta + j] = H(z_i, theta_j)
  std::vector<StationaryPoint> fixed_points;
  std::vector<double> separatrix_energies;  // one entry per Saddle, in fixed_points order

  double at(std::size_t iz, std::size_t itheta) const { return energy[iz * theta_values.size() + itheta]; }
};

inline constexpr std::size_t kDefaultPortraitResolution = 401;

PhasePortrait phase_portrait(const DimerParams& params, std::size_t nz = kDefaultPortraitResolution,
                             std::size_t ntheta = kDefaultPortraitResolution);

}  // namespace dimerlab
