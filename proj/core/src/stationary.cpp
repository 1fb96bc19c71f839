#include "dimerlab/stationary.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>
#include <thread>
#include <tuple>

#include "dimerlab/error.hpp"
#include "dimerlab/numerics/roots.hpp"

namespace dimerlab {

namespace {

constexpr const char* kModule = "stationary_analysis";
constexpr double kStationaryCheck = 1e-8;
constexpr double kAmbiguityTolerance = 1e-9;

[[noreturn]] void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, kModule, msg); }

StationaryPoint make_point(double z, double theta, const DimerParams& params) {
  PhasePoint p(z, theta);
  const auto [stab, product] = classify_stability(p, params);
  return {p, params, stab, product};
}

bool compatible(BranchLabel label, Stability s) {
  switch (label) {
    case BranchLabel::AsymmetricStable: return s != Stability::Saddle;
    case BranchLabel::AsymmetricUnstable: return s != Stability::Center;
    default: return false;
  }
}

BranchLabel label_for(Stability s) {
  return s == Stability::Center ? BranchLabel::AsymmetricStable : BranchLabel::AsymmetricUnstable;
}

}  // namespace

std::string_view to_string(BranchLabel label) noexcept {
  switch (label) {
    case BranchLabel::SymmetricTheta0: return "SymmetricTheta0";
    case BranchLabel::AntisymmetricThetaPi: return "AntisymmetricThetaPi";
    case BranchLabel::AsymmetricStable: return "AsymmetricStable";
    case BranchLabel::AsymmetricUnstable: return "AsymmetricUnstable";
  }
  return "Unknown";
}

StabilityResult classify_stability(const PhasePoint& point, const DimerParams& params) {
  const double cos_t = std::cos(point.theta());
  if (std::abs(std::abs(cos_t) - 1.0) > 1e-12) {
    fail(ErrorKind::InvalidArgument, "classify_stability: theta must be 0 or pi");
  }
  const auto v = vector_field(point, params);
  if (std::max(std::abs(v.dz), std::abs(v.dtheta)) >= kStationaryCheck) {
    fail(ErrorKind::NotStationary, "classify_stability: vector field does not vanish at z = " +
                                       std::to_string(point.z()));
  }
  const double z = point.z();
  const double mu = params.mu();
  const double one_minus = 1.0 - z * z;
  const double h_zz = -2.0 * cos_t * std::pow(one_minus, -1.5) -
                      params.eta() * mu * (std::pow(1.0 + z, mu - 1.0) + std::pow(1.0 - z, mu - 1.0)) /
                          std::exp2(mu);
  const double h_tt = -2.0 * std::sqrt(one_minus) * cos_t;
  const double product = h_zz * h_tt;
  Stability s = Stability::Degenerate;
  if (product > kDegenerateTolerance) {
    s = Stability::Center;
  } else if (product < -kDegenerateTolerance) {
    s = Stability::Saddle;
  }
  return {s, product};
}

std::vector<StationaryPoint> find_stationary_points(const DimerParams& params,
                                                    const StationarySearchOptions& options) {
  std::vector<StationaryPoint> out;
  out.push_back(make_point(0.0, 0.0, params));
  out.push_back(make_point(0.0, std::numbers::pi, params));

#ifndef NDEBUG
  {
    // f_+ is strictly decreasing for eta > 0, so z = 0 is its only root.
    const auto g = numerics::uniform_grid(options.edge, 1.0 - options.edge, options.grid_points / 2);
    for (double z : g) assert(f_pm(z, Sign::Plus, params) < 0.0);
  }
#endif

  // f_- is odd: scan (0, 1) and mirror.  The grid stays clear of z = 0, where
  // f_- always vanishes.
  const auto f = [&params](double z) { return f_pm(z, Sign::Minus, params); };
  const auto grid = numerics::uniform_grid(options.edge, 1.0 - options.edge, options.grid_points / 2);
  std::vector<double> roots;
  for (const auto& b : numerics::sign_change_brackets(f, grid)) roots.push_back(numerics::bisect(f, b));

  std::vector<StationaryPoint> asym;
  for (double z : roots) {
    asym.push_back(make_point(z, std::numbers::pi, params));
    asym.push_back(make_point(-z, std::numbers::pi, params));
  }
  std::sort(asym.begin(), asym.end(),
            [](const StationaryPoint& a, const StationaryPoint& b) { return a.point.z() < b.point.z(); });
  out.insert(out.end(), asym.begin(), asym.end());
  return out;
}

std::vector<Branch> bifurcation_diagram(double mu, double eta_lo, double eta_hi, std::size_t n_samples,
                                        const BifurcationOptions& options) {
  if (!(eta_lo > 0.0) || !(eta_hi > eta_lo)) fail(ErrorKind::InvalidArgument, "need 0 < eta_lo < eta_hi");
  if (n_samples < 2) fail(ErrorKind::InvalidArgument, "need at least 2 eta samples");

  const auto etas = numerics::uniform_grid(eta_lo, eta_hi, n_samples);
  std::vector<std::vector<StationaryPoint>> per_eta(n_samples);

  unsigned workers = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n_samples));
  {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < n_samples; i += workers) {
            per_eta[i] = find_stationary_points(DimerParams(mu, etas[i]), options.search);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    pool.clear();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::vector<Branch> branches;
  branches.push_back({BranchLabel::SymmetricTheta0, 0.0, {}});
  branches.push_back({BranchLabel::AntisymmetricThetaPi, std::numbers::pi, {}});
  std::vector<std::size_t> active;

  for (std::size_t i = 0; i < n_samples; ++i) {
    const double eta = etas[i];
    std::vector<const StationaryPoint*> cands;
    for (const auto& sp : per_eta[i]) {
      if (sp.point.z() == 0.0) {
        branches[sp.point.theta() == 0.0 ? 0 : 1].samples.push_back({eta, 0.0, sp.stability});
      } else {
        cands.push_back(&sp);
      }
    }

    // Candidate continuations: (distance, active slot, candidate).
    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < active.size(); ++a) {
      const Branch& br = branches[active[a]];
      const double last_z = br.samples.back().z;
      double best = INFINITY, second = INFINITY;
      for (std::size_t c = 0; c < cands.size(); ++c) {
        const double z = cands[c]->point.z();
        if (std::signbit(z) != std::signbit(last_z) || !compatible(br.label, cands[c]->stability)) continue;
        const double d = std::abs(z - last_z);
        if (d >= options.jump_guard) continue;
        pairs.emplace_back(d, a, c);
        if (d < best) {
          second = best;
          best = d;
        } else if (d < second) {
          second = d;
        }
      }
      if (second - best <= kAmbiguityTolerance) {
        fail(ErrorKind::BranchMatchingAmbiguous,
             "two continuations of branch " + std::to_string(active[a]) + " at eta = " + std::to_string(eta));
      }
    }
    std::sort(pairs.begin(), pairs.end());

    std::vector<bool> branch_taken(active.size(), false), cand_taken(cands.size(), false);
    for (const auto& [d, a, c] : pairs) {
      if (branch_taken[a] || cand_taken[c]) continue;
      branch_taken[a] = cand_taken[c] = true;
      branches[active[a]].samples.push_back({eta, cands[c]->point.z(), cands[c]->stability});
    }

    std::vector<std::size_t> next_active;
    for (std::size_t a = 0; a < active.size(); ++a) {
      if (branch_taken[a]) next_active.push_back(active[a]);
    }
    for (std::size_t c = 0; c < cands.size(); ++c) {
      if (cand_taken[c]) continue;
      Branch br{label_for(cands[c]->stability), std::numbers::pi, {}};
      br.samples.push_back({eta, cands[c]->point.z(), cands[c]->stability});
      next_active.push_back(branches.size());
      branches.push_back(std::move(br));
    }
    active = std::move(next_active);
  }
  return branches;
}

PhasePortrait phase_portrait(const DimerParams& params, std::size_t nz, std::size_t ntheta) {
  if (nz < 16 || ntheta < 16) fail(ErrorKind::InvalidArgument, "phase portrait lattice must be at least 16x16");
  PhasePortrait pp{params, numerics::uniform_grid(-1.0, 1.0, nz), {}, {}, {}, {}};
  pp.theta_values.resize(ntheta);
  for (std::size_t j = 0; j < ntheta; ++j) {
    pp.theta_values[j] = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(ntheta);
  }
  pp.energy.resize(nz * ntheta);
  for (std::size_t i = 0; i < nz; ++i) {
    for (std::size_t j = 0; j < ntheta; ++j) {
      pp.energy[i * ntheta + j] = hamiltonian(PhasePoint(pp.z_values[i], pp.theta_values[j]), params);
    }
  }
  pp.fixed_points = find_stationary_points(params);
  for (const auto& sp : pp.fixed_points) {
    if (sp.stability == Stability::Saddle) pp.separatrix_energies.push_back(hamiltonian(sp.point, params));
  }
  return pp;
}

}  // namespace dimerlab
