#include "dimerlab/reduction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <tuple>

#include "dimerlab/error.hpp"
#include "dimerlab/numerics/tridiagonal.hpp"

namespace dimerlab {

namespace {

constexpr const char* kModule = "semiclassical_reduction";
constexpr double kCSymmetryTolerance = 1e-8;
constexpr int kMaxWidenings = 20;

[[noreturn]] void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, kModule, msg); }

std::size_t make_odd(std::size_t n) { return n % 2 == 1 ? n : n + 1; }

// Nodes -L .. L, exactly antisymmetric about the middle node x = 0.
std::vector<double> symmetric_grid(double half_width, std::size_t n) {
  std::vector<double> x(n);
  const std::size_t mid = n / 2;
  const double h = half_width / static_cast<double>(mid);
  x[mid] = 0.0;
  for (std::size_t k = 1; k <= mid; ++k) {
    const double v = k == mid ? half_width : h * static_cast<double>(k);
    x[mid + k] = v;
    x[mid - k] = -v;
  }
  return x;
}

struct Eigenvalues {
  std::array<double, 3> lambda;
};

// The discrete Hamiltonian on the full grid, or its restriction to the even
// and odd sectors when V is symmetric.  With psi_0 scaled by 1/sqrt(2) the
// even block stays symmetric; the odd block pins psi(0) = 0.
struct Operators {
  bool split = false;
  numerics::SymTridiagonal full;
  numerics::SymTridiagonal even;
  numerics::SymTridiagonal odd;
};

Operators build_operators(const Potential& v, double hbar, const std::vector<double>& x, bool split) {
  const std::size_t n = x.size();
  const double h = x[1] - x[0];
  const double kin = hbar * hbar / (h * h);
  const double off = -0.5 * kin;
  Operators ops;
  ops.split = split;
  if (!split) {
    ops.full.diag.resize(n - 2);
    ops.full.off.assign(n - 3, off);
    for (std::size_t i = 1; i + 1 < n; ++i) ops.full.diag[i - 1] = kin + v(x[i]);
    return ops;
  }
  const std::size_t mid = n / 2;
  ops.even.diag.resize(mid);
  for (std::size_t j = 0; j < mid; ++j) ops.even.diag[j] = kin + v(x[mid + j]);
  ops.even.off.assign(mid - 1, off);
  ops.even.off[0] = std::numbers::sqrt2 * off;
  ops.odd.diag.assign(ops.even.diag.begin() + 1, ops.even.diag.end());
  ops.odd.off.assign(mid - 2, off);
  return ops;
}

Eigenvalues lowest_three(const Operators& ops) {
  using numerics::kth_eigenvalue;
  if (!ops.split) {
    return {{kth_eigenvalue(ops.full, 0), kth_eigenvalue(ops.full, 1), kth_eigenvalue(ops.full, 2)}};
  }
  return {{kth_eigenvalue(ops.even, 0), kth_eigenvalue(ops.odd, 0),
           std::min(kth_eigenvalue(ops.even, 1), kth_eigenvalue(ops.odd, 1))}};
}

// On a refined grid the eigenvalues move by O(h^2); bracket around the
// coarse values.
Eigenvalues lowest_three(const Operators& ops, const Eigenvalues& coarse) {
  auto near = [&](const numerics::SymTridiagonal& t, std::size_t k, double c) {
    const double w = 1e-3 * std::max(1.0, std::abs(c));
    return numerics::kth_eigenvalue(t, k, c - w, c + w);
  };
  const auto& l = coarse.lambda;
  if (!ops.split) return {{near(ops.full, 0, l[0]), near(ops.full, 1, l[1]), near(ops.full, 2, l[2])}};
  return {{near(ops.even, 0, l[0]), near(ops.odd, 0, l[1]),
           std::min(numerics::kth_eigenvalue(ops.even, 1), numerics::kth_eigenvalue(ops.odd, 1))}};
}

// Lowest two eigenvectors on the full grid (Dirichlet nodes included).
std::pair<std::vector<double>, std::vector<double>> eigenvectors(const Operators& ops, const Eigenvalues& ev,
                                                                 std::size_t n) {
  std::vector<double> plus(n, 0.0), minus(n, 0.0);
  if (!ops.split) {
    const auto v0 = numerics::inverse_iteration(ops.full, ev.lambda[0]);
    const std::vector<std::vector<double>> deflate{v0};
    const auto v1 = numerics::inverse_iteration(ops.full, ev.lambda[1], deflate);
    std::copy(v0.begin(), v0.end(), plus.begin() + 1);
    std::copy(v1.begin(), v1.end(), minus.begin() + 1);
    return {plus, minus};
  }
  const std::size_t mid = n / 2;
  const auto ue = numerics::inverse_iteration(ops.even, ev.lambda[0]);
  const auto uo = numerics::inverse_iteration(ops.odd, ev.lambda[1]);
  plus[mid] = std::numbers::sqrt2 * ue[0];
  for (std::size_t j = 1; j < ue.size(); ++j) plus[mid + j] = plus[mid - j] = ue[j];
  for (std::size_t j = 1; j <= uo.size(); ++j) {
    minus[mid + j] = uo[j - 1];
    minus[mid - j] = -uo[j - 1];
  }
  return {plus, minus};
}

double second_derivative(const Potential& v, double x) {
  const double h = 1e-4 * std::max(1.0, std::abs(x));
  return (v(x + h) - 2.0 * v(x) + v(x - h)) / (h * h);
}

// 3x the outer turning point of the harmonic estimate of the lowest level.
double default_half_width(const Potential& v, double hbar) {
  const double xw = v.well_position();
  const double curvature = second_derivative(v, xw);
  if (!(curvature > 0.0)) fail(ErrorKind::InvalidPotential, "potential minimum is not quadratic (V'' <= 0)");
  const double energy = v(xw) + 0.5 * hbar * std::sqrt(curvature);
  double step = std::max(0.1, 0.1 * xw);
  double lo = xw;
  double hi = xw + step;
  while (v(hi) < energy) {
    lo = hi;
    step *= 2.0;
    hi += step;
    if (hi > v.max_extent() || step > 1e6) {
      fail(ErrorKind::InvalidPotential, "no classical turning point for the estimated doublet energy");
    }
  }
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (v(mid) < energy ? lo : hi) = mid;
  }
  return std::min(3.0 * hi, v.max_extent());
}

void check_double_well(const Potential& v, const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> vals(n);
  for (std::size_t i = 0; i < n; ++i) vals[i] = v(x[i]);
  for (std::size_t i = 0; i < n / 2; ++i) {
    const double a = vals[i];
    const double b = vals[n - 1 - i];
    if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a))) {
      fail(ErrorKind::InvalidPotential, "V(-x) != V(x) at x = " + std::to_string(x[n - 1 - i]));
    }
  }
  std::vector<std::size_t> minima;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (vals[i] < vals[i - 1] && vals[i] <= vals[i + 1]) minima.push_back(i);
  }
  const std::size_t mid = n / 2;
  if (minima.size() != 2 || minima[0] + minima[1] != n - 1 || !(vals[minima[0]] < vals[mid])) {
    fail(ErrorKind::InvalidPotential, "potential must have exactly two minima at +-x with V(+-x) < V(0); found " +
                                          std::to_string(minima.size()));
  }
}

}  // namespace

double trapezoid(const std::vector<double>& f, double h) {
  if (f.size() < 2) return 0.0;
  double s = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
  return s * h;
}

ReductionResult solve_doublet(const PotentialSpec& spec, const ReductionOptions& options) {
  const Potential& v = spec.potential;
  if (!(spec.hbar > 0.0) || !std::isfinite(spec.hbar)) fail(ErrorKind::InvalidArgument, "hbar must be > 0");
  if (spec.grid_points < 128) fail(ErrorKind::InvalidArgument, "grid_points must be >= 128");
  if (v.family() == PotentialFamily::Harmonic && !options.validation_mode) {
    fail(ErrorKind::InvalidPotential, "the harmonic family is a single well (validation mode only)");
  }

  double half_width = spec.domain_half_width ? *spec.domain_half_width : default_half_width(v, spec.hbar);
  if (!(half_width > 0.0)) fail(ErrorKind::InvalidArgument, "domain half-width must be > 0");
  if (half_width > v.max_extent()) {
    fail(ErrorKind::InvalidPotential, "domain half-width exceeds the tabulated range");
  }

  std::size_t n = make_odd(spec.grid_points);
  if (!options.validation_mode) check_double_well(v, symmetric_grid(half_width, n));

  const bool split = !options.validation_mode;
  for (int widen = 0;; ++widen) {
    std::vector<double> x = symmetric_grid(half_width, n);
    Operators ops = build_operators(v, spec.hbar, x, split);
    Eigenvalues ev = lowest_three(ops);

    if (!options.fixed_grid) {
      for (;;) {
        const std::size_t finer = 2 * n - 1;
        if (finer > options.max_grid_points) {
          fail(ErrorKind::GridCapExceeded, "eigenvalues not converged to rel. " +
                                               std::to_string(options.eigen_rel_tolerance) + " at " +
                                               std::to_string(n) + " grid points");
        }
        auto x_f = symmetric_grid(half_width, finer);
        auto ops_f = build_operators(v, spec.hbar, x_f, split);
        const Eigenvalues ev_f = lowest_three(ops_f, ev);
        bool converged = true;
        for (int k = 0; k < 2; ++k) {
          if (std::abs(ev_f.lambda[k] - ev.lambda[k]) > options.eigen_rel_tolerance * std::abs(ev_f.lambda[k])) {
            converged = false;
          }
        }
        n = finer;
        x = std::move(x_f);
        ops = std::move(ops_f);
        ev = ev_f;
        if (converged) break;
      }
    }

    ReductionResult r;
    r.hbar = spec.hbar;
    r.half_width = half_width;
    r.x = x;
    r.lambda_plus = ev.lambda[0];
    r.lambda_minus = ev.lambda[1];
    r.lambda_next = ev.lambda[2];
    std::tie(r.phi_plus, r.phi_minus) = eigenvectors(ops, ev, n);

    const std::size_t mid = n / 2;
    if (options.validation_mode) {
      for (auto* phi : {&r.phi_plus, &r.phi_minus}) {
        const auto it = std::max_element(phi->begin(), phi->end(),
                                         [](double a, double b) { return std::abs(a) < std::abs(b); });
        if (*it < 0.0) std::ranges::for_each(*phi, [](double& y) { y = -y; });
      }
    } else {
      if (r.phi_plus[mid] < 0.0) std::ranges::for_each(r.phi_plus, [](double& y) { y = -y; });
      if (r.phi_minus[mid + 1] - r.phi_minus[mid - 1] < 0.0) {
        std::ranges::for_each(r.phi_minus, [](double& y) { y = -y; });
      }
    }

    const double h = r.grid_spacing();
    for (auto* phi : {&r.phi_plus, &r.phi_minus}) {
      std::vector<double> sq(phi->size());
      std::transform(phi->begin(), phi->end(), sq.begin(), [](double y) { return y * y; });
      const double scale = 1.0 / std::sqrt(trapezoid(sq, h));
      for (double& y : *phi) y *= scale;
    }

    // Eigenfunctions must have decayed before the Dirichlet wall.
    const double edge = std::max({std::abs(r.phi_minus[1]), std::abs(r.phi_minus[n - 2]),
                                  std::abs(r.phi_plus[1]), std::abs(r.phi_plus[n - 2])});
    if (edge >= options.boundary_amplitude) {
      if (widen >= kMaxWidenings || half_width >= v.max_extent()) {
        fail(ErrorKind::InvalidPotential, "eigenfunctions do not decay inside the available domain");
      }
      const double wider = std::min(1.5 * half_width, v.max_extent());
      n = make_odd(static_cast<std::size_t>(std::ceil(static_cast<double>(n) * wider / half_width)));
      half_width = wider;
      continue;
    }

    r.omega = 0.5 * (r.lambda_minus - r.lambda_plus);
    r.Omega = 0.5 * (r.lambda_plus + r.lambda_minus);
    r.beating_period_T = 2.0 * std::numbers::pi * spec.hbar / r.omega;

    if (!options.validation_mode) {
      if (!(r.omega > 0.0)) fail(ErrorKind::NoDoubletGap, "doublet is degenerate to working precision");
      const double ratio = (r.lambda_next - r.lambda_minus) / (r.lambda_minus - r.lambda_plus);
      if (!(ratio >= options.min_gap_ratio) || !(r.lambda_next > r.lambda_minus)) {
        fail(ErrorKind::NoDoubletGap, "(lambda_2 - lambda_-) / (lambda_- - lambda_+) = " + std::to_string(ratio) +
                                          " is below " + std::to_string(options.min_gap_ratio));
      }
    }

    r.phi_R.resize(n);
    r.phi_L.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
      r.phi_R[i] = (r.phi_plus[i] + r.phi_minus[i]) / std::numbers::sqrt2;
      r.phi_L[i] = (r.phi_plus[i] - r.phi_minus[i]) / std::numbers::sqrt2;
      r.overlap = std::max(r.overlap, std::abs(r.phi_R[i] * r.phi_L[i]));
    }
    return r;
  }
}

double compute_c(ReductionResult& result, double mu) {
  if (!(mu >= 0.0)) fail(ErrorKind::InvalidArgument, "compute_c: mu must be >= 0");
  const double p = 2.0 * mu + 2.0;
  std::vector<double> fr(result.x.size()), fl(result.x.size());
  for (std::size_t i = 0; i < fr.size(); ++i) {
    fr[i] = std::pow(std::abs(result.phi_R[i]), p);
    fl[i] = std::pow(std::abs(result.phi_L[i]), p);
  }
  const double h = result.grid_spacing();
  const double cr = trapezoid(fr, h);
  const double cl = trapezoid(fl, h);
  if (std::abs(cr - cl) > kCSymmetryTolerance * std::abs(cr)) {
    fail(ErrorKind::SymmetryViolation,
         "c from phi_R (" + std::to_string(cr) + ") and phi_L (" + std::to_string(cl) + ") disagree");
  }
  result.c = cr;
  return cr;
}

CrossTerms cross_terms(const ReductionResult& result, double mu) {
  std::vector<double> f(result.x.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] = result.phi_R[i] * std::pow(std::abs(result.phi_L[i]), 2.0 * mu) * result.phi_L[i];
  }
  return {result.overlap, trapezoid(f, result.grid_spacing())};
}

double map_epsilon_to_eta(const ReductionResult& result, double c, double epsilon) {
  if (!(result.omega > 0.0)) fail(ErrorKind::InvalidArgument, "omega must be > 0");
  return c * epsilon / result.omega;
}

double map_eta_to_epsilon(const ReductionResult& result, double c, double eta) {
  if (!(result.omega > 0.0) || !(c > 0.0)) fail(ErrorKind::InvalidArgument, "omega and c must be > 0");
  return eta * result.omega / c;
}

}  // namespace dimerlab
