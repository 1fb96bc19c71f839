#pragma once

// Adaptive Dormand-Prince 5(4) integration of autonomous systems on fixed-size
// real state vectors, with output at a fixed stride decoupled from the
// internal step sequence.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <utility>

namespace dimerlab::numerics {

template <std::size_t N>
using Vec = std::array<double, N>;

enum class OdeStatus {
  Completed,
  DomainExit,  // step size collapsed because every attempt left the domain
  StepUnderflow,
  StepBudgetExceeded,
};

struct OdeSettings {
  double t_end = 1.0;
  double dt_init = 1e-2;
  double tol = 1e-10;
  double sample_stride = 1e-2;
  double dt_min = 1e-14;
  long max_steps = 50'000'000;
};

struct OdeStats {
  long accepted = 0;
  long rejected = 0;
};

namespace detail {

// Dormand & Prince (1980) tableau, 5th-order solution with 4th-order embedded
// error estimate.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                        b6 = 11.0 / 84;
// b - b_hat
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

template <std::size_t N>
Vec<N> axpy(const Vec<N>& y, double h, std::initializer_list<std::pair<double, const Vec<N>*>> terms) {
  Vec<N> out = y;
  for (const auto& [coef, k] : terms) {
    for (std::size_t i = 0; i < N; ++i) out[i] += h * coef * (*k)[i];
  }
  return out;
}

}  // namespace detail

/// One trial step.  `rhs(y, dy)` returns false when `y` lies outside the
/// domain of the vector field.  On success writes the 5th-order update to
/// `y_new` and returns the local error estimate per unit step (max norm,
/// scaled by max(1, |y|)); returns a negative value if a stage left the
/// domain.
template <std::size_t N, typename Rhs>
double dp45_trial(Rhs& rhs, const Vec<N>& y, const Vec<N>& k1, double h, Vec<N>& y_new, Vec<N>& k7) {
  using namespace detail;
  Vec<N> k2, k3, k4, k5, k6;
  if (!rhs(axpy<N>(y, h, {{a21, &k1}}), k2)) return -1.0;
  if (!rhs(axpy<N>(y, h, {{a31, &k1}, {a32, &k2}}), k3)) return -1.0;
  if (!rhs(axpy<N>(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}), k4)) return -1.0;
  if (!rhs(axpy<N>(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}), k5)) return -1.0;
  if (!rhs(axpy<N>(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}), k6))
    return -1.0;
  y_new = axpy<N>(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
  if (!rhs(y_new, k7)) return -1.0;

  double err = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    const double scale = std::max({1.0, std::abs(y[i]), std::abs(y_new[i])});
    err = std::max(err, std::abs(e) / scale);
  }
  return err / h;
}

/// Integrates from t = 0 to settings.t_end.  `observe(t, y)` is called at
/// t = 0, at every multiple of the sample stride and at t_end.  `post(y)` may
/// adjust an accepted state (e.g. wrap an angle) and returns false to stop
/// the integration with DomainExit.
template <std::size_t N, typename Rhs, typename Post, typename Observe>
OdeStatus integrate_dp45(Rhs&& rhs, Vec<N> y, const OdeSettings& s, Post&& post, Observe&& observe,
                         OdeStats* stats = nullptr) {
  OdeStats local;
  OdeStats& st = stats ? *stats : local;

  Vec<N> k1;
  if (!rhs(y, k1)) return OdeStatus::DomainExit;

  double t = 0.0;
  observe(t, y);

  const double stride = std::min(s.sample_stride, s.t_end);
  long next_sample = 1;
  auto sample_time = [&](long k) { return std::min(static_cast<double>(k) * stride, s.t_end); };

  double h = std::min(s.dt_init, stride);
  bool domain_limited = false;
  long steps = 0;

  while (t < s.t_end) {
    if (++steps > s.max_steps) return OdeStatus::StepBudgetExceeded;
    const double target = sample_time(next_sample);
    double h_try = std::min(h, target - t);
    const bool hits_sample = h_try >= target - t;

    Vec<N> y_new, k7;
    const double err = dp45_trial<N>(rhs, y, k1, h_try, y_new, k7);
    if (err < 0.0 || !std::isfinite(err)) {
      ++st.rejected;
      domain_limited = true;
      h = 0.5 * h_try;
      if (h < s.dt_min) return OdeStatus::DomainExit;
      continue;
    }
    if (err > s.tol) {
      ++st.rejected;
      const double factor = std::max(0.2, 0.9 * std::pow(s.tol / err, 0.25));
      h = h_try * factor;
      if (h < s.dt_min) return domain_limited ? OdeStatus::DomainExit : OdeStatus::StepUnderflow;
      continue;
    }

    ++st.accepted;
    domain_limited = false;
    t = hits_sample ? target : t + h_try;
    y = y_new;
    k1 = k7;
    if (!post(y)) return OdeStatus::DomainExit;
    if (!rhs(y, k1)) return OdeStatus::DomainExit;

    if (hits_sample) {
      observe(t, y);
      ++next_sample;
    }

    const double grow = err == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(s.tol / err, 0.25));
    // Only grow from a full step; a step shortened to land on a sample says
    // nothing about the admissible size.
    const double base = hits_sample ? std::max(h, h_try) : h_try;
    h = base * std::max(0.2, grow);
  }
  return OdeStatus::Completed;
}

}  // namespace dimerlab::numerics
