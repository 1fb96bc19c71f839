#pragma once

// Scalar root bracketing, bisection and golden-section minimization.

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace dimerlab::numerics {

struct Bracket {
  double lo;
  double hi;
};

/// Uniform grid of `n` points spanning [lo, hi] inclusive.
inline std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  std::vector<double> xs(n);
  if (n == 1) {
    xs[0] = lo;
    return xs;
  }
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) xs[i] = lo + step * static_cast<double>(i);
  xs[n - 1] = hi;
  return xs;
}

/// Returns every grid interval on which `f` changes sign.  Exact zeros at grid
/// nodes are reported as degenerate brackets [x, x].
template <typename F>
std::vector<Bracket> sign_change_brackets(F&& f, const std::vector<double>& grid) {
  std::vector<Bracket> out;
  if (grid.empty()) return out;
  double x_prev = grid[0];
  double f_prev = f(x_prev);
  if (f_prev == 0.0) out.push_back({x_prev, x_prev});
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double x = grid[i];
    const double fx = f(x);
    if (fx == 0.0) {
      out.push_back({x, x});
    } else if (f_prev != 0.0 && std::signbit(fx) != std::signbit(f_prev)) {
      out.push_back({x_prev, x});
    }
    x_prev = x;
    f_prev = fx;
  }
  return out;
}

/// Bisection on a sign-change bracket.  Halves until the midpoint no longer
/// moves, so the root is resolved to the floating-point limit (well below the
/// 1e-12 needed by callers).
template <typename F>
double bisect(F&& f, Bracket b, int max_iter = 400) {
  double lo = b.lo;
  double hi = b.hi;
  if (lo == hi) return lo;
  double flo = f(lo);
  if (flo == 0.0) return lo;
  for (int it = 0; it < max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct MinimizeResult {
  double x;
  double fx;
  int iterations;
  bool converged;
};

/// Golden-section search for a minimum of a unimodal `f` on [a, b].  Stops
/// once the bracket width is at most `xtol`.  `f` may return any floating
/// type; comparisons happen in that type.
template <typename F>
MinimizeResult golden_section_minimize(F&& f, double a, double b, double xtol, int max_iter = 500) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  auto fc = f(c);
  auto fd = f(d);
  int it = 0;
  while ((b - a) > xtol && it < max_iter) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++it;
  }
  const double x = 0.5 * (a + b);
  return {x, static_cast<double>(f(x)), it, (b - a) <= xtol};
}

}  // namespace dimerlab::numerics
