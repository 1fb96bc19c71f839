#include "dimerlab/numerics/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace dimerlab::numerics {

namespace {

double norm_inf(const SymTridiagonal& t) {
  double m = 0.0;
  const std::size_t n = t.size();
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(t.diag[i]);
    if (i > 0) row += std::abs(t.off[i - 1]);
    if (i + 1 < n) row += std::abs(t.off[i]);
    m = std::max(m, row);
  }
  return m;
}

// Solves (T - shift I) x = rhs by Gaussian elimination with partial pivoting.
// The upper factor carries two superdiagonals after row swaps.
std::vector<double> shifted_solve(const SymTridiagonal& t, double shift, std::vector<double> rhs,
                                  double tiny) {
  const std::size_t n = t.size();
  std::vector<double> u0(n), u1(n, 0.0), u2(n, 0.0);
  auto guard = [tiny](double p) { return std::abs(p) < tiny ? (p < 0.0 ? -tiny : tiny) : p; };

  if (n == 1) {
    return {rhs[0] / guard(t.diag[0] - shift)};
  }

  double p0 = t.diag[0] - shift, p1 = t.off[0], p2 = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double q0 = t.off[i];
    const double q1 = t.diag[i + 1] - shift;
    const double q2 = (i + 2 < n) ? t.off[i + 1] : 0.0;
    if (std::abs(p0) >= std::abs(q0)) {
      const double piv = guard(p0);
      const double m = q0 / piv;
      u0[i] = piv;
      u1[i] = p1;
      u2[i] = p2;
      rhs[i + 1] -= m * rhs[i];
      p0 = q1 - m * p1;
      p1 = q2 - m * p2;
    } else {
      const double m = p0 / q0;
      u0[i] = q0;
      u1[i] = q1;
      u2[i] = q2;
      std::swap(rhs[i], rhs[i + 1]);
      rhs[i + 1] -= m * rhs[i];
      const double np0 = p1 - m * q1;
      const double np1 = p2 - m * q2;
      p0 = np0;
      p1 = np1;
    }
    p2 = 0.0;
  }
  u0[n - 1] = guard(p0);

  std::vector<double> x(n);
  x[n - 1] = rhs[n - 1] / u0[n - 1];
  x[n - 2] = (rhs[n - 2] - u1[n - 2] * x[n - 1]) / u0[n - 2];
  for (std::size_t k = n - 2; k-- > 0;) {
    x[k] = (rhs[k] - u1[k] * x[k + 1] - u2[k] * x[k + 2]) / u0[k];
  }
  return x;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void normalize(std::vector<double>& v) {
  const double nrm = std::sqrt(dot(v, v));
  for (double& x : v) x /= nrm;
}

}  // namespace

std::size_t sturm_count(const SymTridiagonal& t, double x) {
  // Extended precision keeps the count exact to well below eps * |T| on the
  // fine grids where |T| ~ 1/h^2 is large.
  const std::size_t n = t.size();
  const long double tiny = std::numeric_limits<long double>::epsilon() * std::max(norm_inf(t), 1.0) * 1e-3L;
  const long double xl = x;
  std::size_t count = 0;
  long double q = t.diag[0] - xl;
  if (q == 0.0L) q = -tiny;
  if (q < 0.0L) ++count;
  for (std::size_t i = 1; i < n; ++i) {
    const long double e = t.off[i - 1];
    q = t.diag[i] - xl - e * e / q;
    if (q == 0.0L) q = -tiny;
    if (q < 0.0L) ++count;
  }
  return count;
}

std::pair<double, double> gershgorin_bounds(const SymTridiagonal& t) {
  const std::size_t n = t.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.off[i - 1]);
    if (i + 1 < n) r += std::abs(t.off[i]);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  return {lo, hi};
}

double kth_eigenvalue(const SymTridiagonal& t, std::size_t k) {
  if (k >= t.size()) throw std::out_of_range("kth_eigenvalue: index beyond matrix size");
  const auto [lo, hi] = gershgorin_bounds(t);
  return kth_eigenvalue(t, k, lo, hi);
}

double kth_eigenvalue(const SymTridiagonal& t, std::size_t k, double lo, double hi) {
  if (k >= t.size()) throw std::out_of_range("kth_eigenvalue: index beyond matrix size");
  const auto [glo, ghi] = gershgorin_bounds(t);
  // Widen the hint until it brackets the k-th eigenvalue.
  for (double w = std::max(hi - lo, 1e-12 * std::max(1.0, std::abs(lo))); sturm_count(t, lo) > k; w *= 4.0) {
    lo = std::max(glo, lo - w);
    if (lo == glo) break;
  }
  for (double w = std::max(hi - lo, 1e-12 * std::max(1.0, std::abs(hi))); sturm_count(t, hi) <= k; w *= 4.0) {
    hi = std::min(ghi, hi + w);
    if (hi == ghi) break;
  }
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(t, mid) <= k) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> inverse_iteration(const SymTridiagonal& t, double eigenvalue,
                                      std::span<const std::vector<double>> deflate, int iterations) {
  const std::size_t n = t.size();
  const double tiny = std::numeric_limits<double>::epsilon() * std::max(norm_inf(t), 1.0);

  std::mt19937_64 rng(0x5eed5eedULL);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);

  auto project_out = [&](std::vector<double>& x) {
    for (const auto& d : deflate) {
      const double c = dot(x, d);
      for (std::size_t i = 0; i < n; ++i) x[i] -= c * d[i];
    }
  };
  project_out(v);
  normalize(v);

  for (int it = 0; it < iterations; ++it) {
    v = shifted_solve(t, eigenvalue, std::move(v), tiny);
    project_out(v);
    normalize(v);
  }
  return v;
}

std::vector<double> multiply(const SymTridiagonal& t, std::span<const double> x) {
  const std::size_t n = t.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = t.diag[i] * x[i];
    if (i > 0) s += t.off[i - 1] * x[i - 1];
    if (i + 1 < n) s += t.off[i] * x[i + 1];
    y[i] = s;
  }
  return y;
}

}  // namespace dimerlab::numerics
