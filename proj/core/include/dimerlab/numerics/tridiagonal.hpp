#pragma once

// Symmetric tridiagonal eigenproblems: Sturm-sequence bisection for selected
// eigenvalues and inverse iteration for their eigenvectors.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace dimerlab::numerics {

/// Symmetric tridiagonal matrix: `diag` of size n, `off` of size n - 1.
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const noexcept { return diag.size(); }
};

/// Number of eigenvalues strictly less than `x` (Sturm count via the LDL^T
/// pivot recurrence).
std::size_t sturm_count(const SymTridiagonal& t, double x);

/// Gershgorin interval containing the whole spectrum.
std::pair<double, double> gershgorin_bounds(const SymTridiagonal& t);

/// k-th smallest eigenvalue (k = 0 is the lowest), bisected until the
/// interval stops shrinking in floating point.
double kth_eigenvalue(const SymTridiagonal& t, std::size_t k);

/// As above, starting from the hint [lo, hi], which is widened as needed.
double kth_eigenvalue(const SymTridiagonal& t, std::size_t k, double lo, double hi);

/// Eigenvector for an (accurately known) eigenvalue by inverse iteration with
/// a partially pivoted tridiagonal solve.  The result is orthogonalized
/// against every vector in `deflate` and has unit Euclidean norm.
std::vector<double> inverse_iteration(const SymTridiagonal& t, double eigenvalue,
                                      std::span<const std::vector<double>> deflate = {},
                                      int iterations = 4);

/// y = T x
std::vector<double> multiply(const SymTridiagonal& t, std::span<const double> x);

}  // namespace dimerlab::numerics
