#pragma once

// Two-level reduction of a 1D symmetric double well: ground doublet,
// splitting, single-well states, the nonlinear overlap constant c and the map
// between the physical nonlinearity strength epsilon and the dimensionless
// eta = c epsilon / omega.  Units: mass m = 1.

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dimerlab {

enum class PotentialFamily {
  Quartic,        // a (x^2 - b^2)^2
  GaussianWells,  // -A [exp(-(x - x0)^2 / s^2) + exp(-(x + x0)^2 / s^2)]
  Tabulated,      // symmetric table, linearly interpolated
  Harmonic,       // k x^2 / 2; single well, validation mode only
};

const char* to_string(PotentialFamily f) noexcept;

/// An even potential V(x) with its family parameters.
class Potential {
 public:
  static Potential quartic(double a, double b);
  static Potential gaussian_wells(double depth, double x0, double width);
  /// Table rows (x, V).  Rows are sorted and the table is symmetrized by
  /// averaging each value with its mirror partner, which must agree to 1e-12.
  static Potential tabulated(std::vector<std::pair<double, double>> rows);
  static Potential harmonic(double k = 1.0);

  PotentialFamily family() const noexcept { return family_; }
  double operator()(double x) const { return eval_(x); }

  /// Largest |x| at which the potential is defined (infinity for analytic
  /// families).
  double max_extent() const noexcept { return extent_; }

  /// Location x+ > 0 of the right-hand minimum (0 for Harmonic).
  double well_position() const noexcept { return well_; }

 private:
  Potential(PotentialFamily f, std::function<double(double)> eval, double extent, double well)
      : family_(f), eval_(std::move(eval)), extent_(extent), well_(well) {}

  PotentialFamily family_;
  std::function<double(double)> eval_;
  double extent_;
  double well_;
};

/// Parses a two-column "x V" text table; '#' starts a comment.
std::vector<std::pair<double, double>> read_potential_table(std::istream& in);
std::vector<std::pair<double, double>> read_potential_table(const std::filesystem::path& path);

struct PotentialSpec {
  Potential potential;
  double hbar;
  /// Box [-L, L]; when absent, 3x the outer classical turning point of the
  /// harmonic estimate of the doublet energy.
  std::optional<double> domain_half_width;
  /// Initial number of grid nodes (forced odd so x = 0 is a node).
  std::size_t grid_points = 1025;
};

struct ReductionOptions {
  double eigen_rel_tolerance = 1e-8;
  std::size_t max_grid_points = (1u << 20) + 1;
  /// Required (lambda_2 - lambda_-) / (lambda_- - lambda_+).
  double min_gap_ratio = 10.0;
  double boundary_amplitude = 1e-10;
  /// Disables the double-well shape and doublet-gap checks and reports the two
  /// lowest eigenpairs without parity conventions (solver validation only).
  bool validation_mode = false;
  /// Skip grid refinement and use exactly grid_points nodes.
  bool fixed_grid = false;
};

struct ReductionResult {
  double hbar = 0.0;
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  double lambda_next = 0.0;  // third eigenvalue, for the gap check
  double omega = 0.0;        // (lambda_- - lambda_+) / 2
  double Omega = 0.0;        // (lambda_+ + lambda_-) / 2
  double beating_period_T = 0.0;  // 2 pi hbar / omega
  double overlap = 0.0;           // max |phi_R phi_L|
  double half_width = 0.0;
  std::vector<double> x;
  std::vector<double> phi_plus, phi_minus, phi_R, phi_L;
  /// Nonlinear constant c for the mu passed to compute_c; empty until then.
  std::optional<double> c;

  double grid_spacing() const { return x.size() > 1 ? x[1] - x[0] : 0.0; }
};

/// Lowest doublet of -(hbar^2/2) psi'' + V psi on [-L, L] with Dirichlet ends.
ReductionResult solve_doublet(const PotentialSpec& spec, const ReductionOptions& options = {});

/// c = <phi_R, |phi_R|^(2 mu) phi_R> by trapezoid quadrature; the phi_L value
/// must agree to rel. 1e-8 (SymmetryViolation otherwise).  Stores c in result.
double compute_c(ReductionResult& result, double mu);

struct CrossTerms {
  double overlap;  // max_x |phi_R phi_L|
  double cross;    // <phi_R, |phi_L|^(2 mu) phi_L>
};

CrossTerms cross_terms(const ReductionResult& result, double mu);

double map_epsilon_to_eta(const ReductionResult& result, double c, double epsilon);
double map_eta_to_epsilon(const ReductionResult& result, double c, double eta);

/// Trapezoid rule on a uniform grid.
double trapezoid(const std::vector<double>& f, double h);

}  // namespace dimerlab
