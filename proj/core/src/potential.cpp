#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <string>

#include "dimerlab/error.hpp"
#include "dimerlab/numerics/roots.hpp"
#include "dimerlab/reduction.hpp"

namespace dimerlab {

namespace {

constexpr const char* kModule = "semiclassical_reduction";
constexpr double kTableSymmetryTolerance = 1e-12;

[[noreturn]] void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, kModule, msg); }

}  // namespace

const char* to_string(PotentialFamily f) noexcept {
  switch (f) {
    case PotentialFamily::Quartic: return "quartic";
    case PotentialFamily::GaussianWells: return "gaussian";
    case PotentialFamily::Tabulated: return "tabulated";
    case PotentialFamily::Harmonic: return "harmonic";
  }
  return "unknown";
}

Potential Potential::quartic(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) fail(ErrorKind::InvalidPotential, "quartic needs a > 0 and b > 0");
  return Potential(
      PotentialFamily::Quartic,
      [a, b](double x) {
        const double d = x * x - b * b;
        return a * d * d;
      },
      std::numeric_limits<double>::infinity(), b);
}

Potential Potential::gaussian_wells(double depth, double x0, double width) {
  if (!(depth > 0.0) || !(x0 > 0.0) || !(width > 0.0)) {
    fail(ErrorKind::InvalidPotential, "gaussian wells need A > 0, x0 > 0 and s > 0");
  }
  auto v = [depth, x0, width](double x) {
    const double l = (x - x0) / width;
    const double r = (x + x0) / width;
    return -depth * (std::exp(-l * l) + std::exp(-r * r));
  };
  // The right minimum sits near x0, pulled inwards by the other well's tail.
  const double hi = x0 + 5.0 * width;
  const auto grid = numerics::uniform_grid(0.0, hi, 10'001);
  std::size_t best = 0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (v(grid[i]) < v(grid[best])) best = i;
  }
  double well = grid[best];
  if (best > 0 && best + 1 < grid.size()) {
    well = numerics::golden_section_minimize(v, grid[best - 1], grid[best + 1], 1e-13).x;
  }
  return Potential(PotentialFamily::GaussianWells, v, std::numeric_limits<double>::infinity(), well);
}

Potential Potential::tabulated(std::vector<std::pair<double, double>> rows) {
  if (rows.size() < 5) fail(ErrorKind::InvalidPotential, "tabulated potential needs at least 5 rows");
  std::sort(rows.begin(), rows.end());
  const std::size_t n = rows.size();
  for (std::size_t i = 1; i < n; ++i) {
    if (!(rows[i].first > rows[i - 1].first)) fail(ErrorKind::InvalidPotential, "duplicate x in table");
  }
  // Mirror partner of row i is row n - 1 - i.
  for (std::size_t i = 0; i < n / 2 + 1; ++i) {
    auto& lo = rows[i];
    auto& hi = rows[n - 1 - i];
    const double scale = std::max(1.0, std::abs(lo.first));
    if (std::abs(lo.first + hi.first) > kTableSymmetryTolerance * scale) {
      fail(ErrorKind::InvalidPotential, "table abscissae are not symmetric about x = 0 (row " +
                                            std::to_string(i + 1) + ")");
    }
    const double vscale = std::max(1.0, std::abs(lo.second));
    if (std::abs(lo.second - hi.second) > kTableSymmetryTolerance * vscale) {
      fail(ErrorKind::InvalidPotential, "table values are not symmetric: V(" + std::to_string(lo.first) +
                                            ") != V(" + std::to_string(hi.first) + ")");
    }
    const double xm = 0.5 * (hi.first - lo.first);
    const double vm = 0.5 * (lo.second + hi.second);
    lo = {-xm, vm};
    hi = {xm, vm};
  }
  if (n % 2 == 1) rows[n / 2].first = 0.0;

  std::vector<double> xs(n), vs(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = rows[i].first;
    vs[i] = rows[i].second;
  }
  const double extent = xs.back();

  std::size_t best = n - 1;
  for (std::size_t i = n / 2; i < n; ++i) {
    if (vs[i] < vs[best]) best = i;
  }
  const double well = xs[best];

  auto eval = [xs = std::move(xs), vs = std::move(vs)](double x) {
    if (x <= xs.front()) return vs.front();
    if (x >= xs.back()) return vs.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t j = static_cast<std::size_t>(it - xs.begin());
    const double t = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
    return vs[j - 1] + t * (vs[j] - vs[j - 1]);
  };
  return Potential(PotentialFamily::Tabulated, std::move(eval), extent, well);
}

Potential Potential::harmonic(double k) {
  if (!(k > 0.0)) fail(ErrorKind::InvalidPotential, "harmonic needs k > 0");
  return Potential(
      PotentialFamily::Harmonic, [k](double x) { return 0.5 * k * x * x; },
      std::numeric_limits<double>::infinity(), 0.0);
}

std::vector<std::pair<double, double>> read_potential_table(std::istream& in) {
  std::vector<std::pair<double, double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    double x = 0.0, v = 0.0;
    if (!(ss >> x)) {
      std::string rest;
      if (std::istringstream(line) >> rest) {
        fail(ErrorKind::InvalidPotential, "line " + std::to_string(lineno) + ": expected two numbers");
      }
      continue;
    }
    std::string extra;
    if (!(ss >> v) || (ss >> extra)) {
      fail(ErrorKind::InvalidPotential, "line " + std::to_string(lineno) + ": expected exactly two numbers");
    }
    rows.emplace_back(x, v);
  }
  return rows;
}

std::vector<std::pair<double, double>> read_potential_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidPotential, "cannot open potential table " + path.string());
  return read_potential_table(in);
}

}  // namespace dimerlab
