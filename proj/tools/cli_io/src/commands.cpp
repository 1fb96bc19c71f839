#include "dimerlab/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "dimerlab/cli/json_format.hpp"
#include "dimerlab/cli/svg.hpp"
#include "dimerlab/dimer.hpp"
#include "dimerlab/dynamics.hpp"
#include "dimerlab/reduction.hpp"
#include "dimerlab/stationary.hpp"

namespace dimerlab::cli {

namespace {

constexpr const char* kStable = "#1f4e9c";
constexpr const char* kUnstable = "#c0392b";
constexpr const char* kGrey = "#9a9a9a";

Json optional_real(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::string regime(double mu) {
  return eta_plus(mu) ? "saddle-node + inverse pitchfork" : "supercritical pitchfork";
}

class Writer {
 public:
  Writer(const OutputOptions& out, CommandReport& report) : out_(out), report_(report) {}

  void file(const std::string& name, const std::string& content) {
    const auto path = out_.out_dir / name;
    write_file(path, content);
    report_.files.push_back(path);
  }

 private:
  const OutputOptions& out_;
  CommandReport& report_;
};

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string row;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) row += ',';
    first = false;
    row += c;
  }
  row += '\n';
  return row;
}

CommandReport run_critical(const CriticalConfig& c, const OutputOptions& out) {
  CommandReport report;
  const auto fold = fold_point(c.mu);
  Json j;
  j["command"] = "critical";
  j["mu"] = c.mu;
  j["mu_threshold"] = mu_threshold();
  j["eta_star"] = eta_star(c.mu);
  j["eta_plus"] = fold ? Json(fold->eta) : Json(nullptr);
  j["fold_z"] = fold ? Json(fold->z) : Json(nullptr);
  j["d2eta_at_zero"] = d2eta_at_zero(c.mu);
  j["regime"] = regime(c.mu);
  Writer(out, report).file("critical.json", dump_json(j));

  std::ostringstream s;
  s << "mu            = " << format_real(c.mu) << "\n"
    << "mu_threshold  = " << format_real(mu_threshold()) << "\n"
    << "eta_star      = " << format_real(eta_star(c.mu)) << "\n"
    << "eta_plus      = " << (fold ? format_real(fold->eta) : std::string("absent")) << "\n"
    << "d2eta_at_zero = " << format_real(d2eta_at_zero(c.mu)) << "\n"
    << "regime        = " << regime(c.mu) << "\n";
  report.summary = s.str();
  return report;
}

CommandReport run_bifurcation(const BifurcationConfig& c, const OutputOptions& out) {
  CommandReport report;
  Writer w(out, report);
  BifurcationOptions opts;
  opts.jump_guard = c.jump_guard;
  opts.threads = out.threads;
  const auto branches = bifurcation_diagram(c.mu, c.eta_min, c.eta_max, c.samples, opts);

  std::string csv = "eta,z,theta,stability,branch_label\n";
  Json list = Json::array();
  for (std::size_t b = 0; b < branches.size(); ++b) {
    const auto& br = branches[b];
    const std::string label = std::string(to_string(br.label)) + "#" + std::to_string(b);
    for (const auto& s : br.samples) {
      csv += csv_row({format_real(s.eta), format_real(s.z), format_real(br.theta), to_string(s.stability), label});
    }
    Json e;
    e["branch_label"] = label;
    e["label"] = std::string(to_string(br.label));
    e["theta"] = br.theta;
    e["samples"] = br.samples.size();
    e["eta_first"] = br.samples.empty() ? Json(nullptr) : Json(br.samples.front().eta);
    e["eta_last"] = br.samples.empty() ? Json(nullptr) : Json(br.samples.back().eta);
    list.push_back(e);
  }
  w.file("bifurcation.csv", csv);

  Json j;
  j["command"] = "bifurcation";
  j["mu"] = c.mu;
  j["eta_min"] = c.eta_min;
  j["eta_max"] = c.eta_max;
  j["samples"] = c.samples;
  j["jump_guard"] = c.jump_guard;
  j["mu_threshold"] = mu_threshold();
  j["eta_star"] = eta_star(c.mu);
  j["eta_plus"] = optional_real(eta_plus(c.mu));
  j["regime"] = regime(c.mu);
  j["branches"] = list;
  w.file("bifurcation.json", dump_json(j));

  if (out.svg) {
    SvgPlot plot(c.eta_min, c.eta_max, -1.0, 1.0);
    plot.set_title("stationary states, mu = " + format_real(c.mu));
    plot.set_labels("eta", "z");
    for (const auto& br : branches) {
      // One polyline per run of equal stability.
      std::size_t i = 0;
      while (i < br.samples.size()) {
        std::size_t k = i;
        std::vector<std::pair<double, double>> pts;
        while (k < br.samples.size() && br.samples[k].stability == br.samples[i].stability) {
          pts.emplace_back(br.samples[k].eta, br.samples[k].z);
          ++k;
        }
        if (k < br.samples.size()) pts.emplace_back(br.samples[k].eta, br.samples[k].z);
        const bool stable = br.samples[i].stability == Stability::Center;
        if (pts.size() == 1) {
          plot.marker(pts[0].first, pts[0].second, stable ? kStable : kUnstable, stable);
        } else {
          plot.polyline(pts, stable ? kStable : kUnstable, !stable);
        }
        i = k;
      }
    }
    w.file("bifurcation.svg", plot.str());
  }

  std::ostringstream s;
  s << branches.size() << " branches over eta in [" << format_real(c.eta_min) << ", " << format_real(c.eta_max)
    << "]\n";
  for (const auto& e : list) {
    s << "  " << e["branch_label"].get<std::string>() << ": " << e["samples"].get<std::size_t>() << " samples\n";
  }
  report.summary = s.str();
  return report;
}

Json fixed_point_json(const StationaryPoint& p) {
  Json e;
  e["z"] = p.point.z();
  e["theta"] = p.point.theta();
  e["stability"] = to_string(p.stability);
  e["hessian_product"] = p.hessian_product;
  e["H"] = hamiltonian(p.point, p.params);
  return e;
}

CommandReport run_portrait(const PortraitConfig& c, const OutputOptions& out) {
  CommandReport report;
  Writer w(out, report);
  const DimerParams params(c.mu, c.eta);
  const auto portrait = phase_portrait(params, c.nz, c.ntheta);

  std::string csv = "z,theta,H\n";
  csv.reserve(csv.size() + portrait.energy.size() * 64);
  for (std::size_t i = 0; i < portrait.z_values.size(); ++i) {
    for (std::size_t k = 0; k < portrait.theta_values.size(); ++k) {
      csv += csv_row({format_real(portrait.z_values[i]), format_real(portrait.theta_values[k]),
                      format_real(portrait.at(i, k))});
    }
  }
  w.file("portrait.csv", csv);

  Json j;
  j["command"] = "portrait";
  j["mu"] = c.mu;
  j["eta"] = c.eta;
  j["nz"] = c.nz;
  j["ntheta"] = c.ntheta;
  j["fixed_points"] = Json::array();
  std::size_t saddles = 0;
  for (const auto& p : portrait.fixed_points) {
    j["fixed_points"].push_back(fixed_point_json(p));
    if (p.stability == Stability::Saddle) ++saddles;
  }
  j["separatrix_energies"] = Json::array();
  for (double e : portrait.separatrix_energies) j["separatrix_energies"].push_back(e);
  j["levels"] = Json::array();
  for (double e : c.levels) j["levels"].push_back(e);
  w.file("portrait.json", dump_json(j));

  if (out.svg) {
    // Close the periodic theta direction with a copy of the first column.
    std::vector<double> thetas = portrait.theta_values;
    thetas.push_back(2.0 * std::numbers::pi);
    const std::size_t nt = portrait.theta_values.size();
    auto f = [&](std::size_t it, std::size_t iz) { return portrait.at(iz, it % nt); };

    const auto [lo, hi] = std::minmax_element(portrait.energy.begin(), portrait.energy.end());
    SvgPlot plot(0.0, 2.0 * std::numbers::pi, -1.0, 1.0);
    plot.set_title("H(z, theta), mu = " + format_real(c.mu) + ", eta = " + format_real(c.eta));
    plot.set_labels("theta", "z");
    constexpr int kLevels = 16;
    for (int k = 1; k < kLevels; ++k) {
      const double level = *lo + (*hi - *lo) * k / static_cast<double>(kLevels);
      plot.segments(marching_squares(thetas, portrait.z_values, f, level), kGrey, 0.8);
    }
    for (double level : c.levels) plot.segments(marching_squares(thetas, portrait.z_values, f, level), kStable, 1.2);
    for (double level : portrait.separatrix_energies) {
      plot.segments(marching_squares(thetas, portrait.z_values, f, level), kUnstable, 1.6);
    }
    for (const auto& p : portrait.fixed_points) {
      const bool centre = p.stability == Stability::Center;
      plot.marker(p.point.theta(), p.point.z(), centre ? kStable : kUnstable, centre);
    }
    w.file("portrait.svg", plot.str());
  }

  std::ostringstream s;
  s << portrait.fixed_points.size() << " fixed points, " << saddles << " saddle(s)\n";
  for (const auto& p : portrait.fixed_points) {
    s << "  z = " << format_real(p.point.z()) << ", theta = " << format_real(p.point.theta()) << ": "
      << to_string(p.stability) << "\n";
  }
  report.summary = s.str();
  return report;
}

CommandReport run_simulate(const SimulateConfig& c, const OutputOptions& out) {
  CommandReport report;
  Writer w(out, report);
  const DimerParams params(c.mu, c.eta);
  IntegrationOptions opts;
  opts.sample_stride = c.sample_stride;

  auto start_amplitudes = [&] {
    if (c.amplitudes) return AmplitudePair(c.amplitudes->first, c.amplitudes->second);
    return to_amplitudes(PhasePoint(c.z0, c.theta0), c.global_phase);
  };

  bool handed_off = false;
  Trajectory traj = [&] {
    if (c.chart == ChartChoice::Phase) {
      return integrate_phase(PhasePoint(c.z0, c.theta0), params, c.tau_end, c.dt_init, c.tol, opts);
    }
    return integrate_amplitudes(start_amplitudes(), params, c.tau_end, c.dt_init, c.tol, opts);
  }();
  const bool escaped = traj.status == TrajectoryStatus::ChartEscape;
  if (escaped && c.handoff) {
    traj = integrate_amplitudes(start_amplitudes(), params, c.tau_end, c.dt_init, c.tol, opts);
    handed_off = true;
  }

  std::string csv = "tau,z,theta,H,norm\n";
  std::vector<std::pair<double, double>> zt;
  zt.reserve(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    double z = 0.0, theta = 0.0, h = 0.0, norm = 1.0;
    if (const auto* ps = std::get_if<std::vector<PhasePoint>>(&traj.states)) {
      z = (*ps)[i].z();
      theta = (*ps)[i].theta();
      h = traj.energies[i];
    } else {
      const auto& a = std::get<std::vector<AmplitudePair>>(traj.states)[i];
      const auto conv = to_phase(a);
      z = std::norm(a.right()) - std::norm(a.left());
      theta = conv.point.theta();
      h = -2.0 * traj.energies[i];
      norm = a.norm_squared();
    }
    csv += csv_row({format_real(traj.times[i]), format_real(z), format_real(theta), format_real(h), format_real(norm)});
    zt.emplace_back(traj.times[i], z);
  }
  w.file("simulate.csv", csv);

  const bool amplitude = traj.chart == Chart::AmplitudeChart;
  const auto period = beating_period(traj);
  Json j;
  j["command"] = "simulate";
  j["mu"] = c.mu;
  j["eta"] = c.eta;
  j["requested_chart"] = c.chart == ChartChoice::Phase ? "phase" : "amplitude";
  j["chart"] = amplitude ? "amplitude" : "phase";
  j["handoff"] = handed_off;
  j["status"] = traj.status == TrajectoryStatus::Completed ? "completed" : "chart_escape";
  j["tau_end"] = c.tau_end;
  j["tau_last"] = traj.times.empty() ? Json(nullptr) : Json(traj.times.back());
  j["dt_init"] = c.dt_init;
  j["tol"] = c.tol;
  j["sample_stride"] = c.sample_stride;
  j["samples"] = traj.size();
  j["energy_initial"] = traj.energies.empty() ? Json(nullptr) : Json(traj.energies.front());
  j["energy_drift"] = traj.energy_drift;
  j["norm_drift"] = amplitude ? Json(traj.norm_drift) : Json(nullptr);
  j["beating_period"] = optional_real(period);
  w.file("simulate.json", dump_json(j));

  if (out.svg) {
    SvgPlot plot(0.0, c.tau_end, -1.0, 1.0);
    plot.set_title("imbalance, mu = " + format_real(c.mu) + ", eta = " + format_real(c.eta));
    plot.set_labels("tau", "z");
    plot.polyline(zt, kStable);
    w.file("simulate.svg", plot.str());
  }

  std::ostringstream s;
  s << "chart " << j["chart"].get<std::string>() << (handed_off ? " (after phase-chart escape)" : "") << ", "
    << traj.size() << " samples, status " << j["status"].get<std::string>() << "\n"
    << "energy_drift   = " << format_real(traj.energy_drift) << "\n";
  if (amplitude) s << "norm_drift     = " << format_real(traj.norm_drift) << "\n";
  s << "beating_period = " << (period ? format_real(*period) : std::string("absent")) << "\n";
  report.summary = s.str();
  return report;
}

CommandReport run_reduce(const ReduceConfig& c, const OutputOptions& out) {
  CommandReport report;
  Writer w(out, report);
  ReductionResult r = solve_doublet(c.spec, c.options);
  const double cval = compute_c(r, c.mu);
  const auto cross = cross_terms(r, c.mu);
  const auto plus = eta_plus(c.mu);

  Json j;
  j["command"] = "reduce";
  j["family"] = to_string(c.spec.potential.family());
  j["hbar"] = r.hbar;
  j["mu"] = c.mu;
  j["half_width"] = r.half_width;
  j["grid_points"] = r.x.size();
  j["grid_spacing"] = r.grid_spacing();
  j["lambda_plus"] = r.lambda_plus;
  j["lambda_minus"] = r.lambda_minus;
  j["lambda_next"] = r.lambda_next;
  j["gap_ratio"] = (r.lambda_next - r.lambda_minus) / (r.lambda_minus - r.lambda_plus);
  j["omega"] = r.omega;
  j["Omega"] = r.Omega;
  j["T"] = r.beating_period_T;
  j["c"] = cval;
  j["overlap"] = cross.overlap;
  j["cross"] = cross.cross;
  j["eta_star"] = eta_star(c.mu);
  j["eta_plus"] = optional_real(plus);
  j["epsilon_at_eta_star"] = map_eta_to_epsilon(r, cval, eta_star(c.mu));
  j["epsilon_at_eta_plus"] = plus ? Json(map_eta_to_epsilon(r, cval, *plus)) : Json(nullptr);
  j["eta_of_epsilon"] = Json::array();
  for (double eps : c.epsilons) {
    Json row;
    row["epsilon"] = eps;
    row["eta"] = map_epsilon_to_eta(r, cval, eps);
    j["eta_of_epsilon"].push_back(row);
  }
  w.file("reduce.json", dump_json(j));

  const std::size_t n = r.x.size();
  const std::size_t mid = n / 2;
  const std::size_t stride = std::max<std::size_t>(1, (n - 1 + c.max_csv_rows - 2) / (c.max_csv_rows - 1));
  std::string csv = "x,phi_plus,phi_minus,phi_R,phi_L\n";
  std::vector<std::pair<double, double>> pp, pm, pr, pl;
  for (std::size_t i = mid % stride; i < n; i += stride) {
    csv += csv_row({format_real(r.x[i]), format_real(r.phi_plus[i]), format_real(r.phi_minus[i]),
                    format_real(r.phi_R[i]), format_real(r.phi_L[i])});
    pp.emplace_back(r.x[i], r.phi_plus[i]);
    pm.emplace_back(r.x[i], r.phi_minus[i]);
    pr.emplace_back(r.x[i], r.phi_R[i]);
    pl.emplace_back(r.x[i], r.phi_L[i]);
  }
  w.file("reduce.csv", csv);

  if (out.svg) {
    double amp = 0.0;
    for (std::size_t i = 0; i < n; ++i) amp = std::max({amp, std::abs(r.phi_R[i]), std::abs(r.phi_plus[i])});
    SvgPlot plot(-r.half_width, r.half_width, -1.05 * amp, 1.05 * amp);
    plot.set_title("doublet and single-well states, hbar = " + format_real(r.hbar));
    plot.set_labels("x", "phi");
    plot.polyline(pp, kGrey);
    plot.polyline(pm, kGrey, true);
    plot.polyline(pr, kStable);
    plot.polyline(pl, kUnstable);
    w.file("reduce.svg", plot.str());
  }

  std::ostringstream s;
  s << "lambda_plus  = " << format_real(r.lambda_plus) << "\n"
    << "lambda_minus = " << format_real(r.lambda_minus) << "\n"
    << "omega        = " << format_real(r.omega) << "\n"
    << "c            = " << format_real(cval) << "\n"
    << "overlap      = " << format_real(cross.overlap) << "\n"
    << "grid points  = " << n << "\n";
  report.summary = s.str();
  return report;
}

}  // namespace

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  f.close();
  if (!f) throw IoError("error writing " + path.string());
}

CommandReport run(const RunConfig& config, const OutputOptions& out) {
  return std::visit(
      [&](const auto& c) -> CommandReport {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, CriticalConfig>) return run_critical(c, out);
        if constexpr (std::is_same_v<T, BifurcationConfig>) return run_bifurcation(c, out);
        if constexpr (std::is_same_v<T, PortraitConfig>) return run_portrait(c, out);
        if constexpr (std::is_same_v<T, SimulateConfig>) return run_simulate(c, out);
        if constexpr (std::is_same_v<T, ReduceConfig>) return run_reduce(c, out);
      },
      config);
}

}  // namespace dimerlab::cli
