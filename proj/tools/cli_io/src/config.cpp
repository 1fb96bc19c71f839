#include "dimerlab/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "dimerlab/dimer.hpp"
#include "dimerlab/error.hpp"

namespace dimerlab::cli {

namespace {

using nlohmann::json;

// Reads typed fields from one flat object and rejects anything unread.
class Fields {
 public:
  explicit Fields(const json& obj) : obj_(obj) {}

  bool has(const std::string& key) const { return obj_.contains(key); }

  double real(const std::string& key) {
    seen_.insert(key);
    if (!obj_.contains(key)) fail(key, "is required");
    return as_real(key, obj_.at(key));
  }

  double real(const std::string& key, double fallback) { return has(key) ? real(key) : (seen_.insert(key), fallback); }

  std::size_t count(const std::string& key, std::size_t fallback) {
    seen_.insert(key);
    if (!obj_.contains(key)) return fallback;
    const json& v = obj_.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) fail(key, "expected a non-negative integer");
    return v.get<std::size_t>();
  }

  bool boolean(const std::string& key, bool fallback) {
    seen_.insert(key);
    if (!obj_.contains(key)) return fallback;
    if (!obj_.at(key).is_boolean()) fail(key, "expected true or false");
    return obj_.at(key).get<bool>();
  }

  std::string string(const std::string& key) {
    seen_.insert(key);
    if (!obj_.contains(key)) fail(key, "is required");
    if (!obj_.at(key).is_string()) fail(key, "expected a string");
    return obj_.at(key).get<std::string>();
  }

  std::vector<double> reals(const std::string& key) {
    seen_.insert(key);
    std::vector<double> out;
    if (!obj_.contains(key)) return out;
    const json& v = obj_.at(key);
    if (!v.is_array()) fail(key, "expected an array of numbers");
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_real(key + "[" + std::to_string(i) + "]", v[i]));
    return out;
  }

  const json& object(const std::string& key) {
    seen_.insert(key);
    if (!obj_.contains(key)) fail(key, "is required");
    if (!obj_.at(key).is_object()) fail(key, "expected an object");
    return obj_.at(key);
  }

  void skip(const std::string& key) { seen_.insert(key); }

  void finish(const std::string& where) const {
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.count(key)) {
        throw ConfigError("field '" + where + key + "': unknown field");
      }
    }
  }

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    throw ConfigError("field '" + prefix_ + key + "': " + msg);
  }

  void set_prefix(std::string p) { prefix_ = std::move(p); }

 private:
  double as_real(const std::string& key, const json& v) const {
    if (!v.is_number()) fail(key, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(key, "must be finite");
    return d;
  }

  const json& obj_;
  std::set<std::string> seen_;
  std::string prefix_;
};

void require(bool ok, Fields& f, const std::string& key, const std::string& msg) {
  if (!ok) f.fail(key, msg);
}

double positive(Fields& f, const std::string& key) {
  const double v = f.real(key);
  require(v > 0.0, f, key, "must be > 0");
  return v;
}

CriticalConfig parse_critical(Fields& f) {
  CriticalConfig c;
  c.mu = positive(f, "mu");
  return c;
}

BifurcationConfig parse_bifurcation(Fields& f) {
  BifurcationConfig c;
  c.mu = positive(f, "mu");
  c.eta_min = positive(f, "eta_min");
  c.eta_max = f.real("eta_max");
  require(c.eta_max > c.eta_min, f, "eta_max", "must exceed eta_min");
  c.samples = f.count("samples", c.samples);
  require(c.samples >= 2 && c.samples <= 1'000'000, f, "samples", "must lie in [2, 1000000]");
  c.jump_guard = f.real("jump_guard", c.jump_guard);
  require(c.jump_guard > 0.0, f, "jump_guard", "must be > 0");
  return c;
}

PortraitConfig parse_portrait(Fields& f) {
  PortraitConfig c;
  c.mu = positive(f, "mu");
  c.eta = positive(f, "eta");
  c.nz = f.count("nz", c.nz);
  c.ntheta = f.count("ntheta", c.ntheta);
  require(c.nz >= 16 && c.nz <= 4001, f, "nz", "must lie in [16, 4001]");
  require(c.ntheta >= 16 && c.ntheta <= 4001, f, "ntheta", "must lie in [16, 4001]");
  c.levels = f.reals("levels");
  return c;
}

std::complex<double> complex_field(Fields& f, const std::string& key) {
  const auto v = f.reals(key);
  if (v.size() != 2) f.fail(key, "expected [re, im]");
  return {v[0], v[1]};
}

SimulateConfig parse_simulate(Fields& f) {
  SimulateConfig c;
  c.mu = positive(f, "mu");
  c.eta = positive(f, "eta");
  if (f.has("chart")) {
    const std::string chart = f.string("chart");
    if (chart == "phase") {
      c.chart = ChartChoice::Phase;
    } else if (chart == "amplitude") {
      c.chart = ChartChoice::Amplitude;
    } else {
      f.fail("chart", "expected \"phase\" or \"amplitude\"");
    }
  }
  if (f.has("a_right") || f.has("a_left")) {
    require(c.chart == ChartChoice::Amplitude, f, "a_right", "explicit amplitudes need \"chart\": \"amplitude\"");
    require(!f.has("z0") && !f.has("theta0"), f, "a_right", "give either amplitudes or z0/theta0, not both");
    const auto ar = complex_field(f, "a_right");
    const auto al = complex_field(f, "a_left");
    const double norm = std::norm(ar) + std::norm(al);
    require(std::abs(norm - 1.0) <= AmplitudePair::kNormTolerance, f, "a_right",
            "|a_right|^2 + |a_left|^2 must equal 1 within 1e-12");
    c.amplitudes = std::make_pair(ar, al);
  } else {
    c.z0 = f.real("z0");
    c.theta0 = f.real("theta0");
    require(std::abs(c.z0) <= 1.0, f, "z0", "must lie in [-1, 1]");
    if (c.chart == ChartChoice::Phase) {
      require(std::abs(c.z0) <= 1.0 - 10.0 * kEndpointGuard, f, "z0",
              "must satisfy |z0| <= 1 - 1e-11 in the phase chart");
    }
    c.global_phase = f.real("global_phase", 0.0);
  }
  c.tau_end = positive(f, "tau_end");
  c.dt_init = f.real("dt_init", c.dt_init);
  require(c.dt_init > 0.0, f, "dt_init", "must be > 0");
  c.tol = f.real("tol", c.tol);
  require(c.tol >= 1e-14 && c.tol <= 1e-6, f, "tol", "must lie in [1e-14, 1e-6]");
  c.sample_stride = f.real("sample_stride", c.sample_stride);
  require(c.sample_stride > 0.0, f, "sample_stride", "must be > 0");
  require(c.tau_end / c.sample_stride <= 1e7, f, "tau_end", "more than 1e7 output samples requested");
  c.handoff = f.boolean("handoff", c.handoff);
  return c;
}

Potential parse_potential(const json& obj, const std::filesystem::path& base_dir) {
  Fields f(obj);
  f.set_prefix("potential.");
  const std::string family = f.string("family");
  std::optional<Potential> pot;
  try {
    if (family == "quartic") {
      const double a = positive(f, "a");
      const double b = positive(f, "b");
      pot = Potential::quartic(a, b);
    } else if (family == "gaussian") {
      const double depth = positive(f, "A");
      const double x0 = positive(f, "x0");
      const double s = positive(f, "s");
      pot = Potential::gaussian_wells(depth, x0, s);
    } else if (family == "tabulated") {
      std::filesystem::path path = f.string("path");
      if (path.is_relative()) path = base_dir / path;
      std::ifstream in(path);
      if (!in) throw IoError("cannot read potential table " + path.string());
      auto rows = read_potential_table(in);
      pot = Potential::tabulated(std::move(rows));
    } else if (family == "harmonic") {
      const double k = f.real("k", 1.0);
      require(k > 0.0, f, "k", "must be > 0");
      pot = Potential::harmonic(k);
    } else {
      f.fail("family", "expected \"quartic\", \"gaussian\", \"tabulated\" or \"harmonic\"");
    }
  } catch (const Error& e) {
    throw ConfigError("field 'potential': " + std::string(e.what()));
  }
  f.finish("potential.");
  return *pot;
}

ReduceConfig parse_reduce(Fields& f, const std::filesystem::path& base_dir) {
  const Potential pot = parse_potential(f.object("potential"), base_dir);
  ReduceConfig c{PotentialSpec{pot, 0.0, std::nullopt, 1025}, {}, 1.0, {}, 4097};
  c.spec.hbar = positive(f, "hbar");
  if (f.has("domain_half_width")) c.spec.domain_half_width = positive(f, "domain_half_width");
  c.spec.grid_points = f.count("grid_points", c.spec.grid_points);
  require(c.spec.grid_points >= 128, f, "grid_points", "must be >= 128");
  c.mu = f.real("mu", 1.0);
  require(c.mu > 0.0, f, "mu", "must be > 0");
  c.epsilons = f.reals("epsilon");
  for (std::size_t i = 0; i < c.epsilons.size(); ++i) {
    require(c.epsilons[i] >= 0.0, f, "epsilon[" + std::to_string(i) + "]", "must be >= 0");
  }
  c.options.min_gap_ratio = f.real("min_gap_ratio", c.options.min_gap_ratio);
  require(c.options.min_gap_ratio > 0.0, f, "min_gap_ratio", "must be > 0");
  c.options.eigen_rel_tolerance = f.real("eigen_rel_tolerance", c.options.eigen_rel_tolerance);
  require(c.options.eigen_rel_tolerance > 0.0, f, "eigen_rel_tolerance", "must be > 0");
  c.options.max_grid_points = f.count("max_grid_points", c.options.max_grid_points);
  require(c.options.max_grid_points >= c.spec.grid_points, f, "max_grid_points", "must be >= grid_points");
  c.options.validation_mode = f.boolean("validation_mode", false);
  c.options.fixed_grid = f.boolean("fixed_grid", false);
  if (pot.family() == PotentialFamily::Harmonic) {
    require(c.options.validation_mode, f, "potential", "the harmonic family requires \"validation_mode\": true");
  }
  c.max_csv_rows = f.count("max_csv_rows", c.max_csv_rows);
  require(c.max_csv_rows >= 3, f, "max_csv_rows", "must be >= 3");
  return c;
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  if (name == "critical") return Command::Critical;
  if (name == "bifurcation") return Command::Bifurcation;
  if (name == "portrait") return Command::Portrait;
  if (name == "simulate") return Command::Simulate;
  if (name == "reduce") return Command::Reduce;
  return std::nullopt;
}

const char* to_string(Command c) noexcept {
  switch (c) {
    case Command::Critical: return "critical";
    case Command::Bifurcation: return "bifurcation";
    case Command::Portrait: return "portrait";
    case Command::Simulate: return "simulate";
    case Command::Reduce: return "reduce";
  }
  return "unknown";
}

RunConfig parse_config(Command command, std::string_view text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line number.
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw ConfigError("line " + std::to_string(line) + ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  Fields f(doc);
  if (f.has("command")) {
    const std::string named = f.string("command");
    if (named != to_string(command)) {
      f.fail("command", "config is for '" + named + "', not '" + to_string(command) + "'");
    }
  }

  RunConfig out;
  switch (command) {
    case Command::Critical: out = parse_critical(f); break;
    case Command::Bifurcation: out = parse_bifurcation(f); break;
    case Command::Portrait: out = parse_portrait(f); break;
    case Command::Simulate: out = parse_simulate(f); break;
    case Command::Reduce: out = parse_reduce(f, base_dir); break;
  }
  f.finish("");
  return out;
}

RunConfig load_config(Command command, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading config " + path.string());
  return parse_config(command, ss.str(), path.parent_path());
}

unsigned thread_budget(const char* env_value) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (env_value == nullptr || *env_value == '\0') return hw;
  const std::string s(env_value);
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || v == 0 || s.front() == '-' || v > 4096) {
    throw ConfigError("DIMERLAB_THREADS must be a positive integer, got '" + s + "'");
  }
  return std::min(hw, static_cast<unsigned>(v));
}

}  // namespace dimerlab::cli
