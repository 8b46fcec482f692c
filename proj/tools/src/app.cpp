#include "anisodnl_app/app.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

#include "anisodnl/algebra.hpp"
#include "anisodnl/calibration.hpp"
#include "anisodnl/comparison.hpp"
#include "anisodnl/degiorgi.hpp"
#include "anisodnl/energy.hpp"
#include "anisodnl/errors.hpp"
#include "anisodnl/field_io.hpp"
#include "anisodnl/mollifiers.hpp"
#include "anisodnl/norms.hpp"
#include "anisodnl/reports.hpp"

namespace anisodnl::app {

using nlohmann::json;
namespace fs = std::filesystem;

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"constant",        "manufactured",   "cascade",  "comparison",
                                                 "degiorgi-report", "mollifier-demo", "calibrate"};
  return names;
}

namespace {

const std::set<std::string, std::less<>> kProblemKeys = {
    "preset", "name", "dim", "box", "T", "p", "m", "lambda", "lipschitz", "coeff",
    "f", "g", "u0", "exact", "sigma", "eps0"};
const std::set<std::string, std::less<>> kRunKeys = {
    "scenario", "grid", "dt", "k", "newton_tol", "newton_max", "damping", "eps_reg", "picard_fallback",
    "mode", "seed", "out", "c_struct", "constant_value", "levels", "pairs", "j_max", "level_M",
    "mollifier_h", "parallel"};

bool known_key(const std::string& key) {
  if (kProblemKeys.count(key) || kRunKeys.count(key)) return true;
  if (key.rfind("coeff.", 0) == 0) {
    const std::string axis = key.substr(6);
    return axis == "1" || axis == "2" || axis == "3";
  }
  return false;
}

std::size_t default_nodes(std::size_t dim) { return dim == 1 ? 65 : dim == 2 ? 33 : 17; }

GridPtr grid_for(const RunConfig& cfg, const ProblemSpec& spec) {
  std::vector<std::size_t> counts = cfg.grid;
  if (counts.empty()) counts.assign(spec.dim(), default_nodes(spec.dim()));
  if (counts.size() == 1) counts.assign(spec.dim(), counts.front());
  if (counts.size() != spec.dim())
    throw ConfigError(0, "grid", "expected 1 or " + std::to_string(spec.dim()) + " node counts");
  return make_grid(counts, spec.box);
}

// Collects artifacts and writes the manifest.
class Outputs {
 public:
  explicit Outputs(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  void write(const std::string& name, const std::function<void(std::ostream&)>& body) {
    const fs::path path = dir_ / name;
    {
      std::ofstream out(path, std::ios::binary);
      if (!out) throw Error("cannot write " + path.string());
      body(out);
    }
    names_.push_back(name);
  }

  void json_file(const std::string& name, const json& doc) {
    write(name, [&](std::ostream& out) { out << doc.dump(2) << '\n'; });
  }

  std::vector<Artifact> finish(const RunConfig& cfg) {
    std::vector<Artifact> artifacts;
    json files = json::array();
    for (const auto& name : names_) {
      Artifact a{name, sha256_file(dir_ / name), fs::file_size(dir_ / name)};
      files.push_back({{"path", name}, {"sha256", a.sha256}, {"bytes", a.bytes}});
      artifacts.push_back(std::move(a));
    }
    const json manifest = {{"schema", "anisodnl-manifest/1"},
                           {"scenario", cfg.scenario},
                           {"seed", cfg.seed},
                           {"files", files}};
    std::ofstream out(dir_ / "manifest.json", std::ios::binary);
    out << manifest.dump(2) << '\n';
    return artifacts;
  }

 private:
  fs::path dir_;
  std::vector<std::string> names_;
};

double max_abs_deviation(const TimeSeries& s, double value) {
  double d = 0.0;
  for (const auto& frame : s)
    for (double v : frame.values()) d = std::max(d, std::abs(v - value));
  return d;
}

std::string k_tag(int k) { return "k" + std::to_string(k); }

json scenario_constant(const RunConfig& cfg, Outputs& out) {
  ProblemSpec spec = build_problem(cfg.document);
  const double c = cfg.constant_value;
  if (!(c > 0.0)) throw ConfigError(0, "constant_value", "must be positive");
  spec.f = [](Point, double) { return 0.0; };
  spec.g = [c](Point, double) { return c; };
  spec.u0 = [c](Point) { return c; };
  spec.eps0 = c;
  const GridPtr grid = grid_for(cfg, spec);
  const double tol = cfg.solver.newton_tol;

  json runs = json::array();
  double worst = 0.0;
  auto record = [&](const std::string& tag, const Solution& sol, double expected) {
    const double dev = max_abs_deviation(sol.series, expected);
    worst = std::max(worst, dev);
    runs.push_back({{"run", tag}, {"expected", expected}, {"max_deviation", dev}, {"solve", to_json(sol.report)}});
    out.write("constant_" + tag + ".csv", [&](std::ostream& o) { write_field_csv(o, sol.series.back()); });
  };

  SolverConfig direct = cfg.solver;
  direct.mode = Mode::direct;
  record("direct", solve_problem(spec, grid, direct), c);
  for (int k : cfg.ks) {
    SolverConfig tr = cfg.solver;
    tr.mode = Mode::truncated;
    tr.k = k;
    record(k_tag(k), solve_problem(spec, grid, tr), c + 1.0 / k);
  }
  const bool pass = worst <= tol;
  return make_report("constant", pass, {{"solve", runs}, {"max_deviation", worst}, {"tolerance", tol}});
}

json scenario_manufactured(const RunConfig& cfg, Outputs& out) {
  const ProblemSpec spec = build_problem(cfg.document);
  const std::optional<SpaceTimeFn> exact = build_exact(cfg.document);
  if (!exact) throw ConfigError(0, "exact", "the manufactured scenario needs an 'exact' entry");
  if (cfg.levels < 2) throw ConfigError(0, "levels", "need at least two refinement levels");
  const GridPtr base = grid_for(cfg, spec);
  const double floor = 10.0 * cfg.solver.newton_tol;

  json levels = json::array();
  std::vector<double> errors;
  for (std::size_t l = 0; l < cfg.levels; ++l) {
    std::vector<std::size_t> counts = base->counts();
    for (auto& n : counts) n = (n - 1) * (std::size_t{1} << l) + 1;
    const GridPtr grid = make_grid(counts, spec.box);
    SolverConfig sc = cfg.solver;
    sc.mode = Mode::direct;
    sc.dt = cfg.solver.dt / static_cast<double>(std::size_t{1} << l);
    const Solution sol = solve_problem(spec, grid, sc);
    const ScalarField& last = sol.series.back();
    const ScalarField ref = sample(grid, *exact, last.time());
    std::vector<double> diff(grid->size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = last[i] - ref[i];
    const double err = std::sqrt(integrate_power(ScalarField(grid, std::move(diff)), 2.0));
    errors.push_back(err);
    json entry = {{"level", l}, {"nodes", counts}, {"dt", sc.dt}, {"l2_error", err},
                  {"iterations", sol.report.total_iterations()}};
    if (l > 0 && errors[l] > 0.0 && errors[l - 1] > 0.0) entry["rate"] = std::log2(errors[l - 1] / errors[l]);
    levels.push_back(entry);
  }
  bool pass = true;
  for (std::size_t l = 1; l < errors.size(); ++l)
    pass = pass && (errors[l] < errors[l - 1] || std::max(errors[l], errors[l - 1]) <= floor);
  out.write("manufactured_errors.csv", [&](std::ostream& o) {
    o << std::setprecision(17) << "level,dt,l2_error\n";
    for (std::size_t l = 0; l < errors.size(); ++l)
      o << l << ',' << levels[l]["dt"].get<double>() << ',' << errors[l] << '\n';
  });
  return make_report("manufactured", pass,
                     {{"levels", levels}, {"errors", errors}, {"roundoff_floor", floor}});
}

json scenario_cascade(const RunConfig& cfg, Outputs& out) {
  const ProblemSpec spec = build_problem(cfg.document);
  const GridPtr grid = grid_for(cfg, spec);
  const CascadeResult res = regularization_cascade(spec, grid, cfg.solver, cfg.ks, cfg.parallel);
  const double tol = cfg.solver.ordering_tol(spec.T);

  bool pass = true;
  for (double e : res.ordering_excess) pass = pass && e <= tol;
  // Distances must shrink once k >= 2.
  for (std::size_t i = 0; i + 1 < res.distances.size(); ++i)
    if (res.ks[i] >= 2) pass = pass && res.distances[i + 1] < res.distances[i];

  json members = json::array();
  for (std::size_t i = 0; i < res.members.size(); ++i) {
    const TimeSeries& s = res.members[i].series;
    members.push_back({{"k", res.ks[i]},
                       {"min", s.min()},
                       {"max", s.max()},
                       {"gradient_norms", gradient_power_norms(s, spec.exponents)},
                       {"solve", to_json(res.members[i].report)}});
    out.write("cascade_" + k_tag(res.ks[i]) + ".csv", [&](std::ostream& o) { write_series_csv(o, s); });
  }
  out.write("cascade_distances.csv", [&](std::ostream& o) {
    o << std::setprecision(17) << "k_lo,k_hi,ordering_excess,vpm_distance\n";
    for (std::size_t i = 0; i < res.distances.size(); ++i)
      o << res.ks[i] << ',' << res.ks[i + 1] << ',' << res.ordering_excess[i] << ',' << res.distances[i] << '\n';
  });
  return make_report("cascade", pass,
                     {{"ks", res.ks},
                      {"ordering_excess", res.ordering_excess},
                      {"distances", res.distances},
                      {"ordering_tol", tol},
                      {"members", members}});
}

json scenario_comparison(const RunConfig& cfg, Outputs& out) {
  const ProblemSpec v_spec = build_problem(cfg.document);
  const GridPtr grid = grid_for(cfg, v_spec);
  const double tol = cfg.solver.ordering_tol(v_spec.T);
  const double zero = 10.0 * cfg.solver.newton_tol;
  const Solution v = solve_problem(v_spec, grid, cfg.solver);

  json pairs = json::array();
  bool pass = true;
  std::size_t checked = 0;
  for (std::size_t i = 0; i < cfg.pairs; ++i) {
    std::mt19937_64 rng(cfg.seed * 7919 + i);
    std::uniform_real_distribution<double> scale_f(0.1, 0.9), scale_0(0.1, 0.9), scale_g(0.0, 0.5);
    const double rf = scale_f(rng), r0 = scale_0(rng), rg = scale_g(rng);
    ProblemSpec u_spec = v_spec;
    u_spec.f = [f = v_spec.f, rf](Point x, double t) { return (1.0 - rf) * f(x, t); };
    u_spec.u0 = [u0 = v_spec.u0, r0](Point x) { return (1.0 - r0) * u0(x); };
    u_spec.g = [g = v_spec.g, rg](Point x, double t) { return (1.0 - rg) * g(x, t); };
    u_spec.eps0 = (1.0 - rg) * v_spec.eps0;
    const Solution u = solve_problem(u_spec, grid, cfg.solver);
    const ComparisonReport r = comparison_check(u.series, v.series, u_spec.f, v_spec.f, 0, zero);
    const bool ok = r.violation <= tol && r.max_excess <= tol;
    if (r.hypothesis_ok) {
      ++checked;
      pass = pass && ok;
    }
    json entry = to_json(r);
    entry["scales"] = {{"f", rf}, {"u0", r0}, {"g", rg}};
    entry["pass"] = ok;
    pairs.push_back(entry);
    out.write("comparison_pair" + std::to_string(i) + ".csv", [&](std::ostream& o) { write_comparison_csv(o, r); });
  }
  pass = pass && checked > 0;

  // Uniqueness: a perturbed Newton start must land on the same solution.
  SolverConfig perturbed = cfg.solver;
  perturbed.guess_perturbation = 0.1 * std::max(1.0, v.series.max());
  perturbed.guess_seed = cfg.seed + 1;
  const Solution w = solve_problem(v_spec, grid, perturbed);
  double gap = 0.0;
  for (std::size_t n = 0; n < v.series.size(); ++n)
    for (std::size_t i = 0; i < grid->size(); ++i) gap = std::max(gap, std::abs(v.series[n][i] - w.series[n][i]));
  const double unique_tol = 10.0 * cfg.solver.newton_tol;
  pass = pass && gap <= unique_tol;

  return make_report("comparison", pass,
                     {{"pairs", pairs},
                      {"checked_pairs", checked},
                      {"ordering_tol", tol},
                      {"zero_threshold", zero},
                      {"uniqueness", {{"sup_gap", gap}, {"tolerance", unique_tol}}}});
}

json scenario_degiorgi(const RunConfig& cfg, Outputs& out) {
  const ProblemSpec spec = build_problem(cfg.document);
  const GridPtr grid = grid_for(cfg, spec);
  const BarExponents bar = compute_bar_exponents(spec.exponents);
  const DataNorms data = measure_data(spec, grid, step_count(spec.T, cfg.solver.dt));
  const DeGiorgiReport constants = degiorgi_constants(spec, bar, cfg.c_struct, data);
  const std::vector<double> thresholds = cfg.level_M.empty() ? std::vector<double>{constants.M} : cfg.level_M;

  json runs = json::array();
  double bound_excess = -std::numeric_limits<double>::infinity();
  bool pass = true;
  for (int k : cfg.ks) {
    SolverConfig sc = cfg.solver;
    sc.mode = Mode::truncated;
    sc.k = k;
    const Solution sol = solve_problem(spec, grid, sc);
    json per_m = json::array();
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
      const double M = thresholds[i];
      const LevelMeasurements lv = measure_levels(sol.series, M, constants.m, constants.q_bar, cfg.j_max);
      const double excess = level_measure_bound_excess(lv, M, constants.m, constants.q_bar);
      bound_excess = std::max(bound_excess, excess);
      double scale = data.cylinder;
      pass = pass && excess <= 1e-12 * scale;
      json entry = {{"M", M}, {"levels", to_json(lv)}, {"bound_excess", excess}};
      const auto populated = std::count_if(lv.Y.begin(), lv.Y.end(), [](double y) { return y > 0.0; });
      if (populated >= 2) {
        const RecursionEnvelope env = recursion_envelope(lv, M, constants.m, constants.q_bar, constants.delta);
        entry["envelope"] = to_json(env);
        pass = pass && env.worst_ratio <= 1.0 + 1e-9;
      }
      if (M >= data.m_star) entry["energy"] = to_json(energy_check(sol.series, spec, M));
      per_m.push_back(entry);
      out.write("levels_" + k_tag(k) + "_M" + std::to_string(i) + ".csv",
                [&](std::ostream& o) { write_levels_csv(o, lv); });
    }
    runs.push_back({{"k", k}, {"sup", sol.series.max()}, {"thresholds", per_m}});
  }
  return make_report("degiorgi", pass,
                     {{"constants", to_json(constants)}, {"measurements", runs}, {"bound_excess", bound_excess}});
}

json contraction_entry(const TimeSeries& original, const TimeSeries& smoothed, double p) {
  const double lhs = spacetime_lp_norm(smoothed, p);
  const double rhs = spacetime_lp_norm(original, p);
  return {{"p", p}, {"mollified", lhs}, {"original", rhs}, {"holds", lhs <= rhs * (1.0 + 1e-12)}};
}

json scenario_mollifier(const RunConfig& cfg, Outputs& out) {
  const ProblemSpec spec = build_problem(cfg.document);
  const GridPtr grid = grid_for(cfg, spec);
  SolverConfig sc = cfg.solver;
  sc.k = cfg.ks.front();
  const TimeSeries v = solve_problem(spec, grid, sc).series;
  const double h = cfg.mollifier_h > 0.0 ? cfg.mollifier_h : spec.T / 8.0;
  const double p_bar = compute_bar_exponents(spec.exponents).p_bar;
  bool pass = true;

  json steklov_part = json::object();
  steklov_part["h"] = h;
  for (bool reversed : {false, true}) {
    const TimeSeries s = steklov(v, h, reversed);
    json contraction = json::array();
    for (double p : {1.0, 2.0, p_bar}) {
      contraction.push_back(contraction_entry(v, s, p));
      pass = pass && contraction.back()["holds"].get<bool>();
    }
    steklov_part[reversed ? "reversed" : "forward"] = {{"frames", s.size()}, {"contraction", contraction}};
  }
  // d/dt [v]_h = (v(t + h) - v(t)) / h, integrated over each frame interval.
  const TimeSeries fwd = steklov(v, h, false);
  double identity = 0.0;
  for (std::size_t n = 0; n + 1 < fwd.size(); ++n) {
    const double t0 = fwd.time(n), t1 = fwd.time(n + 1);
    const ScalarField ahead = integrate_in_time(v, t0 + h, t1 + h);
    const ScalarField here = integrate_in_time(v, t0, t1);
    for (std::size_t i = 0; i < grid->size(); ++i) {
      const double lhs = (fwd[n + 1][i] - fwd[n][i]) / (t1 - t0);
      const double rhs = (ahead[i] - here[i]) / (h * (t1 - t0));
      identity = std::max(identity, std::abs(lhs - rhs));
    }
  }
  steklov_part["derivative_residual"] = identity;
  pass = pass && identity <= 1e-10 * std::max(1.0, v.max() / h);

  json exp_part = json::object();
  exp_part["h"] = h;
  for (bool reversed : {false, true}) {
    const TimeSeries e = exp_mollify(v, h, reversed);
    json contraction = json::array();
    for (double p : {1.0, 2.0, p_bar}) {
      contraction.push_back(contraction_entry(v, e, p));
      pass = pass && contraction.back()["holds"].get<bool>();
    }
    exp_part[reversed ? "reversed" : "forward"] = {{"contraction", contraction}};
  }
  // d/dt [[v]] = (v - [[v]]) / h at interval midpoints, fourth-order differences.
  double ode = 0.0;
  for (std::size_t n = 0; n + 1 < v.size(); ++n) {
    const double t = 0.5 * (v.time(n) + v.time(n + 1));
    const double eps = 1e-2 * v.dt(n);
    const ScalarField p1 = exp_mollify_at(v, h, t + eps), p2 = exp_mollify_at(v, h, t + 2 * eps);
    const ScalarField m1 = exp_mollify_at(v, h, t - eps), m2 = exp_mollify_at(v, h, t - 2 * eps);
    const ScalarField mid = exp_mollify_at(v, h, t);
    const ScalarField vt = interpolate(v, t);
    for (std::size_t i = 0; i < grid->size(); ++i) {
      const double lhs = (m2[i] - 8.0 * m1[i] + 8.0 * p1[i] - p2[i]) / (12.0 * eps);
      ode = std::max(ode, std::abs(lhs - (vt[i] - mid[i]) / h));
    }
  }
  exp_part["ode_residual"] = ode;
  pass = pass && ode <= 1e-8 * std::max(1.0, v.max() / h);

  // Time trace at the grid centre.
  const std::size_t probe = grid->size() / 2;
  const TimeSeries ef = exp_mollify(v, h, false);
  out.write("mollifier_trace.csv", [&](std::ostream& o) {
    o << std::setprecision(17) << "t,v,steklov,exp\n";
    for (std::size_t n = 0; n < v.size(); ++n) {
      o << v.time(n) << ',' << v[n][probe] << ',';
      if (n < fwd.size()) o << fwd[n][probe];
      o << ',' << ef[n][probe] << '\n';
    }
  });
  return make_report("mollifier", pass, {{"steklov", steklov_part}, {"exponential", exp_part}});
}

json scenario_calibrate(const RunConfig& cfg, Outputs& out) {
  json sandwich = json::object(), power = json::object(), troisi = json::object();
  for (double m : {1.0, 1.5, 2.0, 3.0}) {
    std::ostringstream key;
    key << m;
    sandwich[key.str()] = to_json(b_sandwich_constant(m));
  }
  for (double g : {1.5, 2.0, 3.0}) {
    std::ostringstream key;
    key << g;
    power[key.str()] = to_json(power_inequality_constant(g));
  }
  for (const auto& name : preset_names()) {
    ConfigDocument doc;
    doc.set("preset", name);
    const ProblemSpec spec = build_problem(doc);
    const std::size_t n = cfg.grid.empty() ? default_nodes(spec.dim()) : cfg.grid.front();
    const GridPtr grid = make_grid(std::vector<std::size_t>(spec.dim(), n), spec.box);
    json entry = to_json(calibrate_troisi(grid, spec.exponents, 200, cfg.seed));
    entry["p"] = spec.exponents.p;
    entry["nodes"] = grid->counts();
    troisi[name] = entry;
  }
  const json report = make_report("calibration", true,
                                  {{"b_sandwich", sandwich}, {"power_inequality", power}, {"troisi", troisi},
                                   {"seed", cfg.seed}});
  out.json_file("calibration.json", report);
  return report;
}

}  // namespace

RunConfig make_run_config(const ConfigDocument& raw) {
  RunConfig cfg;
  cfg.document = raw.with_preset();
  const ConfigDocument& doc = cfg.document;
  for (const auto& e : raw.entries())
    if (!known_key(e.key)) throw ConfigError(e.line, e.key, "unknown key");

  const ConfigEntry* s = doc.find("scenario");
  if (!s) throw ConfigError(0, "scenario", "missing required key");
  const auto& names = scenario_names();
  if (std::find(names.begin(), names.end(), s->value) == names.end())
    throw ConfigError(s->line, "scenario", "unknown scenario '" + s->value + "'");
  cfg.scenario = s->value;

  if (const ConfigEntry* e = doc.find("grid")) {
    for (long n : config_ints(*e)) {
      if (n < 3) throw ConfigError(e->line, "grid", "each axis needs at least 3 nodes");
      cfg.grid.push_back(static_cast<std::size_t>(n));
    }
  }
  if (const ConfigEntry* e = doc.find("dt")) cfg.solver.dt = config_real(*e);
  else if (const ConfigEntry* t = doc.find("T")) cfg.solver.dt = config_real(*t) / 32.0;
  if (const ConfigEntry* e = doc.find("newton_tol")) cfg.solver.newton_tol = config_real(*e);
  if (const ConfigEntry* e = doc.find("newton_max")) cfg.solver.newton_max = static_cast<int>(config_int(*e));
  if (const ConfigEntry* e = doc.find("damping")) cfg.solver.damping = config_real(*e);
  if (const ConfigEntry* e = doc.find("eps_reg")) cfg.solver.eps_reg = config_real(*e);
  if (const ConfigEntry* e = doc.find("picard_fallback")) cfg.solver.picard_fallback = config_bool(*e);
  if (const ConfigEntry* e = doc.find("mode")) {
    if (e->value == "direct") cfg.solver.mode = Mode::direct;
    else if (e->value == "truncated") cfg.solver.mode = Mode::truncated;
    else throw ConfigError(e->line, "mode", "expected 'direct' or 'truncated'");
  }
  if (const ConfigEntry* e = doc.find("k")) {
    for (long k : config_ints(*e)) {
      if (k < 1) throw ConfigError(e->line, "k", "truncation levels must be >= 1");
      cfg.ks.push_back(static_cast<int>(k));
    }
  } else {
    cfg.ks = {1, 2, 4, 8};
  }
  cfg.solver.k = cfg.ks.front();
  if (const ConfigEntry* e = doc.find("seed")) {
    const long seed = config_int(*e);
    if (seed < 0) throw ConfigError(e->line, "seed", "must be nonnegative");
    cfg.seed = static_cast<std::uint64_t>(seed);
  }
  cfg.solver.guess_seed = cfg.seed;
  cfg.out_dir = doc.find("out") ? fs::path(doc.find("out")->value) : fs::path("anisodnl-out");
  if (const ConfigEntry* e = doc.find("c_struct")) cfg.c_struct = config_real(*e);
  if (const ConfigEntry* e = doc.find("constant_value")) cfg.constant_value = config_real(*e);
  if (const ConfigEntry* e = doc.find("levels")) cfg.levels = static_cast<std::size_t>(std::max(0L, config_int(*e)));
  if (const ConfigEntry* e = doc.find("pairs")) cfg.pairs = static_cast<std::size_t>(std::max(0L, config_int(*e)));
  if (const ConfigEntry* e = doc.find("j_max")) cfg.j_max = static_cast<std::size_t>(std::max(0L, config_int(*e)));
  if (const ConfigEntry* e = doc.find("level_M")) cfg.level_M = config_reals(*e);
  if (const ConfigEntry* e = doc.find("mollifier_h")) cfg.mollifier_h = config_real(*e);
  if (const ConfigEntry* e = doc.find("parallel")) cfg.parallel = config_bool(*e);

  try {
    cfg.solver.validate();
  } catch (const DomainError& err) {
    throw ConfigError(0, "", err.what());
  }
  return cfg;
}

RunResult run(const RunConfig& cfg) {
  Outputs out(cfg.out_dir);
  json report;
  if (cfg.scenario == "constant") report = scenario_constant(cfg, out);
  else if (cfg.scenario == "manufactured") report = scenario_manufactured(cfg, out);
  else if (cfg.scenario == "cascade") report = scenario_cascade(cfg, out);
  else if (cfg.scenario == "comparison") report = scenario_comparison(cfg, out);
  else if (cfg.scenario == "degiorgi-report") report = scenario_degiorgi(cfg, out);
  else if (cfg.scenario == "mollifier-demo") report = scenario_mollifier(cfg, out);
  else if (cfg.scenario == "calibrate") report = scenario_calibrate(cfg, out);
  else throw ConfigError(0, "scenario", "unknown scenario '" + cfg.scenario + "'");

  report["scenario"] = cfg.scenario;
  report["seed"] = cfg.seed;
  out.json_file("report.json", report);
  RunResult result;
  result.pass = report["pass"].get<bool>();
  result.report = std::move(report);
  result.artifacts = out.finish(cfg);
  return result;
}

json validate(const ConfigDocument& doc, std::size_t samples, std::uint64_t seed) {
  const ProblemSpec spec = build_problem(doc);
  const AdmissibilityReport r = check_admissibility(spec, samples, seed);
  json data = to_json(r);
  std::string cascade = "enabled";
  if (r.closeness_failing_axis)
    cascade = "disabled (closeness fails on axis " + std::to_string(*r.closeness_failing_axis + 1) + ")";
  std::ostringstream dg;
  if (r.degiorgi_enabled) {
    dg << "enabled";
  } else {
    dg << "disabled (sigma margin " << r.sigma_margin << ", delta <= 0)";
  }
  data["capabilities"] = {{"cascade", cascade}, {"degiorgi-report", dg.str()}};
  return make_report("admissibility", r.all_pass(), data);
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error("sha256: digest initialisation failed");
  }
  char buffer[1 << 14];
  while (in) {
    in.read(buffer, sizeof buffer);
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buffer, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx, digest, &length);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i)
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return hex.str();
}

}  // namespace anisodnl::app
