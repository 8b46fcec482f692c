// Acceptance harness: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria. Pass criterion numbers as arguments to run a
// subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "anisodnl/algebra.hpp"
#include "anisodnl/calibration.hpp"
#include "anisodnl/comparison.hpp"
#include "anisodnl/config.hpp"
#include "anisodnl/degiorgi.hpp"
#include "anisodnl/energy.hpp"
#include "anisodnl/mollifiers.hpp"
#include "anisodnl/norms.hpp"
#include "anisodnl/solver.hpp"
#include "fixtures/calibrated_constants.hpp"

using namespace anisodnl;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

ProblemSpec preset(const std::string& name) {
  ConfigDocument doc;
  doc.set("preset", name);
  return build_problem(doc);
}

GridPtr acceptance_grid(const ProblemSpec& s) {
  const std::size_t n = s.dim() == 1 ? 65 : 33;
  return make_grid(std::vector<std::size_t>(s.dim(), n), s.box);
}

SolverConfig steps32(const ProblemSpec& s) {
  SolverConfig c;
  c.dt = s.T / 32.0;
  return c;
}

// Problem families with one representative each.
const std::vector<std::string> kFamilies = {"porous-medium", "orthotropic-plaplace", "anisotropic"};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// 1. Truncated solutions stay above 1/k.
void lower_bound(Outcome& out) {
  double worst = std::numeric_limits<double>::infinity();
  double slowest = 0.0;
  for (const auto& name : preset_names()) {
    const ProblemSpec s = preset(name);
    const GridPtr grid = acceptance_grid(s);
    const auto t0 = Clock::now();
    for (int k : {1, 2, 4, 8}) {
      SolverConfig c = steps32(s);
      c.k = k;
      const double tol = c.ordering_tol(s.T);
      const double margin = solve_problem(s, grid, c).series.min() - (1.0 / k - tol);
      worst = std::min(worst, margin);
      out.require(margin >= 0.0, name + " k=" + std::to_string(k));
    }
    const double elapsed = seconds_since(t0);
    slowest = std::max(slowest, elapsed);
    out.require(elapsed < 60.0, name + " exceeded 60 s");
  }
  out.detail << preset_names().size() << " presets x k in {1,2,4,8}; min(u_k) - (1/k - tol) >= " << fmt(worst)
             << "; slowest preset " << fmt(slowest) << " s";
}

// 2. Cascade ordering and shrinking distances.
void k_monotonicity(Outcome& out) {
  const std::vector<int> ks = {1, 2, 4, 8, 16};
  double worst_excess = 0.0;
  for (const auto& name : kFamilies) {
    const ProblemSpec s = preset(name);
    const SolverConfig c = steps32(s);
    const auto r = regularization_cascade(s, acceptance_grid(s), c, ks);
    const double tol = c.ordering_tol(s.T);
    for (double e : r.ordering_excess) {
      worst_excess = std::max(worst_excess, e);
      out.require(e <= tol, name + " ordering excess " + fmt(e));
    }
    for (std::size_t i = 0; i + 1 < r.distances.size(); ++i)
      if (r.ks[i] >= 2)
        out.require(r.distances[i + 1] < r.distances[i],
                    name + " distance d(" + std::to_string(r.ks[i + 1]) + ") >= d(" + std::to_string(r.ks[i]) + ")");
    out.detail << name << " d=[";
    for (std::size_t i = 0; i < r.distances.size(); ++i) out.detail << (i ? "," : "") << fmt(r.distances[i]);
    out.detail << "] ";
  }
  out.detail << "ks {1,2,4,8,16}; max (u_2k - u_k)_+ = " << fmt(worst_excess);
}

// 3. Constants are reproduced exactly.
void constant_exactness(Outcome& out) {
  double worst = 0.0;
  for (const auto& name : kFamilies) {
    for (double value : {0.3, 1.0, 2.5}) {
      ProblemSpec s = preset(name);
      s.f = [](Point, double) { return 0.0; };
      s.g = [value](Point, double) { return value; };
      s.u0 = [value](Point) { return value; };
      s.eps0 = value;
      const GridPtr grid = acceptance_grid(s);
      auto deviation = [&](const Solution& sol, double expected) {
        double d = 0.0;
        for (const auto& f : sol.series)
          for (double v : f.values()) d = std::max(d, std::abs(v - expected));
        return d;
      };
      SolverConfig c = steps32(s);
      c.mode = Mode::direct;
      double d = deviation(solve_problem(s, grid, c), value);
      worst = std::max(worst, d);
      out.require(d <= c.newton_tol, name + " direct");
      c.mode = Mode::truncated;
      for (int k : {1, 2, 4, 8}) {
        c.k = k;
        d = deviation(solve_problem(s, grid, c), value + 1.0 / k);
        worst = std::max(worst, d);
        out.require(d <= c.newton_tol, name + " k=" + std::to_string(k));
      }
    }
  }
  out.detail << "3 families x c in {0.3,1,2.5}, direct and k in {1,2,4,8}; max deviation " << fmt(worst)
             << " <= newton_tol 1e-10";
}

std::vector<double> refinement_errors(const ProblemSpec& s, const SpaceTimeFn& exact, std::size_t n0, double dt0,
                                      int levels) {
  std::vector<double> errors;
  for (int l = 0; l < levels; ++l) {
    const std::size_t n = (n0 - 1) * (std::size_t{1} << l) + 1;
    const GridPtr grid = make_grid(std::vector<std::size_t>(s.dim(), n), s.box);
    SolverConfig c;
    c.mode = Mode::direct;
    c.dt = dt0 / static_cast<double>(1 << l);
    const auto sol = solve_problem(s, grid, c);
    const ScalarField ref = sample(grid, exact, sol.series.back().time());
    std::vector<double> d(grid->size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = sol.series.back()[i] - ref[i];
    errors.push_back(std::sqrt(integrate_power(ScalarField(grid, d), 2.0)));
  }
  return errors;
}

// 4. Manufactured-solution consistency.
void manufactured(Outcome& out) {
  const auto t0 = Clock::now();
  ConfigDocument doc;
  doc.set("preset", "manufactured-1d");
  const ProblemSpec s = build_problem(doc);
  const SpaceTimeFn exact = *build_exact(doc);
  // The oracle is quadratic in x and affine in t, which backward Euler with
  // centred differences reproduces exactly, so errors sit at the solver
  // tolerance. Below 10 newton_tol, differences between levels are noise.
  const double floor = 10.0 * SolverConfig{}.newton_tol;
  const auto e1 = refinement_errors(s, exact, 17, 1.0 / 16.0, 3);
  for (std::size_t l = 1; l < e1.size(); ++l)
    out.require(e1[l] < e1[l - 1] || std::max(e1[l], e1[l - 1]) <= floor, "1D oracle level " + std::to_string(l));

  // Companion check with a non-polynomial solution, strictly monotone.
  ConfigDocument doc2;
  doc2.set("preset", "manufactured");
  doc2.set("T", "0.25");
  const ProblemSpec s2 = build_problem(doc2);
  const auto e2 = refinement_errors(s2, *build_exact(doc2), 9, 0.25 / 4.0, 3);
  for (std::size_t l = 1; l < e2.size(); ++l) out.require(e2[l] < e2[l - 1], "2D companion level " + std::to_string(l));

  const double elapsed = seconds_since(t0);
  out.require(elapsed < 120.0, "runtime");
  out.detail << "1D oracle L2 errors " << fmt(e1[0]) << ", " << fmt(e1[1]) << ", " << fmt(e1[2])
             << " (floor " << fmt(floor) << "); 2D companion " << fmt(e2[0]) << ", " << fmt(e2[1]) << ", "
             << fmt(e2[2]) << "; " << fmt(elapsed) << " s";
}

// 5. Comparison principle and uniqueness.
void comparison(Outcome& out) {
  double worst_violation = 0.0, worst_excess = 0.0, worst_gap = 0.0;
  std::size_t checked = 0;
  for (const auto& name : kFamilies) {
    const ProblemSpec v_spec = preset(name);
    const GridPtr grid = acceptance_grid(v_spec);
    SolverConfig c = steps32(v_spec);
    // Zero lateral data would violate v >= eps on the boundary; use the
    // shifted problem there.
    if (v_spec.eps0 > 0.0) {
      c.mode = Mode::direct;
    } else {
      c.mode = Mode::truncated;
      c.k = 8;
    }
    const double tol = c.ordering_tol(v_spec.T);
    const Solution v = solve_problem(v_spec, grid, c);
    for (int i = 0; i < 5; ++i) {
      std::mt19937_64 rng(1000 + 17 * i);
      std::uniform_real_distribution<double> uf(0.1, 0.9), u0d(0.1, 0.9), ug(0.0, 0.5);
      const double rf = uf(rng), r0 = u0d(rng), rg = ug(rng);
      ProblemSpec u_spec = v_spec;
      u_spec.f = [f = v_spec.f, rf](Point x, double t) { return (1.0 - rf) * f(x, t); };
      u_spec.u0 = [u0 = v_spec.u0, r0](Point x) { return (1.0 - r0) * u0(x); };
      u_spec.g = [g = v_spec.g, rg](Point x, double t) { return (1.0 - rg) * g(x, t); };
      const Solution u = solve_problem(u_spec, grid, c);
      const auto r = comparison_check(u.series, v.series, u_spec.f, v_spec.f, 0, 10.0 * c.newton_tol);
      out.require(r.hypothesis_ok, name + " pair " + std::to_string(i) + " boundary hypothesis");
      out.require(r.violation <= tol, name + " pair " + std::to_string(i) + " violation " + fmt(r.violation));
      out.require(r.max_excess <= tol, name + " pair " + std::to_string(i) + " pointwise " + fmt(r.max_excess));
      worst_violation = std::max(worst_violation, r.violation);
      worst_excess = std::max(worst_excess, r.max_excess);
      ++checked;
    }
    SolverConfig perturbed = c;
    perturbed.guess_perturbation = 0.1 * v.series.max();
    perturbed.guess_seed = 77;
    const Solution w = solve_problem(v_spec, grid, perturbed);
    for (std::size_t n = 0; n < v.series.size(); ++n)
      for (std::size_t i = 0; i < grid->size(); ++i)
        worst_gap = std::max(worst_gap, std::abs(v.series[n][i] - w.series[n][i]));
    out.require(worst_gap <= 10.0 * c.newton_tol, name + " uniqueness gap " + fmt(worst_gap));
  }
  out.detail << checked << " pairs; max violation " << fmt(worst_violation) << ", max (u-v)_+ " << fmt(worst_excess)
             << "; perturbed-start sup gap " << fmt(worst_gap) << " <= 1e-9";
}

// 6. k-uniform sup bound and level-set decay.
void uniform_bound(Outcome& out) {
  const ProblemSpec s = preset("porous-large");
  const std::vector<int> ks = {2, 4, 8, 16};
  const DeGiorgiReport dg = degiorgi_constants(s, compute_bar_exponents(s.exponents), 1.0);
  std::vector<double> top;  // max_k sup per grid
  double spread = 0.0;
  std::size_t envelope_checks = 0;
  for (std::size_t nodes : {17, 33}) {
    const GridPtr grid = make_grid({nodes, nodes}, s.box);
    std::vector<double> sups;
    std::vector<TimeSeries> runs;
    for (int k : ks) {
      SolverConfig c = steps32(s);
      c.k = k;
      runs.push_back(solve_problem(s, grid, c).series);
      sups.push_back(runs.back().max());
    }
    const double hi = *std::max_element(sups.begin(), sups.end());
    const double lo = *std::min_element(sups.begin(), sups.end());
    spread = std::max(spread, (hi - lo) / hi);
    out.require((hi - lo) / hi < 0.05, "sup spread across k on " + std::to_string(nodes) + "^2");
    top.push_back(hi);
    if (nodes != 33) continue;

    // Levels start at M = sup / 1.57, so the first few level sets are populated.
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const double M = sups[i] / 1.57;
      const auto lv = measure_levels(runs[i], M, dg.m, dg.q_bar, 10);
      for (std::size_t j = 1; j < lv.Y.size(); ++j)
        out.require(lv.Y[j] <= lv.Y[j - 1], "Y_j increases at k=" + std::to_string(ks[i]));
      out.require(level_measure_bound_excess(lv, M, dg.m, dg.q_bar) <= 1e-12, "level measure bound");
      const auto env = recursion_envelope(lv, M, dg.m, dg.q_bar, dg.delta, 2);
      for (std::size_t j = env.first; j <= env.last; ++j) {
        out.require(lv.Y[j] <= env.envelope[j - env.first] * (1.0 + 1e-9),
                    "Y_" + std::to_string(j) + " above envelope at k=" + std::to_string(ks[i]));
        ++envelope_checks;
      }
    }
  }
  const double grid_gap = std::abs(top[0] - top[1]) / std::max(top[0], top[1]);
  out.require(grid_gap < 0.05, "sup differs between grids");
  out.detail << "porous-large, k in {2,4,8,16}: sup spread " << fmt(100 * spread) << "%, grid 17^2 vs 33^2 "
             << fmt(100 * grid_gap) << "%; " << envelope_checks << " Y_j checked against the fitted envelope";
}

// 7. Energy ratio stable in k and M.
void energy(Outcome& out) {
  const ProblemSpec s = preset("manufactured");
  const GridPtr grid = acceptance_grid(s);
  std::vector<double> ratios;
  double m_star = 0.0;
  for (int k : {2, 4, 8}) {
    SolverConfig c = steps32(s);
    c.k = k;
    const TimeSeries series = solve_problem(s, grid, c).series;
    m_star = m_star_on(series, s);
    for (double factor : {1.0, 1.1}) {
      const auto e = energy_check(series, s, factor * m_star);
      out.require(std::isfinite(e.ratio) && e.ratio > 0.0, "ratio not finite at k=" + std::to_string(k));
      ratios.push_back(e.ratio);
    }
  }
  const double hi = *std::max_element(ratios.begin(), ratios.end());
  const double lo = *std::min_element(ratios.begin(), ratios.end());
  out.require(hi / lo - 1.0 <= 0.25, "ratio varies by " + fmt(100 * (hi / lo - 1.0)) + "%");
  out.detail << "manufactured preset, k in {2,4,8}, M in {M_*, 1.1 M_*} with M_* = " << fmt(m_star)
             << ": ratios in [" << fmt(lo) << ", " << fmt(hi) << "], spread " << fmt(100 * (hi / lo - 1.0)) << "%";
}

// 8. Algebraic inequalities.
void algebra_suite(Outcome& out) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> pos(0.0, 10.0), sym(-10.0, 10.0);
  std::size_t samples = 0;
  for (const auto& c : fixtures::kSandwich) {
    for (int i = 0; i < 100000; ++i) {
      const double u = pos(rng), v = pos(rng);
      const double b = b_quantity(u, v, c.parameter);
      const double e = 0.5 * (c.parameter + 1.0);
      const double d = std::pow(v, e) - std::pow(u, e);
      out.require(b >= 0.0, "b negative");
      if (u == v) continue;
      ++samples;
      if (!(d * d / c.padded <= b && b <= c.padded * d * d)) {
        out.require(false, "sandwich at m=" + fmt(c.parameter));
        break;
      }
    }
  }
  for (const auto& c : fixtures::kPowerInequality) {
    for (int i = 0; i < 100000; ++i) {
      const double a = sym(rng), b = sym(rng);
      if (a == b) continue;
      ++samples;
      const double lhs = std::pow(std::abs(a - b), c.parameter);
      const double rhs = std::abs(std::copysign(std::pow(std::abs(a), c.parameter), a) -
                                  std::copysign(std::pow(std::abs(b), c.parameter), b));
      if (!(lhs <= c.padded * rhs)) {
        out.require(false, "power inequality at gamma=" + fmt(c.parameter));
        break;
      }
    }
  }
  double closed = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = pos(rng), v = pos(rng);
    const double ref = 0.5 * (u - v) * (u - v);
    closed = std::max(closed, std::abs(b_quantity(u, v, 1.0) - ref) / std::max(ref, 1e-300));
  }
  out.require(closed <= 1e-12, "m=1 closed form");
  const double c1 = b_sandwich_constant(1.0).raw;
  out.require(std::abs(c1 - 2.0) <= 1e-9, "m=1 sweep constant " + fmt(c1));
  const double elapsed = seconds_since(t0);
  out.require(elapsed < 10.0, "runtime");
  out.detail << samples << " fresh pairs; m=1 relative error " << fmt(closed) << ", sweep c(1) = " << c1
             << "; " << fmt(elapsed) << " s";
}

TimeSeries random_series(const GridPtr& grid, std::size_t frames, double T, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(0.0, 3.0);
  TimeSeries s(grid);
  for (std::size_t n = 0; n <= frames; ++n) {
    std::vector<double> v(grid->size());
    for (double& x : v) x = d(rng);
    s.push_back(ScalarField(grid, v, T * static_cast<double>(n) / static_cast<double>(frames)));
  }
  return s;
}

// 9. Mollifiers.
void mollifier_suite(Outcome& out) {
  const GridPtr grid = make_grid({5, 4}, {1.0, 1.0});
  std::mt19937_64 rng(99);
  const std::vector<double> ps = {1.0, 2.0, compute_bar_exponents(preset("anisotropic").exponents).p_bar};
  std::size_t contractions = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const TimeSeries v = random_series(grid, 24, 1.0, rng);
    const double dt = 1.0 / 24.0;
    for (double h : {dt, 2.5 * dt, 3 * dt, 7 * dt}) {
      for (bool reversed : {false, true}) {
        const TimeSeries st = steklov(v, h, reversed);
        const TimeSeries ex = exp_mollify(v, h, reversed);
        for (double p : ps) {
          out.require(spacetime_lp_norm(st, p) <= spacetime_lp_norm(v, p) * (1 + 1e-12), "Steklov contraction");
          out.require(spacetime_lp_norm(ex, p) <= spacetime_lp_norm(v, p) * (1 + 1e-12), "exp contraction");
          contractions += 2;
        }
      }
    }
  }

  // Derivative identity, exact on piecewise-linear data.
  double steklov_identity = 0.0;
  {
    const TimeSeries v = random_series(grid, 40, 2.0, rng);
    const double h = 0.35;
    const TimeSeries st = steklov(v, h);
    for (std::size_t n = 0; n + 1 < st.size(); ++n) {
      const double a = st.time(n), b = st.time(n + 1);
      const ScalarField ahead = integrate_in_time(v, a + h, b + h);
      const ScalarField here = integrate_in_time(v, a, b);
      for (std::size_t i = 0; i < grid->size(); ++i) {
        const double lhs = (st[n + 1][i] - st[n][i]) / (b - a);
        const double rhs = (ahead[i] - here[i]) / (h * (b - a));
        steklov_identity = std::max(steklov_identity, std::abs(lhs - rhs));
      }
    }
  }
  out.require(steklov_identity <= 1e-11, "Steklov derivative identity " + fmt(steklov_identity));

  // Constant input.
  double closed = 0.0;
  {
    TimeSeries c(grid);
    for (int n = 0; n <= 50; ++n) c.push_back(ScalarField(grid, 1.7, 0.04 * n));
    for (double h : {0.05, 0.3, 2.0}) {
      const TimeSeries e = exp_mollify(c, h);
      for (const auto& f : e)
        for (double x : f.values()) closed = std::max(closed, std::abs(x - 1.7 * (1 - std::exp(-f.time() / h))));
      for (double t : {0.013, 0.77, 1.61}) {
        const ScalarField f = exp_mollify_at(c, h, t);
        closed = std::max(closed, std::abs(f[0] - 1.7 * (1 - std::exp(-t / h))));
      }
    }
  }
  out.require(closed <= 1e-10, "constant closed form " + fmt(closed));

  // ODE identity on a smooth series.
  double ode = 0.0;
  {
    TimeSeries v(grid);
    const std::size_t frames = 200;
    for (std::size_t n = 0; n <= frames; ++n) {
      const double t = static_cast<double>(n) / frames;
      v.push_back(sample(grid, SpaceTimeFn([](Point x, double tt) { return 1.0 + x[0] * std::sin(2.0 * tt) + x[1] * tt * tt; }), t));
    }
    const double h = 0.2;
    for (std::size_t n = 0; n + 1 < v.size(); ++n) {
      const double t = 0.5 * (v.time(n) + v.time(n + 1));
      const double e = 1e-2 * v.dt(n);
      const ScalarField p1 = exp_mollify_at(v, h, t + e), p2 = exp_mollify_at(v, h, t + 2 * e);
      const ScalarField m1 = exp_mollify_at(v, h, t - e), m2 = exp_mollify_at(v, h, t - 2 * e);
      const ScalarField mid = exp_mollify_at(v, h, t);
      const ScalarField vt = interpolate(v, t);
      for (std::size_t i = 0; i < grid->size(); ++i) {
        const double d = (m2[i] - 8 * m1[i] + 8 * p1[i] - p2[i]) / (12 * e);
        ode = std::max(ode, std::abs(d - (vt[i] - mid[i]) / h));
      }
    }
  }
  out.require(ode <= 1e-8, "ODE identity " + fmt(ode));
  out.detail << contractions << " contraction checks (p in {1,2," << fmt(ps[2]) << "}); Steklov identity "
             << fmt(steklov_identity) << "; constant closed form " << fmt(closed) << "; ODE identity " << fmt(ode);
}

// 10. De Giorgi arithmetic.
void degiorgi_arithmetic(Outcome& out) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> pd(1.2, 4.5), md(1.0, 3.0), sd(0.01, 2.0);
  std::uniform_int_distribution<int> nd(2, 3);
  double smallest = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 100; ++i) {
    const int N = nd(rng);
    Exponents ex;
    const double m = md(rng);
    for (int j = 0; j < N; ++j) {
      ex.p.push_back(pd(rng));
      ex.m.push_back(m);
    }
    const auto bar = compute_bar_exponents(ex);
    const double sigma = (1.0 + N / bar.p_bar) * (1.0 + sd(rng));
    const double qb = harmonic_mean(select_q(ex));
    const double delta = degiorgi_delta(N, qb, bar.mu, sigma, bar.p_bar);
    smallest = std::min(smallest, delta);
    out.require(delta > 0.0, "delta <= 0 in sweep");
  }

  const Exponents ex{{2.5, 3.0}, {1.0, 1.2}};
  const auto bar = compute_bar_exponents(ex);
  const double qb = harmonic_mean(select_q(ex));
  const double sigma_min = 1.0 + 2.0 / bar.p_bar;
  double prev = std::numeric_limits<double>::infinity();
  double last = 0.0;
  for (int i = 0; i <= 40; ++i) {
    const double d = degiorgi_delta(2, qb, bar.mu, sigma_min * (1.0 + std::pow(2.0, -i)), bar.p_bar);
    out.require(d < prev && d > 0.0, "delta not strictly decreasing");
    prev = last = d;
  }
  out.require(last < 1e-10, "delta does not vanish at the boundary");

  ProblemSpec s = preset("porous-medium");
  s.exponents = {{2.0, 2.0}, {1.0, 1.0}};
  s.sigma = 3.0;
  const double hand = degiorgi_constants(s, compute_bar_exponents(s.exponents), 1.0).delta;
  out.require(std::abs(hand - 1.0 / 6.0) <= 1e-15, "hand-checked delta " + fmt(hand));

  const auto fg = fast_geometric_iterate(1.0, 2.0, 1.0, 0.5, 200);
  const bool reached =
      std::any_of(fg.sequence.begin(), fg.sequence.end(), [](double y) { return y < 1e-12; });
  out.require(fg.converged && reached && fg.threshold == 0.5, "threshold case");
  out.detail << "sweep min delta " << fmt(smallest) << "; delta at sigma_min(1+2^-40) " << fmt(last)
             << "; hand case delta = " << hand << "; threshold case Y_200 = " << fmt(fg.sequence.back());
}

// 11. Sobolev-Troisi with the frozen constant.
void troisi(Outcome& out) {
  std::size_t checked = 0;
  double worst = 0.0;
  for (const auto& c : fixtures::kTroisi) {
    const ProblemSpec s = preset(c.preset);
    const GridPtr grid = acceptance_grid(s);
    const auto again = calibrate_troisi(grid, s.exponents, 200, fixtures::kCalibrationSeed);
    out.require(std::abs(again.raw - c.raw) <= 1e-12 * c.raw, std::string(c.preset) + " calibration drifted");
    std::mt19937_64 rng(fixtures::kCalibrationSeed + 1);
    for (int i = 0; i < 1000; ++i) {
      const ScalarField u = random_zero_boundary_field(grid, rng);
      const auto gap = sobolev_troisi_gap(u, s.exponents);
      worst = std::max(worst, gap.lhs / (c.padded * gap.rhs));
      out.require(gap.lhs <= c.padded * gap.rhs, std::string(c.preset) + " field " + std::to_string(i));
      ++checked;
      if (i % 100 != 0) continue;
      // Homogeneity of both sides.
      const double p_bar = compute_bar_exponents(s.exponents).p_bar;
      for (double lam : {0.5, 3.0}) {
        std::vector<double> scaled(u.values().begin(), u.values().end());
        for (double& x : scaled) x *= lam;
        const ScalarField su(grid, scaled);
        const auto sg = sobolev_troisi_gap(su, s.exponents);
        out.require(std::abs(sg.lhs - std::pow(lam, p_bar) * gap.lhs) <= 1e-12 * sg.lhs, "lhs homogeneity");
        for (std::size_t j = 0; j < s.dim(); ++j) {
          const double base = integrate_power(face_diff_power(u, 1.0, j), s.exponents.p[j]);
          const double term = integrate_power(face_diff_power(su, 1.0, j), s.exponents.p[j]);
          out.require(std::abs(term - std::pow(lam, s.exponents.p[j]) * base) <= 1e-12 * term, "rhs homogeneity");
        }
      }
    }
  }
  out.detail << checked << " fresh fields over " << std::size(fixtures::kTroisi)
             << " presets; max lhs / (C rhs) = " << fmt(worst);
}

struct Criterion {
  int id;
  const char* name;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "lower bound u_k >= 1/k", lower_bound},
      {2, "k-monotone cascade", k_monotonicity},
      {3, "constant-solution exactness", constant_exactness},
      {4, "manufactured-solution consistency", manufactured},
      {5, "comparison principle and uniqueness", comparison},
      {6, "k-uniform boundedness and level decay", uniform_bound},
      {7, "energy-estimate stability", energy},
      {8, "algebraic inequalities", algebra_suite},
      {9, "mollifier properties", mollifier_suite},
      {10, "De Giorgi arithmetic", degiorgi_arithmetic},
      {11, "Sobolev-Troisi inequality", troisi},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    Outcome out;
    const auto t0 = Clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << " [exception: " << e.what() << "]";
    }
    if (!out.pass) ++failures;
    std::cout << (out.pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name << " (" << fmt(seconds_since(t0))
              << " s): " << out.detail.str() << std::endl;
  }
  return failures;
}
