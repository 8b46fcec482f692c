#include <doctest.h>

#include <cmath>

#include "anisodnl/config.hpp"
#include "anisodnl/errors.hpp"
#include "anisodnl/norms.hpp"
#include "anisodnl/solver.hpp"

using namespace anisodnl;

namespace {

ProblemSpec preset(const std::string& name) {
  ConfigDocument doc;
  doc.set("preset", name);
  return build_problem(doc);
}

ProblemSpec constant_problem(double c, std::vector<double> p, std::vector<double> m) {
  ProblemSpec s = preset("porous-medium");
  s.exponents = {std::move(p), std::move(m)};
  s.f = [](Point, double) { return 0.0; };
  s.g = [c](Point, double) { return c; };
  s.u0 = [c](Point) { return c; };
  s.eps0 = c;
  return s;
}

double sup_deviation(const TimeSeries& s, double value) {
  double d = 0.0;
  for (const auto& f : s)
    for (double v : f.values()) d = std::max(d, std::abs(v - value));
  return d;
}

}  // namespace

TEST_CASE("solver config validation") {
  SolverConfig c;
  c.dt = 0.0;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = SolverConfig{};
  c.k = 0;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = SolverConfig{};
  CHECK(c.ordering_tol(1.0) == doctest::Approx(1e-10 * 33.0));
}

TEST_CASE("constants are preserved") {
  const auto spec = constant_problem(0.7, {3.0, 1.6}, {1.0, 1.5});
  auto grid = make_grid({9, 9}, spec.box);
  SolverConfig c;
  c.dt = spec.T / 3.0;
  c.mode = Mode::direct;
  auto sol = solve_problem(spec, grid, c);
  CHECK(sol.series.size() == 4);
  CHECK(sup_deviation(sol.series, 0.7) <= c.newton_tol);
  c.mode = Mode::truncated;
  for (int k : {1, 3, 8}) {
    c.k = k;
    CHECK(sup_deviation(solve_problem(spec, grid, c).series, 0.7 + 1.0 / k) <= c.newton_tol);
  }
}

TEST_CASE("manufactured source oracle") {
  ProblemSpec s = preset("manufactured-1d");
  const double x[1] = {0.3};
  auto f_const = manufactured_rhs([](Point, double) { return 2.0; }, s, Mode::direct);
  CHECK(std::abs(f_const(x, 0.4)) < 1e-8);
  auto f_lin = manufactured_rhs([](Point, double t) { return 2.0 + t; }, s, Mode::direct);
  CHECK(f_lin(x, 0.4) == doctest::Approx(1.0).epsilon(1e-8));
  auto f = manufactured_rhs([](Point p, double t) { return 1.0 + t * p[0] * (1.0 - p[0]); }, s, Mode::direct);
  for (double t : {0.0, 0.5, 1.0})
    for (double xv : {0.1, 0.5, 0.8}) {
      const double pt[1] = {xv};
      CHECK(f(pt, t) == doctest::Approx(xv * (1 - xv) + 2 * t).epsilon(1e-7));
    }
  CHECK_THROWS_AS(manufactured_rhs([](Point p, double) { return p[0] - 0.5; }, s, Mode::direct), DomainError);
}

TEST_CASE("lower bound of truncated solutions") {
  ProblemSpec s = preset("orthotropic-plaplace");
  auto grid = make_grid({17, 17}, s.box);
  SolverConfig c;
  c.dt = s.T / 16;
  for (int k : {1, 2, 4}) {
    c.k = k;
    auto sol = solve_problem(s, grid, c);
    CHECK(sol.series.min() >= 1.0 / k - c.ordering_tol(s.T));
  }
}

TEST_CASE("ordered data give ordered trajectories") {
  ProblemSpec v = preset("anisotropic");
  ProblemSpec u = v;
  u.f = [f = v.f](Point x, double t) { return 0.5 * f(x, t); };
  u.u0 = [u0 = v.u0](Point x) { return 0.8 * u0(x); };
  auto grid = make_grid({17, 17}, v.box);
  SolverConfig c;
  c.dt = v.T / 16;
  c.k = 2;
  const auto su = solve_problem(u, grid, c);
  const auto sv = solve_problem(v, grid, c);
  CHECK(max_positive_part(su.series, sv.series) <= c.ordering_tol(v.T));
}

TEST_CASE("perturbed Newton start lands on the same step") {
  ProblemSpec s = preset("porous-medium");
  auto grid = make_grid({17, 17}, s.box);
  SolverConfig c;
  c.dt = s.T / 8;
  c.k = 2;
  const auto a = solve_problem(s, grid, c);
  c.guess_perturbation = 0.2;
  c.guess_seed = 9;
  const auto b = solve_problem(s, grid, c);
  double gap = 0.0;
  for (std::size_t n = 0; n < a.series.size(); ++n)
    for (std::size_t i = 0; i < grid->size(); ++i) gap = std::max(gap, std::abs(a.series[n][i] - b.series[n][i]));
  CHECK(gap <= 10 * c.newton_tol);
}

TEST_CASE("solver failure carries the report") {
  ProblemSpec s = preset("porous-medium");
  auto grid = make_grid({9, 9}, s.box);
  SolverConfig c;
  c.dt = s.T / 4;
  c.newton_max = 1;
  c.picard_fallback = false;
  try {
    solve_problem(s, grid, c);
    FAIL("expected a SolveError");
  } catch (const SolveError& e) {
    REQUIRE_FALSE(e.report().steps.empty());
    CHECK_FALSE(e.report().steps.back().converged);
    CHECK_FALSE(e.report().steps.back().residuals.empty());
  }
}

TEST_CASE("manufactured convergence in two dimensions") {
  // Non-polynomial exact solution; the scheme is not exact here.
  ProblemSpec s = preset("manufactured");
  auto exact = *build_exact([] {
    ConfigDocument d;
    d.set("preset", "manufactured");
    return d;
  }());
  s.T = 0.25;
  std::vector<double> errors;
  for (int level = 0; level < 3; ++level) {
    const std::size_t n = 8 * (1u << level) + 1;
    auto grid = make_grid({n, n}, s.box);
    SolverConfig c;
    c.mode = Mode::direct;
    c.dt = s.T / (4 << level);
    const auto sol = solve_problem(s, grid, c);
    const ScalarField ref = sample(grid, exact, s.T);
    std::vector<double> d(grid->size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = sol.series.back()[i] - ref[i];
    errors.push_back(std::sqrt(integrate_power(ScalarField(grid, d), 2.0)));
  }
  CHECK(errors[1] < errors[0]);
  CHECK(errors[2] < errors[1]);
  CHECK(errors[0] / errors[2] > 2.5);
}

TEST_CASE("cascade on constant data") {
  const auto spec = constant_problem(0.4, {2.0, 2.0}, {2.0, 2.0});
  auto grid = make_grid({9, 9}, spec.box);
  SolverConfig c;
  c.dt = spec.T / 4;
  const auto res = regularization_cascade(spec, grid, c, {1, 2, 4});
  REQUIRE(res.members.size() == 3);
  CHECK(sup_deviation(res.members[1].series, 0.4 + 0.5) <= c.newton_tol);
  CHECK(res.ordering_excess[0] <= c.newton_tol);
  CHECK(max_positive_part(res.members[0].series, res.members[1].series) ==
        doctest::Approx(0.5).epsilon(1e-9));
  CHECK(&res.limit() == &res.members.back().series);

  CHECK_THROWS_AS(regularization_cascade(spec, grid, c, {1, 1}), DomainError);
  CHECK_THROWS_AS(regularization_cascade(spec, grid, c, {}), DomainError);
  auto bad = constant_problem(0.4, {3.0, 2.0}, {1.0, 2.0});
  CHECK_THROWS_AS(regularization_cascade(bad, grid, c, {1, 2}), DomainError);
}

TEST_CASE("parallel cascade matches the sequential one") {
  ProblemSpec s = preset("porous-medium");
  auto grid = make_grid({9, 9}, s.box);
  SolverConfig c;
  c.dt = s.T / 4;
  const auto seq = regularization_cascade(s, grid, c, {1, 2, 4}, false);
  const auto par = regularization_cascade(s, grid, c, {1, 2, 4}, true);
  REQUIRE(seq.distances.size() == par.distances.size());
  for (std::size_t i = 0; i < seq.distances.size(); ++i) CHECK(seq.distances[i] == par.distances[i]);
}

TEST_CASE("failing cascade member keeps the finished ones") {
  ProblemSpec s = preset("porous-medium");
  auto grid = make_grid({9, 9}, s.box);
  SolverConfig c;
  c.dt = s.T / 4;
  c.newton_max = 3;
  c.picard_fallback = false;
  try {
    regularization_cascade(s, grid, c, {1, 2, 4});
    FAIL("expected a CascadeError");
  } catch (const CascadeError& e) {
    CHECK(e.partial().members.size() < 3);
    CHECK(e.partial().members.size() == e.partial().ks.size());
  }
}
