#include "anisodnl/solver.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

namespace anisodnl {

void SolverConfig::validate() const {
  if (!(dt > 0.0)) throw DomainError("solver: dt must be positive");
  if (!(newton_tol > 0.0)) throw DomainError("solver: newton_tol must be positive");
  if (newton_max < 1) throw DomainError("solver: newton_max must be at least 1");
  if (!(damping > 0.0 && damping <= 1.0)) throw DomainError("solver: damping must lie in (0, 1]");
  if (mode == Mode::truncated && k < 1) throw DomainError("solver: k must be a positive integer");
}

int SolveReport::total_iterations() const {
  int n = 0;
  for (const auto& s : steps) n += s.iterations;
  return n;
}

double SolveReport::max_final_residual() const {
  double r = 0.0;
  for (const auto& s : steps)
    if (!s.residuals.empty()) r = std::max(r, s.residuals.back());
  return r;
}

std::size_t SolveReport::fallback_count() const {
  return static_cast<std::size_t>(std::count_if(steps.begin(), steps.end(), [](const auto& s) { return s.picard_used; }));
}

std::size_t SolveReport::clamp_count() const {
  return static_cast<std::size_t>(std::count_if(steps.begin(), steps.end(), [](const auto& s) { return s.clamped; }));
}

std::size_t step_count(double horizon, double dt) {
  if (!(dt > 0.0) || !(horizon > 0.0)) throw DomainError("solver: horizon and dt must be positive");
  const double ratio = horizon / dt;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio))
    throw DomainError("solver: T / dt must be an integer");
  return static_cast<std::size_t>(rounded);
}

namespace {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;

/// |s|^{q-1} s, the sign-preserving power.
double spow(double s, double q) {
  if (q == 1.0) return s;
  if (s == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(s), q), s);
}

/// d/ds of spow for s >= 0.
double dspow(double s, double q) {
  if (q == 1.0) return 1.0;
  const double a = std::abs(s);
  if (a == 0.0) return q > 1.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return q * std::pow(a, q - 1.0);
}

struct FaceFlux {
  double value = 0.0;
  double d_lo = 0.0;
  double d_hi = 0.0;
};

/// Residual and Jacobian of one backward-Euler step on the interior unknowns.
class StepSystem {
 public:
  StepSystem(const ScalarField& prev, double t_next, const ProblemSpec& spec, const SolverConfig& cfg)
      : spec_(spec), cfg_(cfg), grid_(prev.grid()), t_(t_next), dt_(cfg.dt), prev_(prev.values().begin(), prev.values().end()) {
    const std::size_t n = grid_.size();
    const std::size_t dim = grid_.dim();
    unknown_.assign(n, kNone);
    std::vector<double> x(dim);
    source_.assign(n, 0.0);
    boundary_.assign(n, 0.0);
    const double shift = cfg.mode == Mode::truncated ? 1.0 / static_cast<double>(cfg.k) : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      grid_.point(i, x);
      if (grid_.is_boundary(i)) {
        boundary_[i] = spec.g(x, t_next) + shift;
      } else {
        unknown_[i] = nodes_.size();
        nodes_.push_back(i);
        source_[i] = spec.f(x, t_next);
      }
    }
    face_points_.resize(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      face_points_[j].assign(n * dim, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        if (grid_.has_face(j, i)) grid_.face_point(j, i, std::span<double>(&face_points_[j][i * dim], dim));
    }
    double scale = 1.0;
    for (double v : prev_) scale = std::max(scale, std::abs(v));
    eps_ = cfg.eps_reg >= 0.0 ? cfg.eps_reg : 1e-8 * scale;
  }

  std::size_t unknowns() const { return nodes_.size(); }

  /// Full nodal vector from an initial guess with boundary values imposed.
  std::vector<double> impose_boundary(std::span<const double> guess) const {
    std::vector<double> u(guess.begin(), guess.end());
    for (std::size_t i = 0; i < u.size(); ++i)
      if (unknown_[i] == kNone) u[i] = boundary_[i];
    return u;
  }

  /// Clamps negative unknowns at zero; returns true if any were changed.
  bool clamp(std::vector<double>& u) const {
    bool changed = false;
    for (std::size_t i : nodes_) {
      if (u[i] < 0.0) {
        u[i] = 0.0;
        changed = true;
      }
    }
    return changed;
  }

  Vector residual(const std::vector<double>& u) const {
    Vector r(static_cast<Eigen::Index>(nodes_.size()));
    for (std::size_t a = 0; a < nodes_.size(); ++a) {
      const std::size_t i = nodes_[a];
      r[static_cast<Eigen::Index>(a)] = u[i] - prev_[i] - dt_ * source_[i];
    }
    for_each_face([&](std::size_t j, std::size_t lo, std::size_t hi) {
      const double flux = face_flux(j, lo, u, false, false).value * dt_ / grid_.spacing(j);
      if (unknown_[lo] != kNone) r[static_cast<Eigen::Index>(unknown_[lo])] -= flux;
      if (unknown_[hi] != kNone) r[static_cast<Eigen::Index>(unknown_[hi])] += flux;
      (void)hi;
    });
    return r;
  }

  SparseMatrix jacobian(const std::vector<double>& u, bool picard) const {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(nodes_.size() * (1 + 4 * grid_.dim()));
    for (std::size_t a = 0; a < nodes_.size(); ++a)
      triplets.emplace_back(static_cast<int>(a), static_cast<int>(a), 1.0);
    for_each_face([&](std::size_t j, std::size_t lo, std::size_t hi) {
      const FaceFlux ff = face_flux(j, lo, u, true, picard);
      const double w = dt_ / grid_.spacing(j);
      const std::size_t ulo = unknown_[lo];
      const std::size_t uhi = unknown_[hi];
      if (ulo != kNone) {
        triplets.emplace_back(static_cast<int>(ulo), static_cast<int>(ulo), -w * ff.d_lo);
        if (uhi != kNone) triplets.emplace_back(static_cast<int>(ulo), static_cast<int>(uhi), -w * ff.d_hi);
      }
      if (uhi != kNone) {
        triplets.emplace_back(static_cast<int>(uhi), static_cast<int>(uhi), w * ff.d_hi);
        if (ulo != kNone) triplets.emplace_back(static_cast<int>(uhi), static_cast<int>(ulo), w * ff.d_lo);
      }
    });
    const auto n = static_cast<Eigen::Index>(nodes_.size());
    SparseMatrix J(n, n);
    J.setFromTriplets(triplets.begin(), triplets.end());
    J.makeCompressed();
    return J;
  }

  void apply_update(std::vector<double>& u, const Vector& delta, double lambda) const {
    for (std::size_t a = 0; a < nodes_.size(); ++a) u[nodes_[a]] += lambda * delta[static_cast<Eigen::Index>(a)];
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  template <typename Fn>
  void for_each_face(Fn&& fn) const {
    for (std::size_t j = 0; j < grid_.dim(); ++j) {
      const std::size_t stride = grid_.stride(j);
      for (std::size_t i = 0; i < grid_.size(); ++i) {
        if (!grid_.has_face(j, i)) continue;
        const std::size_t hi = i + stride;
        // Faces between two boundary nodes do not enter any interior residual.
        if (unknown_[i] == kNone && unknown_[hi] == kNone) continue;
        fn(j, i, hi);
      }
    }
  }

  /// Coefficient multiplying |D|^{p-2} D on a face, and its derivative in the
  /// face-averaged u.
  std::pair<double, double> coefficient(std::size_t j, Point x, double ubar, bool want_derivative) const {
    const double lip = spec_.coeffs.lipschitz_c;
    const auto& a = spec_.coeffs.a[j];
    const double av = a(x, t_, ubar);
    double da = 0.0;
    if (want_derivative && lip > 0.0) {
      const double eta = 1e-6 * std::max(1.0, std::abs(ubar));
      da = (a(x, t_, ubar + eta) - a(x, t_, ubar - eta)) / (2.0 * eta);
    }
    if (cfg_.mode == Mode::direct) return {av, da};
    const double pj = spec_.exponents.p[j];
    const double mj = spec_.exponents.m[j];
    if (mj == 1.0) return {av, da};
    const double e = (mj - 1.0) * (pj - 1.0);
    const double base = std::pow(mj, pj - 1.0);
    const double kk = static_cast<double>(cfg_.k);
    const double tk = truncate(cfg_.k, ubar);
    const double tk_pow = std::pow(tk, e);
    double dc = 0.0;
    if (want_derivative) {
      const bool inside = ubar > 1.0 / kk && ubar < kk;
      dc = base * (da * tk_pow + (inside ? av * e * std::pow(tk, e - 1.0) : 0.0));
    }
    return {av * base * tk_pow, dc};
  }

  FaceFlux face_flux(std::size_t j, std::size_t lo, const std::vector<double>& u, bool derivatives,
                     bool picard) const {
    const std::size_t hi = lo + grid_.stride(j);
    const double h = grid_.spacing(j);
    const double pj = spec_.exponents.p[j];
    const double q = cfg_.mode == Mode::direct ? spec_.exponents.m[j] : 1.0;
    const double ulo = u[lo];
    const double uhi = u[hi];
    const double d = (spow(uhi, q) - spow(ulo, q)) / h;
    const double ubar = 0.5 * (ulo + uhi);
    const Point x(&face_points_[j][lo * grid_.dim()], grid_.dim());
    const auto [c, dc] = coefficient(j, x, ubar, derivatives && !picard);
    const double phi = signed_power(d, pj);
    FaceFlux out;
    out.value = c * phi;
    if (!derivatives) return out;
    const double reg = std::pow(d * d + eps_ * eps_, 0.5 * (pj - 2.0));
    const double dphi = picard ? reg : (pj - 1.0) * reg;
    const double dd_hi = dspow(uhi, q) / h;
    const double dd_lo = -dspow(ulo, q) / h;
    out.d_hi = c * dphi * dd_hi + 0.5 * dc * phi;
    out.d_lo = c * dphi * dd_lo + 0.5 * dc * phi;
    return out;
  }

  const ProblemSpec& spec_;
  const SolverConfig& cfg_;
  const Grid& grid_;
  double t_;
  double dt_;
  std::vector<double> prev_;
  std::vector<double> source_;
  std::vector<double> boundary_;
  std::vector<std::size_t> unknown_;
  std::vector<std::size_t> nodes_;
  std::vector<std::vector<double>> face_points_;
  double eps_ = 0.0;
};

double sup(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

StepResult run_newton(const ScalarField& prev, std::span<const double> guess, double t_next,
                      const ProblemSpec& spec, const SolverConfig& cfg, std::size_t step_index) {
  cfg.validate();
  StepSystem system(prev, t_next, spec, cfg);
  StepReport report;
  report.step = step_index;
  report.t = t_next;

  std::vector<double> u = system.impose_boundary(guess);
  if (cfg.mode == Mode::direct) report.clamped = system.clamp(u) || report.clamped;
  Vector r = system.residual(u);
  double rnorm = sup(r);
  report.residuals.push_back(rnorm);

  bool picard = false;
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  bool analyzed = false;
  constexpr int kLineSearch = 12;
  constexpr std::size_t kStallWindow = 5;

  for (int it = 0; it < cfg.newton_max && rnorm > cfg.newton_tol; ++it) {
    ++report.iterations;
    const SparseMatrix J = system.jacobian(u, picard);
    if (!analyzed) {
      lu.analyzePattern(J);
      analyzed = true;
    }
    lu.factorize(J);
    if (lu.info() != Eigen::Success) {
      if (!picard && cfg.picard_fallback) {
        picard = report.picard_used = true;
        continue;
      }
      break;
    }
    const Vector delta = lu.solve(-r);

    double lambda = cfg.damping;
    std::vector<double> trial;
    Vector r_trial;
    double trial_norm = std::numeric_limits<double>::infinity();
    bool trial_clamped = false;
    for (int ls = 0; ls <= kLineSearch; ++ls) {
      trial = u;
      system.apply_update(trial, delta, lambda);
      trial_clamped = cfg.mode == Mode::direct && system.clamp(trial);
      r_trial = system.residual(trial);
      trial_norm = sup(r_trial);
      if (trial_norm < rnorm) break;
      lambda *= 0.5;
    }
    if (!(trial_norm < rnorm) && !picard && cfg.picard_fallback) {
      picard = report.picard_used = true;
      report.residuals.push_back(rnorm);
      continue;
    }
    u = std::move(trial);
    r = std::move(r_trial);
    rnorm = trial_norm;
    report.clamped = report.clamped || trial_clamped;
    report.residuals.push_back(rnorm);

    const std::size_t h = report.residuals.size();
    if (!picard && cfg.picard_fallback && h > kStallWindow &&
        rnorm > 0.9 * report.residuals[h - 1 - kStallWindow]) {
      picard = report.picard_used = true;
    }
  }

  report.converged = rnorm <= cfg.newton_tol;
  if (!report.converged) {
    SolveReport partial;
    partial.steps.push_back(report);
    throw SolveError("solver: Newton did not converge at step " + std::to_string(step_index) +
                         " (residual " + std::to_string(rnorm) + ")",
                     step_index, std::move(partial));
  }
  return {ScalarField(prev.grid_ptr(), std::move(u), t_next), std::move(report)};
}

std::vector<double> perturbed_guess(const ScalarField& prev, const SolverConfig& cfg, std::size_t step_index) {
  std::vector<double> guess(prev.values().begin(), prev.values().end());
  if (cfg.guess_perturbation > 0.0) {
    std::mt19937_64 rng(cfg.guess_seed * 1000003ULL + step_index);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (double& g : guess) g += cfg.guess_perturbation * unit(rng);
  }
  return guess;
}

}  // namespace

StepResult implicit_step(const ScalarField& prev, double t_next, const ProblemSpec& spec,
                         const SolverConfig& config, std::size_t step_index) {
  const auto guess = perturbed_guess(prev, config, step_index);
  return run_newton(prev, guess, t_next, spec, config, step_index);
}

StepResult implicit_step(const ScalarField& prev, const ScalarField& guess, double t_next,
                         const ProblemSpec& spec, const SolverConfig& config, std::size_t step_index) {
  if (!same_grid(prev.grid_ptr(), guess.grid_ptr())) throw DomainError("implicit_step: guess on a different grid");
  return run_newton(prev, guess.values(), t_next, spec, config, step_index);
}

Solution solve_problem(const ProblemSpec& spec, const GridPtr& grid, const SolverConfig& config) {
  config.validate();
  if (grid->dim() != spec.dim()) throw DomainError("solve_problem: grid and problem dimensions differ");
  const std::size_t steps = step_count(spec.T, config.dt);
  SolverConfig cfg = config;
  cfg.dt = spec.T / static_cast<double>(steps);

  const auto start = std::chrono::steady_clock::now();
  ScalarField u = sample(grid, spec.u0, 0.0);
  if (cfg.mode == Mode::truncated) {
    const double shift = 1.0 / static_cast<double>(cfg.k);
    for (double& v : u.values()) v += shift;
  }
  Solution sol{TimeSeries(grid), {}};
  sol.series.push_back(u);
  for (std::size_t n = 1; n <= steps; ++n) {
    const double t_next = spec.T * static_cast<double>(n) / static_cast<double>(steps);
    try {
      StepResult step = implicit_step(sol.series.back(), t_next, spec, cfg, n);
      sol.report.steps.push_back(std::move(step.report));
      sol.series.push_back(std::move(step.field));
    } catch (const SolveError& e) {
      SolveReport report = sol.report;
      for (const auto& s : e.report().steps) report.steps.push_back(s);
      report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      throw SolveError(e.what(), n, std::move(report));
    }
  }
  sol.report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return sol;
}

}  // namespace anisodnl
