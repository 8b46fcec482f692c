#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "anisodnl/errors.hpp"
#include "anisodnl/grid.hpp"
#include "anisodnl/model.hpp"

namespace anisodnl {

/// Which equation the implicit step discretizes.
enum class Mode {
  /// Original doubly nonlinear form: fluxes act on face differences of u^{m_j}.
  direct,
  /// Truncated problem of level k: fluxes \hat A^k act on face differences of u,
  /// data are shifted by 1/k.
  truncated,
};

struct SolverConfig {
  double dt = 1.0 / 32.0;
  /// Sup-norm tolerance on the step residual u - u_prev - dt (div F + f).
  double newton_tol = 1e-10;
  int newton_max = 60;
  double damping = 1.0;
  /// Jacobian-only regularization of |D|^{p-2}; negative selects 1e-8 times
  /// the data scale.
  double eps_reg = -1.0;
  bool picard_fallback = true;
  Mode mode = Mode::truncated;
  int k = 1;
  /// Amplitude of a seeded random perturbation added to the Newton initial
  /// guess (the previous step); 0 disables it.
  double guess_perturbation = 0.0;
  std::uint64_t guess_seed = 0;

  /// newton_tol (1 + T / dt).
  double ordering_tol(double horizon) const { return newton_tol * (1.0 + horizon / dt); }
  void validate() const;
};

struct StepReport {
  std::size_t step = 0;
  double t = 0.0;
  int iterations = 0;
  std::vector<double> residuals;  ///< sup-norm residual per iteration, first entry is the initial guess
  bool picard_used = false;
  bool clamped = false;  ///< a negative iterate was clamped at zero (direct mode)
  bool converged = false;
};

struct SolveReport {
  std::vector<StepReport> steps;
  double wall_seconds = 0.0;

  int total_iterations() const;
  double max_final_residual() const;
  std::size_t fallback_count() const;
  std::size_t clamp_count() const;
};

/// Raised when a nonlinear step fails; carries the residual history.
class SolveError : public Error {
 public:
  SolveError(const std::string& what, std::size_t step, SolveReport report)
      : Error(what), step_(step), report_(std::move(report)) {}
  std::size_t step() const noexcept { return step_; }
  const SolveReport& report() const noexcept { return report_; }

 private:
  std::size_t step_;
  SolveReport report_;
};

struct StepResult {
  ScalarField field;
  StepReport report;
};

/// One backward-Euler step from `prev` to `t_next`. Boundary nodes take the
/// lateral data (shifted by 1/k in truncated mode). Throws SolveError if the
/// residual does not reach newton_tol within newton_max iterations.
StepResult implicit_step(const ScalarField& prev, double t_next, const ProblemSpec& spec,
                         const SolverConfig& config, std::size_t step_index = 0);

/// Like implicit_step but starts Newton from `guess` instead of `prev`.
StepResult implicit_step(const ScalarField& prev, const ScalarField& guess, double t_next,
                         const ProblemSpec& spec, const SolverConfig& config, std::size_t step_index = 0);

struct Solution {
  TimeSeries series;
  SolveReport report;
};

/// Full trajectory on [0, T]; T / dt must be (close to) an integer.
Solution solve_problem(const ProblemSpec& spec, const GridPtr& grid, const SolverConfig& config);

/// Number of backward-Euler steps used for horizon T.
std::size_t step_count(double horizon, double dt);

/// Source f = d_t u - sum_j d_j(flux_j) for a positive exact solution, by
/// nested fourth-order central differences with step `h_ref`. In truncated
/// mode the flux is \hat A^k applied to d_j u; in direct mode it is A_j
/// applied to d_j u^{m_j}. Throws DomainError when u_exact <= 0 on a probe
/// lattice, and the returned function throws when it meets such a value.
SpaceTimeFn manufactured_rhs(SpaceTimeFn u_exact, const ProblemSpec& spec, Mode mode, int k = 1,
                             double h_ref = 1e-3);

struct CascadeResult {
  std::vector<int> ks;
  std::vector<Solution> members;
  /// Entry i: max over nodes and times of (u_{k_{i+1}} - u_{k_i})_+.
  std::vector<double> ordering_excess;
  /// Entry i: V^{p,m} distance between u_{k_i} and u_{k_{i+1}}.
  std::vector<double> distances;
  /// Largest-k member, used as the limit proxy.
  const TimeSeries& limit() const { return members.back().series; }
};

class CascadeError : public Error {
 public:
  CascadeError(const std::string& what, CascadeResult partial)
      : Error(what), partial_(std::move(partial)) {}
  const CascadeResult& partial() const noexcept { return partial_; }

 private:
  CascadeResult partial_;
};

/// Solves the truncated problems for every k in `ks` (strictly increasing).
/// Requires the closeness condition. Members are independent and run on
/// worker threads when `parallel` is set.
CascadeResult regularization_cascade(const ProblemSpec& spec, const GridPtr& grid,
                                     const SolverConfig& config, const std::vector<int>& ks,
                                     bool parallel = false);

}  // namespace anisodnl
