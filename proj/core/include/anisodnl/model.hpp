#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace anisodnl {

/// Spatial point, one coordinate per axis.
using Point = std::span<const double>;

using SpaceFn = std::function<double(Point x)>;
using SpaceTimeFn = std::function<double(Point x, double t)>;
using CoefficientFn = std::function<double(Point x, double t, double u)>;

/// Per-axis growth exponents p_j and solution powers m_j.
struct Exponents {
  std::vector<double> p;
  std::vector<double> m;

  std::size_t dim() const noexcept { return p.size(); }
  /// m := min_j m_j.
  double m_min() const;
  /// Hoelder conjugate p_j' = p_j / (p_j - 1).
  double conjugate(std::size_t j) const;
  /// Throws DomainError unless sizes agree, p_j > 1 and m_j >= 1.
  void validate() const;

  /// First axis violating m_j < p_j' m, if any.
  std::optional<std::size_t> closeness_failure() const;
  bool closeness() const { return !closeness_failure().has_value(); }
  /// min_j (p_j' m - m_j); positive iff the closeness condition holds.
  double closeness_margin() const;
};

struct BarExponents {
  double p_bar = 0.0;       ///< harmonic mean of the p_j
  double p_bar_conj = 0.0;  ///< p_bar / (p_bar - 1)
  /// N p_bar / (N - p_bar) when p_bar < N; empty means unbounded.
  std::optional<double> p_bar_star;
  double mu = 0.0;  ///< (m + 1) / m
};

BarExponents compute_bar_exponents(const Exponents& exponents);

struct CoefficientSpec {
  std::vector<CoefficientFn> a;  ///< one evaluator a_j(x, t, u) per axis
  double lambda = 1.0;           ///< ellipticity band: 1/lambda <= a_j <= lambda
  double lipschitz_c = 0.0;      ///< |a_j(x,t,u) - a_j(x,t,v)| <= lipschitz_c |u - v|
};

/// The continuous Cauchy-Dirichlet problem on the box [0, L_1] x ... x [0, L_N].
struct ProblemSpec {
  std::string name;
  std::vector<double> box;  ///< extents L_j
  double T = 1.0;
  Exponents exponents;
  CoefficientSpec coeffs;
  SpaceTimeFn f;  ///< source, f >= 0
  SpaceTimeFn g;  ///< lateral boundary values
  SpaceFn u0;     ///< initial values, u0 >= 0
  double sigma = 2.0;
  double eps0 = 0.0;  ///< lower bound of g; 0 means g == 0

  std::size_t dim() const noexcept { return box.size(); }
  double volume() const;
};

/// T_k(s) = min{k, max{s, 1/k}}.
double truncate(int k, double s);

/// A_j(x,t,u,xi_j) = a_j(x,t,u) |xi_j|^{p_j-2} xi_j, with the value 0 at xi_j = 0.
double eval_flux(const ProblemSpec& spec, std::size_t j, Point x, double t, double u, double xi);

/// Coefficient of the truncated field: a_j m_j^{p_j-1} T_k(u)^{(m_j-1)(p_j-1)}.
double truncated_coefficient(const ProblemSpec& spec, int k, std::size_t j, Point x, double t, double u);

/// \hat A^k_j(x,t,u,xi_j) = truncated_coefficient * |xi_j|^{p_j-2} xi_j.
double eval_flux_truncated(const ProblemSpec& spec, int k, std::size_t j, Point x, double t,
                           double u, double xi);

/// |s|^{p-2} s with the continuous extension 0 at s = 0.
double signed_power(double s, double p);

/// Growth and coercivity constants of the truncated field.
struct StructureConstants {
  std::vector<double> b;  ///< b_{k,j} = lambda m_j^{p_j-1} k^{(m_j-1)(p_j-1)}
  double c = 0.0;         ///< c_k = lambda^{-1} min_j m_j^{p_j-1} k^{-(m_j-1)(p_j-1)}
};
StructureConstants structure_constants(const ProblemSpec& spec, int k);

/// Lipschitz constant in u of truncated_coefficient on axis j.
double truncated_lipschitz_constant(const ProblemSpec& spec, int k, std::size_t j);

struct ConditionResult {
  std::string id;
  std::string description;
  bool pass = false;
  double margin = 0.0;
  std::string detail;
};

struct AdmissibilityReport {
  std::vector<ConditionResult> conditions;
  bool cascade_enabled = false;   ///< closeness holds
  bool degiorgi_enabled = false;  ///< sigma strictly above 1 + N / p_bar
  std::optional<std::size_t> closeness_failing_axis;
  double sigma_margin = 0.0;      ///< sigma - (1 + N / p_bar)
  double closeness_margin = 0.0;

  bool all_pass() const;
  const ConditionResult& condition(const std::string& id) const;
};

/// Audits the data conditions by evaluating the user-supplied functions on
/// `samples` random points of the space-time cylinder (and random u values
/// for the coefficients). Never throws for a failing condition.
AdmissibilityReport check_admissibility(const ProblemSpec& spec, std::size_t samples,
                                        std::uint64_t seed = 0);

}  // namespace anisodnl
