#include "anisodnl/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "anisodnl/errors.hpp"

namespace anisodnl {

double Exponents::m_min() const {
  if (m.empty()) throw DomainError("exponents: empty m vector");
  return *std::min_element(m.begin(), m.end());
}

double Exponents::conjugate(std::size_t j) const { return p.at(j) / (p.at(j) - 1.0); }

void Exponents::validate() const {
  if (p.empty()) throw DomainError("exponents: dimension must be at least 1");
  if (p.size() != m.size()) throw DomainError("exponents: p and m have different lengths");
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (!(p[j] > 1.0)) throw DomainError("exponents: p_" + std::to_string(j + 1) + " must exceed 1");
    if (!(m[j] >= 1.0)) throw DomainError("exponents: m_" + std::to_string(j + 1) + " must be >= 1");
  }
}

std::optional<std::size_t> Exponents::closeness_failure() const {
  const double mm = m_min();
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (!(m[j] < conjugate(j) * mm)) return j;
  }
  return std::nullopt;
}

double Exponents::closeness_margin() const {
  const double mm = m_min();
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < p.size(); ++j) margin = std::min(margin, conjugate(j) * mm - m[j]);
  return margin;
}

BarExponents compute_bar_exponents(const Exponents& exponents) {
  exponents.validate();
  const auto n = static_cast<double>(exponents.dim());
  double inv_sum = 0.0;
  for (double pj : exponents.p) inv_sum += 1.0 / pj;

  BarExponents bar;
  bar.p_bar = n / inv_sum;
  bar.p_bar_conj = bar.p_bar / (bar.p_bar - 1.0);
  if (bar.p_bar < n) bar.p_bar_star = n * bar.p_bar / (n - bar.p_bar);
  const double mm = exponents.m_min();
  bar.mu = (mm + 1.0) / mm;
  return bar;
}

double ProblemSpec::volume() const {
  double v = 1.0;
  for (double l : box) v *= l;
  return v;
}

double truncate(int k, double s) {
  if (k < 1) throw DomainError("truncate: k must be a positive integer");
  const double kk = static_cast<double>(k);
  return std::min(kk, std::max(s, 1.0 / kk));
}

double signed_power(double s, double p) {
  if (s == 0.0) return 0.0;
  if (p == 2.0) return s;
  return std::copysign(std::pow(std::abs(s), p - 1.0), s);
}

double eval_flux(const ProblemSpec& spec, std::size_t j, Point x, double t, double u, double xi) {
  return spec.coeffs.a.at(j)(x, t, u) * signed_power(xi, spec.exponents.p.at(j));
}

double truncated_coefficient(const ProblemSpec& spec, int k, std::size_t j, Point x, double t,
                             double u) {
  const double pj = spec.exponents.p.at(j);
  const double mj = spec.exponents.m.at(j);
  const double a = spec.coeffs.a.at(j)(x, t, u);
  if (mj == 1.0) return a;
  return a * std::pow(mj, pj - 1.0) * std::pow(truncate(k, u), (mj - 1.0) * (pj - 1.0));
}

double eval_flux_truncated(const ProblemSpec& spec, int k, std::size_t j, Point x, double t,
                           double u, double xi) {
  return truncated_coefficient(spec, k, j, x, t, u) * signed_power(xi, spec.exponents.p.at(j));
}

StructureConstants structure_constants(const ProblemSpec& spec, int k) {
  if (k < 1) throw DomainError("structure_constants: k must be a positive integer");
  const auto& e = spec.exponents;
  const double lambda = spec.coeffs.lambda;
  StructureConstants sc;
  double cmin = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < e.dim(); ++j) {
    const double growth = (e.m[j] - 1.0) * (e.p[j] - 1.0);
    const double base = std::pow(e.m[j], e.p[j] - 1.0);
    sc.b.push_back(lambda * base * std::pow(static_cast<double>(k), growth));
    cmin = std::min(cmin, base * std::pow(static_cast<double>(k), -growth));
  }
  sc.c = cmin / lambda;
  return sc;
}

double truncated_lipschitz_constant(const ProblemSpec& spec, int k, std::size_t j) {
  if (k < 1) throw DomainError("truncated_lipschitz_constant: k must be a positive integer");
  const double pj = spec.exponents.p.at(j);
  const double mj = spec.exponents.m.at(j);
  const double e = (mj - 1.0) * (pj - 1.0);
  const double kk = static_cast<double>(k);
  // On [1/k, k]: T_k^e <= k^e and |d/ds s^e| <= e max(k^{e-1}, k^{1-e}).
  const double sup_power = std::pow(kk, e);
  const double sup_slope = e == 0.0 ? 0.0 : e * std::max(std::pow(kk, e - 1.0), std::pow(kk, 1.0 - e));
  return std::pow(mj, pj - 1.0) * (spec.coeffs.lipschitz_c * sup_power + spec.coeffs.lambda * sup_slope);
}

bool AdmissibilityReport::all_pass() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const auto& c) { return c.pass; });
}

const ConditionResult& AdmissibilityReport::condition(const std::string& id) const {
  for (const auto& c : conditions)
    if (c.id == id) return c;
  throw DomainError("admissibility: unknown condition '" + id + "'");
}

namespace {

std::string describe(double value) {
  std::ostringstream os;
  os.precision(6);
  os << value;
  return os.str();
}

}  // namespace

AdmissibilityReport check_admissibility(const ProblemSpec& spec, std::size_t samples,
                                        std::uint64_t seed) {
  AdmissibilityReport report;
  const std::size_t n = spec.dim();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto add = [&](std::string id, std::string description, bool pass, double margin, std::string detail) {
    report.conditions.push_back({std::move(id), std::move(description), pass, margin, std::move(detail)});
  };

  // Exponents.
  bool exponents_ok = true;
  std::string exponent_detail;
  try {
    spec.exponents.validate();
    if (spec.exponents.dim() != n) throw DomainError("exponent vectors do not match the box dimension");
    if (spec.coeffs.a.size() != n) throw DomainError("need one coefficient per axis");
  } catch (const DomainError& e) {
    exponents_ok = false;
    exponent_detail = e.what();
  }
  double exp_margin = 0.0;
  if (exponents_ok) {
    exp_margin = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j)
      exp_margin = std::min({exp_margin, spec.exponents.p[j] - 1.0, spec.exponents.m[j] - 1.0});
  }
  add("exponents", "p_j > 1 and m_j >= 1 for every axis", exponents_ok, exp_margin, exponent_detail);

  bool geometry_ok = spec.T > 0.0 && n > 0 &&
                     std::all_of(spec.box.begin(), spec.box.end(), [](double l) { return l > 0.0; });
  add("geometry", "positive box extents and horizon", geometry_ok, spec.T, "");
  if (!exponents_ok || !geometry_ok) {
    report.cascade_enabled = false;
    report.degiorgi_enabled = false;
    return report;
  }

  std::vector<double> x(n);
  auto sample_point = [&](bool on_boundary) {
    for (std::size_t j = 0; j < n; ++j) x[j] = unit(rng) * spec.box[j];
    if (on_boundary) {
      const auto axis = static_cast<std::size_t>(unit(rng) * static_cast<double>(n)) % n;
      x[axis] = unit(rng) < 0.5 ? 0.0 : spec.box[axis];
    }
  };

  // Data ranges drive the u-sampling window for the coefficient audits.
  double data_max = 0.0;
  double u0_min = std::numeric_limits<double>::infinity();
  bool u0_finite = true;
  double f_min = std::numeric_limits<double>::infinity();
  double f_absmax = 0.0;
  bool f_finite = true;
  double g_min = std::numeric_limits<double>::infinity();
  double g_absmax = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    sample_point(false);
    const double t = unit(rng) * spec.T;
    const double u0 = spec.u0(x);
    const double fv = spec.f(x, t);
    u0_finite = u0_finite && std::isfinite(u0);
    f_finite = f_finite && std::isfinite(fv);
    u0_min = std::min(u0_min, u0);
    f_min = std::min(f_min, fv);
    f_absmax = std::max(f_absmax, std::abs(fv));
    data_max = std::max(data_max, std::abs(u0));
    sample_point(true);
    const double gv = spec.g(x, unit(rng) * spec.T);
    g_min = std::min(g_min, gv);
    g_absmax = std::max(g_absmax, std::abs(gv));
    data_max = std::max(data_max, std::abs(gv));
  }
  const double u_window = 10.0 + 2.0 * data_max;

  // Ellipticity and Lipschitz audits.
  const double lambda = spec.coeffs.lambda;
  double ell_margin = std::numeric_limits<double>::infinity();
  double worst_lip = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    sample_point(false);
    const double t = unit(rng) * spec.T;
    const double u = unit(rng) * u_window;
    const double v = unit(rng) * u_window;
    for (std::size_t j = 0; j < n; ++j) {
      const double au = spec.coeffs.a[j](x, t, u);
      const double av = spec.coeffs.a[j](x, t, v);
      ell_margin = std::min({ell_margin, au - 1.0 / lambda, lambda - au});
      if (u != v) worst_lip = std::max(worst_lip, std::abs(au - av) / std::abs(u - v));
    }
  }
  add("ellipticity", "1/lambda <= a_j(x,t,u) <= lambda on sampled points", lambda > 0.0 && ell_margin >= 0.0,
      ell_margin, "");
  const double lip_margin = spec.coeffs.lipschitz_c - worst_lip;
  add("lipschitz", "|a_j(u) - a_j(v)| <= c |u - v| on sampled pairs",
      lip_margin >= -1e-9 * std::max(1.0, spec.coeffs.lipschitz_c), lip_margin,
      "largest sampled slope " + describe(worst_lip));

  // Source.
  const bool f_zero = f_absmax == 0.0;
  add("source", "f >= 0 and finite (sampled integrability)", f_finite && f_min >= 0.0, f_min,
      f_zero ? "f == 0" : "");

  // sigma > 1 + N / p_bar.
  const BarExponents bar = compute_bar_exponents(spec.exponents);
  report.sigma_margin = spec.sigma - (1.0 + static_cast<double>(n) / bar.p_bar);
  add("sigma", "sigma > 1 + N / p_bar", report.sigma_margin > 0.0, report.sigma_margin,
      "p_bar = " + describe(bar.p_bar));

  add("initial", "u0 >= 0 and bounded", u0_finite && u0_min >= 0.0, u0_min, "");

  report.closeness_failing_axis = spec.exponents.closeness_failure();
  report.closeness_margin = spec.exponents.closeness_margin();
  std::string close_detail;
  if (report.closeness_failing_axis)
    close_detail = "fails on axis " + std::to_string(*report.closeness_failing_axis + 1);
  add("closeness", "m_j < p_j' m for every axis", !report.closeness_failing_axis.has_value(),
      report.closeness_margin, close_detail);

  bool boundary_ok = false;
  double boundary_margin = 0.0;
  std::string boundary_detail;
  if (spec.eps0 > 0.0) {
    boundary_margin = g_min - spec.eps0;
    boundary_ok = boundary_margin >= 0.0;
    boundary_detail = "g >= eps0 = " + describe(spec.eps0);
  } else {
    boundary_margin = -g_absmax;
    boundary_ok = g_absmax == 0.0;
    boundary_detail = "g == 0 required when eps0 = 0";
  }
  add("boundary", "g >= eps0 > 0 everywhere, or g == 0", boundary_ok, boundary_margin, boundary_detail);

  report.cascade_enabled = !report.closeness_failing_axis.has_value();
  report.degiorgi_enabled = report.sigma_margin > 0.0;
  return report;
}

}  // namespace anisodnl
