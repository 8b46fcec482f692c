#include <array>
#include <cmath>
#include <vector>

#include "anisodnl/solver.hpp"

namespace anisodnl {
namespace {

constexpr std::array<double, 4> kOffsets{-2.0, -1.0, 1.0, 2.0};
constexpr std::array<double, 4> kWeights{1.0, -8.0, 8.0, -1.0};  // divided by 12 h

double checked(const SpaceTimeFn& u, Point x, double t) {
  const double v = u(x, t);
  if (!(v > 0.0)) throw DomainError("manufactured_rhs: exact solution must be positive");
  return v;
}

}  // namespace

SpaceTimeFn manufactured_rhs(SpaceTimeFn u_exact, const ProblemSpec& spec, Mode mode, int k, double h_ref) {
  if (!u_exact) throw DomainError("manufactured_rhs: empty exact solution");
  if (!(h_ref > 0.0)) throw DomainError("manufactured_rhs: reference step must be positive");
  if (mode == Mode::truncated && k < 1) throw DomainError("manufactured_rhs: k must be a positive integer");

  // Reject non-positive exact solutions up front on a coarse sample.
  const std::size_t n = spec.dim();
  constexpr int kProbe = 9;
  std::vector<double> x(n);
  std::size_t total = 1;
  for (std::size_t j = 0; j < n; ++j) total *= kProbe;
  for (int it = 0; it < kProbe; ++it) {
    const double t = spec.T * it / (kProbe - 1);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rest = idx;
      for (std::size_t j = 0; j < n; ++j) {
        x[j] = spec.box[j] * static_cast<double>(rest % kProbe) / (kProbe - 1);
        rest /= kProbe;
      }
      checked(u_exact, x, t);
    }
  }

  return [u = std::move(u_exact), spec, mode, k, h = h_ref](Point xp, double t) {
    const std::size_t dim = spec.dim();
    std::vector<double> y(xp.begin(), xp.end());

    double dudt = 0.0;
    for (std::size_t s = 0; s < kOffsets.size(); ++s) dudt += kWeights[s] * checked(u, xp, t + kOffsets[s] * h);
    dudt /= 12.0 * h;

    // Axis flux at the point y (which the caller shifts along axis j).
    auto flux = [&](std::size_t j, std::vector<double>& pt) {
      const double q = mode == Mode::direct ? spec.exponents.m[j] : 1.0;
      const double centre = pt[j];
      double grad = 0.0;
      for (std::size_t s = 0; s < kOffsets.size(); ++s) {
        pt[j] = centre + kOffsets[s] * h;
        grad += kWeights[s] * std::pow(checked(u, pt, t), q);
      }
      pt[j] = centre;
      grad /= 12.0 * h;
      const double uc = checked(u, pt, t);
      return mode == Mode::direct ? eval_flux(spec, j, pt, t, uc, grad)
                                  : eval_flux_truncated(spec, k, j, pt, t, uc, grad);
    };

    double div = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      double d = 0.0;
      for (std::size_t s = 0; s < kOffsets.size(); ++s) {
        y[j] = xp[j] + kOffsets[s] * h;
        d += kWeights[s] * flux(j, y);
      }
      y[j] = xp[j];
      div += d / (12.0 * h);
    }
    return dudt - div;
  };
}

}  // namespace anisodnl
