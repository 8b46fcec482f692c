#pragma once

#include "anisodnl/grid.hpp"

namespace anisodnl {

/// Piecewise-linear interpolation in time; t must lie in [t_0, t_last].
ScalarField interpolate(const TimeSeries& series, double t);

/// Exact integral over [a, b] of the piecewise-linear-in-time interpolant.
ScalarField integrate_in_time(const TimeSeries& series, double a, double b);

/// Steklov average (1/h) int_t^{t+h} v, or (1/h) int_{t-h}^t v when
/// `reversed`, at one time.
ScalarField steklov_at(const TimeSeries& series, double h, double t, bool reversed = false);

/// Steklov average at every frame time where the window fits inside
/// [t_0, t_last]: t <= t_last - h, or t >= t_0 + h when `reversed`.
TimeSeries steklov(const TimeSeries& series, double h, bool reversed = false);

/// Exponential time mollifier (1/h) int_{t_0}^t e^{(s-t)/h} v(s) ds, or
/// (1/h) int_t^{t_last} e^{(t-s)/h} v(s) ds when `reversed`, at one time.
ScalarField exp_mollify_at(const TimeSeries& series, double h, double t, bool reversed = false);

/// Exponential mollifier at every frame time, by the exact recursion for
/// piecewise-linear data.
TimeSeries exp_mollify(const TimeSeries& series, double h, bool reversed = false);

}  // namespace anisodnl
