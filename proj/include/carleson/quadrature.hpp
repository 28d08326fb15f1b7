#ifndef CARLESON_QUADRATURE_HPP
#define CARLESON_QUADRATURE_HPP

/// Deterministic quadrature engines: a globally adaptive Gauss-Kronrod 7/15
/// rule on intervals and its tensor-product analogue on axis-aligned
/// rectangles.  Nodes are interior, so integrands may be singular at the
/// boundary of the region (the caller is still expected to substitute away
/// strong singularities for speed).

#include <cstddef>
#include <functional>

#include "carleson/geometry.hpp"

namespace carleson {

struct QuadOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-13;
    /// Interval (or cell) budget for the adaptive subdivision loop.
    std::size_t max_intervals = 5000;
};

struct QuadEstimate {
    double value = 0.0;
    /// Conservative error bound accumulated from per-interval estimates.
    double error = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Integrates f over [a, b].  Endpoints are never evaluated.
QuadEstimate integrate_1d(const std::function<double(double)>& f, double a,
                          double b, const QuadOptions& opt = {});

/// Integrates f(x, y) over the open rectangle via 4-way adaptive splitting.
QuadEstimate integrate_rect2d(const std::function<double(double, double)>& f,
                              const Rect& box, const QuadOptions& opt = {});

} // namespace carleson

#endif
