#ifndef CARLESON_STATS_HPP
#define CARLESON_STATS_HPP

/// Weighted least-squares line fitting for log-log trend estimates.

#include <cmath>
#include <cstddef>
#include <vector>

#include "carleson/errors.hpp"

namespace carleson {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    /// Standard error of the slope under the supplied weights.
    double slope_err = 0.0;
    std::size_t points = 0;
};

/// Fits y = slope*x + intercept minimizing sum w_i (y_i - fit)^2.
/// Weights are inverse variances; pass 1.0 for an unweighted fit.
inline LineFit fit_line_weighted(const std::vector<double>& x,
                                 const std::vector<double>& y,
                                 const std::vector<double>& w) {
    if (x.size() != y.size() || x.size() != w.size() || x.size() < 2) {
        throw Error("fit_line_weighted: need >= 2 points with matching weights");
    }
    double sw = 0.0, swx = 0.0, swy = 0.0, swxx = 0.0, swxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(w[i] > 0.0) || !std::isfinite(x[i]) || !std::isfinite(y[i])) {
            throw Error("fit_line_weighted: non-finite point or nonpositive weight");
        }
        sw += w[i];
        swx += w[i] * x[i];
        swy += w[i] * y[i];
        swxx += w[i] * x[i] * x[i];
        swxy += w[i] * x[i] * y[i];
    }
    const double det = sw * swxx - swx * swx;
    if (!(det > 0.0)) throw Error("fit_line_weighted: degenerate abscissae");
    LineFit fit;
    fit.slope = (sw * swxy - swx * swy) / det;
    fit.intercept = (swxx * swy - swx * swxy) / det;
    fit.slope_err = std::sqrt(sw / det);
    fit.points = x.size();
    return fit;
}

} // namespace carleson

#endif
