#ifndef CARLESON_PULLBACK_HPP
#define CARLESON_PULLBACK_HPP

/// Pull-back Carleson machinery: window masses of phi(BergmanA), the
/// Carleson function rho and its running-sup companion K, the window
/// scaling experiment, level-set masses, and the half-plane tail audits.
///
/// All estimators are Monte Carlo over a shared BergmanA sample stream,
/// with integer per-stratum counting so results are reproducible for any
/// worker count.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "carleson/measures.hpp"
#include "carleson/selfmaps.hpp"

namespace carleson {

/// A_alpha mass of phi^{-1}(W(xi, h)) by sampling.  Throws NonConvergence
/// when the Monte Carlo relative error exceeds cfg.rel_tol on a nonzero
/// estimate at the full budget.
Estimate pullback_window_measure(const HoloMap& phi, double alpha, complex xi,
                                 double h, const IntegrationConfig& cfg);

struct ProfilePoint {
    double h = 0.0;
    /// Discrete sup over the xi grid of the pulled-back window mass.
    double rho = 0.0;
    double rho_error = 0.0;
    /// Running max of rho(t)/t^{alpha+2} over grid points t <= h.
    double k_value = 0.0;
    /// Hit count behind the reported sup.
    std::uint64_t hits = 0;
    /// Number of window centers probed at this aperture.
    std::size_t xi_count = 0;
    /// True when the sup rests on >= 200 hits.
    bool reliable = false;
};

struct CarlesonProfile {
    double alpha = 0.0;
    std::string symbol;
    std::vector<ProfilePoint> points;
    /// Set when the smallest aperture saw no hit anywhere on the circle
    /// (symbols with sup-norm < 1 eventually miss every window).
    bool eventually_zero = false;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

/// Sweeps a strictly decreasing h grid in (0, 1/2).  The xi grid at each
/// aperture has max(xi_count, ceil(4 pi / h)) centers, rounded up so the
/// grids are nested (a power-of-two multiple of the base count); nesting
/// plus shared samples keeps the reported rho nondecreasing in h whenever
/// consecutive grid apertures satisfy h_next <= 3/4 h.
CarlesonProfile carleson_profile(const HoloMap& phi, double alpha,
                                 const std::vector<double>& h_grid,
                                 std::size_t xi_count,
                                 const IntegrationConfig& cfg);

struct ScalingCell {
    double numerator = 0.0;
    double numerator_error = 0.0;
    std::uint64_t hits = 0;
    /// R = mass(eps h) / (eps^{alpha+2} mass(h)); NaN when the denominator
    /// is indistinguishable from zero (below 5x its error bar).
    double ratio = std::numeric_limits<double>::quiet_NaN();
    bool alarm = false;
};

struct ScalingRow {
    double h = 0.0;
    double denominator = 0.0;
    double denominator_error = 0.0;
    std::uint64_t denominator_hits = 0;
    bool degenerate = false;
    std::vector<ScalingCell> cells;
    /// Log-log slope of eps -> mass(eps h) over cells with >= 200 hits;
    /// NaN when fewer than two such cells exist.
    double slope = std::numeric_limits<double>::quiet_NaN();
    double slope_err = std::numeric_limits<double>::quiet_NaN();
};

struct ScalingReport {
    double alpha = 0.0;
    std::string symbol;
    complex xi = 1.0;
    std::vector<double> h_grid;
    /// Experimental grid in [0.05, 1); the exact anchor eps = 1 is appended
    /// as the last column and excluded from slope fits.
    std::vector<double> eps_grid;
    std::vector<ScalingRow> rows;
    double c_emp = 0.0;
    /// R values above this threshold raise the per-cell alarm flag.
    double alarm_threshold = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

ScalingReport scaling_experiment(const HoloMap& phi, double alpha, complex xi,
                                 const std::vector<double>& h_grid,
                                 const std::vector<double>& eps_grid,
                                 const IntegrationConfig& cfg,
                                 double alarm_threshold = 1000.0);

/// Measure of {z in region : |m(z)| > lambda}.  The region must live in
/// m's domain; Monte Carlo throughout.
Estimate level_set_measure(const HoloMap& m, const MeasureKind& measure,
                           double lambda, const Region& region,
                           const IntegrationConfig& cfg);

enum class TailAuditKind { Starting, Global, Reduction, TheoClef };

struct TailAuditReport {
    TailAuditKind kind;
    double alpha = 0.0;
    std::string symbol;
    std::vector<double> lambdas;
    std::vector<double> lhs;
    std::vector<double> lhs_error;
    std::vector<std::uint64_t> lhs_hits;
    /// The bound ingredient: |g(0)|^{alpha+2}, |f(1)|^{alpha+2}, or the
    /// level-1 mass, by kind.
    double rhs = 0.0;
    double rhs_error = 0.0;
    /// Per-lambda normalized ratios lhs * lambda^{alpha+2} / rhs.
    std::vector<double> ratio;
    /// Max ratio over the grid: the empirical constant of the audit.
    double constant_emp = 0.0;
    /// Log-log trend of ratio vs lambda over points with >= 200 hits.
    double trend_slope = std::numeric_limits<double>::quiet_NaN();
    double trend_slope_err = std::numeric_limits<double>::quiet_NaN();
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

/// Starting/Reduction audit a map D -> P at its base point 0; Global and
/// TheoClef audit a half-plane self-map at the base point 1.  Reduction
/// additionally requires |g(0)| <= tanh(pi), TheoClef |f(1)| <= c1.
TailAuditReport tail_inequality_audit(TailAuditKind kind, const HoloMap& m,
                                      double alpha,
                                      const std::vector<double>& lambda_grid,
                                      const IntegrationConfig& cfg,
                                      double c1 = 0.0);

/// Default c1 threshold for the TheoClef audit: 0.9 tanh(pi).
double theo_clef_default_c1();

} // namespace carleson

#endif
