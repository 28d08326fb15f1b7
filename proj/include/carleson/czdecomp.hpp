#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include <carleson/geometry.hpp>
#include <carleson/quadrature.hpp>
#include <carleson/selfmaps.hpp>

/// Dyadic conditional expectations of |f| on Omega, the dyadic maximal
/// function, the stopping-time decomposition of {Mf > 1}, and the audits
/// built on top of it (precision regions, mean-value bounds, the square
/// counterexample, and the full tail chain).
///
/// Throughout, f is a holomorphic self-map of the right half-plane and
/// averages are taken with respect to plain area, normalized by the square
/// area: E_Q = (1/A(Q)) integral_Q |f| dA.

namespace carleson {

/// One adaptive-quadrature average over a dyadic square.
struct SquareAverage {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Memoizing average engine. Each dyadic square's average is computed at
/// most once per tolerance level; refinement replaces a cached entry only
/// with a strictly smaller error bound. Not thread-safe: the stopping-time
/// recursion below runs sequentially and shares one averager.
class SquareAverager {
  public:
    explicit SquareAverager(HoloMap f, QuadOptions options = default_options());

    /// Quadrature defaults tuned for |f| on compact squares: smooth
    /// integrand, so the tensor rule converges in a handful of cells.
    static QuadOptions default_options();

    const HoloMap& map() const { return f_; }
    const QuadOptions& options() const { return opt_; }

    /// Average of |f| over dyadic_square(l), memoized.
    SquareAverage average(const DyadicIndex& l) const;

    /// Re-averages with tolerances shrunk by tol_factor (< 1). The cache
    /// keeps whichever estimate carries the smaller error bound.
    SquareAverage average_refined(const DyadicIndex& l, double tol_factor) const;

    /// Average over an arbitrary rectangle; no memoization.
    SquareAverage average_rect(const Rect& q, const QuadOptions& opt) const;

  private:
    SquareAverage compute(const Rect& q, const QuadOptions& opt) const;

    HoloMap f_;
    QuadOptions opt_;
    mutable std::map<std::tuple<int, std::int64_t, std::int64_t>, SquareAverage>
        cache_;
};

/// Controls for the decomposition and its audits.
struct CZConfig {
    /// Depth cap for the stopping-time recursion and the maximal function.
    int n_max = 12;
    /// Per-square quadrature controls.
    QuadOptions quad = SquareAverager::default_options();
    /// Dead-band refinements: a square whose average straddles 1 within its
    /// error bar is re-averaged with tolerances divided by 10 this many
    /// times before being reported as ambiguous.
    int refine_steps = 2;
    /// Monte Carlo budget for the sampling audits.
    std::uint64_t sample_count = 400000;
    std::uint64_t seed = 20260822;
};

/// Generation-n table of square averages, indexed by idx = j * 2^n + k.
struct PiecewiseDyadicFunction {
    int n = 0;
    std::vector<double> averages;
    std::vector<double> errors;

    std::size_t index_of(const DyadicIndex& l) const;
    /// Average of the generation-n square containing z. Requires z in Omega.
    double value_at(complex z,
                    BoundaryPolicy policy = BoundaryPolicy::HalfOpen) const;
};

/// Table of all generation-n averages of |f|. Memory and work grow like
/// 4^n; intended for n well below the recursion depth cap.
PiecewiseDyadicFunction conditional_expectation(const HoloMap& f, int n,
                                                const CZConfig& cfg = {});

/// max over generations 0..n_max of the containing-square average at z.
/// A lower bound for the dyadic maximal function, nondecreasing in n_max.
/// Requires z in Omega; under BoundaryPolicy::Strict, throws
/// OnDyadicBoundary when z lies on a grid line of some generation <= n_max.
double maximal_function(const SquareAverager& averager, complex z, int n_max,
                        BoundaryPolicy policy = BoundaryPolicy::HalfOpen);
double maximal_function(const HoloMap& f, complex z, int n_max,
                        const CZConfig& cfg = {},
                        BoundaryPolicy policy = BoundaryPolicy::HalfOpen);

/// A maximal stopping square: average > 1 while every strict ancestor's
/// average is <= 1.
struct StoppingSquare {
    DyadicIndex index;
    double average = 0.0;
    double error = 0.0;
    /// |f(center)| at the square center.
    double center_value = 0.0;
};

struct CZResult {
    /// Stopping squares in canonical (n, j, k) order; pairwise-disjoint,
    /// none a descendant of another, averages in [1 - tol, 4 + tol].
    std::vector<StoppingSquare> squares;
    /// Squares whose average straddles 1 within its error bound after all
    /// refinement steps; the recursion does not descend into them.
    std::vector<DyadicIndex> ambiguous;
    double ambiguous_area = 0.0;
    /// Total area of depth-cap squares with average <= 1 that could not be
    /// certified free of deeper stopping squares. The region {Mf > 1} may
    /// intersect them below generation n_max.
    double residual_area = 0.0;
    std::size_t residual_count = 0;
    double root_average = 0.0;
    double root_error = 0.0;
    int n_max = 0;
    /// Relative quadrature tolerance the averages were computed at.
    double tolerance = 0.0;
    /// Work counters: squares whose average was computed, and subtrees
    /// certified average-free of stopping squares without quadrature.
    std::uint64_t squares_examined = 0;
    std::uint64_t pruned_subtrees = 0;
};

/// Stopping-time decomposition of {Mf > 1} intersected with Omega.
///
/// Starting from Omega, squares with average > 1 are emitted and squares
/// with average <= 1 are recursed into, up to generation cfg.n_max.
/// Comparisons use a dead-band ("> 1" means value - error > 1, "<= 1"
/// means value + error <= 1) so quadrature noise never emits a false
/// stopping square; straddling squares are refined, then reported
/// ambiguous. Subtrees of off-axis squares are pruned without quadrature
/// when the Harnack bound M_s |f(center)| <= 1 certifies sup |f| <= 1 on
/// the whole square. Throws RootAverageExceedsOne when the average over
/// Omega itself is not certified <= 1.
CZResult cz_decompose(const HoloMap& f, const CZConfig& cfg = {});

/// One precision region R_l inside a stopping square Q_l: R_l = Q_l for
/// off-axis squares (contained in a pseudo-disk of radius sqrt(4/5)), and
/// the pseudo-disk Delta(center, 1/4) for axis squares.
struct PrecisionEntry {
    DyadicIndex index;
    bool axis = false;
    double tau_region = 0.0;
    double tau_region_error = 0.0;
    double tau_square = 0.0;
    double tau_square_error = 0.0;
    /// tau_region / tau_square.
    double ratio = 0.0;
    /// mu_alpha(R_l) / mu_alpha(Q_l); 1 for off-axis squares. For axis
    /// squares this is scale-invariant and matches c_mu_oracle.
    double mu_ratio = 1.0;
    /// Certified lower bound for |f| / |f(center)| on R_l: 1 / M_s for the
    /// region's pseudo-hyperbolic radius bound s (3/5 for axis squares).
    double delta_bound = 0.0;
    /// Sampled min of |f(z)| / |f(center)| over R_l.
    double min_map_ratio = 0.0;
    /// Every sample of R_l landed inside Q_l.
    bool containment_ok = false;
    /// min_map_ratio respects delta_bound (with a small slack).
    bool map_ratio_ok = false;
};

struct PrecisionReport {
    double alpha = 0.0;
    std::vector<PrecisionEntry> entries;
    /// min over entries of tau_region / tau_square; NaN when L is empty.
    double c_emp = 0.0;
    /// min over axis entries of mu_ratio; NaN when no axis square stopped.
    double c_mu_axis = 0.0;
    /// mu_alpha[Delta(1, 1/4)] / mu_alpha(Omega), the scale-invariant value
    /// every axis square's mu_ratio reproduces.
    double c_mu_oracle = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

/// Audits the precision regions of a decomposition of f: tau_alpha masses
/// by adaptive quadrature, containment and |f| lower bounds by sampling.
/// The map f must be the one the decomposition was built from.
PrecisionReport precision_regions(const HoloMap& f, const CZResult& result,
                                  double alpha, const CZConfig& cfg = {});

/// Two-sided mean-value audit on one square: average of |f| versus
/// (pi/4) |f(center)|.
struct MeanValueAudit {
    double average = 0.0;
    double error = 0.0;
    double center_value = 0.0;
    /// average / ((pi/4) |f(center)|); the empirical upper constant.
    double ratio = 0.0;
    /// average >= (pi/4) |f(center)| - error.
    bool lower_ok = false;
};

/// Requires q to be a square with closure in the closed right half-plane
/// (x0 >= 0) and positive side. Throws QuadratureFailure if the average
/// cannot be computed.
MeanValueAudit mean_value_audit(const HoloMap& f, const Rect& q,
                                const CZConfig& cfg = {});

/// Scan of sigma(t) = average of |exp((Tz)^4)| over the square of center 1
/// and half-side t, plus the quartic moment identity behind its first-order
/// behavior sigma(t) ~ 1 - t^4/60.
struct RemarkReport {
    std::vector<double> t_grid;
    std::vector<double> sigma;
    std::vector<double> sigma_error;
    /// (1/4) integral over [-1,1]^2 of (x^4 + y^4 - 6 x^2 y^2)/16: the
    /// exact t^4 coefficient, equal to -1/60.
    double quartic_identity = 0.0;
    double quartic_identity_error = 0.0;
    /// Finite-difference estimate of d/ds at 0 of tau(s) = sigma(s^{1/4}).
    double tau_prime = 0.0;
    /// Smallest grid t whose average is certified below 1 (sigma + error
    /// < 1); NaN when the grid exhibits none.
    double witness_t = 0.0;
    bool witness_found = false;
};

/// Requires a nonempty grid with every t in (0, 1/2].
RemarkReport remark_counterexample(const std::vector<double>& t_grid,
                                   const CZConfig& cfg = {});

/// End-to-end audit of the tail chain for one map: the decomposition, the
/// per-lambda comparison of tau_alpha({|f| > lambda} on Omega) against the
/// stopping mass, and the lower chain through the precision regions.
struct ChainAuditReport {
    double alpha = 0.0;
    std::string symbol;
    CZResult decomposition;
    std::vector<double> lambdas;
    /// Monte Carlo tau_alpha({|f| > lambda} on Omega) per lambda.
    std::vector<double> lhs;
    std::vector<double> lhs_error;
    std::vector<std::uint64_t> lhs_hits;
    /// Sum over stopping squares of tau_alpha(Q_l), by quadrature.
    double stop_mass = 0.0;
    double stop_mass_error = 0.0;
    /// lhs * lambda^(alpha+2) / stop_mass per lambda; the chain bounds it.
    std::vector<double> ratio;
    /// max of ratio: empirical constant for the upper chain.
    double k_emp = 0.0;
    double trend_slope = 0.0;
    double trend_slope_err = 0.0;
    /// max over stopping squares of average / ((pi/4) |f(center)|): the
    /// empirical upper mean-value constant C.
    double mean_value_c = 0.0;
    /// min over stopping squares of the certified |f| proportion bound.
    double delta0 = 0.0;
    /// delta0 * 4 / (pi * mean_value_c): certified level below which every
    /// precision region lives in {|f| > delta1}.
    double delta1 = 0.0;
    /// Monte Carlo tau_alpha({|f| > delta1}) over the whole half-plane.
    double level_delta1_mass = 0.0;
    double level_delta1_error = 0.0;
    /// Sum over stopping squares of tau_alpha(R_l), by quadrature.
    double region_mass = 0.0;
    double region_mass_error = 0.0;
    /// min tau ratio from the precision report.
    double c_emp = 0.0;
    /// level_delta1_mass >= region_mass within 4 combined sigma.
    bool lower_chain_ok = false;
    double max_center_value = 0.0;
    /// Every |f(center)| <= 16/pi (+ small tolerance), as forced by
    /// averages <= 4 and the mean-value lower bound.
    bool center_bound_ok = false;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

/// Requires a strictly increasing lambda grid with every lambda >= 1, and
/// cz_decompose succeeding on f. Errors from the decomposition propagate.
ChainAuditReport theo_clef_chain_audit(const HoloMap& f, double alpha,
                                       const std::vector<double>& lambda_grid,
                                       const CZConfig& cfg = {});

}  // namespace carleson
