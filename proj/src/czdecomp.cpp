#include <carleson/czdecomp.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <utility>

#include <carleson/errors.hpp>
#include <carleson/measures.hpp>
#include <carleson/rng.hpp>
#include <carleson/stats.hpp>

namespace carleson {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double map_abs(const HoloMap& f, complex z) { return std::abs(f.evaluate(z)); }

void require_half_plane_self_map(const HoloMap& f) {
    if (f.domain() != Domain::HalfPlane || f.codomain() != Domain::HalfPlane) {
        throw DomainMismatch(
            "dyadic averaging needs a self-map of the half-plane, got " +
            f.descriptor());
    }
}

/// Constant maps are fully decidable: every square average at every depth
/// equals |c|, so the decomposition needs no recursion and leaves no
/// unresolved residual.
bool is_constant_map(const HoloMap& f) {
    return f.descriptor().rfind("constant:", 0) == 0;
}

enum class Band { Above, Below, Straddle };

/// Dead-band comparison against 1 with stepwise tolerance refinement.
Band classify(const SquareAverager& averager, const DyadicIndex& l,
              int refine_steps, SquareAverage& out) {
    out = averager.average(l);
    double factor = 0.1;
    for (int step = 0;; ++step) {
        if (out.value - out.error > 1.0) return Band::Above;
        if (out.value + out.error <= 1.0) return Band::Below;
        if (step >= refine_steps) return Band::Straddle;
        out = averager.average_refined(l, factor);
        factor *= 0.1;
    }
}

/// Pseudo-hyperbolic radius bound for an off-axis square: the per-square
/// geometric bound, capped by the uniform bound sqrt(4/5) valid whenever
/// j >= 1.
double off_axis_radius(const DyadicIndex& l) {
    return std::min(dyadic_pseudo_radius_bound(l), std::sqrt(0.8));
}

}  // namespace

QuadOptions SquareAverager::default_options() {
    QuadOptions opt;
    opt.rel_tol = 1e-9;
    opt.abs_tol = 1e-13;
    opt.max_intervals = 2000;
    return opt;
}

SquareAverager::SquareAverager(HoloMap f, QuadOptions options)
    : f_(std::move(f)), opt_(options) {
    require_half_plane_self_map(f_);
}

SquareAverage SquareAverager::compute(const Rect& q,
                                      const QuadOptions& opt) const {
    QuadEstimate est = integrate_rect2d(
        [this](double x, double y) { return map_abs(f_, complex{x, y}); }, q,
        opt);
    SquareAverage avg;
    avg.value = est.value / q.area();
    avg.error = est.error / q.area();
    avg.evaluations = est.evaluations;
    avg.converged = est.converged;
    return avg;
}

SquareAverage SquareAverager::average(const DyadicIndex& l) const {
    validate_index(l);
    auto key = std::make_tuple(l.n, l.j, l.k);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    SquareAverage avg = compute(dyadic_square(l), opt_);
    cache_.emplace(key, avg);
    return avg;
}

SquareAverage SquareAverager::average_refined(const DyadicIndex& l,
                                              double tol_factor) const {
    validate_index(l);
    QuadOptions tight = opt_;
    tight.rel_tol *= tol_factor;
    tight.abs_tol *= tol_factor;
    tight.max_intervals = std::max<std::size_t>(opt_.max_intervals * 2, 4000);
    SquareAverage avg = compute(dyadic_square(l), tight);
    auto key = std::make_tuple(l.n, l.j, l.k);
    auto it = cache_.find(key);
    if (it == cache_.end() || avg.error < it->second.error)
        cache_[key] = avg;
    else
        avg = it->second;
    return avg;
}

SquareAverage SquareAverager::average_rect(const Rect& q,
                                           const QuadOptions& opt) const {
    if (!(q.width() > 0.0) || !(q.height() > 0.0))
        throw Error("average_rect needs a rectangle of positive area");
    return compute(q, opt);
}

std::size_t PiecewiseDyadicFunction::index_of(const DyadicIndex& l) const {
    validate_index(l);
    if (l.n != n) throw InvalidIndex("generation mismatch in dyadic table");
    return static_cast<std::size_t>(l.j) * (std::size_t{1} << n) +
           static_cast<std::size_t>(l.k);
}

double PiecewiseDyadicFunction::value_at(complex z,
                                         BoundaryPolicy policy) const {
    return averages.at(index_of(dyadic_locate(z, n, policy)));
}

PiecewiseDyadicFunction conditional_expectation(const HoloMap& f, int n,
                                                const CZConfig& cfg) {
    if (n < 0 || n > cfg.n_max)
        throw InvalidIndex("generation outside [0, n_max]");
    SquareAverager averager(f, cfg.quad);
    const std::size_t side = std::size_t{1} << n;
    PiecewiseDyadicFunction table;
    table.n = n;
    table.averages.resize(side * side);
    table.errors.resize(side * side);
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(side); ++j) {
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(side); ++k) {
            SquareAverage avg = averager.average({n, j, k});
            std::size_t idx =
                static_cast<std::size_t>(j) * side + static_cast<std::size_t>(k);
            table.averages[idx] = avg.value;
            table.errors[idx] = avg.error;
        }
    }
    return table;
}

double maximal_function(const SquareAverager& averager, complex z, int n_max,
                        BoundaryPolicy policy) {
    if (!in_omega(z)) throw DomainMismatch("maximal function needs z in Omega");
    if (n_max < 0) throw InvalidIndex("negative depth cap");
    double best = 0.0;
    for (int n = 0; n <= n_max; ++n)
        best = std::max(best, averager.average(dyadic_locate(z, n, policy)).value);
    return best;
}

double maximal_function(const HoloMap& f, complex z, int n_max,
                        const CZConfig& cfg, BoundaryPolicy policy) {
    SquareAverager averager(f, cfg.quad);
    return maximal_function(averager, z, n_max, policy);
}

CZResult cz_decompose(const HoloMap& f, const CZConfig& cfg) {
    require_half_plane_self_map(f);
    if (cfg.n_max < 0) throw InvalidIndex("negative depth cap");

    SquareAverager averager(f, cfg.quad);
    CZResult res;
    res.n_max = cfg.n_max;
    res.tolerance = cfg.quad.rel_tol;

    const DyadicIndex root{0, 0, 0};
    SquareAverage root_avg;
    Band root_band = classify(averager, root, cfg.refine_steps, root_avg);
    res.root_average = root_avg.value;
    res.root_error = root_avg.error;
    res.squares_examined = 1;
    if (root_band == Band::Above) {
        throw RootAverageExceedsOne(
            "average of |f| over Omega exceeds 1: " +
            std::to_string(root_avg.value));
    }
    if (root_band == Band::Straddle) {
        throw RootAverageExceedsOne(
            "average of |f| over Omega straddles 1 within quadrature error (" +
            std::to_string(root_avg.value) + " +- " +
            std::to_string(root_avg.error) + "); cannot certify the root");
    }
    if (is_constant_map(f)) return res;
    if (cfg.n_max == 0) {
        // Cannot descend: the whole box below the root is unresolved.
        res.residual_area = dyadic_square(root).area();
        res.residual_count = 1;
        return res;
    }

    std::vector<DyadicIndex> stack;
    for (const DyadicIndex& c : dyadic_children(root)) stack.push_back(c);

    while (!stack.empty()) {
        DyadicIndex l = stack.back();
        stack.pop_back();
        const Rect q = dyadic_square(l);

        if (l.j >= 1) {
            // Harnack certificate: the square sits in a pseudo-disk of
            // radius s < 1 around its center, so sup |f| <= M_s |f(center)|.
            // When that bound is <= 1 no average in the subtree can exceed 1.
            double s = off_axis_radius(l);
            double bound = harnack_constant(s) * map_abs(f, dyadic_center(l));
            if (bound <= 1.0) {
                ++res.pruned_subtrees;
                continue;
            }
        }

        SquareAverage avg;
        Band band = classify(averager, l, cfg.refine_steps, avg);
        ++res.squares_examined;
        if (band == Band::Above) {
            res.squares.push_back(
                {l, avg.value, avg.error, map_abs(f, dyadic_center(l))});
            continue;
        }
        if (band == Band::Straddle) {
            res.ambiguous.push_back(l);
            res.ambiguous_area += q.area();
            continue;
        }
        if (l.n >= cfg.n_max) {
            // Certified <= 1 here, but descendants stay unexplored and no
            // certificate rules out deeper stopping squares.
            res.residual_area += q.area();
            ++res.residual_count;
            continue;
        }
        for (const DyadicIndex& c : dyadic_children(l)) stack.push_back(c);
    }

    auto by_index = [](const auto& a, const auto& b) {
        return std::make_tuple(a.n, a.j, a.k) < std::make_tuple(b.n, b.j, b.k);
    };
    std::sort(res.squares.begin(), res.squares.end(),
              [&](const StoppingSquare& a, const StoppingSquare& b) {
                  return by_index(a.index, b.index);
              });
    std::sort(res.ambiguous.begin(), res.ambiguous.end(), by_index);
    return res;
}

PrecisionReport precision_regions(const HoloMap& f, const CZResult& result,
                                  double alpha, const CZConfig& cfg) {
    require_half_plane_self_map(f);
    const MeasureKind tau = tau_t(alpha);
    const MeasureKind mu = mu_x(alpha);
    IntegrationConfig icfg;
    icfg.method = IntegrationMethod::AdaptiveQuadrature;
    icfg.seed = cfg.seed;

    PrecisionReport report;
    report.alpha = alpha;
    report.seed = cfg.seed;

    Estimate oracle_disk = integrate(mu, make_pseudo_disk_h({1.0, 0.0}, 0.25),
                                     icfg);
    Estimate oracle_box = integrate(mu, make_omega(), icfg);
    report.c_mu_oracle = oracle_disk.value / oracle_box.value;

    const std::uint64_t per_entry =
        result.squares.empty()
            ? 0
            : std::max<std::uint64_t>(1000,
                                      cfg.sample_count / result.squares.size());
    double c_emp = std::numeric_limits<double>::infinity();
    double c_mu_axis = std::numeric_limits<double>::infinity();
    bool saw_axis = false;

    for (std::size_t idx = 0; idx < result.squares.size(); ++idx) {
        const StoppingSquare& sq = result.squares[idx];
        const DyadicIndex l = sq.index;
        const Rect q = dyadic_square(l);
        const complex c = dyadic_center(l);
        const double fc = map_abs(f, c);

        PrecisionEntry entry;
        entry.index = l;
        entry.axis = dyadic_touches_axis(l);

        Estimate tau_q = integrate(tau, make_dyadic_region(l), icfg);
        entry.tau_square = tau_q.value;
        entry.tau_square_error = tau_q.error_bar;

        double sample_radius = 0.0;
        if (entry.axis) {
            Region r = make_pseudo_disk_h(c, 0.25);
            Estimate tau_r = integrate(tau, r, icfg);
            entry.tau_region = tau_r.value;
            entry.tau_region_error = tau_r.error_bar;
            Estimate mu_r = integrate(mu, r, icfg);
            Estimate mu_q = integrate(mu, make_dyadic_region(l), icfg);
            entry.mu_ratio = mu_r.value / mu_q.value;
            entry.delta_bound = 3.0 / 5.0;
            sample_radius = 0.25;
            saw_axis = true;
            c_mu_axis = std::min(c_mu_axis, entry.mu_ratio);
        } else {
            entry.tau_region = tau_q.value;
            entry.tau_region_error = tau_q.error_bar;
            entry.mu_ratio = 1.0;
            entry.delta_bound = 1.0 / harnack_constant(off_axis_radius(l));
        }
        entry.ratio = entry.tau_region / entry.tau_square;
        c_emp = std::min(c_emp, entry.ratio);

        Rng rng(cfg.seed, 0x9d210000ULL + idx);
        double min_ratio = std::numeric_limits<double>::infinity();
        bool contained = true;
        for (std::uint64_t i = 0; i < per_entry; ++i) {
            complex z;
            if (entry.axis) {
                double rad = sample_radius * std::sqrt(rng.next_double_open0());
                double ang = rng.uniform(-std::numbers::pi, std::numbers::pi);
                z = pseudo_disk_push_half(c, std::polar(rad, ang));
                contained = contained && q.contains_open(z);
            } else {
                z = complex{rng.uniform(q.x0, q.x1), rng.uniform(q.y0, q.y1)};
            }
            min_ratio = std::min(min_ratio, map_abs(f, z) / fc);
        }
        entry.min_map_ratio = min_ratio;
        entry.containment_ok = contained;
        entry.map_ratio_ok = min_ratio >= entry.delta_bound - 1e-12;
        report.samples += per_entry;
        report.entries.push_back(entry);
    }

    report.c_emp = result.squares.empty() ? kNan : c_emp;
    report.c_mu_axis = saw_axis ? c_mu_axis : kNan;
    return report;
}

MeanValueAudit mean_value_audit(const HoloMap& f, const Rect& q,
                                const CZConfig& cfg) {
    require_half_plane_self_map(f);
    if (!(q.width() > 0.0) || !(q.height() > 0.0) || q.x0 < 0.0)
        throw DomainMismatch("mean-value audit needs a square in the closed "
                             "right half-plane");
    if (std::abs(q.width() - q.height()) > 1e-9 * q.width())
        throw DomainMismatch("mean-value audit needs an actual square");

    SquareAverager averager(f, cfg.quad);
    SquareAverage avg = averager.average_rect(q, cfg.quad);
    if (!avg.converged)
        throw QuadratureFailure("square average did not converge");

    MeanValueAudit audit;
    audit.average = avg.value;
    audit.error = avg.error;
    audit.center_value = map_abs(f, q.center());
    const double lower = (std::numbers::pi / 4.0) * audit.center_value;
    audit.ratio = avg.value / lower;
    audit.lower_ok = avg.value >= lower - avg.error;
    return audit;
}

RemarkReport remark_counterexample(const std::vector<double>& t_grid,
                                   const CZConfig& cfg) {
    if (t_grid.empty()) throw InvalidGrid("empty t grid");
    for (double t : t_grid)
        if (!(t > 0.0) || t > 0.5)
            throw InvalidGrid("t grid must lie in (0, 1/2]");

    const HoloMap f = HoloMap::exp_quartic();
    SquareAverager averager(f, cfg.quad);
    QuadOptions tight;
    tight.rel_tol = 1e-13;
    tight.abs_tol = 5e-15;
    tight.max_intervals = 20000;

    auto sigma_at = [&](double t) {
        Rect q{1.0 - t, 1.0 + t, -t, t};
        return averager.average_rect(q, tight);
    };

    RemarkReport report;
    report.t_grid = t_grid;
    for (double t : t_grid) {
        SquareAverage avg = sigma_at(t);
        report.sigma.push_back(avg.value);
        report.sigma_error.push_back(avg.error);
    }

    // Exact first-order coefficient: the quartic moment of the unit square.
    QuadEstimate quartic = integrate_rect2d(
        [](double x, double y) {
            double x2 = x * x, y2 = y * y;
            return (x2 * x2 + y2 * y2 - 6.0 * x2 * y2) / 16.0;
        },
        Rect{-1.0, 1.0, -1.0, 1.0}, tight);
    report.quartic_identity = quartic.value / 4.0;
    report.quartic_identity_error = quartic.error / 4.0;

    // tau(s) = sigma(s^{1/4}) is smooth in s near 0; one-sided difference
    // quotients at s and 2s, combined by Richardson extrapolation, cancel
    // the linear error term. sigma(0+) = |f(1)| = 1 exactly.
    const double s = 1e-4;
    auto quotient = [&](double step) {
        return (sigma_at(std::pow(step, 0.25)).value - 1.0) / step;
    };
    double fd1 = quotient(s);
    double fd2 = quotient(2.0 * s);
    report.tau_prime = 2.0 * fd1 - fd2;

    report.witness_t = kNan;
    std::vector<std::size_t> order(t_grid.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return t_grid[a] < t_grid[b];
    });
    for (std::size_t i : order) {
        if (report.sigma[i] + report.sigma_error[i] < 1.0) {
            report.witness_t = t_grid[i];
            report.witness_found = true;
            break;
        }
    }
    return report;
}

ChainAuditReport theo_clef_chain_audit(const HoloMap& f, double alpha,
                                       const std::vector<double>& lambda_grid,
                                       const CZConfig& cfg) {
    if (lambda_grid.empty()) throw InvalidGrid("empty lambda grid");
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
        if (lambda_grid[i] < 1.0)
            throw InvalidGrid("chain audit needs lambda >= 1");
        if (i > 0 && lambda_grid[i] <= lambda_grid[i - 1])
            throw InvalidGrid("lambda grid must increase strictly");
    }

    ChainAuditReport report;
    report.alpha = alpha;
    report.symbol = f.descriptor();
    report.lambdas = lambda_grid;
    report.seed = cfg.seed;

    report.decomposition = cz_decompose(f, cfg);
    const CZResult& czr = report.decomposition;
    PrecisionReport prec = precision_regions(f, czr, alpha, cfg);
    report.c_emp = prec.c_emp;

    for (const PrecisionEntry& e : prec.entries) {
        report.stop_mass += e.tau_square;
        report.stop_mass_error += e.tau_square_error;
        report.region_mass += e.tau_region;
        report.region_mass_error += e.tau_region_error;
    }

    report.mean_value_c = 0.0;
    report.max_center_value = 0.0;
    double delta0 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < czr.squares.size(); ++i) {
        const StoppingSquare& sq = czr.squares[i];
        report.mean_value_c =
            std::max(report.mean_value_c,
                     sq.average / ((std::numbers::pi / 4.0) * sq.center_value));
        report.max_center_value =
            std::max(report.max_center_value, sq.center_value);
        delta0 = std::min(delta0, prec.entries[i].delta_bound);
    }
    const bool have_squares = !czr.squares.empty();
    report.delta0 = have_squares ? delta0 : kNan;
    report.delta1 = have_squares ? report.delta0 * 4.0 /
                                       (std::numbers::pi * report.mean_value_c)
                                 : kNan;
    report.center_bound_ok =
        report.max_center_value <= 16.0 / std::numbers::pi + 0.01;

    // One shared sampling pass: tau_alpha samples are Cayley images of
    // Bergman-weighted disk samples.
    const std::size_t nl = lambda_grid.size();
    std::vector<std::uint64_t> counts(nl + 1, 0);
    const std::uint64_t n = std::max<std::uint64_t>(cfg.sample_count, 1000);
    const std::uint64_t stratum = std::uint64_t{1} << 16;
    const std::uint64_t strata = (n + stratum - 1) / stratum;
    std::uint64_t produced = 0;
    for (std::uint64_t sidx = 0; sidx < strata; ++sidx) {
        Rng rng(cfg.seed, 0x77e30000ULL + sidx);
        const std::uint64_t take = std::min(stratum, n - produced);
        for (std::uint64_t i = 0; i < take; ++i) {
            complex w = cayley(sample_bergman_point(alpha, rng));
            double v = map_abs(f, w);
            if (in_omega(w)) {
                for (std::size_t t = 0; t < nl && v > lambda_grid[t]; ++t)
                    ++counts[t];
            }
            if (have_squares && v > report.delta1) ++counts[nl];
        }
        produced += take;
    }
    report.samples = produced;

    auto binomial = [&](std::uint64_t hits) {
        double p = static_cast<double>(hits) / static_cast<double>(produced);
        return std::sqrt(std::max(p * (1.0 - p), 1.0 / produced) /
                         static_cast<double>(produced));
    };

    std::vector<double> xs, ys, ws;
    double k_emp = 0.0;
    for (std::size_t t = 0; t < nl; ++t) {
        const std::uint64_t hits = counts[t];
        const double mass = static_cast<double>(hits) / produced;
        const double err = binomial(hits);
        report.lhs.push_back(mass);
        report.lhs_error.push_back(err);
        report.lhs_hits.push_back(hits);
        double r;
        if (report.stop_mass > 0.0) {
            r = mass * std::pow(lambda_grid[t], alpha + 2.0) / report.stop_mass;
        } else {
            r = hits == 0 ? 0.0 : std::numeric_limits<double>::infinity();
        }
        report.ratio.push_back(r);
        k_emp = std::max(k_emp, r);
        if (hits >= 200 && report.stop_mass > 0.0 && r > 0.0) {
            xs.push_back(std::log(lambda_grid[t]));
            ys.push_back(std::log(r));
            double rel = err / mass;
            ws.push_back(1.0 / (rel * rel));
        }
    }
    report.k_emp = k_emp;
    if (xs.size() >= 2) {
        LineFit fit = fit_line_weighted(xs, ys, ws);
        report.trend_slope = fit.slope;
        report.trend_slope_err = fit.slope_err;
    } else {
        report.trend_slope = kNan;
        report.trend_slope_err = kNan;
    }

    if (have_squares) {
        report.level_delta1_mass = static_cast<double>(counts[nl]) / produced;
        report.level_delta1_error = binomial(counts[nl]);
        double sigma = std::sqrt(report.level_delta1_error *
                                     report.level_delta1_error +
                                 report.region_mass_error *
                                     report.region_mass_error);
        report.lower_chain_ok =
            report.level_delta1_mass >= report.region_mass - 4.0 * sigma;
    } else {
        report.level_delta1_mass = 0.0;
        report.level_delta1_error = 0.0;
        report.lower_chain_ok = true;
    }
    return report;
}

}  // namespace carleson
