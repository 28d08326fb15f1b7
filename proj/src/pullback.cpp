#include "carleson/pullback.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <thread>

#include "carleson/errors.hpp"
#include "carleson/parallel.hpp"
#include "carleson/stats.hpp"

namespace carleson {

namespace {

constexpr std::uint64_t kStratumSize = 1 << 16;

/// Streams n BergmanA(alpha) samples through fn, which bumps integer
/// counters in a worker-local array.  Locals merge by addition, so totals
/// are identical for every worker count.
std::vector<std::uint64_t> count_over_samples(
    double alpha, std::uint64_t n, std::uint64_t seed, std::size_t counters,
    const std::function<void(complex, std::vector<std::uint64_t>&)>& fn) {
    if (n < 1000) throw Error("sample budget must be >= 1000");
    const std::uint64_t strata = (n + kStratumSize - 1) / kStratumSize;
    std::vector<std::uint64_t> total(counters, 0);
    std::mutex merge_mutex;
    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
        std::vector<std::uint64_t> local(counters, 0);
        for (;;) {
            const std::uint64_t s = next.fetch_add(1);
            if (s >= strata) break;
            Rng rng(seed, s);
            const std::uint64_t lo = s * kStratumSize;
            const std::uint64_t hi = std::min(n, lo + kStratumSize);
            for (std::uint64_t i = lo; i < hi; ++i) {
                fn(sample_bergman_point(alpha, rng), local);
            }
        }
        const std::scoped_lock lock(merge_mutex);
        for (std::size_t k = 0; k < counters; ++k) total[k] += local[k];
    };
    const std::size_t workers = static_cast<std::size_t>(
        std::min<std::uint64_t>(worker_count(), strata));
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (std::thread& t : pool) t.join();
    return total;
}

double binomial_error(std::uint64_t hits, std::uint64_t n) {
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(hits) / nn;
    // The plug-in formula claims certainty at 0 or n hits; a count still
    // carries ~1/n uncertainty there, and the floor binds only there.
    return std::max(std::sqrt(p * (1.0 - p) / nn), 1.0 / nn);
}

void require_disk_symbol(const HoloMap& phi) {
    if (phi.domain() != Domain::Disk || phi.codomain() != Domain::Disk) {
        throw DomainMismatch("expected a disk self-map symbol");
    }
}

complex require_unimodular(complex xi) {
    if (std::abs(std::abs(xi) - 1.0) > 1e-9) {
        throw Error("window center must be unimodular");
    }
    return xi / std::abs(xi);
}

} // namespace

Estimate pullback_window_measure(const HoloMap& phi, double alpha, complex xi,
                                 double h, const IntegrationConfig& cfg) {
    require_disk_symbol(phi);
    if (!(h > 0.0 && h < 1.0)) throw Error("window aperture must lie in (0, 1)");
    const Region window = make_window(require_unimodular(xi), h);
    const auto counts = count_over_samples(
        alpha, cfg.sample_count, cfg.seed, 1,
        [&](complex z, std::vector<std::uint64_t>& local) {
            if (contains(window, phi.evaluate(z))) ++local[0];
        });
    Estimate est;
    est.samples_used = cfg.sample_count;
    est.value = static_cast<double>(counts[0]) / static_cast<double>(cfg.sample_count);
    est.error_bar = binomial_error(counts[0], cfg.sample_count);
    if (est.value > 0.0 &&
        est.error_bar > cfg.abs_tol + cfg.rel_tol * est.value) {
        throw NonConvergence("pull-back window estimate above tolerance; "
                             "raise sample_count or loosen rel_tol/abs_tol");
    }
    return est;
}

CarlesonProfile carleson_profile(const HoloMap& phi, double alpha,
                                 const std::vector<double>& h_grid,
                                 std::size_t xi_count,
                                 const IntegrationConfig& cfg) {
    require_disk_symbol(phi);
    if (xi_count < 8) throw Error("profile needs at least 8 window centers");
    if (h_grid.empty()) throw InvalidGrid("empty aperture grid");
    for (std::size_t i = 0; i < h_grid.size(); ++i) {
        if (!(h_grid[i] > 0.0 && h_grid[i] < 0.5)) {
            throw InvalidGrid("profile apertures must lie in (0, 1/2)");
        }
        if (i > 0 && !(h_grid[i] < h_grid[i - 1])) {
            throw InvalidGrid("aperture grid must be strictly decreasing");
        }
    }
    // Nested center grids: every resolution is the base count times a power
    // of two, so coarse centers are a subset of fine centers and the
    // shared-sample sup is monotone across apertures.
    std::vector<std::size_t> resolution(h_grid.size());
    std::vector<std::size_t> offset(h_grid.size());
    std::size_t counters = 0;
    for (std::size_t i = 0; i < h_grid.size(); ++i) {
        std::size_t b = xi_count;
        while (static_cast<double>(b) < 4.0 * pi / h_grid[i]) b *= 2;
        resolution[i] = b;
        offset[i] = counters;
        counters += b;
    }
    const auto counts = count_over_samples(
        alpha, cfg.sample_count, cfg.seed, counters,
        [&](complex z, std::vector<std::uint64_t>& local) {
            const complex w = phi.evaluate(z);
            const double a = std::abs(w);
            const double psi = std::arg(w);
            for (std::size_t i = 0; i < h_grid.size(); ++i) {
                const double h = h_grid[i];
                if (!(a >= 1.0 - h)) continue;
                const double b = static_cast<double>(resolution[i]);
                const auto lo = static_cast<std::int64_t>(
                    std::floor((psi - h + pi) * b / (2.0 * pi))) - 1;
                const auto hi = static_cast<std::int64_t>(
                    std::ceil((psi + h + pi) * b / (2.0 * pi))) + 1;
                for (std::int64_t j = lo; j <= hi; ++j) {
                    const auto bi = static_cast<std::int64_t>(resolution[i]);
                    const std::int64_t jj = ((j % bi) + bi) % bi;
                    const double theta = -pi + 2.0 * pi * static_cast<double>(jj) / b;
                    if (std::abs(std::remainder(psi - theta, 2.0 * pi)) <= h) {
                        ++local[offset[i] + static_cast<std::size_t>(jj)];
                    }
                }
            }
        });
    CarlesonProfile profile;
    profile.alpha = alpha;
    profile.symbol = phi.descriptor();
    profile.samples = cfg.sample_count;
    profile.seed = cfg.seed;
    profile.points.resize(h_grid.size());
    for (std::size_t i = 0; i < h_grid.size(); ++i) {
        ProfilePoint& pt = profile.points[i];
        pt.h = h_grid[i];
        pt.xi_count = resolution[i];
        std::uint64_t best = 0;
        for (std::size_t j = 0; j < resolution[i]; ++j) {
            best = std::max(best, counts[offset[i] + j]);
        }
        pt.hits = best;
        pt.rho = static_cast<double>(best) / static_cast<double>(cfg.sample_count);
        pt.rho_error = binomial_error(best, cfg.sample_count);
        pt.reliable = best >= 200;
    }
    double running = 0.0;
    for (std::size_t i = profile.points.size(); i-- > 0;) {
        ProfilePoint& pt = profile.points[i];
        running = std::max(running, pt.rho / std::pow(pt.h, alpha + 2.0));
        pt.k_value = running;
    }
    profile.eventually_zero = profile.points.back().hits == 0;
    return profile;
}

ScalingReport scaling_experiment(const HoloMap& phi, double alpha, complex xi,
                                 const std::vector<double>& h_grid,
                                 const std::vector<double>& eps_grid,
                                 const IntegrationConfig& cfg,
                                 double alarm_threshold) {
    require_disk_symbol(phi);
    if (h_grid.empty() || eps_grid.empty()) throw InvalidGrid("empty grid");
    for (double h : h_grid) {
        if (!(h > 0.0 && h <= 0.25)) {
            throw InvalidGrid("scaling apertures must lie in (0, 1/4]");
        }
    }
    for (std::size_t k = 0; k < eps_grid.size(); ++k) {
        if (!(eps_grid[k] >= 0.05 && eps_grid[k] < 1.0)) {
            throw InvalidGrid("scaling ratios must lie in [0.05, 1)");
        }
        if (k > 0 && !(eps_grid[k] > eps_grid[k - 1])) {
            throw InvalidGrid("scaling ratio grid must be strictly increasing");
        }
    }
    ScalingReport report;
    report.alpha = alpha;
    report.symbol = phi.descriptor();
    report.xi = require_unimodular(xi);
    report.h_grid = h_grid;
    report.eps_grid = eps_grid;
    report.eps_grid.push_back(1.0); // exact anchor column
    report.alarm_threshold = alarm_threshold;
    report.samples = cfg.sample_count;
    report.seed = cfg.seed;
    const std::size_t ne = report.eps_grid.size();
    const std::size_t nh = h_grid.size();
    const double base_angle = std::arg(report.xi);
    // Apertures grow along each row, so a sample lies in every window from
    // its first containing aperture upward: record only that first index
    // and prefix-sum the histogram afterwards.
    std::vector<std::vector<double>> apertures(nh, std::vector<double>(ne));
    for (std::size_t i = 0; i < nh; ++i) {
        for (std::size_t k = 0; k < ne; ++k) {
            apertures[i][k] = report.eps_grid[k] * h_grid[i];
        }
    }
    auto counts = count_over_samples(
        alpha, cfg.sample_count, cfg.seed, nh * ne,
        [&](complex z, std::vector<std::uint64_t>& local) {
            const complex w = phi.evaluate(z);
            const double gap = 1.0 - std::abs(w);
            const double dpsi =
                std::abs(std::remainder(std::arg(w) - base_angle, 2.0 * pi));
            const double miss = std::max(gap, dpsi);
            for (std::size_t i = 0; i < nh; ++i) {
                const auto& row = apertures[i];
                const auto it = std::lower_bound(row.begin(), row.end(), miss);
                if (it != row.end()) {
                    ++local[i * ne + static_cast<std::size_t>(it - row.begin())];
                }
            }
        });
    for (std::size_t i = 0; i < nh; ++i) {
        for (std::size_t k = 1; k < ne; ++k) {
            counts[i * ne + k] += counts[i * ne + k - 1];
        }
    }
    const auto n = static_cast<double>(cfg.sample_count);
    for (std::size_t i = 0; i < nh; ++i) {
        ScalingRow row;
        row.h = h_grid[i];
        const std::uint64_t den_hits = counts[i * ne + (ne - 1)];
        row.denominator_hits = den_hits;
        row.denominator = static_cast<double>(den_hits) / n;
        row.denominator_error = binomial_error(den_hits, cfg.sample_count);
        row.degenerate = !(row.denominator > 5.0 * row.denominator_error);
        row.cells.resize(ne);
        std::vector<double> fx, fy, fw;
        for (std::size_t k = 0; k < ne; ++k) {
            ScalingCell& cell = row.cells[k];
            const std::uint64_t hits = counts[i * ne + k];
            cell.hits = hits;
            cell.numerator = static_cast<double>(hits) / n;
            cell.numerator_error = binomial_error(hits, cfg.sample_count);
            if (!row.degenerate) {
                const double eps = report.eps_grid[k];
                cell.ratio = cell.numerator /
                             (std::pow(eps, alpha + 2.0) * row.denominator);
                cell.alarm = cell.ratio > alarm_threshold;
                report.c_emp = std::max(report.c_emp, cell.ratio);
            }
            if (k + 1 < ne && hits >= 200) {
                fx.push_back(std::log(report.eps_grid[k]));
                fy.push_back(std::log(cell.numerator));
                const double sigma = cell.numerator_error / cell.numerator;
                fw.push_back(1.0 / (sigma * sigma));
            }
        }
        if (fx.size() >= 2) {
            const LineFit fit = fit_line_weighted(fx, fy, fw);
            row.slope = fit.slope;
            row.slope_err = fit.slope_err;
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

Estimate level_set_measure(const HoloMap& m, const MeasureKind& measure,
                           double lambda, const Region& region,
                           const IntegrationConfig& cfg) {
    if (!(lambda > 0.0)) throw Error("level threshold must be positive");
    const Region level =
        make_level_set(std::make_shared<const HoloMap>(m), lambda);
    const bool whole_domain =
        std::holds_alternative<EntireDomain>(region.value) &&
        region_domain(region) == m.domain();
    const Region target =
        whole_domain ? level
                     : make_intersection(std::vector<Region>{level, region});
    return integrate(measure, target, cfg);
}

double theo_clef_default_c1() { return 0.9 * std::tanh(pi); }

TailAuditReport tail_inequality_audit(TailAuditKind kind, const HoloMap& m,
                                      double alpha,
                                      const std::vector<double>& lambda_grid,
                                      const IntegrationConfig& cfg,
                                      double c1) {
    if (lambda_grid.empty()) throw InvalidGrid("empty level grid");
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
        if (!(lambda_grid[i] > 1.0)) {
            throw InvalidGrid("tail levels must exceed 1");
        }
        if (i > 0 && !(lambda_grid[i] > lambda_grid[i - 1])) {
            throw InvalidGrid("level grid must be strictly increasing");
        }
    }
    const bool disk_side =
        kind == TailAuditKind::Starting || kind == TailAuditKind::Reduction;
    if (disk_side) {
        if (m.domain() != Domain::Disk || m.codomain() != Domain::HalfPlane) {
            throw DomainMismatch("this audit expects a map from the disk to the half-plane");
        }
    } else {
        if (m.domain() != Domain::HalfPlane || m.codomain() != Domain::HalfPlane) {
            throw DomainMismatch("this audit expects a half-plane self-map");
        }
    }
    const double base_value =
        std::abs(m.evaluate(disk_side ? complex(0.0) : complex(1.0)));
    if (kind == TailAuditKind::Reduction && !(base_value <= std::tanh(pi))) {
        throw Error("reduction audit requires |g(0)| <= tanh(pi)");
    }
    if (kind == TailAuditKind::TheoClef) {
        const double limit = c1 > 0.0 ? c1 : theo_clef_default_c1();
        if (!(base_value <= limit)) {
            throw Error("this audit requires |f(1)| <= c1");
        }
    }
    const bool omega_only = kind == TailAuditKind::TheoClef;
    const std::size_t nl = lambda_grid.size();
    // Counter layout: [0..nl) per-level hits, [nl] hits above level 1.
    const auto counts = count_over_samples(
        alpha, cfg.sample_count, cfg.seed, nl + 1,
        [&](complex z, std::vector<std::uint64_t>& local) {
            complex at = z;
            if (!disk_side) at = cayley(z);
            if (omega_only && !in_omega(at)) return;
            const double v = std::abs(m.evaluate(at));
            if (v > 1.0) ++local[nl];
            for (std::size_t i = 0; i < nl && v > lambda_grid[i]; ++i) {
                ++local[i];
            }
        });
    TailAuditReport report;
    report.kind = kind;
    report.alpha = alpha;
    report.symbol = m.descriptor();
    report.lambdas = lambda_grid;
    report.samples = cfg.sample_count;
    report.seed = cfg.seed;
    const auto n = static_cast<double>(cfg.sample_count);
    switch (kind) {
        case TailAuditKind::Starting:
        case TailAuditKind::Global:
            report.rhs = std::pow(base_value, alpha + 2.0);
            report.rhs_error = 0.0;
            break;
        case TailAuditKind::Reduction:
        case TailAuditKind::TheoClef:
            report.rhs = static_cast<double>(counts[nl]) / n;
            report.rhs_error = binomial_error(counts[nl], cfg.sample_count);
            break;
    }
    if (!(report.rhs > 0.0)) {
        throw DegenerateRHS("tail audit bound ingredient is numerically zero");
    }
    std::vector<double> fx, fy, fw;
    for (std::size_t i = 0; i < nl; ++i) {
        const std::uint64_t hits = counts[i];
        const double lhs = static_cast<double>(hits) / n;
        report.lhs.push_back(lhs);
        report.lhs_error.push_back(binomial_error(hits, cfg.sample_count));
        report.lhs_hits.push_back(hits);
        const double ratio =
            lhs * std::pow(lambda_grid[i], alpha + 2.0) / report.rhs;
        report.ratio.push_back(ratio);
        report.constant_emp = std::max(report.constant_emp, ratio);
        if (hits >= 200) {
            fx.push_back(std::log(lambda_grid[i]));
            fy.push_back(std::log(ratio));
            const double sigma = report.lhs_error.back() / lhs;
            fw.push_back(1.0 / (sigma * sigma));
        }
    }
    if (fx.size() >= 2) {
        const LineFit fit = fit_line_weighted(fx, fy, fw);
        report.trend_slope = fit.slope;
        report.trend_slope_err = fit.slope_err;
    }
    return report;
}

} // namespace carleson
