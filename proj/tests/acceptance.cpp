/// Acceptance suite: ten numbered end-to-end checks, run as
///
///     acceptance [criterion numbers...]
///
/// with no arguments running all ten.  Each criterion prints one PASS/FAIL
/// line plus a detail line with the measured quantities and the pinned
/// tolerances; the process exit status is the number of failures, so each
/// criterion can be registered as its own ctest entry.
///
/// Criteria 3 and 8 currently FAIL by design of the checks themselves, not
/// by a bug: the printed analysis explains what the measurements show.  Do
/// not silence them; fixing them requires either a different symbol family
/// (criterion 3) or a different trend statistic (criterion 8).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <carleson/czdecomp.hpp>
#include <carleson/experiments.hpp>
#include <carleson/geometry.hpp>
#include <carleson/measures.hpp>
#include <carleson/orlicz.hpp>
#include <carleson/pullback.hpp>
#include <carleson/rng.hpp>
#include <carleson/selfmaps.hpp>

using namespace carleson;

namespace {

constexpr std::uint64_t kSeed = 20260822;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(double v, int digits = 4) {
    std::ostringstream s;
    s.precision(digits);
    s << v;
    return s.str();
}

/// Appends a clause to the detail line; marks the outcome failed when the
/// clause records a violated check.
void note(Outcome& o, const std::string& clause, bool ok = true) {
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += clause;
    if (!ok) o.pass = false;
}

IntegrationConfig monte_carlo(std::uint64_t samples, std::uint64_t seed) {
    IntegrationConfig cfg;
    cfg.method = IntegrationMethod::MonteCarlo;
    cfg.sample_count = samples;
    cfg.rel_tol = 0.5;
    cfg.abs_tol = 1e-3;
    cfg.seed = seed;
    return cfg;
}

// --- criterion 1: measure normalizations ------------------------------------
// Quadrature total mass of BergmanA(alpha) on D within 1e-6, Monte Carlo
// total mass of TauT(alpha) on the half-plane within 1e-3 at 1e6 samples,
// for alpha in {-0.5, 0, 1, 2.5}, all inside a 30 s budget.

Outcome criterion1() {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    double worst_quad = 0.0;
    double worst_mc = 0.0;
    for (double alpha : {-0.5, 0.0, 1.0, 2.5}) {
        IntegrationConfig quad;  // adaptive quadrature defaults
        const Estimate disk =
            integrate(bergman_a(alpha), make_entire(Domain::Disk), quad);
        worst_quad = std::max(worst_quad, std::abs(disk.value - 1.0));
        const Estimate half =
            integrate(tau_t(alpha), make_entire(Domain::HalfPlane),
                      monte_carlo(1'000'000, kSeed));
        worst_mc = std::max(worst_mc, std::abs(half.value - 1.0));
    }
    const double sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    note(o, "max |quadrature mass - 1| = " + fmt(worst_quad, 3) + " (tol 1e-6)",
         worst_quad <= 1e-6);
    note(o, "max |sampled mass - 1| = " + fmt(worst_mc, 3) + " (tol 1e-3)",
         worst_mc <= 1e-3);
    note(o, "elapsed " + fmt(sec, 3) + " s (budget 30 s)", sec < 30.0);
    return o;
}

// --- criterion 2: identity window pull-back ---------------------------------
// pullback_window_measure under the identity must reproduce the closed form
// (h/pi)(2h - h^2)^{alpha+1} within 4 standard errors for 50 random
// (alpha, h) pairs.  Pairs are drawn with alpha in [-0.5, 2] and h in
// [0.1, 0.45] so every estimate rests on enough hits for the Gaussian
// 4-sigma comparison to be meaningful (>= ~80 expected hits).

Outcome criterion2() {
    Outcome o;
    Rng rng(kSeed, 7);
    const HoloMap id = HoloMap::identity(Domain::Disk);
    double worst_z = 0.0;
    double worst_alpha = 0.0;
    double worst_h = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double alpha = rng.uniform(-0.5, 2.0);
        const double h = rng.uniform(0.1, 0.45);
        const Estimate est = pullback_window_measure(
            id, alpha, 1.0, h, monte_carlo(400'000, kSeed + 1 + i));
        const double exact = window_measure_closed_form(alpha, h);
        const double z =
            std::abs(est.value - exact) / std::max(est.error_bar, 1e-300);
        if (z > worst_z) {
            worst_z = z;
            worst_alpha = alpha;
            worst_h = h;
        }
    }
    note(o,
         "worst deviation " + fmt(worst_z, 3) + " sigma at alpha = " +
             fmt(worst_alpha, 3) + ", h = " + fmt(worst_h, 3) +
             " over 50 pairs (cap 4 sigma)",
         worst_z <= 4.0);
    return o;
}

// --- criterion 3: window scaling exponent -----------------------------------
// For each symbol in {identity, monomial:2, blaschke:0.5, tconj(expquartic)}
// and alpha in {0, 1}: the log-log slope of eps -> mass(W(1, eps h)) must
// reach alpha + 2 - 0.15 for every h in {0.2, 0.1, 0.05}, the empirical
// ratio constant must be finite, and it must vary by less than 50% between
// h = 0.1 and h = 0.05.  10^7 samples per report.

Outcome criterion3() {
    Outcome o;
    const std::vector<std::string> symbols = {"identity", "monomial:2",
                                              "blaschke:0.5",
                                              "tconj(expquartic)"};
    const std::vector<double> h_grid = {0.2, 0.1, 0.05};
    const std::vector<double> eps = linear_grid(0.1, 0.9, 9);
    double min_margin = std::numeric_limits<double>::infinity();
    double max_variation = 0.0;
    bool tconj_failed = false;
    bool distorted_failed = false;
    for (const std::string& text : symbols) {
        const HoloMap phi = parse_map(text, Domain::Disk);
        for (double alpha : {0.0, 1.0}) {
            const ScalingReport rep = scaling_experiment(
                phi, alpha, 1.0, h_grid, eps, monte_carlo(10'000'000, kSeed));
            bool symbol_ok = true;
            for (const ScalingRow& row : rep.rows) {
                const double threshold = alpha + 2.0 - 0.15;
                const bool slope_ok =
                    std::isfinite(row.slope) && row.slope >= threshold;
                if (!slope_ok) {
                    symbol_ok = false;
                    note(o,
                         text + " alpha=" + fmt(alpha, 2) + " h=" +
                             fmt(row.h, 2) + ": slope " +
                             (std::isfinite(row.slope) ? fmt(row.slope, 4)
                                                       : "unfittable") +
                             " < " + fmt(threshold, 3),
                         false);
                } else {
                    min_margin = std::min(min_margin, row.slope - threshold);
                }
            }
            // Per-aperture empirical constant: max ratio over experimental
            // cells (the eps = 1 anchor column excluded) with >= 200 hits.
            auto row_constant = [&](const ScalingRow& row) {
                double c = std::numeric_limits<double>::quiet_NaN();
                for (std::size_t k = 0; k + 1 < row.cells.size(); ++k) {
                    const ScalingCell& cell = row.cells[k];
                    if (cell.hits >= 200 && std::isfinite(cell.ratio))
                        c = std::isfinite(c) ? std::max(c, cell.ratio)
                                             : cell.ratio;
                }
                return c;
            };
            const double c10 = row_constant(rep.rows[1]);
            const double c05 = row_constant(rep.rows[2]);
            if (std::isfinite(c10) && std::isfinite(c05) && c10 > 0.0 &&
                std::isfinite(rep.c_emp)) {
                const double variation = std::abs(c10 - c05) / c10;
                max_variation = std::max(max_variation, variation);
                if (!(variation < 0.5)) {
                    symbol_ok = false;
                    note(o,
                         text + " alpha=" + fmt(alpha, 2) +
                             ": constant varies " + fmt(100.0 * variation, 3) +
                             "% between h=0.1 and h=0.05 (cap 50%)",
                         false);
                }
            } else {
                symbol_ok = false;
                note(o,
                     text + " alpha=" + fmt(alpha, 2) +
                         ": empirical constant undefined (no cell with >= 200 "
                         "hits)",
                     false);
            }
            if (!symbol_ok) {
                if (text == "tconj(expquartic)")
                    tconj_failed = true;
                else
                    distorted_failed = true;
            }
        }
    }
    if (distorted_failed) {
        note(o,
             "analysis: the pull-back of W(1, eps h) sits at the boundary "
             "preimage with its aperture dilated by 1/|phi'| (3x for "
             "blaschke:0.5, and split across two preimages for monomial:2), "
             "so the curvature correction to the exponent, of relative size "
             "about (alpha + 1) x aperture, is evaluated at up to 3 eps h ~ "
             "0.54 and depresses the fitted slope below alpha + 2 - 0.15 at "
             "the larger apertures; shrinking eps to escape the curved range "
             "drops those cells under the 200-hit floor at 1e7 samples, so "
             "the exponent emerges only in a joint limit this budget cannot "
             "reach");
    }
    if (tconj_failed) {
        note(o,
             "analysis: tconj(expquartic) has sup |phi| = tan(1/2) ~ 0.546, "
             "so every window W(1, eps h) with eps h < 0.45 misses the image "
             "entirely; all counts are zero, the log-log fit has no support, "
             "and no aperture in this range can exhibit the alpha + 2 "
             "scaling for a symbol bounded away from the boundary");
    }
    note(o,
         "power-law symbols: min slope margin " + fmt(min_margin, 3) +
             ", max constant variation " + fmt(100.0 * max_variation, 3) + "%");
    return o;
}

// --- criterion 4: quartic moment scan ---------------------------------------
// The exact quartic coefficient equals -1/60 to 1e-10, the finite-difference
// slope of sigma(t^{1/4}) agrees with -1/60 within 5%, and some t <= 1/2 has
// its square average certified below 1.

Outcome criterion4() {
    Outcome o;
    const RemarkReport rep = remark_counterexample(linear_grid(0.05, 0.5, 10));
    const double target = -1.0 / 60.0;
    const double quartic_dev = std::abs(rep.quartic_identity - target);
    note(o, "quartic coefficient dev " + fmt(quartic_dev, 3) + " (tol 1e-10)",
         quartic_dev <= 1e-10);
    const double slope_rel = std::abs(rep.tau_prime - target) / (1.0 / 60.0);
    note(o,
         "slope estimate " + fmt(rep.tau_prime, 6) + " vs -1/60, rel dev " +
             fmt(100.0 * slope_rel, 3) + "% (cap 5%)",
         slope_rel <= 0.05);
    double witness_sigma = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < rep.t_grid.size(); ++i)
        if (rep.t_grid[i] == rep.witness_t) witness_sigma = rep.sigma[i];
    note(o,
         "witness t = " + fmt(rep.witness_t, 3) + " <= 1/2 with average " +
             fmt(witness_sigma, 8) + " certified below 1",
         rep.witness_found && rep.witness_t <= 0.5);
    return o;
}

// --- criterion 5: contraction and oscillation audits ------------------------
// Sampled Schwarz-Pick quotients stay at or below 1 (slack 1e-12) for every
// catalog self-map at 1e4 pairs, and |f(z)| / |f(c)| stays inside
// [3/5, 5/3] (slack 1e-9) on sampled pseudo-disks Delta(c, 1/4) for the
// half-plane maps.

Outcome criterion5() {
    Outcome o;
    const std::vector<std::pair<std::string, Domain>> catalog = {
        {"identity", Domain::Disk},
        {"monomial:2", Domain::Disk},
        {"blaschke:0.5", Domain::Disk},
        {"lens:0.5", Domain::Disk},
        {"poly:0.2,0.3", Domain::Disk},
        {"tconj(expquartic)", Domain::Disk},
        {"identity", Domain::HalfPlane},
        {"affine:2,0.5", Domain::HalfPlane},
        {"reciprocal", Domain::HalfPlane},
        {"expquartic", Domain::HalfPlane},
        {"affine:0.6,0.05|reciprocal", Domain::HalfPlane},
    };
    double worst_ratio = 0.0;
    bool sp_ok = true;
    for (const auto& [text, dom] : catalog) {
        const SchwarzPickReport rep =
            schwarz_pick_audit(parse_map(text, dom), 10'000, kSeed);
        worst_ratio = std::max(worst_ratio, rep.max_ratio);
        if (!(rep.max_ratio <= 1.0 + 1e-12)) {
            sp_ok = false;
            note(o, text + ": contraction quotient " + fmt(rep.max_ratio, 17),
                 false);
        }
    }
    // The Cayley transforms are isometries between the two metrics; their
    // quotient must also respect the cap (and sit at 1).
    for (Domain from : {Domain::Disk, Domain::HalfPlane}) {
        const SchwarzPickReport rep =
            schwarz_pick_audit(HoloMap::cayley_map(from), 10'000, kSeed);
        worst_ratio = std::max(worst_ratio, rep.max_ratio);
        if (!(rep.max_ratio <= 1.0 + 1e-12)) sp_ok = false;
    }
    note(o,
         "max contraction quotient " + fmt(worst_ratio, 12) +
             " over 13 maps x 1e4 pairs (cap 1 + 1e-12)",
         sp_ok);

    double osc_min = std::numeric_limits<double>::infinity();
    double osc_max = 0.0;
    bool osc_ok = true;
    for (const char* text : {"affine:2,0.5", "reciprocal", "expquartic",
                             "affine:0.6,0.05|reciprocal"}) {
        for (complex c : {complex{1.0, 0.0}, complex{0.5, 0.3}}) {
            const HarnackReport rep = harnack_audit(
                parse_map(text, Domain::HalfPlane), c, 0.25, 20'000, kSeed);
            osc_min = std::min(osc_min, rep.min_ratio);
            osc_max = std::max(osc_max, rep.max_ratio);
            if (!(rep.within_bounds && rep.min_ratio >= 0.6 - 1e-9 &&
                  rep.max_ratio <= 5.0 / 3.0 + 1e-9)) {
                osc_ok = false;
                note(o,
                     std::string(text) + " at c = " + fmt(c.real(), 3) + "+" +
                         fmt(c.imag(), 3) + "i: ratio range [" +
                         fmt(rep.min_ratio, 6) + ", " + fmt(rep.max_ratio, 6) +
                         "]",
                     false);
            }
        }
    }
    note(o,
         "oscillation ratios in [" + fmt(osc_min, 6) + ", " + fmt(osc_max, 6) +
             "] within [3/5, 5/3] on sampled Delta(c, 1/4)",
         osc_ok);
    return o;
}

// --- criterion 6: off-axis squares and the unit pseudo-disk -----------------
// For 1e3 random dyadic squares with j >= 1 and 1e2 point pairs each, the
// computed 1 - rho(z, w)^2 stays at or above 1/5 with no tolerance.  The
// pseudo-disk Delta(1, 1/4) lies inside Omega: sampled points land in
// Omega, and its bounding box has Re <= 5/3 < 2 and |Im| <= 8/9 < 1.

Outcome criterion6() {
    Outcome o;
    Rng rng(kSeed, 11);
    double min_value = std::numeric_limits<double>::infinity();
    bool pairs_ok = true;
    for (int s = 0; s < 1000; ++s) {
        const int n = 1 + static_cast<int>(rng.next_u64() % 10);
        const std::int64_t size = std::int64_t{1} << n;
        const DyadicIndex l{
            n, 1 + static_cast<std::int64_t>(rng.next_u64() % (size - 1)),
            static_cast<std::int64_t>(rng.next_u64() % size)};
        const Rect q = dyadic_square(l);
        for (int p = 0; p < 100; ++p) {
            const complex z{rng.uniform(q.x0, q.x1), rng.uniform(q.y0, q.y1)};
            const complex w{rng.uniform(q.x0, q.x1), rng.uniform(q.y0, q.y1)};
            const double r = rho_half(z, w);
            const double value = 1.0 - r * r;
            min_value = std::min(min_value, value);
            if (!(value >= 0.2)) pairs_ok = false;
        }
    }
    note(o,
         "min 1 - rho^2 = " + fmt(min_value, 6) +
             " over 1e3 off-axis squares x 1e2 pairs (floor 1/5, no slack)",
         pairs_ok);

    const EuclidDisk disk = pseudo_disk_euclid_half(1.0, 0.25);
    const bool euclid_ok = std::abs(disk.center - complex{17.0 / 15.0, 0.0}) <=
                               1e-12 &&
                           std::abs(disk.radius - 8.0 / 15.0) <= 1e-12;
    note(o,
         "Delta(1, 1/4) = Euclidean disk(17/15, 8/15) to 1e-12", euclid_ok);
    bool inside = true;
    for (int i = 0; i < 10'000; ++i) {
        const double r = disk.radius * std::sqrt(rng.next_double());
        const double t = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
        const complex z = disk.center + std::polar(r, t);
        if (!in_omega(z)) inside = false;
    }
    note(o, "1e4 samples of Delta(1, 1/4) all inside Omega", inside);
    const Rect box = pseudo_disk_bounding_box(1.0, 0.25);
    const double y_extent = std::max(std::abs(box.y0), std::abs(box.y1));
    const bool box_ok = std::abs(box.x1 - 5.0 / 3.0) <= 1e-12 &&
                        std::abs(y_extent - 8.0 / 9.0) <= 1e-12 &&
                        box.x1 < 2.0 && y_extent < 1.0;
    note(o,
         "bounding box: Re <= " + fmt(box.x1, 6) + " < 2 (margin 1/3), |Im| <= " +
             fmt(y_extent, 6) + " < 1 (margin 1/9)",
         box_ok);
    return o;
}

// --- criterion 7: stopping-time decomposition vs depth-6 brute force --------

namespace brute {

bool is_strict_ancestor(const DyadicIndex& a, const DyadicIndex& b) {
    if (a.n >= b.n) return false;
    const int shift = b.n - a.n;
    return (b.j >> shift) == a.j && (b.k >> shift) == a.k;
}

enum class Band { Above, Below, Straddle };

/// Mirror of the production dead-band comparison, on an independent
/// averager instance.
Band classify_like(const SquareAverager& av, const DyadicIndex& l,
                   int refine_steps, SquareAverage& out) {
    out = av.average(l);
    double factor = 0.1;
    for (int step = 0;; ++step) {
        if (out.value - out.error > 1.0) return Band::Above;
        if (out.value + out.error <= 1.0) return Band::Below;
        if (step >= refine_steps) return Band::Straddle;
        out = av.average_refined(l, factor);
        factor *= 0.1;
    }
}

struct Result {
    std::vector<StoppingSquare> squares;
    int straddles = 0;
};

void recurse(const SquareAverager& av, const DyadicIndex& l, int n_max,
             int refine_steps, Result& out) {
    SquareAverage avg;
    const Band band = classify_like(av, l, refine_steps, avg);
    if (band == Band::Above) {
        out.squares.push_back({l, avg.value, avg.error,
                               std::abs(av.map().evaluate(dyadic_center(l)))});
        return;
    }
    if (band == Band::Straddle) {
        ++out.straddles;
        return;
    }
    if (l.n >= n_max) return;
    for (const DyadicIndex& child : dyadic_children(l))
        recurse(av, child, n_max, refine_steps, out);
}

}  // namespace brute

Outcome criterion7() {
    Outcome o;
    const std::vector<const char*> maps = {
        "constant:0.5",
        "affine:0.3,0.1",
        "affine:0.6,0.05|reciprocal",
        "affine:0.88,0|expquartic",
        "affine:0.7,0.1|reciprocal",
    };
    CZConfig cfg;
    cfg.n_max = 6;
    double max_error_sum = 0.0;
    std::size_t total_squares = 0;
    for (const char* text : maps) {
        const HoloMap f = parse_map(text, Domain::HalfPlane);
        const CZResult prod = cz_decompose(f, cfg);
        bool map_ok = prod.ambiguous.empty();
        if (!prod.ambiguous.empty())
            note(o, std::string(text) + ": ambiguous squares reported", false);

        // Disjoint and non-nested: strictly increasing canonical order and
        // no pair in ancestor relation (dyadic squares are disjoint exactly
        // when neither contains the other).
        double error_sum = 0.0;
        for (std::size_t i = 0; i < prod.squares.size(); ++i) {
            const StoppingSquare& s = prod.squares[i];
            error_sum += s.error;
            for (std::size_t k = i + 1; k < prod.squares.size(); ++k) {
                if (brute::is_strict_ancestor(s.index,
                                              prod.squares[k].index) ||
                    brute::is_strict_ancestor(prod.squares[k].index, s.index))
                    map_ok = false;
            }
            if (!(s.average >= 1.0 - s.error && s.average <= 4.0 + s.error))
                map_ok = false;
        }
        max_error_sum = std::max(max_error_sum, error_sum);
        if (!(error_sum <= 1e-3)) map_ok = false;

        brute::Result ref;
        {
            SquareAverager av(f, cfg.quad);
            brute::recurse(av, DyadicIndex{0, 0, 0}, cfg.n_max,
                           cfg.refine_steps, ref);
        }
        // recursion order is depth-first; the production list is canonical
        std::sort(ref.squares.begin(), ref.squares.end(),
                  [](const StoppingSquare& a, const StoppingSquare& b) {
                      return std::tuple(a.index.n, a.index.j, a.index.k) <
                             std::tuple(b.index.n, b.index.j, b.index.k);
                  });
        bool match = ref.straddles == 0 &&
                     ref.squares.size() == prod.squares.size();
        if (match) {
            for (std::size_t i = 0; i < ref.squares.size(); ++i) {
                const StoppingSquare& a = prod.squares[i];
                const StoppingSquare& b = ref.squares[i];
                if (!(a.index == b.index) ||
                    std::abs(a.average - b.average) > 1e-13 ||
                    std::abs(a.center_value - b.center_value) > 1e-13)
                    match = false;
            }
        }
        if (!match) {
            note(o,
                 std::string(text) + ": production list (" +
                     std::to_string(prod.squares.size()) +
                     " squares) differs from brute force (" +
                     std::to_string(ref.squares.size()) + ")",
                 false);
            map_ok = false;
        }
        if (map_ok) total_squares += prod.squares.size();
    }
    if (o.pass) {
        note(o,
             "5 maps: stopping lists match depth-6 brute force square for "
             "square (" + std::to_string(total_squares) +
                 " squares total), disjoint and non-nested, averages in "
                 "[1 - tol, 4 + tol] with summed quadrature error <= " +
                 fmt(max_error_sum, 3) + " (cap 1e-3)");
    }
    return o;
}

// --- criterion 8: half-plane tail audits ------------------------------------
// For each audit kind at alpha in {0, 1}: the log-log trend slope of the
// normalized tail ratio over lambda in [2, 100] must stay at or below 0.05,
// and the disk-side and half-plane-side level-set estimators must agree
// within 4 sigma.

Outcome criterion8() {
    Outcome o;
    struct Arm {
        TailAuditKind kind;
        const char* text;
        Domain dom;
        const char* label;
    };
    const std::vector<Arm> arms = {
        {TailAuditKind::Starting, "cayley", Domain::Disk, "starting(cayley)"},
        {TailAuditKind::Global, "identity", Domain::HalfPlane,
         "global(identity)"},
        {TailAuditKind::Reduction, "affine:0.9,0|cayley", Domain::Disk,
         "reduction(affine:0.9,0|cayley)"},
        {TailAuditKind::TheoClef, "affine:0.6,0.05|reciprocal",
         Domain::HalfPlane, "theoclef(affine:0.6,0.05|reciprocal)"},
    };
    const std::vector<double> lambdas = log_grid(2.0, 100.0, 12);
    const IntegrationConfig mc = monte_carlo(4'000'000, kSeed);
    bool slopes_ok = true;
    bool constants_ok = true;
    double max_constant = 0.0;
    std::string slope_list;
    std::map<std::pair<int, int>, TailAuditReport> kept;
    for (std::size_t a = 0; a < arms.size(); ++a) {
        const Arm& arm = arms[a];
        const HoloMap m = parse_map(arm.text, arm.dom);
        for (double alpha : {0.0, 1.0}) {
            const TailAuditReport rep =
                tail_inequality_audit(arm.kind, m, alpha, lambdas, mc);
            if (!(std::isfinite(rep.trend_slope) && rep.trend_slope <= 0.05))
                slopes_ok = false;
            if (!std::isfinite(rep.constant_emp)) constants_ok = false;
            max_constant = std::max(max_constant, rep.constant_emp);
            if (!slope_list.empty()) slope_list += ", ";
            slope_list += std::string(arm.label) + " a=" + fmt(alpha, 1) +
                          ": " + fmt(rep.trend_slope, 3);
            kept[{static_cast<int>(a), alpha == 0.0 ? 0 : 1}] = rep;
        }
    }
    note(o, "ratio trend slopes {" + slope_list + "} vs cap 0.05", slopes_ok);
    note(o,
         "empirical constants finite, max " + fmt(max_constant, 4),
         constants_ok);
    if (!slopes_ok) {
        const TailAuditReport& g = kept[{1, 0}];
        note(o,
             "analysis: every arm's normalized ratio is still rising across "
             "lambda in [2, 100] because it approaches a finite ceiling at a "
             "~1/lambda rate (global(identity) a=0 runs " +
                 fmt(g.ratio.front(), 3) + " -> " + fmt(g.ratio.back(), 3) +
                 " against an exact ceiling of 2), so the positive trend "
                 "slope measures approach to the asymptote, not unbounded "
                 "growth; a 0.05 cap would need the ratio to be flat already "
                 "inside this window, which a 1/lambda approach cannot "
                 "satisfy; the empirical constants stay bounded");
    }
    // Cross-check: the Starting audit of the Cayley transform and the
    // Global audit of the half-plane identity estimate the same level-set
    // masses from the two sides of the transform.
    bool cross_ok = true;
    double worst_cross = 0.0;
    for (int ai : {0, 1}) {
        const TailAuditReport& s = kept[{0, ai}];
        const TailAuditReport& g = kept[{1, ai}];
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            const double err = std::hypot(s.lhs_error[i], g.lhs_error[i]);
            const double z =
                std::abs(s.lhs[i] - g.lhs[i]) / std::max(err, 1e-300);
            worst_cross = std::max(worst_cross, z);
            if (!(std::abs(s.lhs[i] - g.lhs[i]) <= 4.0 * err + 1e-15))
                cross_ok = false;
        }
    }
    note(o,
         "disk-side vs half-plane-side level-set masses agree, worst " +
             fmt(worst_cross, 3) + " sigma (cap 4)",
         cross_ok);
    return o;
}

// --- criterion 9: compactness indicator verdicts ----------------------------
// The identity symbol must be flagged NotCompactIndicated with the Power(2)
// indicator within 5% of sqrt(2/pi) at the smallest aperture; a constant
// symbol must be flagged CompactIndicated; and the Sufficient-side
// indicator must dominate the Necessary-side one pointwise on both
// profiles (running-sup K(h) >= rho(h)/h^{alpha+2} and Psi^{-1} is
// increasing).

Outcome criterion9() {
    Outcome o;
    const std::vector<double> grid = log_grid(0.49, 0.0049, 5);
    const OrliczFunction psi2 = OrliczFunction::power(2.0);

    const CarlesonProfile identity_profile =
        carleson_profile(HoloMap::identity(Domain::Disk), 0.0, grid, 8,
                         monte_carlo(400'000'000, kSeed));
    const CompactnessVerdict nec = compactness_indicator(
        psi2, 0.0, identity_profile, CriterionVariant::Necessary);
    const CompactnessVerdict suf = compactness_indicator(
        psi2, 0.0, identity_profile, CriterionVariant::Sufficient);
    note(o, "identity verdict NotCompactIndicated",
         nec.verdict == Verdict::NotCompactIndicated);
    const double indicator = nec.indicator.back();
    const double target = std::sqrt(2.0 / 3.14159265358979323846);
    const double rel = std::abs(indicator - target) / target;
    note(o,
         "identity indicator at h = " + fmt(grid.back(), 3) + ": " +
             fmt(indicator, 5) + " vs sqrt(2/pi) = " + fmt(target, 5) +
             ", rel dev " + fmt(100.0 * rel, 3) + "% (cap 5%)",
         rel <= 0.05);

    const CarlesonProfile constant_profile =
        carleson_profile(parse_map("constant:0.3", Domain::Disk), 0.0, grid, 8,
                         monte_carlo(1'000'000, kSeed));
    const CompactnessVerdict cnec = compactness_indicator(
        psi2, 0.0, constant_profile, CriterionVariant::Necessary);
    const CompactnessVerdict csuf = compactness_indicator(
        psi2, 0.0, constant_profile, CriterionVariant::Sufficient);
    note(o, "constant:0.3 verdict CompactIndicated",
         cnec.verdict == Verdict::CompactIndicated);

    bool ordered = true;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(suf.indicator[i] >= nec.indicator[i] - 1e-12)) ordered = false;
        if (!(csuf.indicator[i] >= cnec.indicator[i] - 1e-12)) ordered = false;
    }
    note(o,
         "Sufficient-side indicator dominates the Necessary-side one at "
         "every grid point on both profiles",
         ordered);
    return o;
}

// --- criterion 10: determinism ----------------------------------------------
// Running the self-test twice with the same configuration produces the same
// canonical payload hash.

Outcome criterion10() {
    Outcome o;
    ExperimentConfig cfg;
    cfg.command = "selftest";
    const ExecutionResult r1 = execute(cfg);
    const ExecutionResult r2 = execute(cfg);
    const std::string h1 = r1.payload["determinism_hash"];
    const std::string h2 = r2.payload["determinism_hash"];
    note(o, "self-test exit codes 0", r1.exit_code == 0 && r2.exit_code == 0);
    note(o, "determinism hash stable across runs: " + h1, h1 == h2);
    note(o, "all self-test checks passed",
         r1.payload["report"]["all_passed"] == true);
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) {
        const int n = std::atoi(argv[i]);
        if (n < 1 || n > 10) {
            std::fprintf(stderr, "usage: %s [criterion numbers in 1..10]\n",
                         argv[0]);
            return 64;
        }
        wanted.push_back(n);
    }
    if (wanted.empty()) wanted = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

    Outcome (*const criteria[10])() = {
        criterion1, criterion2, criterion3, criterion4, criterion5,
        criterion6, criterion7, criterion8, criterion9, criterion10};

    int failed = 0;
    for (int n : wanted) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[n - 1]();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("unexpected exception: ") + e.what();
        }
        const double sec =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        std::printf("CRITERION %d: %s  [%.1f s]\n    %s\n", n,
                    o.pass ? "PASS" : "FAIL", sec, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    std::printf("ACCEPTANCE: %d of %d criteria passed\n",
                static_cast<int>(wanted.size()) - failed,
                static_cast<int>(wanted.size()));
    return failed;
}
