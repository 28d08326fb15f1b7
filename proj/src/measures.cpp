#include "carleson/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "carleson/errors.hpp"
#include "carleson/parallel.hpp"
#include "carleson/quadrature.hpp"
#include "carleson/selfmaps.hpp"

namespace carleson {

WeightParameter::WeightParameter(double a) : alpha(a) {
    if (!std::isfinite(a) || !(a > -1.0)) {
        throw Error("weight parameter must satisfy alpha > -1");
    }
}

MeasureKind bergman_a(double alpha) {
    return {MeasureFamily::BergmanA, WeightParameter(alpha).alpha, Domain::Disk};
}
MeasureKind tau_t(double alpha) {
    return {MeasureFamily::TauT, WeightParameter(alpha).alpha, Domain::HalfPlane};
}
MeasureKind mu_x(double alpha) {
    return {MeasureFamily::MuX, WeightParameter(alpha).alpha, Domain::HalfPlane};
}
MeasureKind sigma_l(double alpha) {
    return {MeasureFamily::SigmaL, WeightParameter(alpha).alpha, Domain::HalfPlane};
}
MeasureKind area_measure() { return {MeasureFamily::Area, 0.0, Domain::HalfPlane}; }

double density(const MeasureKind& m, complex z) {
    const double a = m.alpha;
    if (m.family == MeasureFamily::BergmanA) {
        if (!(std::norm(z) < 1.0)) throw DomainMismatch("density: point outside the disk");
        return (a + 1.0) * std::pow(1.0 - std::norm(z), a);
    }
    const double x = z.real();
    if (!(x > 0.0)) {
        if (x == 0.0 && m.family == MeasureFamily::MuX && a < 0.0) {
            throw SingularPoint("density: x^alpha singular on the imaginary axis");
        }
        throw DomainMismatch("density: point outside the half-plane");
    }
    switch (m.family) {
        case MeasureFamily::TauT:
            return std::pow(4.0, a + 1.0) * (a + 1.0) / pi * std::pow(x, a) *
                   std::pow(std::norm(1.0 + z), -(a + 2.0));
        case MeasureFamily::MuX:
            return std::pow(x, a);
        case MeasureFamily::SigmaL: {
            if (!in_omega(z)) return 0.0;
            const double e = std::exp(-2.0 * pi * x);
            return pi * (a + 1.0) * e * std::pow(1.0 - e, a);
        }
        case MeasureFamily::Area:
            return 1.0;
        case MeasureFamily::BergmanA:
            break;
    }
    throw Error("unreachable measure family");
}

double lebesgue_density(const MeasureKind& m, complex z) {
    const double d = density(m, z);
    return m.family == MeasureFamily::BergmanA ? d / pi : d;
}

double total_mass(const MeasureKind& m) {
    switch (m.family) {
        case MeasureFamily::BergmanA:
        case MeasureFamily::TauT:
            return 1.0;
        case MeasureFamily::SigmaL:
            return std::pow(1.0 - std::exp(-4.0 * pi), m.alpha + 1.0);
        case MeasureFamily::MuX:
        case MeasureFamily::Area:
            return std::numeric_limits<double>::infinity();
    }
    throw Error("unreachable measure family");
}

complex sample_bergman_point(double alpha, Rng& rng) {
    const double u = rng.next_double();
    const double r = std::sqrt(1.0 - std::pow(1.0 - u, 1.0 / (alpha + 1.0)));
    return std::polar(r, rng.uniform(-pi, pi));
}

namespace {

/// SigmaL sample: BergmanA conditioned on the annulus, pushed through the
/// scaled logarithm. The loop only retries on exact-boundary draws.
complex sample_sigma_point(double alpha, Rng& rng) {
    const double r0 = annulus_inner_radius();
    const double u0 = 1.0 - std::pow(1.0 - r0 * r0, alpha + 1.0);
    for (;;) {
        const double u = u0 + rng.next_double() * (1.0 - u0);
        const double r = std::sqrt(1.0 - std::pow(1.0 - u, 1.0 / (alpha + 1.0)));
        const double theta = rng.uniform(-pi, pi);
        if (!(r > r0) || theta == -pi) continue;
        return log_map(std::polar(r, theta));
    }
}

} // namespace

std::vector<complex> sample(const MeasureKind& m, std::size_t count,
                            std::uint64_t seed) {
    if (count < 1) throw Error("sample: count must be >= 1");
    if (m.family == MeasureFamily::MuX || m.family == MeasureFamily::Area) {
        throw UnboundedRegionWithInfiniteMass(
            "sample: no global sampler for a measure of infinite mass");
    }
    Rng rng(seed, 0);
    std::vector<complex> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        switch (m.family) {
            case MeasureFamily::BergmanA:
                out.push_back(sample_bergman_point(m.alpha, rng));
                break;
            case MeasureFamily::TauT:
                out.push_back(cayley(sample_bergman_point(m.alpha, rng)));
                break;
            case MeasureFamily::SigmaL:
                out.push_back(sample_sigma_point(m.alpha, rng));
                break;
            default:
                throw Error("unreachable measure family");
        }
    }
    return out;
}

double mu_rect_mass(double alpha, const Rect& r) {
    if (!(r.x0 >= 0.0 && r.x0 < r.x1 && r.y0 < r.y1)) {
        throw Error("mu_rect_mass: malformed rectangle");
    }
    const double a1 = alpha + 1.0;
    return (std::pow(r.x1, a1) - std::pow(r.x0, a1)) / a1 * (r.y1 - r.y0);
}

complex sample_mu_rect(double alpha, const Rect& r, Rng& rng) {
    const double a1 = alpha + 1.0;
    const double c0 = std::pow(r.x0, a1), c1 = std::pow(r.x1, a1);
    const double x = std::pow(c0 + rng.next_double_open0() * (c1 - c0), 1.0 / a1);
    return {x, rng.uniform(r.y0, r.y1)};
}

double sigma_rect_mass(double alpha, const Rect& r) {
    const double xa = std::max(r.x0, 0.0), xb = std::min(r.x1, 2.0);
    const double ya = std::max(r.y0, -1.0), yb = std::min(r.y1, 1.0);
    if (!(xa < xb) || !(ya < yb)) return 0.0;
    auto v = [&](double x) { return std::pow(1.0 - std::exp(-2.0 * pi * x), alpha + 1.0); };
    return (v(xb) - v(xa)) * (yb - ya) / 2.0;
}

double window_measure_closed_form(double alpha, double h) {
    if (!(h > 0.0 && h <= 1.0)) throw Error("window aperture must lie in (0, 1]");
    WeightParameter w(alpha);
    return h / pi * std::pow(2.0 * h - h * h, w.alpha + 1.0);
}

// --- integration ------------------------------------------------------------

namespace {

bool uses_holomap(const Region& r) {
    return std::visit(
        [](const auto& v) -> bool {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, LevelSetRegion>) {
                return true;
            } else if constexpr (std::is_same_v<V, IntersectRegion>) {
                for (const Region& part : v.parts) {
                    if (uses_holomap(part)) return true;
                }
                return false;
            } else {
                return false;
            }
        },
        r.value);
}

std::optional<Rect> rect_like(const Region& r) {
    return std::visit(
        [](const auto& v) -> std::optional<Rect> {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, HalfPlaneRect>) {
                return v.rect;
            } else if constexpr (std::is_same_v<V, DyadicSquareRegion>) {
                return dyadic_square(v.index);
            } else if constexpr (std::is_same_v<V, OmegaBox>) {
                return omega_rect;
            } else {
                return std::nullopt;
            }
        },
        r.value);
}

/// Bounded rectangle known to contain the region, for carrier sampling of
/// the infinite-mass families.
std::optional<Rect> bounding_rect(const Region& r) {
    if (auto box = rect_like(r)) return box;
    if (const auto* pd = std::get_if<PseudoDiskH>(&r.value)) {
        const EuclidDisk e = pseudo_disk_euclid_half(pd->center, pd->radius);
        return Rect{e.center.real() - e.radius, e.center.real() + e.radius,
                    e.center.imag() - e.radius, e.center.imag() + e.radius};
    }
    if (const auto* sect = std::get_if<IntersectRegion>(&r.value)) {
        std::optional<Rect> best;
        for (const Region& part : sect->parts) {
            auto box = bounding_rect(part);
            if (!box) continue;
            if (!best || box->area() < best->area()) best = box;
        }
        return best;
    }
    return std::nullopt;
}

Estimate exact_estimate(double value) { return {value, 0.0, 0}; }

constexpr std::uint64_t kStratumSize = 1 << 16;

/// Deterministic stratified indicator counting: integer hit counts per
/// stratum, combined in index order, so the result is independent of the
/// worker count.
Estimate mc_count(std::uint64_t n, std::uint64_t seed, double mass,
                  const std::function<bool(Rng&)>& hit) {
    if (n < 1000) throw Error("integrate: sample_count must be >= 1000");
    const std::size_t strata =
        static_cast<std::size_t>((n + kStratumSize - 1) / kStratumSize);
    const std::vector<std::uint64_t> counts = run_strata<std::uint64_t>(
        strata, [&](std::size_t s) {
            Rng rng(seed, s);
            const std::uint64_t lo = s * kStratumSize;
            const std::uint64_t hi = std::min(n, lo + kStratumSize);
            std::uint64_t c = 0;
            for (std::uint64_t i = lo; i < hi; ++i) {
                if (hit(rng)) ++c;
            }
            return c;
        });
    std::uint64_t hits = 0;
    for (std::uint64_t c : counts) hits += c;
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    Estimate est;
    est.value = mass * p;
    est.error_bar = mass * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    est.samples_used = n;
    return est;
}

Estimate quad_to_estimate(const QuadEstimate& q) {
    if (!q.converged) {
        throw NonConvergence("quadrature residual above tolerance at budget");
    }
    return {q.value, q.error, q.evaluations};
}

QuadOptions quad_options(const IntegrationConfig& cfg) {
    return {cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions};
}

/// BergmanA over a radially simple set: the substitution u = (1-r^2)^{a+1}
/// turns the weight into the constant 1/(2 pi) on a (theta, u) rectangle.
Estimate bergman_radial_quadrature(double theta_lo, double theta_hi,
                                   double u_lo, double u_hi,
                                   const IntegrationConfig& cfg) {
    const Rect box{theta_lo, theta_hi, u_lo, u_hi};
    auto integrand = [](double, double) { return 1.0 / (2.0 * pi); };
    return quad_to_estimate(integrate_rect2d(integrand, box, quad_options(cfg)));
}

/// Smooth-density integral over a Euclidean disk in polar coordinates
/// around its center.
Estimate polar_disk_quadrature(const MeasureKind& m, const EuclidDisk& disk,
                               const IntegrationConfig& cfg) {
    const Rect box{0.0, disk.radius, -pi, pi};
    auto integrand = [&](double radius, double theta) {
        const complex z = disk.center + std::polar(radius, theta);
        return lebesgue_density(m, z) * radius;
    };
    return quad_to_estimate(integrate_rect2d(integrand, box, quad_options(cfg)));
}

/// TauT over a rectangle.  The density is x^a times a smooth factor, so it
/// integrates directly whenever it is smooth on the rectangle (x0 > 0, or
/// an integer exponent a >= 0).  Otherwise the substitution u = x^{a+1}/(a+1)
/// removes the x^a edge factor; its inverse x = ((a+1) u)^{1/(a+1)} is the
/// benign direction exactly for a < 0, the only fractional case the catalog
/// meets on axis-touching rectangles.
Estimate tau_rect_quadrature(double alpha, const Rect& r,
                             const IntegrationConfig& cfg) {
    const double a1 = alpha + 1.0;
    const double front = std::pow(4.0, a1) * (alpha + 1.0) / pi;
    const bool smooth_density =
        r.x0 > 0.0 || (alpha >= 0.0 && alpha == std::floor(alpha));
    if (smooth_density) {
        auto integrand = [&](double x, double y) {
            return front * std::pow(x, alpha) *
                   std::pow(std::norm(complex(1.0 + x, y)), -(alpha + 2.0));
        };
        return quad_to_estimate(
            integrate_rect2d(integrand, r, quad_options(cfg)));
    }
    const double u0 = std::pow(r.x0, a1) / a1, u1 = std::pow(r.x1, a1) / a1;
    const Rect box{u0, u1, r.y0, r.y1};
    auto integrand = [&](double u, double y) {
        const double x = std::pow(a1 * u, 1.0 / a1);
        return front * std::pow(std::norm(complex(1.0 + x, y)), -(alpha + 2.0));
    };
    return quad_to_estimate(integrate_rect2d(integrand, box, quad_options(cfg)));
}

Estimate quadrature_path(const MeasureKind& m, const Region& r,
                         const IntegrationConfig& cfg) {
    const double a = m.alpha;
    if (m.family == MeasureFamily::BergmanA) {
        if (const auto* w = std::get_if<Window>(&r.value)) {
            const double u_hi = std::pow(2.0 * w->h - w->h * w->h, a + 1.0);
            return bergman_radial_quadrature(-w->h, w->h, 0.0, u_hi, cfg);
        }
        if (std::get_if<AnnulusRegion>(&r.value)) {
            const double r0 = annulus_inner_radius();
            const double u_hi = std::pow(1.0 - r0 * r0, a + 1.0);
            return bergman_radial_quadrature(-pi, pi, 0.0, u_hi, cfg);
        }
        if (std::get_if<EntireDomain>(&r.value)) {
            return bergman_radial_quadrature(-pi, pi, 0.0, 1.0, cfg);
        }
        if (const auto* pd = std::get_if<PseudoDiskD>(&r.value)) {
            return polar_disk_quadrature(
                m, pseudo_disk_euclid_disk(pd->center, pd->radius), cfg);
        }
        throw Error("adaptive quadrature does not support this disk region; "
                    "request MonteCarlo");
    }
    // Half-plane families.
    if (std::get_if<EntireDomain>(&r.value)) {
        switch (m.family) {
            case MeasureFamily::TauT:
                // Push-forward of a probability measure: mass equals the
                // disk-side total, evaluated by the exact radial route.
                return bergman_radial_quadrature(-pi, pi, 0.0, 1.0, cfg);
            case MeasureFamily::SigmaL:
                return exact_estimate(total_mass(m));
            default:
                throw UnboundedRegionWithInfiniteMass(
                    "integrate: infinite mass over the half-plane");
        }
    }
    if (auto box = rect_like(r)) {
        switch (m.family) {
            case MeasureFamily::TauT:
                return tau_rect_quadrature(a, *box, cfg);
            case MeasureFamily::MuX:
            case MeasureFamily::Area:
                return exact_estimate(mu_rect_mass(a, *box));
            case MeasureFamily::SigmaL:
                return exact_estimate(sigma_rect_mass(a, *box));
            default:
                break;
        }
    }
    if (const auto* pd = std::get_if<PseudoDiskH>(&r.value)) {
        return polar_disk_quadrature(
            m, pseudo_disk_euclid_half(pd->center, pd->radius), cfg);
    }
    throw Error("adaptive quadrature does not support this region shape; "
                "request MonteCarlo");
}

Estimate monte_carlo_path(const MeasureKind& m, const Region& r,
                          const IntegrationConfig& cfg) {
    switch (m.family) {
        case MeasureFamily::BergmanA:
            return mc_count(cfg.sample_count, cfg.seed, 1.0, [&](Rng& rng) {
                return contains(r, sample_bergman_point(m.alpha, rng));
            });
        case MeasureFamily::TauT:
            return mc_count(cfg.sample_count, cfg.seed, 1.0, [&](Rng& rng) {
                return contains(r, cayley(sample_bergman_point(m.alpha, rng)));
            });
        case MeasureFamily::SigmaL: {
            // Unconditioned disk sampling: draws outside the annulus (or on
            // the slit) simply miss, matching the push-forward definition.
            const double r0 = annulus_inner_radius();
            return mc_count(cfg.sample_count, cfg.seed, 1.0, [&](Rng& rng) {
                const complex z = sample_bergman_point(m.alpha, rng);
                if (!(std::abs(z) > r0)) return false;
                if (z.imag() == 0.0 && z.real() < 0.0) return false;
                return contains(r, log_map(z));
            });
        }
        case MeasureFamily::MuX:
        case MeasureFamily::Area: {
            const auto carrier = bounding_rect(r);
            if (!carrier) {
                throw UnboundedRegionWithInfiniteMass(
                    "integrate: no bounded carrier for an infinite-mass measure");
            }
            const double mass = mu_rect_mass(m.alpha, *carrier);
            return mc_count(cfg.sample_count, cfg.seed, mass, [&](Rng& rng) {
                return contains(r, sample_mu_rect(m.alpha, *carrier, rng));
            });
        }
    }
    throw Error("unreachable measure family");
}

} // namespace

Estimate integrate(const MeasureKind& m, const Region& r,
                   const IntegrationConfig& cfg) {
    if (region_domain(r) != m.support) {
        throw DomainMismatch("integrate: region domain does not match the measure");
    }
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0)) {
        throw Error("integrate: tolerances must be positive");
    }
    // Regions defined through a holomorphic map have indicator geometry no
    // product rule can track; they always go through Monte Carlo.
    if (uses_holomap(r) || cfg.method == IntegrationMethod::MonteCarlo) {
        return monte_carlo_path(m, r, cfg);
    }
    return quadrature_path(m, r, cfg);
}

RatioRange equivalence_ratio(double alpha, const MeasureKind& a,
                             const MeasureKind& b, std::size_t nx,
                             std::size_t ny) {
    if (nx < 1 || ny < 1) throw Error("equivalence_ratio: empty grid");
    if (a.support != Domain::HalfPlane || b.support != Domain::HalfPlane) {
        throw DomainMismatch("equivalence_ratio: both measures must live on the half-plane");
    }
    auto check_alpha = [&](const MeasureKind& m) {
        if (m.family != MeasureFamily::Area && m.alpha != alpha) {
            throw Error("equivalence_ratio: weight parameter mismatch");
        }
    };
    check_alpha(a);
    check_alpha(b);
    RatioRange range{std::numeric_limits<double>::infinity(), 0.0};
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < ny; ++j) {
            const complex z(2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(nx),
                            -1.0 + 2.0 * (static_cast<double>(j) + 0.5) / static_cast<double>(ny));
            const double da = lebesgue_density(a, z);
            const double db = lebesgue_density(b, z);
            if (!(da > 0.0) || !(db > 0.0)) {
                throw SingularRatio("equivalence_ratio: a density vanishes on the grid");
            }
            const double ratio = da / db;
            range.lo = std::min(range.lo, ratio);
            range.hi = std::max(range.hi, ratio);
        }
    }
    return range;
}

} // namespace carleson
