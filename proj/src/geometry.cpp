#include "carleson/geometry.hpp"

#include <cmath>
#include <string>

#include "carleson/selfmaps.hpp"

namespace carleson {

double annulus_inner_radius() {
    static const double value = std::exp(-2.0 * pi);
    return value;
}

bool in_domain(complex value, Domain domain) {
    switch (domain) {
        case Domain::Disk: return std::abs(value) < 1.0;
        case Domain::HalfPlane: return value.real() > 0.0;
        case Domain::Circle: return std::abs(std::abs(value) - 1.0) <= 1e-12;
        case Domain::Plane: return std::isfinite(value.real()) && std::isfinite(value.imag());
    }
    return false;
}

static const char* domain_name(Domain d) {
    switch (d) {
        case Domain::Disk: return "Disk";
        case Domain::HalfPlane: return "HalfPlane";
        case Domain::Circle: return "Circle";
        case Domain::Plane: return "Plane";
    }
    return "?";
}

ComplexPoint make_point(complex value, Domain domain) {
    if (!in_domain(value, domain)) {
        throw DomainMismatch("point (" + std::to_string(value.real()) + ", " +
                             std::to_string(value.imag()) + ") not in " + domain_name(domain));
    }
    return {value, domain};
}

complex cayley(complex z) {
    const complex denom = 1.0 + z;
    if (denom == complex(0.0, 0.0)) throw PoleAtMinusOne();
    return (1.0 - z) / denom;
}

ComplexPoint cayley(const ComplexPoint& p) {
    const complex image = cayley(p.value);
    Domain tag = Domain::Plane;
    if (p.domain == Domain::Disk) tag = Domain::HalfPlane;
    else if (p.domain == Domain::HalfPlane) tag = Domain::Disk;
    return {image, tag};
}

complex exp_map(complex z) {
    return std::exp(-pi * z);
}

complex log_map(complex z) {
    const double r = std::abs(z);
    if (!(r > annulus_inner_radius() && r < 1.0)) {
        throw OutsideAnnulus("log_map: |z| = " + std::to_string(r) +
                             " outside (exp(-2 pi), 1)");
    }
    if (z.imag() == 0.0 && z.real() < 0.0) {
        throw OnBranchSlit("log_map: z on the negative real axis");
    }
    const complex principal = std::log(z);
    return -principal / pi;
}

double rho_disk(complex z, complex w) {
    return std::abs(z - w) / std::abs(1.0 - std::conj(z) * w);
}

double rho_half(complex a, complex b) {
    return std::abs(a - b) / std::abs(std::conj(a) + b);
}

double pseudo_distance(const ComplexPoint& p, const ComplexPoint& q) {
    if (p.domain != q.domain) {
        throw DomainMismatch("pseudo_distance: mixed tags");
    }
    if (p.domain == Domain::Disk) {
        if (!in_domain(p.value, Domain::Disk) || !in_domain(q.value, Domain::Disk)) {
            throw DomainMismatch("pseudo_distance: point outside the open disk");
        }
        const double denom = std::abs(1.0 - std::conj(p.value) * q.value);
        if (denom == 0.0) throw SingularPoint("pseudo_distance: 1 - conj(z) w = 0");
        return std::abs(p.value - q.value) / denom;
    }
    if (p.domain == Domain::HalfPlane) {
        if (!in_domain(p.value, Domain::HalfPlane) || !in_domain(q.value, Domain::HalfPlane)) {
            throw DomainMismatch("pseudo_distance: point outside the open half-plane");
        }
        const double denom = std::abs(std::conj(p.value) + q.value);
        if (denom == 0.0) throw SingularPoint("pseudo_distance: conj(a) + b = 0");
        return std::abs(p.value - q.value) / denom;
    }
    throw DomainMismatch("pseudo_distance: defined on Disk or HalfPlane only");
}

double harnack_constant(double s) {
    if (!(s >= 0.0 && s < 1.0)) {
        throw Error("harnack_constant: s must lie in [0, 1)");
    }
    return (1.0 + s) / (1.0 - s);
}

EuclidDisk pseudo_disk_euclid_disk(complex c, double r) {
    if (!in_domain(c, Domain::Disk)) throw DomainMismatch("pseudo disk center outside D");
    if (!(r > 0.0 && r < 1.0)) throw Error("pseudo disk radius outside (0, 1)");
    const double c2 = std::norm(c);
    const double denom = 1.0 - r * r * c2;
    return {c * (1.0 - r * r) / denom, r * (1.0 - c2) / denom};
}

EuclidDisk pseudo_disk_euclid_half(complex c, double r) {
    if (!in_domain(c, Domain::HalfPlane)) throw DomainMismatch("pseudo disk center outside P");
    if (!(r > 0.0 && r < 1.0)) throw Error("pseudo disk radius outside (0, 1)");
    const double a = c.real();
    const double denom = 1.0 - r * r;
    return {complex(a * (1.0 + r * r) / denom, c.imag()), a * 2.0 * r / denom};
}

Rect pseudo_disk_bounding_box(complex c, double r) {
    if (!in_domain(c, Domain::HalfPlane)) throw DomainMismatch("pseudo disk center outside P");
    if (!(r > 0.0 && r < 1.0)) throw Error("pseudo disk radius outside (0, 1)");
    const double a = c.real();
    const double b = c.imag();
    const double half_width = a * 2.0 * r / ((1.0 - r) * (1.0 - r));
    return {a * (1.0 - r) / (1.0 + r), a * (1.0 + r) / (1.0 - r),
            b - half_width, b + half_width};
}

complex pseudo_disk_push_disk(complex c, complex u) {
    return (c - u) / (1.0 - std::conj(c) * u);
}

complex pseudo_disk_push_half(complex c, complex u) {
    return (c + std::conj(c) * u) / (1.0 - u);
}

void validate_index(const DyadicIndex& l) {
    if (l.n < 0 || l.n > 62) {
        throw InvalidIndex("dyadic generation " + std::to_string(l.n) + " outside [0, 62]");
    }
    const std::int64_t count = std::int64_t(1) << l.n;
    if (l.j < 0 || l.j >= count || l.k < 0 || l.k >= count) {
        throw InvalidIndex("dyadic offset (" + std::to_string(l.j) + ", " +
                           std::to_string(l.k) + ") outside [0, 2^" + std::to_string(l.n) + ")");
    }
}

Rect dyadic_square(const DyadicIndex& l) {
    validate_index(l);
    const double side = std::ldexp(2.0, -l.n);
    return {static_cast<double>(l.j) * side, static_cast<double>(l.j + 1) * side,
            static_cast<double>(l.k) * side - 1.0, static_cast<double>(l.k + 1) * side - 1.0};
}

complex dyadic_center(const DyadicIndex& l) {
    validate_index(l);
    return {std::ldexp(static_cast<double>(2 * l.j + 1), -l.n),
            std::ldexp(static_cast<double>(2 * l.k + 1), -l.n) - 1.0};
}

bool dyadic_touches_axis(const DyadicIndex& l) {
    validate_index(l);
    return l.j == 0;
}

std::array<DyadicIndex, 4> dyadic_children(const DyadicIndex& l) {
    validate_index(l);
    if (l.n >= 62) throw InvalidIndex("dyadic_children: generation would exceed 62");
    return {DyadicIndex{l.n + 1, 2 * l.j, 2 * l.k},
            DyadicIndex{l.n + 1, 2 * l.j + 1, 2 * l.k},
            DyadicIndex{l.n + 1, 2 * l.j, 2 * l.k + 1},
            DyadicIndex{l.n + 1, 2 * l.j + 1, 2 * l.k + 1}};
}

bool in_omega(complex z) {
    return z.real() >= 0.0 && z.real() < 2.0 && z.imag() >= -1.0 && z.imag() < 1.0;
}

DyadicIndex dyadic_locate(complex z, int n, BoundaryPolicy policy) {
    if (n < 0 || n > 62) throw InvalidIndex("dyadic generation outside [0, 62]");
    if (!in_omega(z)) throw DomainMismatch("dyadic_locate: point outside Omega");
    // x/side = x 2^{n-1}; exact binary scaling keeps grid lines exact.
    const double sx = std::ldexp(z.real(), n - 1);
    const double sy = std::ldexp(z.imag() + 1.0, n - 1);
    if (policy == BoundaryPolicy::Strict) {
        const bool on_x = sx == std::floor(sx) && sx > 0.0;
        const bool on_y = sy == std::floor(sy) && sy > 0.0;
        if (on_x || on_y) {
            throw OnDyadicBoundary("dyadic_locate: point on a generation-" +
                                   std::to_string(n) + " grid line");
        }
    }
    const std::int64_t count = std::int64_t(1) << n;
    auto clamp = [count](double s) {
        auto v = static_cast<std::int64_t>(std::floor(s));
        if (v < 0) v = 0;
        if (v >= count) v = count - 1;
        return v;
    };
    return {n, clamp(sx), clamp(sy)};
}

double dyadic_pseudo_radius_bound(const DyadicIndex& l) {
    const Rect q = dyadic_square(l);
    const complex c = dyadic_center(l);
    const double half_diag = 0.5 * q.width() * std::numbers::sqrt2;
    const double min_denom = q.x0 + c.real();
    return half_diag / min_denom;
}

// --- regions ----------------------------------------------------------------

static complex normalized_unimodular(complex xi) {
    const double r = std::abs(xi);
    if (std::abs(r - 1.0) > 1e-9) {
        throw DomainMismatch("window center must lie on the unit circle");
    }
    return xi / r;
}

Region make_window(complex xi, double h) {
    if (!(h > 0.0 && h <= 1.0)) throw Error("window height outside (0, 1]");
    return {Window{normalized_unimodular(xi), h}};
}

Region make_sball(complex xi, double h) {
    if (!(h > 0.0 && h <= 2.0)) throw Error("S-ball radius outside (0, 2]");
    return {SBall{normalized_unimodular(xi), h}};
}

Region make_pseudo_disk_d(complex center, double radius) {
    if (!in_domain(center, Domain::Disk)) throw DomainMismatch("pseudo disk center outside D");
    if (!(radius > 0.0 && radius < 1.0)) throw Error("pseudo disk radius outside (0, 1)");
    return {PseudoDiskD{center, radius}};
}

Region make_pseudo_disk_h(complex center, double radius) {
    if (!in_domain(center, Domain::HalfPlane)) throw DomainMismatch("pseudo disk center outside P");
    if (!(radius > 0.0 && radius < 1.0)) throw Error("pseudo disk radius outside (0, 1)");
    return {PseudoDiskH{center, radius}};
}

Region make_dyadic_region(const DyadicIndex& l) {
    validate_index(l);
    return {DyadicSquareRegion{l}};
}

Region make_omega() { return {OmegaBox{}}; }

Region make_annulus() { return {AnnulusRegion{}}; }

Region make_level_set(std::shared_ptr<const HoloMap> map, double lambda) {
    if (!map) throw Error("level set requires a map");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw Error("level set threshold must be finite and >= 0");
    return {LevelSetRegion{std::move(map), lambda}};
}

Region make_intersection(std::vector<Region> parts) {
    if (parts.empty()) throw Error("intersection of zero regions");
    Region r{IntersectRegion{std::move(parts)}};
    region_domain(r); // validates that ambient domains agree
    return r;
}

Region make_entire(Domain domain) {
    if (domain != Domain::Disk && domain != Domain::HalfPlane) {
        throw DomainMismatch("entire-domain region must be Disk or HalfPlane");
    }
    return {EntireDomain{domain}};
}

Region make_half_plane_rect(const Rect& r) {
    if (!(r.x0 >= 0.0 && r.x0 < r.x1 && r.y0 < r.y1)) {
        throw Error("half-plane rectangle must satisfy 0 <= x0 < x1, y0 < y1");
    }
    return {HalfPlaneRect{r}};
}

Domain region_domain(const Region& r) {
    struct Visitor {
        Domain operator()(const Window&) const { return Domain::Disk; }
        Domain operator()(const SBall&) const { return Domain::Disk; }
        Domain operator()(const PseudoDiskD&) const { return Domain::Disk; }
        Domain operator()(const PseudoDiskH&) const { return Domain::HalfPlane; }
        Domain operator()(const DyadicSquareRegion&) const { return Domain::HalfPlane; }
        Domain operator()(const OmegaBox&) const { return Domain::HalfPlane; }
        Domain operator()(const AnnulusRegion&) const { return Domain::Disk; }
        Domain operator()(const LevelSetRegion& ls) const { return ls.map->domain(); }
        Domain operator()(const IntersectRegion& in) const {
            Domain common = region_domain(in.parts.front());
            for (const auto& part : in.parts) {
                if (region_domain(part) != common) {
                    throw DomainMismatch("intersection mixes Disk and HalfPlane regions");
                }
            }
            return common;
        }
        Domain operator()(const EntireDomain& e) const { return e.domain; }
        Domain operator()(const HalfPlaneRect&) const { return Domain::HalfPlane; }
    };
    return std::visit(Visitor{}, r.value);
}

bool contains(const Region& r, complex z) {
    struct Visitor {
        complex z;
        bool operator()(const Window& w) const {
            const double modulus = std::abs(z);
            if (modulus >= 1.0 || modulus < 1.0 - w.h) return false;
            const complex rotated = z * std::conj(w.xi);
            return std::abs(std::atan2(rotated.imag(), rotated.real())) <= w.h;
        }
        bool operator()(const SBall& s) const {
            return std::abs(z) < 1.0 && std::abs(z - s.xi) <= s.h;
        }
        bool operator()(const PseudoDiskD& d) const {
            return std::abs(z) < 1.0 && rho_disk(z, d.center) < d.radius;
        }
        bool operator()(const PseudoDiskH& d) const {
            return z.real() > 0.0 && rho_half(z, d.center) < d.radius;
        }
        bool operator()(const DyadicSquareRegion& q) const {
            return dyadic_square(q.index).contains_half_open(z);
        }
        bool operator()(const OmegaBox&) const { return in_omega(z); }
        bool operator()(const AnnulusRegion&) const {
            const double m = std::abs(z);
            return m > annulus_inner_radius() && m < 1.0;
        }
        bool operator()(const LevelSetRegion& ls) const {
            return std::abs(ls.map->evaluate(z)) > ls.lambda;
        }
        bool operator()(const IntersectRegion& in) const {
            for (const auto& part : in.parts) {
                if (!contains(part, z)) return false;
            }
            return true;
        }
        bool operator()(const EntireDomain& e) const { return in_domain(z, e.domain); }
        bool operator()(const HalfPlaneRect& hr) const { return hr.rect.contains_open(z); }
    };
    return std::visit(Visitor{z}, r.value);
}

} // namespace carleson
