#ifndef CARLESON_GEOMETRY_HPP
#define CARLESON_GEOMETRY_HPP

/// Geometry of the unit disk D, the right half-plane P = {Re z > 0}, and the
/// box Omega = (0,2) x (-1,1), together with the conformal maps that tie them
/// together:
///
///   cayley   T(z) = (1-z)/(1+z), an involution exchanging D and P,
///   exp_map  E(z) = exp(-pi z), carrying Omega onto the annulus
///            {exp(-2 pi) < |z| < 1} minus the negative-real radius,
///   log_map  L = E^{-1} for the branch with Im L in [-1, 1).
///
/// Also: pseudo-hyperbolic distances on both domains, pseudo-disks and their
/// Euclidean representations, Carleson windows, and the dyadic grid on Omega.

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <variant>
#include <vector>

#include "carleson/errors.hpp"

namespace carleson {

using complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

/// Inner radius exp(-2 pi) of the annulus E(Omega).
double annulus_inner_radius();

enum class Domain { Disk, HalfPlane, Circle, Plane };

/// A complex number tagged with the domain it is certified to lie in.
struct ComplexPoint {
    complex value;
    Domain domain;
};

/// Validates membership and builds a tagged point. Disk and HalfPlane are
/// open; Circle allows |.|-deviation up to 1e-12.
ComplexPoint make_point(complex value, Domain domain);

bool in_domain(complex value, Domain domain);

// --- conformal maps ---------------------------------------------------------

/// T(z) = (1-z)/(1+z). Involution; throws PoleAtMinusOne at z = -1.
complex cayley(complex z);

/// Tagged version: Disk <-> HalfPlane, Circle -> Plane (imaginary axis).
ComplexPoint cayley(const ComplexPoint& p);

/// E(z) = exp(-pi z).
complex exp_map(complex z);

/// Branch of E^{-1} with Im in [-1, 1): L(z) = -Log(z)/pi, principal Log.
/// Throws OutsideAnnulus unless exp(-2 pi) < |z| < 1, and OnBranchSlit on
/// the negative real axis, where the branch is cut.
complex log_map(complex z);

// --- pseudo-hyperbolic distances -------------------------------------------

/// rho'(z,w) = |z-w| / |1 - conj(z) w| on the open disk. No input checks.
double rho_disk(complex z, complex w);

/// rho(a,b) = |a-b| / |conj(a)+b| on the open half-plane. No input checks.
double rho_half(complex a, complex b);

/// Checked dispatch on matching tags; throws DomainMismatch on mixed tags
/// and SingularPoint where the formula degenerates.
double pseudo_distance(const ComplexPoint& p, const ComplexPoint& q);

/// Harnack constant M_s = (1+s)/(1-s) for 0 <= s < 1.
double harnack_constant(double s);

// --- pseudo-disks -----------------------------------------------------------

/// Euclidean center/radius representation of a pseudo-hyperbolic disk.
struct EuclidDisk {
    complex center;
    double radius;
};

/// {z in D : rho'(z, c) < r} as a Euclidean disk. Requires c in D, 0 < r < 1.
EuclidDisk pseudo_disk_euclid_disk(complex c, double r);

/// {z in P : rho(z, c) < r} as a Euclidean disk. Requires Re c > 0, 0 < r < 1.
EuclidDisk pseudo_disk_euclid_half(complex c, double r);

/// Conservative axis-aligned enclosure of the half-plane pseudo-disk
/// Delta(c, r): for c = a + ib,
///   Re in [a (1-r)/(1+r), a (1+r)/(1-r)],
///   |Im - b| <= a 2r/(1-r)^2.
/// The Im half-width is the enclosure bound, slightly wider than the disk.
struct Rect {
    double x0, x1, y0, y1;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() * height(); }
    complex center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
    bool contains_half_open(complex z) const {
        return z.real() >= x0 && z.real() < x1 && z.imag() >= y0 && z.imag() < y1;
    }
    bool contains_open(complex z) const {
        return z.real() > x0 && z.real() < x1 && z.imag() > y0 && z.imag() < y1;
    }
};

Rect pseudo_disk_bounding_box(complex c, double r);

/// Mobius push z = (c - u) / (1 - conj(c) u) carrying D(0,r) onto the disk
/// pseudo-disk Delta'(c, r); u = 0 maps to c.
complex pseudo_disk_push_disk(complex c, complex u);

/// Mobius push z = (c + conj(c) u) / (1 - u) carrying D(0,r) onto the
/// half-plane pseudo-disk Delta(c, r); u = 0 maps to c.
complex pseudo_disk_push_half(complex c, complex u);

// --- dyadic grid on Omega ---------------------------------------------------

/// Square (n,j,k) has x in [2j/2^n, 2(j+1)/2^n) and y in [2k/2^n - 1,
/// 2(k+1)/2^n - 1), with 0 <= j,k < 2^n. (0,0,0) is Omega itself. Squares
/// are half-open (left and bottom edges included), so each generation tiles
/// Omega exactly.
struct DyadicIndex {
    int n = 0;
    std::int64_t j = 0;
    std::int64_t k = 0;

    friend bool operator==(const DyadicIndex&, const DyadicIndex&) = default;
};

/// Throws InvalidIndex unless 0 <= n <= 62 and j,k in [0, 2^n).
void validate_index(const DyadicIndex& l);

Rect dyadic_square(const DyadicIndex& l);
complex dyadic_center(const DyadicIndex& l);

/// True when the square touches the imaginary axis, i.e. j = 0.
bool dyadic_touches_axis(const DyadicIndex& l);

std::array<DyadicIndex, 4> dyadic_children(const DyadicIndex& l);

enum class BoundaryPolicy { HalfOpen, Strict };

/// Index of the generation-n square containing z. Requires z in Omega
/// (half-open). With BoundaryPolicy::Strict, throws OnDyadicBoundary if z
/// sits exactly on an interior grid line of generation n.
DyadicIndex dyadic_locate(complex z, int n,
                          BoundaryPolicy policy = BoundaryPolicy::HalfOpen);

/// Upper bound on max_{z in Q} rho(z, center): half-diagonal over the
/// smallest |z + conj(center)| the square allows. Less than 1 whenever
/// j >= 1; may exceed 1 for axis squares.
double dyadic_pseudo_radius_bound(const DyadicIndex& l);

// --- regions ----------------------------------------------------------------

class HoloMap;

struct Region;

/// Carleson window W(xi, h) = {z in D : |z| >= 1-h, |arg(z conj(xi))| <= h}.
/// Both boundary conditions are closed; arg uses atan2 with values in
/// (-pi, pi].
struct Window {
    complex xi;
    double h;
};

/// S(xi, h) = {z in D : |z - xi| <= h} for |xi| = 1.
struct SBall {
    complex xi;
    double h;
};

struct PseudoDiskD {
    complex center;
    double radius;
};

struct PseudoDiskH {
    complex center;
    double radius;
};

struct DyadicSquareRegion {
    DyadicIndex index;
};

/// Omega = (0,2) x (-1,1) in the half-plane.
struct OmegaBox {};

/// {z : exp(-2 pi) < |z| < 1} in the disk.
struct AnnulusRegion {};

/// {z : |m(z)| > lambda} in m's domain.
struct LevelSetRegion {
    std::shared_ptr<const HoloMap> map;
    double lambda;
};

struct IntersectRegion {
    std::vector<Region> parts;
};

struct EntireDomain {
    Domain domain;
};

/// Axis-aligned open rectangle in the half-plane, 0 <= x0 < x1, y0 < y1.
struct HalfPlaneRect {
    Rect rect;
};

struct Region {
    std::variant<Window, SBall, PseudoDiskD, PseudoDiskH, DyadicSquareRegion,
                 OmegaBox, AnnulusRegion, LevelSetRegion, IntersectRegion,
                 EntireDomain, HalfPlaneRect>
        value;
};

Region make_window(complex xi, double h);
Region make_sball(complex xi, double h);
Region make_pseudo_disk_d(complex center, double radius);
Region make_pseudo_disk_h(complex center, double radius);
Region make_dyadic_region(const DyadicIndex& l);
Region make_omega();
Region make_annulus();
Region make_level_set(std::shared_ptr<const HoloMap> map, double lambda);
Region make_intersection(std::vector<Region> parts);
Region make_entire(Domain domain);
Region make_half_plane_rect(const Rect& r);

/// Ambient domain the region lives in (Disk or HalfPlane). Intersections
/// must agree; throws DomainMismatch otherwise.
Domain region_domain(const Region& r);

bool contains(const Region& r, complex z);

/// Omega membership with half-open edges, matching the dyadic tiling.
bool in_omega(complex z);

inline const Rect omega_rect{0.0, 2.0, -1.0, 1.0};

} // namespace carleson

#endif
