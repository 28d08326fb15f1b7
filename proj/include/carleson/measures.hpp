#ifndef CARLESON_MEASURES_HPP
#define CARLESON_MEASURES_HPP

/// The measure catalog and its integration engine.
///
/// Five families are supported:
///   BergmanA(a): (a+1)(1-|z|^2)^a dA on the disk, dA = normalized area.
///   TauT(a):     Cayley push-forward of BergmanA(a); a probability on P
///                with density 4^{a+1}(a+1)/pi * x^a / |1+w|^{2(a+2)}.
///   MuX(a):      x^a dx dy on P (infinite total mass).
///   SigmaL(a):   push-forward of BergmanA(a) under the scaled logarithm;
///                carried by the box (0,2)x(-1,1) with density
///                pi (a+1) e^{-2 pi x} (1 - e^{-2 pi x})^a and total mass
///                (1 - e^{-4 pi})^{a+1}.
///   Area:        plain area dx dy on P (the a = 0 member of MuX).
///
/// Quadrature is used for smooth densities over geometrically simple
/// regions (with singularity-removing substitutions); Monte Carlo, with
/// deterministic stratified counting, covers everything else and is always
/// used for regions defined through a holomorphic map.

#include <cstdint>
#include <vector>

#include "carleson/geometry.hpp"
#include "carleson/rng.hpp"

namespace carleson {

/// Weight exponent for the Bergman family; the range a > -1 is enforced.
struct WeightParameter {
    double alpha;
    explicit WeightParameter(double a);
};

enum class MeasureFamily { BergmanA, TauT, MuX, SigmaL, Area };

struct MeasureKind {
    MeasureFamily family;
    double alpha;
    Domain support;
};

MeasureKind bergman_a(double alpha);
MeasureKind tau_t(double alpha);
MeasureKind mu_x(double alpha);
MeasureKind sigma_l(double alpha);
MeasureKind area_measure();

/// Density in the measure's reference normalization: BergmanA relative to
/// normalized area dA = dxdy/pi, everything else relative to plain dxdy.
double density(const MeasureKind& m, complex z);

/// Density relative to plain Lebesgue dxdy for every family (BergmanA's
/// value is density()/pi).  This is what the quadrature engine integrates.
double lebesgue_density(const MeasureKind& m, complex z);

/// Total mass: 1 for BergmanA and TauT, (1-e^{-4 pi})^{alpha+1} for SigmaL,
/// +infinity for MuX and Area.
double total_mass(const MeasureKind& m);

enum class IntegrationMethod { MonteCarlo, AdaptiveQuadrature };

struct IntegrationConfig {
    IntegrationMethod method = IntegrationMethod::AdaptiveQuadrature;
    std::uint64_t sample_count = 1'000'000;
    std::size_t max_subdivisions = 5000;
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    std::uint64_t seed = 20260822;
};

struct Estimate {
    double value = 0.0;
    /// Monte Carlo standard error, or the residual quadrature error bound.
    double error_bar = 0.0;
    std::uint64_t samples_used = 0;
};

/// One point of the radial-CDF sampler for BergmanA(alpha).
complex sample_bergman_point(double alpha, Rng& rng);

/// i.i.d. samples of BergmanA (disk points), TauT (Cayley images), or
/// SigmaL (conditioned on the annulus, mapped into the box).  MuX and Area
/// have no global sampler (infinite mass).
std::vector<complex> sample(const MeasureKind& m, std::size_t count,
                            std::uint64_t seed);

/// Exact MuX mass of a rectangle: (x1^{a+1} - x0^{a+1})/(a+1) * (y1 - y0).
double mu_rect_mass(double alpha, const Rect& r);

/// Inverse-CDF sample of MuX restricted to a rectangle.
complex sample_mu_rect(double alpha, const Rect& r, Rng& rng);

/// Exact SigmaL mass of a rectangle (clipped to the carrier box).
double sigma_rect_mass(double alpha, const Rect& r);

/// Integrates the measure over the region.  Regions defined through a
/// holomorphic map always use Monte Carlo; quadrature requests on shapes
/// with indicator discontinuities are rejected rather than silently slow.
Estimate integrate(const MeasureKind& m, const Region& r,
                   const IntegrationConfig& cfg);

/// Exact value of BergmanA(alpha) on any window of aperture h:
/// (h/pi) (2h - h^2)^{alpha+1}; independent of the window's center by
/// rotation invariance.
double window_measure_closed_form(double alpha, double h);

struct RatioRange {
    double lo;
    double hi;
};

/// Extremes of the density ratio a/b over an nx-by-ny lattice of cell
/// centers of the box (0,2)x(-1,1).
RatioRange equivalence_ratio(double alpha, const MeasureKind& a,
                             const MeasureKind& b, std::size_t nx,
                             std::size_t ny);

} // namespace carleson

#endif
