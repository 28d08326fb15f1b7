#ifndef CARLESON_SELFMAPS_HPP
#define CARLESON_SELFMAPS_HPP

/// Catalog of holomorphic maps between the disk and the half-plane, kept as
/// descriptors so every map carries a certificate that it sends its domain
/// into its codomain. Evaluation is exact composition of closed forms; no
/// map in the catalog needs numerical continuation.

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "carleson/geometry.hpp"

namespace carleson {

class HoloMap {
public:
    /// z on its own domain.
    static HoloMap identity(Domain domain);

    /// Constant map with value c certified inside codomain.
    static HoloMap constant(complex c, Domain domain, Domain codomain);

    /// z^k on the disk, k >= 1.
    static HoloMap monomial(int k);

    /// factor * prod_j (a_j - z)/(1 - conj(a_j) z); zeros in D, |factor| = 1.
    static HoloMap blaschke(std::vector<complex> zeros, complex factor = 1.0);

    /// a_0 + a_1 z + ... with sum |a_n| <= 1 (and not a unimodular constant).
    static HoloMap bounded_polynomial(std::vector<complex> coeffs);

    /// Lens map T((T z)^s) on the disk, 0 < s < 1, principal power.
    static HoloMap lens(double s);

    /// a z + b on the half-plane, a > 0, Re b >= 0.
    static HoloMap affine(double a, complex b);

    /// 1/z on the half-plane.
    static HoloMap reciprocal();

    /// exp((T z)^4) on the half-plane.
    static HoloMap exp_quartic();

    /// Cayley transform as a map from the given side (Disk or HalfPlane).
    static HoloMap cayley_map(Domain from);

    /// E(z) = exp(-pi z) from the half-plane into the disk.
    static HoloMap exp_map_map();

    /// chain[0] applied last: compose({f, g}) is f after g.
    static HoloMap compose(std::vector<HoloMap> chain);

    /// T o inner o T on the opposite side; inner must be a self-map.
    static HoloMap cayley_conjugate(HoloMap inner);

    Domain domain() const { return domain_; }
    Domain codomain() const { return codomain_; }

    /// Throws DomainMismatch when z is outside the open domain.
    complex evaluate(complex z) const;

    /// Round-trippable descriptor, e.g. "blaschke:0.5,0.3+0.1i" or
    /// "tconj(expquartic)" or "affine:0.5,0|reciprocal".
    std::string descriptor() const;

private:
    struct IdentityDesc {};
    struct ConstantDesc { complex c; };
    struct MonomialDesc { int k; };
    struct BlaschkeDesc { std::vector<complex> zeros; complex factor; };
    struct PolyDesc { std::vector<complex> coeffs; };
    struct LensDesc { double s; };
    struct AffineDesc { double a; complex b; };
    struct ReciprocalDesc {};
    struct ExpQuarticDesc {};
    struct CayleyDesc {};
    struct ExpMapDesc {};
    struct ComposeDesc { std::vector<HoloMap> chain; };
    struct ConjugateDesc { std::shared_ptr<const HoloMap> inner; };

    using Desc = std::variant<IdentityDesc, ConstantDesc, MonomialDesc, BlaschkeDesc,
                              PolyDesc, LensDesc, AffineDesc, ReciprocalDesc,
                              ExpQuarticDesc, CayleyDesc, ExpMapDesc, ComposeDesc,
                              ConjugateDesc>;

    HoloMap(Desc desc, Domain domain, Domain codomain)
        : desc_(std::move(desc)), domain_(domain), codomain_(codomain) {}

    Desc desc_;
    Domain domain_;
    Domain codomain_;
};

/// Parses a descriptor string. `domain_hint` fixes the domain of the overall
/// map, which disambiguates "identity", "constant:...", "cayley" and fixes
/// how composition chains type-check. Throws UnknownSymbol on anything not
/// in the catalog or not certified.
HoloMap parse_map(const std::string& text, Domain domain_hint);

enum class TransferKind { ComposeWithT, ComposeWithE, ConjugateByT };

/// ComposeWithT: m o T from the opposite side. ComposeWithE: m o E from the
/// half-plane (m must start on the disk). ConjugateByT: T o m o T for
/// self-maps. Throws IncompatibleChain when domains do not line up.
HoloMap transfer(const HoloMap& m, TransferKind kind);

/// Contraction audit for the pseudo-hyperbolic metrics: the ratio
/// rho(m(z), m(w)) / rho(z, w) over sampled pairs, which the Schwarz-Pick
/// inequality caps at 1. Pairs closer than min_rho are resampled to keep the
/// quotient numerically meaningful.
struct SchwarzPickReport {
    double max_ratio = 0.0;
    std::size_t pairs = 0;
    complex witness_z;
    complex witness_w;
};

SchwarzPickReport schwarz_pick_audit(const HoloMap& m, std::size_t pairs,
                                     std::uint64_t seed, double min_rho = 1e-8);

/// Ratio |f(z)| / |f(c)| over samples of the pseudo-disk Delta(c, s); for
/// half-plane self-maps the two-sided bound [1/M_s, M_s] with
/// M_s = (1+s)/(1-s) applies.
struct HarnackReport {
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    double lower_bound = 0.0;
    double upper_bound = 0.0;
    std::size_t samples = 0;
    bool within_bounds = false;
};

HarnackReport harnack_audit(const HoloMap& f, complex c, double s,
                            std::size_t samples, std::uint64_t seed);

} // namespace carleson

#endif
