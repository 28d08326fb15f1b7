#ifndef CARLESON_ERRORS_HPP
#define CARLESON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace carleson {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A point lies outside the domain an operation requires.
class DomainMismatch : public Error {
public:
    using Error::Error;
};

/// Cayley transform evaluated at -1.
class PoleAtMinusOne : public DomainMismatch {
public:
    PoleAtMinusOne() : DomainMismatch("cayley: pole at z = -1") {}
};

/// log_map argument outside the annulus e^{-2*pi} < |z| < 1.
class OutsideAnnulus : public DomainMismatch {
public:
    using DomainMismatch::DomainMismatch;
};

/// log_map argument on the negative real axis, where the branch is cut.
class OnBranchSlit : public DomainMismatch {
public:
    using DomainMismatch::DomainMismatch;
};

/// Malformed dyadic index (j or k outside [0, 2^n)).
class InvalidIndex : public Error {
public:
    using Error::Error;
};

/// Pseudo-distance evaluated where the formula degenerates
/// (boundary points, or a + conj(b) = 0 on the half-plane).
class SingularPoint : public Error {
public:
    using Error::Error;
};

/// Map evaluation produced a non-finite value; certified maps are bounded,
/// so this signals a bug rather than a legitimate overflow.
class NumericOverflow : public Error {
public:
    using Error::Error;
};

/// Integration budget exhausted before tolerances were met.
class NonConvergence : public Error {
public:
    using Error::Error;
};

/// Quadrature internals failed (non-finite integrand values).
class QuadratureFailure : public Error {
public:
    using Error::Error;
};

/// Integral of a measure with infinite total mass over an unbounded region.
class UnboundedRegionWithInfiniteMass : public Error {
public:
    using Error::Error;
};

/// Density ratio requested where the denominator vanishes.
class SingularRatio : public Error {
public:
    using Error::Error;
};

/// Composition chain whose domains and codomains do not line up.
class IncompatibleChain : public Error {
public:
    using Error::Error;
};

/// Map parameters violate the self-map certificate
/// (Blaschke zero outside D, coefficient sum above 1, and so on).
class CertificationError : public Error {
public:
    using Error::Error;
};

/// Query point sits exactly on a dyadic grid line and the caller asked
/// for strict adjudication instead of the half-open convention.
class OnDyadicBoundary : public Error {
public:
    using Error::Error;
};

/// Root average E_0|f| exceeds 1, so the stopping decomposition is undefined.
class RootAverageExceedsOne : public Error {
public:
    using Error::Error;
};

/// Tail audit right-hand side indistinguishable from zero.
class DegenerateRHS : public Error {
public:
    using Error::Error;
};

/// Orlicz function argument outside [0, infinity).
class NegativeInput : public Error {
public:
    using Error::Error;
};

/// Configuration text failed to parse; message carries line numbers.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Symbol or map descriptor string not recognized or not certified.
class UnknownSymbol : public Error {
public:
    using Error::Error;
};

/// Grid endpoints empty, unordered, or outside their mandated range.
class InvalidGrid : public Error {
public:
    using Error::Error;
};

} // namespace carleson

#endif
