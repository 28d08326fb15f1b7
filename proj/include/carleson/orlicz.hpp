#pragma once

#include <string>
#include <vector>

#include <carleson/pullback.hpp>

/// Orlicz-function catalog and the finite-grid compactness indicator for
/// composition operators built from a window-measure profile.

namespace carleson {

enum class OrliczKind { Power, ExpPower, PowerLog };

enum class PsiDirection { Forward, Inverse };

/// A convex Orlicz function Psi with Psi(0) = 0 and Psi(x)/x -> infinity:
///   Power(p)       : x^p,                      p > 1
///   ExpPower(q)    : e^{x^q} - 1,              q >= 1
///   PowerLog(p, a) : x^p log(e - 1 + x)^a,     p > 1, a >= 0
/// Constructors throw CertificationError when a parameter leaves the range
/// that keeps those properties.
class OrliczFunction {
  public:
    static OrliczFunction power(double p);
    static OrliczFunction exp_power(double q);
    static OrliczFunction power_log(double p, double a);

    OrliczKind kind() const { return kind_; }
    /// First parameter (p for Power/PowerLog, q for ExpPower).
    double exponent() const { return exponent_; }
    /// Log exponent a; zero except for PowerLog.
    double log_exponent() const { return log_exponent_; }

    /// Round-trippable name: "power:2", "exppower:1", "powerlog:2,1".
    std::string descriptor() const;

  private:
    OrliczFunction(OrliczKind kind, double exponent, double log_exponent)
        : kind_(kind), exponent_(exponent), log_exponent_(log_exponent) {}

    OrliczKind kind_;
    double exponent_;
    double log_exponent_;
};

/// Parses a catalog descriptor; throws UnknownSymbol when the name or its
/// parameters do not resolve.
OrliczFunction parse_orlicz(const std::string& text);

/// Psi(x) or Psi^{-1}(x); requires x >= 0 (NegativeInput otherwise).
/// Inverses are closed-form for Power and ExpPower and computed by
/// bracketed bisection for PowerLog; forward/inverse round-trip to 1e-10
/// relative.
double psi(const OrliczFunction& f, double x, PsiDirection direction);

enum class CriterionVariant { Necessary, Sufficient };

enum class Verdict { CompactIndicated, NotCompactIndicated, Inconclusive };

/// Desk-scale conventions that turn a finite indicator sequence into a
/// verdict. They encode "the limit looks like 0" / "stays away from 0";
/// they are configuration, not mathematics.
struct VerdictThresholds {
    /// CompactIndicated: indicator falls by at least this factor from the
    /// largest h to the smallest...
    double drop_factor = 10.0;
    /// ...and the final value sits below this level.
    double compact_level = 0.05;
    /// NotCompactIndicated: indicator stays at or above this level across
    /// the last decade of h.
    double floor_level = 0.2;
    /// Profile noise gate: relative rho error above this at the small-h
    /// end flags the profile too noisy and forces Inconclusive.
    double noise_rel = 0.25;
};

struct CompactnessVerdict {
    CriterionVariant variant = CriterionVariant::Necessary;
    double alpha = 0.0;
    std::string orlicz;
    std::string symbol;
    std::vector<double> h;
    /// Necessary: Psi^{-1}(1/h^{alpha+2}) / Psi^{-1}(1/rho(h));
    /// Sufficient: Psi^{-1}(1/h^{alpha+2}) / Psi^{-1}(1/(h^{alpha+2}K(h))).
    /// rho(h) = 0 (window eventually missed) gives indicator 0.
    std::vector<double> indicator;
    /// Log-log slope of the indicator over reliable positive entries.
    double trend_slope = 0.0;
    double trend_slope_err = 0.0;
    /// Small-h rho error bars exceeded thresholds.noise_rel; the verdict
    /// below is then Inconclusive regardless of the indicator trend.
    bool profile_too_noisy = false;
    Verdict verdict = Verdict::Inconclusive;
    VerdictThresholds thresholds;
};

/// Evaluates the compactness indicator over the profile grid and applies
/// the verdict conventions. Requires the profile's h grid to span at least
/// two decades (InvalidGrid otherwise).
CompactnessVerdict compactness_indicator(const OrliczFunction& psi_fn,
                                         double alpha,
                                         const CarlesonProfile& profile,
                                         CriterionVariant variant,
                                         const VerdictThresholds& thresholds = {});

}  // namespace carleson
