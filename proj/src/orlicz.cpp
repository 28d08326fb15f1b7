#include <carleson/orlicz.hpp>

#include <cmath>
#include <limits>
#include <numbers>

#include <carleson/errors.hpp>
#include <carleson/stats.hpp>

namespace carleson {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double psi_forward(const OrliczFunction& f, double x) {
    switch (f.kind()) {
        case OrliczKind::Power:
            return std::pow(x, f.exponent());
        case OrliczKind::ExpPower:
            return std::expm1(std::pow(x, f.exponent()));
        case OrliczKind::PowerLog:
            return std::pow(x, f.exponent()) *
                   std::pow(std::log(std::numbers::e - 1.0 + x),
                            f.log_exponent());
    }
    throw Error("unreachable Orlicz kind");
}

double psi_inverse(const OrliczFunction& f, double y) {
    switch (f.kind()) {
        case OrliczKind::Power:
            return std::pow(y, 1.0 / f.exponent());
        case OrliczKind::ExpPower:
            return std::pow(std::log1p(y), 1.0 / f.exponent());
        case OrliczKind::PowerLog:
            break;
    }
    if (y == 0.0) return 0.0;
    // Psi is continuous and strictly increasing on [0, inf): bracket the
    // root, then bisect.
    double lo = 0.0;
    double hi = 1.0;
    while (psi_forward(f, hi) < y) {
        lo = hi;
        hi *= 2.0;
        if (!std::isfinite(hi)) throw NonConvergence("inverse bracket overflow");
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (psi_forward(f, mid) < y)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-15 * hi) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

OrliczFunction OrliczFunction::power(double p) {
    if (!(p > 1.0))
        throw CertificationError("Power Orlicz function needs p > 1");
    return OrliczFunction(OrliczKind::Power, p, 0.0);
}

OrliczFunction OrliczFunction::exp_power(double q) {
    if (!(q >= 1.0))
        throw CertificationError("ExpPower Orlicz function needs q >= 1");
    return OrliczFunction(OrliczKind::ExpPower, q, 0.0);
}

OrliczFunction OrliczFunction::power_log(double p, double a) {
    if (!(p > 1.0) || !(a >= 0.0))
        throw CertificationError(
            "PowerLog Orlicz function needs p > 1 and a >= 0");
    return OrliczFunction(OrliczKind::PowerLog, p, a);
}

std::string OrliczFunction::descriptor() const {
    char buf[96];
    switch (kind_) {
        case OrliczKind::Power:
            std::snprintf(buf, sizeof buf, "power:%.17g", exponent_);
            break;
        case OrliczKind::ExpPower:
            std::snprintf(buf, sizeof buf, "exppower:%.17g", exponent_);
            break;
        case OrliczKind::PowerLog:
            std::snprintf(buf, sizeof buf, "powerlog:%.17g,%.17g", exponent_,
                          log_exponent_);
            break;
    }
    return buf;
}

OrliczFunction parse_orlicz(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw UnknownSymbol("Orlicz descriptor needs name:params, got \"" +
                            text + "\"");
    std::string name = text.substr(0, colon);
    std::string args = text.substr(colon + 1);
    auto to_double = [&](const std::string& s) {
        std::size_t used = 0;
        double v;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw UnknownSymbol("bad Orlicz parameter \"" + s + "\"");
        }
        if (used != s.size())
            throw UnknownSymbol("bad Orlicz parameter \"" + s + "\"");
        return v;
    };
    try {
        if (name == "power") return OrliczFunction::power(to_double(args));
        if (name == "exppower")
            return OrliczFunction::exp_power(to_double(args));
        if (name == "powerlog") {
            auto comma = args.find(',');
            if (comma == std::string::npos)
                throw UnknownSymbol("powerlog needs two parameters");
            return OrliczFunction::power_log(
                to_double(args.substr(0, comma)),
                to_double(args.substr(comma + 1)));
        }
    } catch (const CertificationError& e) {
        throw UnknownSymbol(std::string("Orlicz descriptor rejected: ") +
                            e.what());
    }
    throw UnknownSymbol("unknown Orlicz family \"" + name + "\"");
}

double psi(const OrliczFunction& f, double x, PsiDirection direction) {
    if (x < 0.0) throw NegativeInput("Orlicz argument must be >= 0");
    return direction == PsiDirection::Forward ? psi_forward(f, x)
                                              : psi_inverse(f, x);
}

CompactnessVerdict compactness_indicator(const OrliczFunction& psi_fn,
                                         double alpha,
                                         const CarlesonProfile& profile,
                                         CriterionVariant variant,
                                         const VerdictThresholds& thresholds) {
    const auto& pts = profile.points;
    if (pts.size() < 2) throw InvalidGrid("profile needs at least two points");
    const double h_max = pts.front().h;
    const double h_min = pts.back().h;
    if (!(h_max >= 100.0 * h_min * (1.0 - 1e-12)))
        throw InvalidGrid("profile h grid must span at least two decades");

    CompactnessVerdict out;
    out.variant = variant;
    out.alpha = alpha;
    out.orlicz = psi_fn.descriptor();
    out.symbol = profile.symbol;
    out.thresholds = thresholds;

    std::vector<double> xs, ys, ws;
    for (const ProfilePoint& p : pts) {
        out.h.push_back(p.h);
        const double hpow = std::pow(p.h, alpha + 2.0);
        const double source =
            variant == CriterionVariant::Necessary ? p.rho : hpow * p.k_value;
        double ind = 0.0;
        if (source > 0.0) {
            ind = psi(psi_fn, 1.0 / hpow, PsiDirection::Inverse) /
                  psi(psi_fn, 1.0 / source, PsiDirection::Inverse);
        }
        out.indicator.push_back(ind);
        if (ind > 0.0 && p.reliable) {
            xs.push_back(std::log(p.h));
            ys.push_back(std::log(ind));
            ws.push_back(1.0);
        }
    }

    if (xs.size() >= 2) {
        LineFit fit = fit_line_weighted(xs, ys, ws);
        out.trend_slope = fit.slope;
        out.trend_slope_err = fit.slope_err;
    } else {
        out.trend_slope = kNan;
        out.trend_slope_err = kNan;
    }

    // Noise gate at the small-h end: the smallest h whose window still
    // collects mass decides; an exact zero tail is not noise.
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
        if (it->rho > 0.0) {
            out.profile_too_noisy =
                it->rho_error > thresholds.noise_rel * it->rho;
            break;
        }
    }

    const double first = out.indicator.front();
    const double last = out.indicator.back();
    double floor_last_decade = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].h <= 10.0 * h_min)
            floor_last_decade = std::min(floor_last_decade, out.indicator[i]);
    }

    if (out.profile_too_noisy) {
        out.verdict = Verdict::Inconclusive;
    } else if (first >= thresholds.drop_factor * last &&
               last < thresholds.compact_level) {
        out.verdict = Verdict::CompactIndicated;
    } else if (floor_last_decade >= thresholds.floor_level) {
        out.verdict = Verdict::NotCompactIndicated;
    } else {
        out.verdict = Verdict::Inconclusive;
    }
    return out;
}

}  // namespace carleson
