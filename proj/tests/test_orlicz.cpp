#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include <carleson/errors.hpp>
#include <carleson/orlicz.hpp>
#include <carleson/rng.hpp>

using namespace carleson;

namespace {

double fwd(const OrliczFunction& f, double x) {
    return psi(f, x, PsiDirection::Forward);
}

double inv(const OrliczFunction& f, double y) {
    return psi(f, y, PsiDirection::Inverse);
}

/// Synthetic profile with consistent running-max K values.
CarlesonProfile make_profile(double alpha, const std::vector<double>& h,
                             const std::vector<double>& rho,
                             double rel_err = 1e-3) {
    CarlesonProfile p;
    p.alpha = alpha;
    p.symbol = "synthetic";
    p.points.resize(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        ProfilePoint& pt = p.points[i];
        pt.h = h[i];
        pt.rho = rho[i];
        pt.rho_error = rel_err * rho[i];
        pt.hits = rho[i] > 0.0 ? 100000 : 0;
        pt.xi_count = 64;
        pt.reliable = pt.hits >= 200;
    }
    for (std::size_t i = h.size(); i-- > 0;) {
        double ratio = rho[i] > 0.0 ? rho[i] / std::pow(h[i], alpha + 2.0) : 0.0;
        double below = i + 1 < h.size() ? p.points[i + 1].k_value : 0.0;
        p.points[i].k_value = std::max(ratio, below);
    }
    return p;
}

}  // namespace

TEST_CASE("forward values") {
    CHECK(fwd(OrliczFunction::power(2.0), 3.0) == doctest::Approx(9.0));
    CHECK(fwd(OrliczFunction::exp_power(1.0), 2.0) ==
          doctest::Approx(std::expm1(2.0)).epsilon(1e-14));
    CHECK(fwd(OrliczFunction::power_log(2.0, 1.0), 1.0) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fwd(OrliczFunction::power_log(2.0, 0.0), 1.7) ==
          doctest::Approx(1.7 * 1.7).epsilon(1e-14));
    for (const auto& f :
         {OrliczFunction::power(2.5), OrliczFunction::exp_power(1.3),
          OrliczFunction::power_log(2.0, 1.5)}) {
        CHECK(fwd(f, 0.0) == 0.0);
        CHECK(inv(f, 0.0) == 0.0);
    }
}

TEST_CASE("inverses round-trip") {
    CHECK(inv(OrliczFunction::power(2.0), 16.0) == doctest::Approx(4.0));
    for (const auto& f :
         {OrliczFunction::power(2.5), OrliczFunction::exp_power(1.0),
          OrliczFunction::exp_power(2.0), OrliczFunction::power_log(2.0, 1.0),
          OrliczFunction::power_log(3.0, 0.5)}) {
        for (double x : {0.3, 1.0, 3.0, 10.0}) {
            CHECK(inv(f, fwd(f, x)) == doctest::Approx(x).epsilon(1e-10));
        }
    }
}

TEST_CASE("negative arguments are rejected") {
    auto f = OrliczFunction::power(2.0);
    CHECK_THROWS_AS(psi(f, -1.0, PsiDirection::Forward), NegativeInput);
    CHECK_THROWS_AS(psi(f, -1e-9, PsiDirection::Inverse), NegativeInput);
}

TEST_CASE("parameter certification") {
    CHECK_THROWS_AS(OrliczFunction::power(1.0), CertificationError);
    CHECK_THROWS_AS(OrliczFunction::power(0.5), CertificationError);
    CHECK_THROWS_AS(OrliczFunction::exp_power(0.99), CertificationError);
    CHECK_THROWS_AS(OrliczFunction::power_log(1.0, 0.0), CertificationError);
    CHECK_THROWS_AS(OrliczFunction::power_log(2.0, -0.1), CertificationError);
}

TEST_CASE("descriptor parsing") {
    auto p = parse_orlicz("power:2");
    CHECK(p.kind() == OrliczKind::Power);
    CHECK(p.exponent() == 2.0);
    auto e = parse_orlicz("exppower:1.5");
    CHECK(e.kind() == OrliczKind::ExpPower);
    CHECK(e.exponent() == 1.5);
    auto l = parse_orlicz("powerlog:2,1");
    CHECK(l.kind() == OrliczKind::PowerLog);
    CHECK(l.exponent() == 2.0);
    CHECK(l.log_exponent() == 1.0);
    for (const auto& f : {p, e, l}) {
        auto back = parse_orlicz(f.descriptor());
        CHECK(back.kind() == f.kind());
        CHECK(back.exponent() == f.exponent());
        CHECK(back.log_exponent() == f.log_exponent());
    }
    CHECK_THROWS_AS(parse_orlicz("power:1"), UnknownSymbol);
    CHECK_THROWS_AS(parse_orlicz("power"), UnknownSymbol);
    CHECK_THROWS_AS(parse_orlicz("nope:1"), UnknownSymbol);
    CHECK_THROWS_AS(parse_orlicz("power:abc"), UnknownSymbol);
    CHECK_THROWS_AS(parse_orlicz("powerlog:2"), UnknownSymbol);
}

TEST_CASE("convexity and growth") {
    Rng rng(99, 0);
    for (const auto& f :
         {OrliczFunction::power(2.5), OrliczFunction::exp_power(1.3),
          OrliczFunction::power_log(2.0, 1.5)}) {
        for (int i = 0; i < 200; ++i) {
            double x = 5.0 * rng.next_double();
            double y = 5.0 * rng.next_double();
            CHECK(fwd(f, 0.5 * (x + y)) <=
                  0.5 * (fwd(f, x) + fwd(f, y)) + 1e-12);
        }
        for (double x : {0.2, 1.0, 3.0}) {
            CHECK(fwd(f, 2.0 * x) >= 2.0 * fwd(f, x) - 1e-12);
            CHECK(fwd(f, x) < fwd(f, 1.00001 * x));
        }
    }
}

TEST_CASE("power-family indicator has a closed form") {
    const double alpha = 0.5;
    const double p = 2.0;
    std::vector<double> h{0.4, 0.1, 0.02, 0.004};
    std::vector<double> rho;
    for (double hv : h) rho.push_back(0.3 * std::pow(hv, 2.3));
    CarlesonProfile profile = make_profile(alpha, h, rho);
    CompactnessVerdict v =
        compactness_indicator(OrliczFunction::power(p), alpha, profile,
                              CriterionVariant::Necessary);
    REQUIRE(v.indicator.size() == h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        double ref = std::pow(rho[i] / std::pow(h[i], alpha + 2.0), 1.0 / p);
        CHECK(v.indicator[i] == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("sufficient dominates necessary pointwise") {
    const double alpha = 0.7;
    std::vector<double> h{0.4, 0.2, 0.1, 0.04, 0.02, 0.01, 0.004};
    std::vector<double> ratios{0.5, 0.8, 0.3, 0.6, 0.2, 0.1, 0.15};
    std::vector<double> rho;
    for (std::size_t i = 0; i < h.size(); ++i)
        rho.push_back(ratios[i] * std::pow(h[i], alpha + 2.0));
    CarlesonProfile profile = make_profile(alpha, h, rho);
    for (const auto& f :
         {OrliczFunction::power(2.0), OrliczFunction::exp_power(1.0),
          OrliczFunction::power_log(2.0, 1.0)}) {
        CompactnessVerdict nec = compactness_indicator(
            f, alpha, profile, CriterionVariant::Necessary);
        CompactnessVerdict suf = compactness_indicator(
            f, alpha, profile, CriterionVariant::Sufficient);
        for (std::size_t i = 0; i < h.size(); ++i) {
            CHECK(suf.indicator[i] >= nec.indicator[i] - 1e-12);
            // strict where the running max exceeds the pointwise ratio
            if (profile.points[i].k_value > ratios[i] + 1e-12)
                CHECK(suf.indicator[i] > nec.indicator[i]);
        }
    }
}

TEST_CASE("verdict branches") {
    const double alpha = 0.0;
    std::vector<double> h{0.4, 0.2, 0.1, 0.04, 0.02, 0.01, 0.004};
    auto power2 = OrliczFunction::power(2.0);

    SUBCASE("vanishing indicator flags compactness") {
        std::vector<double> rho;
        for (double hv : h) rho.push_back(std::pow(hv, 4.0));
        CompactnessVerdict v = compactness_indicator(
            power2, alpha, make_profile(alpha, h, rho),
            CriterionVariant::Necessary);
        CHECK(v.verdict == Verdict::CompactIndicated);
        CHECK_FALSE(v.profile_too_noisy);
        // indicator = h exactly, so the log-log trend has unit slope
        CHECK(v.trend_slope == doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("flat indicator above the floor flags non-compactness") {
        std::vector<double> rho;
        for (double hv : h) rho.push_back(0.5 * hv * hv);
        CompactnessVerdict v = compactness_indicator(
            power2, alpha, make_profile(alpha, h, rho),
            CriterionVariant::Necessary);
        CHECK(v.verdict == Verdict::NotCompactIndicated);
        for (double ind : v.indicator)
            CHECK(ind == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    }

    SUBCASE("flat but small indicator stays inconclusive") {
        std::vector<double> rho;
        for (double hv : h) rho.push_back(0.01 * hv * hv);
        CompactnessVerdict v = compactness_indicator(
            power2, alpha, make_profile(alpha, h, rho),
            CriterionVariant::Necessary);
        CHECK(v.verdict == Verdict::Inconclusive);
    }

    SUBCASE("an exact zero tail counts as a drop, not as noise") {
        std::vector<double> rho;
        for (double hv : h) rho.push_back(0.1 * hv * hv);
        rho[h.size() - 2] = 0.0;
        rho[h.size() - 1] = 0.0;
        CompactnessVerdict v = compactness_indicator(
            power2, alpha, make_profile(alpha, h, rho),
            CriterionVariant::Necessary);
        CHECK(v.indicator.back() == 0.0);
        CHECK_FALSE(v.profile_too_noisy);
        CHECK(v.verdict == Verdict::CompactIndicated);
    }

    SUBCASE("noisy small-h data forces inconclusive") {
        std::vector<double> rho;
        for (double hv : h) rho.push_back(0.5 * hv * hv);
        CarlesonProfile profile = make_profile(alpha, h, rho);
        profile.points.back().rho_error = 0.3 * profile.points.back().rho;
        CompactnessVerdict v = compactness_indicator(
            power2, alpha, profile, CriterionVariant::Necessary);
        CHECK(v.profile_too_noisy);
        CHECK(v.verdict == Verdict::Inconclusive);
    }

    SUBCASE("unreliable points are left out of the trend fit") {
        std::vector<double> rho;
        for (double hv : h) rho.push_back(0.5 * hv * hv);
        CarlesonProfile profile = make_profile(alpha, h, rho);
        for (auto& pt : profile.points) {
            pt.hits = 10;
            pt.reliable = false;
        }
        CompactnessVerdict v = compactness_indicator(
            power2, alpha, profile, CriterionVariant::Necessary);
        CHECK(std::isnan(v.trend_slope));
        CHECK(v.verdict == Verdict::NotCompactIndicated);
    }
}

TEST_CASE("grid validation") {
    auto power2 = OrliczFunction::power(2.0);
    CHECK_THROWS_AS(
        compactness_indicator(power2, 0.0, make_profile(0.0, {0.4}, {0.1}),
                              CriterionVariant::Necessary),
        InvalidGrid);
    CHECK_THROWS_AS(
        compactness_indicator(
            power2, 0.0,
            make_profile(0.0, {0.4, 0.1, 0.02}, {0.1, 0.01, 0.001}),
            CriterionVariant::Necessary),
        InvalidGrid);
}
