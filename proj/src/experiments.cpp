#include <carleson/experiments.hpp>

#include <cmath>
#include <functional>
#include <numbers>
#include <utility>

#include <carleson/errors.hpp>
#include <carleson/measures.hpp>
#include <carleson/orlicz.hpp>
#include <carleson/pullback.hpp>
#include <carleson/selfmaps.hpp>

namespace carleson {
namespace {

double entry_double(const ConfigEntry& e) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(e.value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != e.value.size()) {
        throw ParseError("line " + std::to_string(e.line) +
                         ": invalid number for key \"" + e.key + "\": \"" +
                         e.value + "\"");
    }
    return v;
}

std::uint64_t entry_u64(const ConfigEntry& e) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        // stoull wraps negative input instead of failing; reject it here
        if (e.value.find('-') != std::string::npos) throw std::invalid_argument(e.value);
        v = std::stoull(e.value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != e.value.size()) {
        throw ParseError("line " + std::to_string(e.line) +
                         ": invalid integer for key \"" + e.key + "\": \"" +
                         e.value + "\"");
    }
    return v;
}

int entry_int(const ConfigEntry& e) {
    double v = entry_double(e);
    int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) {
        throw ParseError("line " + std::to_string(e.line) +
                         ": key \"" + e.key + "\" needs an integer");
    }
    return i;
}

IntegrationConfig integration_config(const ExperimentConfig& cfg) {
    IntegrationConfig icfg;
    icfg.sample_count = cfg.samples;
    icfg.max_subdivisions = cfg.max_subdivisions;
    icfg.rel_tol = cfg.rel_tol;
    icfg.abs_tol = cfg.abs_tol;
    icfg.seed = cfg.seed;
    return icfg;
}

CZConfig cz_config(const ExperimentConfig& cfg) {
    CZConfig cz;
    cz.n_max = cfg.n_max;
    cz.refine_steps = cfg.refine_steps;
    cz.sample_count = cfg.samples;
    cz.seed = cfg.seed;
    return cz;
}

TailAuditKind parse_tail_kind(const std::string& name) {
    if (name == "starting") return TailAuditKind::Starting;
    if (name == "global") return TailAuditKind::Global;
    if (name == "reduction") return TailAuditKind::Reduction;
    if (name == "theoclef") return TailAuditKind::TheoClef;
    throw ParseError("unknown tail_kind \"" + name +
                     "\" (expected starting|global|reduction|theoclef)");
}

std::string grid_csv_comment(const char* name, const GridSpec& g) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "# %s = [%.17g, %.17g] x %zu\n", name, g.lo,
                  g.hi, g.count);
    return buf;
}

// --- selftest ----------------------------------------------------------------

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::vector<Check> run_selftest(const ExperimentConfig& cfg) {
    std::vector<Check> checks;
    auto add = [&](const std::string& name,
                   const std::function<std::pair<bool, std::string>()>& fn) {
        Check c;
        c.name = name;
        try {
            auto [pass, detail] = fn();
            c.pass = pass;
            c.detail = detail;
        } catch (const std::exception& e) {
            c.pass = false;
            c.detail = std::string("exception: ") + e.what();
        }
        checks.push_back(std::move(c));
    };

    IntegrationConfig quad;
    quad.method = IntegrationMethod::AdaptiveQuadrature;
    IntegrationConfig mc;
    mc.method = IntegrationMethod::MonteCarlo;
    mc.sample_count = 200000;
    mc.seed = cfg.seed;
    // MC error floor at this budget is ~1e-4; quadrature-grade tolerances
    // would trip the convergence guard.
    mc.rel_tol = 0.05;
    mc.abs_tol = 1e-4;

    add("window_closed_form", [&] {
        double worst = 0.0;
        for (double alpha : {-0.5, 0.0, 1.0, 2.5}) {
            for (double h : {0.3, 0.1}) {
                Estimate est =
                    integrate(bergman_a(alpha), make_window(1.0, h), quad);
                double ref = window_measure_closed_form(alpha, h);
                worst = std::max(worst, std::abs(est.value - ref) / ref);
            }
        }
        return std::make_pair(worst < 1e-6, "max rel diff " + num(worst));
    });

    add("tau_total_mass", [&] {
        double worst = 0.0;
        for (double alpha : {0.0, 1.5}) {
            Estimate est =
                integrate(tau_t(alpha), make_entire(Domain::HalfPlane), quad);
            worst = std::max(worst, std::abs(est.value - 1.0));
        }
        return std::make_pair(worst < 1e-8, "max |mass-1| " + num(worst));
    });

    add("boundary_strip_box_mass", [&] {
        double worst = 0.0;
        for (double alpha : {0.0, 1.5}) {
            Estimate est = integrate(sigma_l(alpha), make_omega(), quad);
            double ref = std::pow(1.0 - std::exp(-4.0 * std::numbers::pi),
                                  alpha + 1.0);
            worst = std::max(worst, std::abs(est.value - ref));
        }
        return std::make_pair(worst < 1e-10, "max abs diff " + num(worst));
    });

    add("pushforward_rect", [&] {
        Region rect = make_half_plane_rect({0.3, 1.1, -0.4, 0.5});
        Estimate q = integrate(tau_t(0.5), rect, quad);
        Estimate m = integrate(tau_t(0.5), rect, mc);
        double gap = std::abs(q.value - m.value);
        double tol = 5.0 * m.error_bar + 1e-12;
        return std::make_pair(gap <= tol,
                              "gap " + num(gap) + " tol " + num(tol));
    });

    add("window_oracle_mc", [&] {
        HoloMap id = parse_map("identity", Domain::Disk);
        Estimate est = pullback_window_measure(id, 0.7, 1.0, 0.15, mc);
        double ref = window_measure_closed_form(0.7, 0.15);
        double gap = std::abs(est.value - ref);
        double tol = 5.0 * est.error_bar + 1e-12;
        return std::make_pair(gap <= tol,
                              "gap " + num(gap) + " tol " + num(tol));
    });

    add("profile_monotone", [&] {
        HoloMap id = parse_map("identity", Domain::Disk);
        CarlesonProfile p = carleson_profile(
            id, 0.0, {0.32, 0.24, 0.18, 0.12, 0.08}, 32, mc);
        bool ok = !p.eventually_zero;
        for (std::size_t i = 1; i < p.points.size(); ++i) {
            ok = ok && p.points[i].rho <= p.points[i - 1].rho;
            ok = ok && p.points[i].k_value <= p.points[i - 1].k_value;
        }
        return std::make_pair(ok, "rho and K ordered along decreasing h");
    });

    add("scaling_exact_anchor", [&] {
        HoloMap id = parse_map("identity", Domain::Disk);
        ScalingReport r = scaling_experiment(id, 0.0, 1.0, {0.2, 0.1},
                                             {0.2, 0.4, 0.6, 0.8}, mc);
        bool ok = true;
        for (const ScalingRow& row : r.rows) {
            if (row.degenerate) continue;
            ok = ok && row.cells.back().ratio == 1.0;
        }
        return std::make_pair(ok, "anchor column ratio is exactly 1");
    });

    add("orlicz_roundtrip", [&] {
        double worst = 0.0;
        for (const char* d : {"power:2", "exppower:1", "powerlog:2,1"}) {
            OrliczFunction f = parse_orlicz(d);
            double y = psi(f, 3.0, PsiDirection::Forward);
            double x = psi(f, y, PsiDirection::Inverse);
            worst = std::max(worst, std::abs(x - 3.0) / 3.0);
        }
        double sqrt16 = psi(parse_orlicz("power:2"), 16.0, PsiDirection::Inverse);
        worst = std::max(worst, std::abs(sqrt16 - 4.0));
        return std::make_pair(worst < 1e-10, "max rel diff " + num(worst));
    });

    add("stopping_constant", [&] {
        CZConfig cz;
        cz.n_max = 4;
        CZResult low =
            cz_decompose(parse_map("constant:0.5", Domain::HalfPlane), cz);
        bool ok = low.squares.empty() && low.residual_area == 0.0;
        bool threw = false;
        try {
            cz_decompose(parse_map("constant:2", Domain::HalfPlane), cz);
        } catch (const RootAverageExceedsOne&) {
            threw = true;
        }
        return std::make_pair(ok && threw,
                              "constant below 1 clean, above 1 rejected");
    });

    add("quartic_identity", [&] {
        RemarkReport r = remark_counterexample({0.25}, cz_config(cfg));
        double gap = std::abs(r.quartic_identity + 1.0 / 60.0);
        return std::make_pair(gap < 1e-10, "abs diff " + num(gap));
    });

    add("determinism_repeat", [&] {
        HoloMap id = parse_map("identity", Domain::Disk);
        Estimate a = pullback_window_measure(id, 0.0, 1.0, 0.2, mc);
        Estimate b = pullback_window_measure(id, 0.0, 1.0, 0.2, mc);
        bool ok = a.value == b.value && a.error_bar == b.error_bar;
        return std::make_pair(ok, "identical bits across reruns");
    });

    add("report_roundtrip", [&] {
        Json j = Json::object();
        j["x"] = 0.1;
        j["nan"] = std::numeric_limits<double>::quiet_NaN();
        j["list"] = Json::array({Json(1), Json(2.5), Json("s")});
        std::string once = canonical_json(j);
        std::string twice = canonical_json(Json::parse(once));
        return std::make_pair(once == twice, "parse(dump) is stable");
    });

    return checks;
}

}  // namespace

std::vector<double> log_grid(double from, double to, std::size_t count) {
    if (count < 2) throw InvalidGrid("log grid needs at least 2 points");
    if (!(from > 0.0) || !(to > 0.0))
        throw InvalidGrid("log grid needs positive endpoints");
    std::vector<double> g(count);
    double lf = std::log(from), lt = std::log(to);
    for (std::size_t i = 0; i < count; ++i) {
        double w = static_cast<double>(i) / (count - 1);
        g[i] = std::exp(lf + w * (lt - lf));
    }
    g.front() = from;
    g.back() = to;
    return g;
}

std::vector<double> linear_grid(double from, double to, std::size_t count) {
    if (count < 2) throw InvalidGrid("linear grid needs at least 2 points");
    std::vector<double> g(count);
    for (std::size_t i = 0; i < count; ++i) {
        double w = static_cast<double>(i) / (count - 1);
        g[i] = from + w * (to - from);
    }
    g.front() = from;
    g.back() = to;
    return g;
}

void apply_entries(ExperimentConfig& cfg,
                   const std::vector<ConfigEntry>& entries) {
    for (const ConfigEntry& e : entries) {
        if (e.key == "alpha") cfg.alpha = entry_double(e);
        else if (e.key == "symbol") cfg.symbol = e.value;
        else if (e.key == "orlicz") cfg.orlicz = e.value;
        else if (e.key == "h_min") cfg.h.lo = entry_double(e);
        else if (e.key == "h_max") cfg.h.hi = entry_double(e);
        else if (e.key == "h_count") cfg.h.count = entry_u64(e);
        else if (e.key == "eps_min") cfg.eps.lo = entry_double(e);
        else if (e.key == "eps_max") cfg.eps.hi = entry_double(e);
        else if (e.key == "eps_count") cfg.eps.count = entry_u64(e);
        else if (e.key == "lambda_min") cfg.lambda.lo = entry_double(e);
        else if (e.key == "lambda_max") cfg.lambda.hi = entry_double(e);
        else if (e.key == "lambda_count") cfg.lambda.count = entry_u64(e);
        else if (e.key == "t_min") cfg.t.lo = entry_double(e);
        else if (e.key == "t_max") cfg.t.hi = entry_double(e);
        else if (e.key == "t_count") cfg.t.count = entry_u64(e);
        else if (e.key == "xi_count") cfg.xi_count = entry_u64(e);
        else if (e.key == "tail_kind") cfg.tail_kind = e.value;
        else if (e.key == "c1") cfg.c1 = entry_double(e);
        else if (e.key == "n_max") cfg.n_max = entry_int(e);
        else if (e.key == "refine_steps") cfg.refine_steps = entry_int(e);
        else if (e.key == "samples") cfg.samples = entry_u64(e);
        else if (e.key == "seed") cfg.seed = entry_u64(e);
        else if (e.key == "rel_tol") cfg.rel_tol = entry_double(e);
        else if (e.key == "abs_tol") cfg.abs_tol = entry_double(e);
        else if (e.key == "max_subdivisions")
            cfg.max_subdivisions = entry_u64(e);
        else if (e.key == "alarm_threshold")
            cfg.alarm_threshold = entry_double(e);
        else if (e.key == "out") cfg.out = e.value;
        else if (e.key == "format") cfg.format = e.value;
        else
            throw ParseError("line " + std::to_string(e.line) +
                             ": unknown key \"" + e.key + "\"");
    }
}

Json config_to_json(const ExperimentConfig& cfg) {
    Json j = Json::object();
    j["command"] = cfg.command;
    j["alpha"] = cfg.alpha;
    j["symbol"] = cfg.symbol;
    j["orlicz"] = cfg.orlicz;
    auto grid = [](const GridSpec& g) {
        Json jg = Json::object();
        jg["min"] = g.lo;
        jg["max"] = g.hi;
        jg["count"] = static_cast<std::uint64_t>(g.count);
        return jg;
    };
    j["h"] = grid(cfg.h);
    j["eps"] = grid(cfg.eps);
    j["lambda"] = grid(cfg.lambda);
    j["t"] = grid(cfg.t);
    j["xi_count"] = static_cast<std::uint64_t>(cfg.xi_count);
    j["tail_kind"] = cfg.tail_kind;
    j["c1"] = cfg.c1;
    j["n_max"] = static_cast<std::int64_t>(cfg.n_max);
    j["refine_steps"] = static_cast<std::int64_t>(cfg.refine_steps);
    j["samples"] = cfg.samples;
    j["seed"] = cfg.seed;
    j["rel_tol"] = cfg.rel_tol;
    j["abs_tol"] = cfg.abs_tol;
    j["max_subdivisions"] = static_cast<std::uint64_t>(cfg.max_subdivisions);
    j["alarm_threshold"] = cfg.alarm_threshold;
    j["format"] = cfg.format;
    return j;
}

ExecutionResult execute(const ExperimentConfig& cfg) {
    if (cfg.format != "json" && cfg.format != "csv")
        throw ParseError("format must be json or csv, got \"" + cfg.format +
                         "\"");
    const AuditGates gates;
    ExecutionResult result;
    Json payload = Json::object();
    payload["tool"] = "carleson-lab";
    payload["command"] = cfg.command;
    payload["config"] = config_to_json(cfg);
    payload["seed"] = cfg.seed;

    std::string csv_body;

    if (cfg.command == "profile") {
        HoloMap phi = parse_map(cfg.symbol, Domain::Disk);
        CarlesonProfile p =
            carleson_profile(phi, cfg.alpha,
                             log_grid(cfg.h.hi, cfg.h.lo, cfg.h.count),
                             cfg.xi_count, integration_config(cfg));
        payload["report"] = to_json(p);
        csv_body = to_csv(p);
    } else if (cfg.command == "scaling") {
        HoloMap phi = parse_map(cfg.symbol, Domain::Disk);
        ScalingReport r = scaling_experiment(
            phi, cfg.alpha, 1.0, log_grid(cfg.h.hi, cfg.h.lo, cfg.h.count),
            linear_grid(cfg.eps.lo, cfg.eps.hi, cfg.eps.count),
            integration_config(cfg), cfg.alarm_threshold);
        payload["report"] = to_json(r);
        csv_body = to_csv(r);
        for (const ScalingRow& row : r.rows)
            for (const ScalingCell& c : row.cells)
                if (c.alarm) result.exit_code = 2;
    } else if (cfg.command == "tail") {
        TailAuditKind kind = parse_tail_kind(cfg.tail_kind);
        Domain hint = (kind == TailAuditKind::Starting ||
                       kind == TailAuditKind::Reduction)
                          ? Domain::Disk
                          : Domain::HalfPlane;
        HoloMap m = parse_map(cfg.symbol, hint);
        TailAuditReport r = tail_inequality_audit(
            kind, m, cfg.alpha,
            log_grid(cfg.lambda.lo, cfg.lambda.hi, cfg.lambda.count),
            integration_config(cfg), cfg.c1);
        payload["report"] = to_json(r);
        csv_body = to_csv(r);
        if (std::isfinite(r.trend_slope) && r.trend_slope > gates.tail_slope)
            result.exit_code = 2;
    } else if (cfg.command == "czd") {
        HoloMap f = parse_map(cfg.symbol, Domain::HalfPlane);
        CZConfig cz = cz_config(cfg);
        CZResult r = cz_decompose(f, cz);
        PrecisionReport prec = precision_regions(f, r, cfg.alpha, cz);
        Json rep = Json::object();
        rep["decomposition"] = to_json(r);
        rep["precision"] = to_json(prec);
        payload["report"] = std::move(rep);
        csv_body = to_csv(r);
    } else if (cfg.command == "remark") {
        RemarkReport r = remark_counterexample(
            linear_grid(cfg.t.lo, cfg.t.hi, cfg.t.count), cz_config(cfg));
        payload["report"] = to_json(r);
        csv_body = to_csv(r);
        double target = -1.0 / 60.0;
        bool slope_ok = std::abs(r.tau_prime - target) <=
                        gates.remark_slope_rel * std::abs(target);
        if (!slope_ok || !r.witness_found) result.exit_code = 2;
    } else if (cfg.command == "compact") {
        HoloMap phi = parse_map(cfg.symbol, Domain::Disk);
        OrliczFunction orl = parse_orlicz(cfg.orlicz);
        CarlesonProfile p =
            carleson_profile(phi, cfg.alpha,
                             log_grid(cfg.h.hi, cfg.h.lo, cfg.h.count),
                             cfg.xi_count, integration_config(cfg));
        CompactnessVerdict nec = compactness_indicator(
            orl, cfg.alpha, p, CriterionVariant::Necessary);
        CompactnessVerdict suf = compactness_indicator(
            orl, cfg.alpha, p, CriterionVariant::Sufficient);
        Json rep = Json::object();
        rep["profile"] = to_json(p);
        rep["necessary"] = to_json(nec);
        rep["sufficient"] = to_json(suf);
        payload["report"] = std::move(rep);
        csv_body = "h,necessary,sufficient\n";
        for (std::size_t i = 0; i < nec.h.size(); ++i) {
            char buf[120];
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", nec.h[i],
                          nec.indicator[i], suf.indicator[i]);
            csv_body += buf;
        }
    } else if (cfg.command == "selftest") {
        std::vector<Check> checks = run_selftest(cfg);
        Json arr = Json::array();
        bool all = true;
        csv_body = "check,pass,detail\n";
        for (const Check& c : checks) {
            Json jc = Json::object();
            jc["name"] = c.name;
            jc["pass"] = c.pass;
            jc["detail"] = c.detail;
            arr.push_back(std::move(jc));
            all = all && c.pass;
            csv_body += c.name + "," + (c.pass ? "1" : "0") + ",\"" +
                        c.detail + "\"\n";
        }
        // same nesting as every other command: payload["report"] holds the
        // command-specific content
        Json rep = Json::object();
        rep["checks"] = std::move(arr);
        rep["all_passed"] = all;
        payload["report"] = std::move(rep);
        if (!all) result.exit_code = 2;
    } else {
        throw ParseError("unknown command \"" + cfg.command + "\"");
    }

    finalize_report(payload);
    result.payload = payload;

    if (cfg.format == "json") {
        result.text = canonical_json(payload) + "\n";
    } else {
        std::string head;
        head += "# command = " + cfg.command + "\n";
        head += "# alpha = " + std::to_string(cfg.alpha) + "\n";
        head += "# symbol = " + cfg.symbol + "\n";
        head += "# orlicz = " + cfg.orlicz + "\n";
        head += grid_csv_comment("h", cfg.h);
        head += grid_csv_comment("eps", cfg.eps);
        head += grid_csv_comment("lambda", cfg.lambda);
        head += grid_csv_comment("t", cfg.t);
        head += "# xi_count = " + std::to_string(cfg.xi_count) + "\n";
        head += "# tail_kind = " + cfg.tail_kind + "\n";
        head += "# samples = " + std::to_string(cfg.samples) + "\n";
        head += "# seed = " + std::to_string(cfg.seed) + "\n";
        head += "# determinism_hash = " +
                payload["determinism_hash"].get<std::string>() + "\n";
        result.text = head + csv_body;
    }
    return result;
}

}  // namespace carleson
