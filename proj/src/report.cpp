#include <carleson/report.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>

namespace carleson {
namespace {

std::string fmt_double(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void escape_string(const std::string& s, std::string& out) {
    out.push_back('"');
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x",
                                  static_cast<unsigned>(c));
                    out += buf;
                } else {
                    out.push_back(c);
                }
        }
    }
    out.push_back('"');
}

void dump(const Json& value, std::string& out) {
    switch (value.type()) {
        case Json::value_t::null:
            out += "null";
            break;
        case Json::value_t::boolean:
            out += value.get<bool>() ? "true" : "false";
            break;
        case Json::value_t::number_integer: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%lld",
                          static_cast<long long>(value.get<std::int64_t>()));
            out += buf;
            break;
        }
        case Json::value_t::number_unsigned: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%llu",
                          static_cast<unsigned long long>(
                              value.get<std::uint64_t>()));
            out += buf;
            break;
        }
        case Json::value_t::number_float:
            out += fmt_double(value.get<double>());
            break;
        case Json::value_t::string:
            escape_string(value.get<std::string>(), out);
            break;
        case Json::value_t::array: {
            out.push_back('[');
            bool first = true;
            for (const auto& item : value) {
                if (!first) out.push_back(',');
                first = false;
                dump(item, out);
            }
            out.push_back(']');
            break;
        }
        case Json::value_t::object: {
            out.push_back('{');
            bool first = true;
            for (auto it = value.begin(); it != value.end(); ++it) {
                if (!first) out.push_back(',');
                first = false;
                escape_string(it.key(), out);
                out.push_back(':');
                dump(it.value(), out);
            }
            out.push_back('}');
            break;
        }
        default:
            out += "null";
            break;
    }
}

Json json_complex(complex z) {
    Json j = Json::object();
    j["re"] = z.real();
    j["im"] = z.imag();
    return j;
}

Json json_index(const DyadicIndex& l) {
    Json j = Json::object();
    j["n"] = static_cast<std::int64_t>(l.n);
    j["j"] = static_cast<std::int64_t>(l.j);
    j["k"] = static_cast<std::int64_t>(l.k);
    return j;
}

const char* kind_name(TailAuditKind k) {
    switch (k) {
        case TailAuditKind::Starting: return "starting";
        case TailAuditKind::Global: return "global";
        case TailAuditKind::Reduction: return "reduction";
        case TailAuditKind::TheoClef: return "theoclef";
    }
    return "unknown";
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::CompactIndicated: return "CompactIndicated";
        case Verdict::NotCompactIndicated: return "NotCompactIndicated";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "unknown";
}

const char* variant_name(CriterionVariant v) {
    return v == CriterionVariant::Necessary ? "necessary" : "sufficient";
}

std::string csv_cell(double v) { return fmt_double(v); }

}  // namespace

std::string canonical_json(const Json& value) {
    std::string out;
    out.reserve(4096);
    dump(value, out);
    return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hash_hex(std::uint64_t value) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(value));
    return buf;
}

bool volatile_report_key(const std::string& key) {
    return key == "timestamp" || key == "determinism_hash" ||
           key == "elapsed_seconds";
}

void finalize_report(Json& payload) {
    Json stable = Json::object();
    for (auto it = payload.begin(); it != payload.end(); ++it) {
        if (!volatile_report_key(it.key())) stable[it.key()] = it.value();
    }
    payload["determinism_hash"] = hash_hex(fnv1a64(canonical_json(stable)));

    std::time_t now = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[40];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    payload["timestamp"] = buf;
}

Json to_json(const Estimate& e) {
    Json j = Json::object();
    j["value"] = e.value;
    j["error_bar"] = e.error_bar;
    j["samples_used"] = e.samples_used;
    return j;
}

Json to_json(const CarlesonProfile& p) {
    Json j = Json::object();
    j["alpha"] = p.alpha;
    j["symbol"] = p.symbol;
    Json points = Json::array();
    for (const ProfilePoint& pt : p.points) {
        Json row = Json::object();
        row["h"] = pt.h;
        row["rho"] = pt.rho;
        row["rho_error"] = pt.rho_error;
        row["k_value"] = pt.k_value;
        row["hits"] = pt.hits;
        row["xi_count"] = static_cast<std::uint64_t>(pt.xi_count);
        row["reliable"] = pt.reliable;
        points.push_back(std::move(row));
    }
    j["points"] = std::move(points);
    j["eventually_zero"] = p.eventually_zero;
    j["samples"] = p.samples;
    j["seed"] = p.seed;
    return j;
}

Json to_json(const ScalingReport& r) {
    Json j = Json::object();
    j["alpha"] = r.alpha;
    j["symbol"] = r.symbol;
    j["xi"] = json_complex(r.xi);
    j["h_grid"] = r.h_grid;
    j["eps_grid"] = r.eps_grid;
    Json rows = Json::array();
    for (const ScalingRow& row : r.rows) {
        Json jr = Json::object();
        jr["h"] = row.h;
        jr["denominator"] = row.denominator;
        jr["denominator_error"] = row.denominator_error;
        jr["denominator_hits"] = row.denominator_hits;
        jr["degenerate"] = row.degenerate;
        Json cells = Json::array();
        for (const ScalingCell& c : row.cells) {
            Json jc = Json::object();
            jc["numerator"] = c.numerator;
            jc["numerator_error"] = c.numerator_error;
            jc["hits"] = c.hits;
            jc["ratio"] = c.ratio;
            jc["alarm"] = c.alarm;
            cells.push_back(std::move(jc));
        }
        jr["cells"] = std::move(cells);
        jr["slope"] = row.slope;
        jr["slope_err"] = row.slope_err;
        rows.push_back(std::move(jr));
    }
    j["rows"] = std::move(rows);
    j["c_emp"] = r.c_emp;
    j["alarm_threshold"] = r.alarm_threshold;
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    return j;
}

Json to_json(const TailAuditReport& r) {
    Json j = Json::object();
    j["kind"] = kind_name(r.kind);
    j["alpha"] = r.alpha;
    j["symbol"] = r.symbol;
    j["lambdas"] = r.lambdas;
    j["lhs"] = r.lhs;
    j["lhs_error"] = r.lhs_error;
    j["lhs_hits"] = r.lhs_hits;
    j["rhs"] = r.rhs;
    j["rhs_error"] = r.rhs_error;
    j["ratio"] = r.ratio;
    j["constant_emp"] = r.constant_emp;
    j["trend_slope"] = r.trend_slope;
    j["trend_slope_err"] = r.trend_slope_err;
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    return j;
}

Json to_json(const CZResult& r) {
    Json j = Json::object();
    Json squares = Json::array();
    for (const StoppingSquare& s : r.squares) {
        Json js = json_index(s.index);
        js["average"] = s.average;
        js["error"] = s.error;
        js["center_value"] = s.center_value;
        squares.push_back(std::move(js));
    }
    j["squares"] = std::move(squares);
    Json ambiguous = Json::array();
    for (const DyadicIndex& l : r.ambiguous) ambiguous.push_back(json_index(l));
    j["ambiguous"] = std::move(ambiguous);
    j["ambiguous_area"] = r.ambiguous_area;
    j["residual_area"] = r.residual_area;
    j["residual_count"] = static_cast<std::uint64_t>(r.residual_count);
    j["root_average"] = r.root_average;
    j["root_error"] = r.root_error;
    j["n_max"] = static_cast<std::int64_t>(r.n_max);
    j["tolerance"] = r.tolerance;
    j["squares_examined"] = r.squares_examined;
    j["pruned_subtrees"] = r.pruned_subtrees;
    return j;
}

Json to_json(const PrecisionReport& r) {
    Json j = Json::object();
    j["alpha"] = r.alpha;
    Json entries = Json::array();
    for (const PrecisionEntry& e : r.entries) {
        Json je = json_index(e.index);
        je["axis"] = e.axis;
        je["tau_region"] = e.tau_region;
        je["tau_region_error"] = e.tau_region_error;
        je["tau_square"] = e.tau_square;
        je["tau_square_error"] = e.tau_square_error;
        je["ratio"] = e.ratio;
        je["mu_ratio"] = e.mu_ratio;
        je["delta_bound"] = e.delta_bound;
        je["min_map_ratio"] = e.min_map_ratio;
        je["containment_ok"] = e.containment_ok;
        je["map_ratio_ok"] = e.map_ratio_ok;
        entries.push_back(std::move(je));
    }
    j["entries"] = std::move(entries);
    j["c_emp"] = r.c_emp;
    j["c_mu_axis"] = r.c_mu_axis;
    j["c_mu_oracle"] = r.c_mu_oracle;
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    return j;
}

Json to_json(const ChainAuditReport& r) {
    Json j = Json::object();
    j["alpha"] = r.alpha;
    j["symbol"] = r.symbol;
    j["decomposition"] = to_json(r.decomposition);
    j["lambdas"] = r.lambdas;
    j["lhs"] = r.lhs;
    j["lhs_error"] = r.lhs_error;
    j["lhs_hits"] = r.lhs_hits;
    j["stop_mass"] = r.stop_mass;
    j["stop_mass_error"] = r.stop_mass_error;
    j["ratio"] = r.ratio;
    j["k_emp"] = r.k_emp;
    j["trend_slope"] = r.trend_slope;
    j["trend_slope_err"] = r.trend_slope_err;
    j["mean_value_c"] = r.mean_value_c;
    j["delta0"] = r.delta0;
    j["delta1"] = r.delta1;
    j["level_delta1_mass"] = r.level_delta1_mass;
    j["level_delta1_error"] = r.level_delta1_error;
    j["region_mass"] = r.region_mass;
    j["region_mass_error"] = r.region_mass_error;
    j["c_emp"] = r.c_emp;
    j["lower_chain_ok"] = r.lower_chain_ok;
    j["max_center_value"] = r.max_center_value;
    j["center_bound_ok"] = r.center_bound_ok;
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    return j;
}

Json to_json(const RemarkReport& r) {
    Json j = Json::object();
    j["t_grid"] = r.t_grid;
    j["sigma"] = r.sigma;
    j["sigma_error"] = r.sigma_error;
    j["quartic_identity"] = r.quartic_identity;
    j["quartic_identity_error"] = r.quartic_identity_error;
    j["tau_prime"] = r.tau_prime;
    j["witness_t"] = r.witness_t;
    j["witness_found"] = r.witness_found;
    return j;
}

Json to_json(const CompactnessVerdict& v) {
    Json j = Json::object();
    j["variant"] = variant_name(v.variant);
    j["alpha"] = v.alpha;
    j["orlicz"] = v.orlicz;
    j["symbol"] = v.symbol;
    j["h"] = v.h;
    j["indicator"] = v.indicator;
    j["trend_slope"] = v.trend_slope;
    j["trend_slope_err"] = v.trend_slope_err;
    j["profile_too_noisy"] = v.profile_too_noisy;
    j["verdict"] = verdict_name(v.verdict);
    Json th = Json::object();
    th["drop_factor"] = v.thresholds.drop_factor;
    th["compact_level"] = v.thresholds.compact_level;
    th["floor_level"] = v.thresholds.floor_level;
    th["noise_rel"] = v.thresholds.noise_rel;
    j["thresholds"] = std::move(th);
    return j;
}

std::string to_csv(const CarlesonProfile& p) {
    std::string out = "h,rho,rho_error,k_value,hits,xi_count,reliable\n";
    for (const ProfilePoint& pt : p.points) {
        out += csv_cell(pt.h) + "," + csv_cell(pt.rho) + "," +
               csv_cell(pt.rho_error) + "," + csv_cell(pt.k_value) + "," +
               std::to_string(pt.hits) + "," + std::to_string(pt.xi_count) +
               "," + (pt.reliable ? "1" : "0") + "\n";
    }
    return out;
}

std::string to_csv(const ScalingReport& r) {
    std::string out =
        "h,eps,numerator,numerator_error,hits,ratio,alarm,degenerate\n";
    for (const ScalingRow& row : r.rows) {
        for (std::size_t k = 0; k < row.cells.size(); ++k) {
            const ScalingCell& c = row.cells[k];
            out += csv_cell(row.h) + "," + csv_cell(r.eps_grid[k]) + "," +
                   csv_cell(c.numerator) + "," + csv_cell(c.numerator_error) +
                   "," + std::to_string(c.hits) + "," + csv_cell(c.ratio) +
                   "," + (c.alarm ? "1" : "0") + "," +
                   (row.degenerate ? "1" : "0") + "\n";
        }
    }
    return out;
}

std::string to_csv(const TailAuditReport& r) {
    std::string out = "lambda,lhs,lhs_error,lhs_hits,rhs,rhs_error,ratio\n";
    for (std::size_t i = 0; i < r.lambdas.size(); ++i) {
        out += csv_cell(r.lambdas[i]) + "," + csv_cell(r.lhs[i]) + "," +
               csv_cell(r.lhs_error[i]) + "," + std::to_string(r.lhs_hits[i]) +
               "," + csv_cell(r.rhs) + "," + csv_cell(r.rhs_error) + "," +
               csv_cell(r.ratio[i]) + "\n";
    }
    return out;
}

std::string to_csv(const CZResult& r) {
    std::string out = "n,j,k,average,error,center_value\n";
    for (const StoppingSquare& s : r.squares) {
        out += std::to_string(s.index.n) + "," + std::to_string(s.index.j) +
               "," + std::to_string(s.index.k) + "," + csv_cell(s.average) +
               "," + csv_cell(s.error) + "," + csv_cell(s.center_value) + "\n";
    }
    return out;
}

std::string to_csv(const RemarkReport& r) {
    std::string out = "t,sigma,sigma_error\n";
    for (std::size_t i = 0; i < r.t_grid.size(); ++i) {
        out += csv_cell(r.t_grid[i]) + "," + csv_cell(r.sigma[i]) + "," +
               csv_cell(r.sigma_error[i]) + "\n";
    }
    return out;
}

std::string to_csv(const CompactnessVerdict& v) {
    std::string out = "h,indicator\n";
    for (std::size_t i = 0; i < v.h.size(); ++i)
        out += csv_cell(v.h[i]) + "," + csv_cell(v.indicator[i]) + "\n";
    return out;
}

}  // namespace carleson
