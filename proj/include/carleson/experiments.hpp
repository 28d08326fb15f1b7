#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <carleson/config.hpp>
#include <carleson/report.hpp>

/// Experiment orchestration behind the command-line tool: effective
/// configuration (defaults < file < flag overrides), command dispatch, and
/// payload assembly with the embedded config echo and determinism hash.

namespace carleson {

/// Grid endpoints plus point count. h and lambda grids are log-spaced;
/// eps and t grids are linear.
struct GridSpec {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;
};

struct ExperimentConfig {
    std::string command = "selftest";
    double alpha = 0.0;
    std::string symbol = "identity";
    std::string orlicz = "power:2";
    /// Aperture grid, swept from hi down to lo.
    GridSpec h{0.0025, 0.25, 16};
    GridSpec eps{0.05, 0.95, 10};
    GridSpec lambda{2.0, 100.0, 12};
    GridSpec t{0.05, 0.5, 10};
    std::size_t xi_count = 64;
    std::string tail_kind = "global";
    /// TheoClef base-point threshold; 0 selects the built-in default.
    double c1 = 0.0;
    int n_max = 6;
    int refine_steps = 2;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 20260822;
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    std::size_t max_subdivisions = 5000;
    double alarm_threshold = 1000.0;
    std::string out;
    std::string format = "json";
};

/// Log-spaced grid from `from` to `to` inclusive (count >= 2); direction
/// follows the endpoints.
std::vector<double> log_grid(double from, double to, std::size_t count);
std::vector<double> linear_grid(double from, double to, std::size_t count);

/// Applies parsed `key = value` entries onto cfg. Throws ParseError naming
/// the line and key for unknown keys or unparsable values.
void apply_entries(ExperimentConfig& cfg,
                   const std::vector<ConfigEntry>& entries);

/// Audit gates behind exit code 2, pinned here rather than per call site.
struct AuditGates {
    /// Tail audits: max acceptable log-log trend slope of the ratio.
    double tail_slope = 0.05;
    /// Remark: required relative agreement of the slope estimate with
    /// -1/60.
    double remark_slope_rel = 0.05;
};

struct ExecutionResult {
    int exit_code = 0;
    /// Full canonical payload (always JSON, finalized with hash and
    /// timestamp).
    Json payload;
    /// Serialized text in the requested format: canonical JSON, or the CSV
    /// projection prefixed with `# key = value` config comment lines.
    std::string text;
};

/// Runs one command. Exit code 0 on success, 2 when an audited threshold
/// is violated (tail trend slope, scaling alarms, remark reproduction,
/// selftest failures), 1 on error. Errors are reported by throwing; the
/// CLI maps them to structured error records.
ExecutionResult execute(const ExperimentConfig& cfg);

/// The effective configuration echoed into every payload.
Json config_to_json(const ExperimentConfig& cfg);

}  // namespace carleson
