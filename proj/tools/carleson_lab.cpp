// Command line front end: layered configuration (defaults, then config file,
// then --set pairs, then explicit flags) feeding the experiment driver.
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <carleson/errors.hpp>
#include <carleson/experiments.hpp>
#include <carleson/report.hpp>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw carleson::ParseError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int write_output(const std::string& out, const std::string& text) {
    if (out.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return 0;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) {
        std::fprintf(stderr, "cannot open output file: %s\n", out.c_str());
        return 1;
    }
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    return f.good() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted Bergman window measures, pull-back Carleson "
                 "profiles, and dyadic stopping-time experiments"};
    app.get_formatter()->column_width(28);

    std::string command = "selftest";
    app.add_option("command", command,
                   "profile|scaling|tail|czd|remark|compact|selftest")
        ->required(false);

    std::string config_path;
    app.add_option("--config", config_path, "key = value configuration file");

    std::vector<std::string> sets;
    app.add_option("--set", sets,
                   "extra key=value override (repeatable, applied after "
                   "--config)");

    double alpha = 0.0;
    auto* alpha_opt = app.add_option("--alpha", alpha, "weight exponent > -1");
    std::string symbol;
    auto* symbol_opt = app.add_option("--symbol", symbol, "map descriptor");
    std::string orlicz;
    auto* orlicz_opt =
        app.add_option("--orlicz", orlicz, "growth function descriptor");
    std::uint64_t seed = 0;
    auto* seed_opt = app.add_option("--seed", seed, "sampling seed");
    std::uint64_t samples = 0;
    auto* samples_opt =
        app.add_option("--samples", samples, "Monte Carlo sample count");
    std::string out;
    auto* out_opt = app.add_option("--out", out, "output file (default stdout)");
    std::string format;
    auto* format_opt = app.add_option("--format", format, "json|csv");

    CLI11_PARSE(app, argc, argv);

    carleson::ExperimentConfig cfg;
    cfg.command = command;
    try {
        if (!config_path.empty())
            carleson::apply_entries(
                cfg, carleson::parse_key_values(read_file(config_path)));
        for (const std::string& s : sets) {
            try {
                carleson::apply_entries(cfg, carleson::parse_key_values(s));
            } catch (const carleson::ParseError& e) {
                throw carleson::ParseError("--set \"" + s + "\": " + e.what());
            }
        }
        if (*alpha_opt) cfg.alpha = alpha;
        if (*symbol_opt) cfg.symbol = symbol;
        if (*orlicz_opt) cfg.orlicz = orlicz;
        if (*seed_opt) cfg.seed = seed;
        if (*samples_opt) cfg.samples = samples;
        if (*out_opt) cfg.out = out;
        if (*format_opt) cfg.format = format;

        carleson::ExecutionResult result = carleson::execute(cfg);
        int io = write_output(cfg.out, result.text);
        return io != 0 ? io : result.exit_code;
    } catch (const carleson::Error& e) {
        carleson::Json err = carleson::Json::object();
        err["tool"] = "carleson-lab";
        err["command"] = cfg.command;
        err["error"] = std::string(e.what());
        err["config"] = carleson::config_to_json(cfg);
        std::string text = carleson::canonical_json(err) + "\n";
        std::fwrite(text.data(), 1, text.size(), stdout);
        return 1;
    }
}
