// vgp: price European options under Variance Gamma and reproduce the
// benchmark tables.
//
//   vgp price --spot 18 --strike 20 --maturity 0.5 --sigma 0.1 --nu 0.2
//   vgp table T2 --format text
//   vgp bench --scenarios rows.csv --reps 20 --format json --output out.json
//
// Exit codes: 0 success, 1 a row or method failed, 2 invalid configuration.

#include "vgp/bench.hpp"
#include "vgp/errors.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fmt/format.h>
#include <fstream>
#include <iostream>

namespace {

constexpr int kExitRowError = 1;
constexpr int kExitConfigError = 2;

std::vector<vgp::Method> parse_methods(const std::string& text) {
    if (text == "all") return {vgp::Method::cgz, vgp::Method::mixture, vgp::Method::fourier, vgp::Method::mc};
    std::vector<vgp::Method> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto end = comma == std::string::npos ? text.size() : comma;
        out.push_back(vgp::parse_method(text.substr(start, end - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variance Gamma European option pricer and benchmark harness"};
    app.require_subcommand(1);

    std::string format = "text";
    std::string output;
    std::optional<std::uint64_t> seed;
    std::uint64_t mc_paths = 1'000'000;
    unsigned threads = 0;
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json", "text"}));
    app.add_option("--output", output, "Write the report to this path instead of stdout");
    app.add_option("--seed", seed, "Monte Carlo seed (overrides VGP_SEED)");
    app.add_option("--mc-paths", mc_paths, "Monte Carlo paths per price")->check(CLI::PositiveNumber);
    app.add_option("--threads", threads, "Monte Carlo worker threads (0 = all cores)");

    auto* price = app.add_subcommand("price", "Price a single option");
    double spot = 0, strike = 0, maturity = 0, sigma = 0, nu = 0;
    std::string side = "put";
    std::string method = "cgz";
    std::optional<double> tol;
    price->add_option("--spot", spot, "Spot price")->required();
    price->add_option("--strike", strike, "Strike")->required();
    price->add_option("--maturity", maturity, "Maturity (same unit as nu)")->required();
    price->add_option("--sigma", sigma, "Brownian volatility")->required();
    price->add_option("--nu", nu, "Variance rate of the gamma clock")->required();
    price->add_option("--side", side, "put or call")->check(CLI::IsMember({"put", "call"}));
    price->add_option("--method", method, "cgz, mixture, fourier, mc, a comma list, or all");
    price->add_option("--tol", tol, "Relative quadrature tolerance");

    auto* table = app.add_subcommand("table", "Reproduce one of the built-in tables");
    std::string table_id;
    std::string table_methods = "all";
    int table_reps = 1;
    table->add_option("id", table_id, "T1..T6")->required();
    table->add_option("--methods", table_methods, "Methods to run (comma list or all)");
    table->add_option("--reps", table_reps, "Timed repetitions per price")->check(CLI::PositiveNumber);

    auto* bench = app.add_subcommand("bench", "Run scenarios from a CSV file");
    std::string scenarios;
    int bench_reps = 1;
    bench->add_option("--scenarios", scenarios, "Scenario CSV")->required()->check(CLI::ExistingFile);
    bench->add_option("--reps", bench_reps, "Timed repetitions per price")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfigError;
    }

    vgp::BenchConfig cfg;
    std::vector<vgp::ScenarioRow> rows;
    try {
        cfg.pricing.mc.paths = mc_paths;
        cfg.pricing.mc.threads = threads;
        if (seed) {
            cfg.pricing.mc.seed = *seed;
        } else if (const char* env = std::getenv("VGP_SEED")) {
            cfg.pricing.mc.seed = std::stoull(env);
        }
        if (tol) cfg.pricing.quadrature.rel_tol = *tol;
        cfg.pricing.quadrature.validate();

        if (*price) {
            const auto methods = parse_methods(method);
            vgp::ScenarioRow row{"price", vgp::OptionSpec{spot, strike, maturity, vgp::parse_option_side(side)},
                                 sigma, nu, std::nullopt, "", methods};
            rows.push_back(row);
        } else if (*table) {
            cfg.repetitions = table_reps;
            rows = vgp::builtin_table_rows(vgp::parse_table_id(table_id), parse_methods(table_methods));
        } else {
            cfg.repetitions = bench_reps;
            std::ifstream in(scenarios);
            rows = vgp::parse_scenarios_csv(in);
            if (rows.empty()) throw vgp::DomainError("scenario file has no rows");
        }
    } catch (const std::exception& e) {
        std::cerr << "vgp: " << e.what() << '\n';
        return kExitConfigError;
    }

    const vgp::BenchReport report = vgp::run_scenarios(rows, cfg);

    try {
        const auto fmt = vgp::parse_report_format(format);
        if (output.empty()) {
            vgp::emit_report(report, fmt, std::cout);
        } else {
            std::ofstream out(output);
            if (!out) throw std::runtime_error("cannot open " + output);
            vgp::emit_report(report, fmt, out);
        }
    } catch (const std::exception& e) {
        std::cerr << "vgp: " << e.what() << '\n';
        return kExitConfigError;
    }
    return report.has_errors() ? kExitRowError : 0;
}
