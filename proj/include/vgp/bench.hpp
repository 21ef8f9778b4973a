#pragma once

#include "vgp/pricers.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vgp {

enum class TableId { T1, T2, T3, T4, T5, T6 };

TableId parse_table_id(std::string_view text);
std::string_view to_string(TableId id);

struct ScenarioRow {
    std::string table;
    OptionSpec spec;
    double sigma;
    double nu;
    std::optional<double> expected;
    std::string expected_source;
    std::vector<Method> methods;

    bool operator==(const ScenarioRow&) const = default;
};

struct MethodOutcome {
    Method method;
    std::optional<PriceQuote> quote;
    std::string error;

    bool operator==(const MethodOutcome&) const = default;
};

struct PairDiff {
    Method first;
    Method second;
    double abs_diff;

    bool operator==(const PairDiff&) const = default;
};

struct RowResult {
    ScenarioRow scenario;
    std::vector<MethodOutcome> outcomes;
    std::vector<PairDiff> diffs;
    /// Set when the scenario itself is invalid (e.g. sigma <= 0).
    std::string error;

    bool has_error() const;
    const MethodOutcome* outcome(Method m) const;

    bool operator==(const RowResult&) const = default;
};

struct BenchSummary {
    double max_pairwise_diff = 0.0;
    double max_expected_deviation = 0.0;
    std::vector<std::pair<Method, std::int64_t>> elapsed_ns_by_method;

    bool operator==(const BenchSummary&) const = default;
};

struct BenchReport {
    std::vector<RowResult> rows;
    BenchSummary summary;

    bool has_errors() const;

    bool operator==(const BenchReport&) const = default;
};

struct BenchConfig {
    PricingConfig pricing{};
    int repetitions = 1;
};

/// Published rows (parameters and rounded put prices) for each table.
std::vector<ScenarioRow> builtin_table_rows(TableId id, std::vector<Method> methods = {});

/// Prices every row with every selected method. Each method is called once
/// untimed, then `repetitions` timed calls are made and the median elapsed
/// time is kept. Errors are captured per row and per method.
BenchReport run_scenarios(const std::vector<ScenarioRow>& rows, const BenchConfig& cfg = {});

BenchReport run_builtin_table(TableId id, const BenchConfig& cfg = {}, std::vector<Method> methods = {});

enum class ReportFormat { csv, json, text };

ReportFormat parse_report_format(std::string_view text);

inline constexpr std::string_view kCsvHeader = "table,t,S,K,sigma,nu,method,price,expected,abs_diff,elapsed_ns";

void emit_report(const BenchReport& report, ReportFormat format, std::ostream& out);

/// Inverse of the JSON emitter.
BenchReport report_from_json(std::string_view json);

/// Scenario CSV: required columns table,t,S,K,sigma,nu; optional method and
/// expected. Lines sharing the identifying columns merge their methods;
/// without a method column every deterministic method is selected. Unknown
/// columns are ignored, so an emitted report is itself a valid scenario file.
std::vector<ScenarioRow> parse_scenarios_csv(std::istream& in);

} // namespace vgp
