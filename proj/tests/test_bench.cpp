#include "vgp/bench.hpp"
#include "vgp/errors.hpp"

#include <algorithm>
#include <gtest/gtest.h>
#include <sstream>

using namespace vgp;

namespace {

const std::vector<Method> kAnalytic{Method::cgz, Method::mixture, Method::fourier};

BenchConfig quick_config() {
    BenchConfig cfg;
    cfg.pricing.mc.paths = 20000;
    return cfg;
}

void clear_timings(BenchReport& r) {
    for (auto& row : r.rows)
        for (auto& o : row.outcomes)
            if (o.quote) o.quote->elapsed = {};
    r.summary.elapsed_ns_by_method.clear();
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

} // namespace

TEST(BuiltinTables, RowCountsAndPublishedValues) {
    const std::pair<TableId, std::size_t> sizes[] = {{TableId::T1, 5}, {TableId::T2, 5}, {TableId::T3, 5},
                                                     {TableId::T4, 5}, {TableId::T5, 6}, {TableId::T6, 8}};
    std::size_t total = 0;
    for (auto [id, n] : sizes) {
        const auto rows = builtin_table_rows(id);
        EXPECT_EQ(rows.size(), n) << to_string(id);
        total += rows.size();
        for (const auto& r : rows) {
            EXPECT_EQ(r.methods.size(), 4u);
            EXPECT_TRUE(r.expected.has_value());
            EXPECT_EQ(r.table, to_string(id));
        }
    }
    EXPECT_EQ(total, 34u);
    const auto t1 = builtin_table_rows(TableId::T1);
    EXPECT_EQ(t1.front().spec, (OptionSpec{18, 20, 0.2, OptionSide::put}));
    EXPECT_EQ(t1.front().expected, 2.0107);
    EXPECT_EQ(builtin_table_rows(TableId::T4)[1].expected, 0.0309);
}

TEST(BuiltinTables, ParseIds) {
    EXPECT_EQ(parse_table_id("T6"), TableId::T6);
    EXPECT_THROW(parse_table_id("T7"), DomainError);
    EXPECT_THROW(parse_report_format("xml"), DomainError);
}

TEST(RunScenarios, SingleRowSmoke) {
    auto rows = builtin_table_rows(TableId::T1, kAnalytic);
    rows.resize(1);
    const BenchReport r = run_scenarios(rows);
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_FALSE(r.has_errors());
    EXPECT_EQ(r.rows[0].outcomes.size(), 3u);
    EXPECT_EQ(r.rows[0].diffs.size(), 3u);
    ASSERT_NE(r.rows[0].outcome(Method::cgz), nullptr);
    EXPECT_EQ(r.rows[0].outcome(Method::mc), nullptr);
    EXPECT_NEAR(r.rows[0].outcome(Method::cgz)->quote->value, 2.0107, 5e-5);
    EXPECT_EQ(r.summary.elapsed_ns_by_method.size(), 3u);
}

TEST(RunScenarios, RepetitionsKeepPrices) {
    BenchConfig reps = quick_config();
    reps.repetitions = 20;
    BenchReport a = run_builtin_table(TableId::T2, reps, kAnalytic);
    BenchReport b = run_builtin_table(TableId::T2, quick_config(), kAnalytic);
    EXPECT_LE(a.summary.max_expected_deviation, 5e-5);
    for (const auto& row : a.rows)
        for (const auto& o : row.outcomes) EXPECT_GT(o.quote->elapsed.count(), 0);
    clear_timings(a);
    clear_timings(b);
    EXPECT_EQ(a, b);
}

TEST(RunScenarios, InvalidParametersBecomeRowErrors) {
    std::vector<ScenarioRow> rows = builtin_table_rows(TableId::T1, kAnalytic);
    rows.resize(2);
    rows[1].sigma = 0.0;
    const BenchReport r = run_scenarios(rows);
    EXPECT_TRUE(r.has_errors());
    EXPECT_FALSE(r.rows[0].has_error());
    EXPECT_TRUE(r.rows[1].has_error());
    EXPECT_FALSE(r.rows[1].error.empty());
    EXPECT_TRUE(r.rows[1].outcomes.empty());

    std::ostringstream csv;
    emit_report(r, ReportFormat::csv, csv);
    EXPECT_EQ(count_lines(csv.str()), 1 + 2 * 3);
    EXPECT_NE(csv.str().find("T1,0.4,18,20,0,0.2,cgz,,2.0339,,"), std::string::npos);
}

TEST(RunScenarios, EmptyInputRejected) {
    std::istringstream header_only(std::string(kCsvHeader) + "\n");
    const auto rows = parse_scenarios_csv(header_only);
    EXPECT_TRUE(rows.empty());
    EXPECT_THROW(run_scenarios(rows), DomainError);
}

TEST(Report, CsvLayout) {
    const BenchReport r = run_builtin_table(TableId::T3, quick_config());
    std::ostringstream out;
    emit_report(r, ReportFormat::csv, out);
    const std::string s = out.str();
    EXPECT_EQ(s.substr(0, s.find('\n')), kCsvHeader);
    EXPECT_EQ(count_lines(s), 1 + 5 * 4);
    std::istringstream first(s.substr(s.find('\n') + 1));
    std::string line;
    std::getline(first, line);
    EXPECT_EQ(line.rfind("T3,0.2,22,20,0.1,0.2,cgz,0.016", 0), 0u) << line;
}

TEST(Report, JsonRoundTrip) {
    const BenchReport r = run_builtin_table(TableId::T5, quick_config());
    std::ostringstream out;
    emit_report(r, ReportFormat::json, out);
    EXPECT_EQ(report_from_json(out.str()), r);
}

TEST(Report, TextMentionsEveryRow) {
    const BenchReport r = run_builtin_table(TableId::T1, quick_config(), kAnalytic);
    std::ostringstream out;
    emit_report(r, ReportFormat::text, out);
    for (const char* t : {"0.2000", "0.4000", "0.6000", "0.8000", "1.0000", "max pairwise diff"})
        EXPECT_NE(out.str().find(t), std::string::npos) << t;
}

TEST(Report, DeterministicApartFromTiming) {
    BenchReport a = run_builtin_table(TableId::T4, quick_config());
    BenchReport b = run_builtin_table(TableId::T4, quick_config());
    clear_timings(a);
    clear_timings(b);
    EXPECT_EQ(a, b);
}

TEST(ScenarioCsv, ParsesAndMergesMethods) {
    std::istringstream in("table,t,S,K,sigma,nu,method,expected\n"
                          "X,0.25,19,20,0.15,0.3,cgz,\n"
                          "X,0.25,19,20,0.15,0.3,mc,\n"
                          "Y,0.5,21,20,0.1,0.2,fourier,0.07\n");
    const auto rows = parse_scenarios_csv(in);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].methods, (std::vector<Method>{Method::cgz, Method::mc}));
    EXPECT_FALSE(rows[0].expected);
    EXPECT_EQ(rows[0].spec, (OptionSpec{19, 20, 0.25, OptionSide::put}));
    EXPECT_DOUBLE_EQ(rows[0].sigma, 0.15);
    EXPECT_EQ(rows[1].expected, 0.07);
}

TEST(ScenarioCsv, DefaultsToAnalyticMethods) {
    std::istringstream in("t,S,K,sigma,nu,table\n0.3,18,20,0.1,0.2,Z\n");
    const auto rows = parse_scenarios_csv(in);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].methods, kAnalytic);
}

TEST(ScenarioCsv, Errors) {
    std::istringstream missing("table,t,S,K,sigma\nA,1,2,3,4\n");
    EXPECT_THROW(parse_scenarios_csv(missing), DomainError);
    std::istringstream bad("table,t,S,K,sigma,nu\nA,1,x,3,4,5\n");
    EXPECT_THROW(parse_scenarios_csv(bad), DomainError);
    std::istringstream method("table,t,S,K,sigma,nu,method\nA,1,2,3,4,5,newton\n");
    EXPECT_THROW(parse_scenarios_csv(method), DomainError);
}

TEST(ScenarioCsv, EmittedReportReingests) {
    const BenchReport r = run_builtin_table(TableId::T6, quick_config(), kAnalytic);
    std::ostringstream out;
    emit_report(r, ReportFormat::csv, out);
    std::istringstream in(out.str());
    const auto rows = parse_scenarios_csv(in);
    ASSERT_EQ(rows.size(), 8u);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].spec, r.rows[i].scenario.spec);
        EXPECT_EQ(rows[i].methods, kAnalytic);
        EXPECT_EQ(rows[i].expected, r.rows[i].scenario.expected);
    }
}

TEST(BuiltinTables, EveryTableWithinPublishedRounding) {
    for (TableId id : {TableId::T1, TableId::T2, TableId::T3, TableId::T4, TableId::T5, TableId::T6}) {
        const BenchReport r = run_builtin_table(id, quick_config(), kAnalytic);
        EXPECT_FALSE(r.has_errors()) << to_string(id);
        EXPECT_LE(r.summary.max_expected_deviation, 5e-4) << to_string(id);
        EXPECT_LE(r.summary.max_pairwise_diff, 1e-5) << to_string(id);
    }
}
