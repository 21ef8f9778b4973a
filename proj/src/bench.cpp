#include "vgp/bench.hpp"

#include "vgp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <istream>
#include <map>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

namespace vgp {

using nlohmann::json;

namespace {

constexpr std::array kAllMethods{Method::cgz, Method::mixture, Method::fourier, Method::mc};
constexpr std::array kDeterministic{Method::cgz, Method::mixture, Method::fourier};

bool deterministic(Method m) { return m != Method::mc; }

struct TableDef {
    TableId id;
    double spot;
    double strike;
    double sigma;
    double nu;
    std::vector<std::pair<double, double>> rows; // (t, published put)
};

const std::vector<TableDef>& table_defs() {
    static const std::vector<TableDef> defs{
        {TableId::T1, 18, 20, 0.1, 0.2, {{0.2, 2.0107}, {0.4, 2.0339}, {0.6, 2.0662}, {0.8, 2.1038}, {1.0, 2.1441}}},
        {TableId::T2, 18, 20, 0.1, 0.2, {{0.1, 2.0037}, {0.3, 2.0209}, {0.5, 2.0492}, {0.7, 2.0845}, {0.9, 2.1237}}},
        {TableId::T3, 22, 20, 0.1, 0.2, {{0.2, 0.0163}, {0.4, 0.0489}, {0.6, 0.0919}, {0.8, 0.1401}, {1.0, 0.1903}}},
        {TableId::T4, 22, 20, 0.1, 0.2, {{0.1, 0.0058}, {0.3, 0.0309}, {0.5, 0.0695}, {0.7, 0.1156}, {0.9, 0.1650}}},
        {TableId::T5,
         50,
         35,
         0.2,
         0.25,
         {{0.10, 0.0020}, {0.12, 0.0027}, {0.14, 0.0034}, {0.16, 0.0043}, {0.18, 0.0052}, {0.20, 0.0063}}},
        {TableId::T6,
         50,
         35,
         0.2,
         0.5,
         {{0.05, 0.0026},
          {0.07, 0.0038},
          {0.09, 0.0051},
          {0.11, 0.0065},
          {0.13, 0.0081},
          {0.15, 0.0097},
          {0.17, 0.0115},
          {0.19, 0.0134}}},
    };
    return defs;
}

template <typename T> T median(std::vector<T> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

MethodOutcome price_one(const OptionSpec& spec, const VgParams& params, Method method, const BenchConfig& cfg) {
    MethodOutcome out{method, std::nullopt, {}};
    try {
        const int reps = std::max(1, cfg.repetitions);
        PriceQuote quote;
        if (method == Method::mc) {
            // a single run: simulation cost dwarfs any warm-up effect
            quote = price_option(spec, params, method, cfg.pricing);
        } else {
            price_option(spec, params, method, cfg.pricing);
            std::vector<std::chrono::nanoseconds> times;
            for (int r = 0; r < reps; ++r) {
                quote = price_option(spec, params, method, cfg.pricing);
                times.push_back(quote.elapsed);
            }
            quote.elapsed = median(times);
        }
        out.quote = quote;
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    return out;
}

std::string num(double v) { return fmt::format("{}", v); }

} // namespace

TableId parse_table_id(std::string_view text) {
    for (const auto& def : table_defs())
        if (to_string(def.id) == text) return def.id;
    throw DomainError(fmt::format("unknown table '{}' (expected T1..T6)", text));
}

std::string_view to_string(TableId id) {
    static constexpr std::array names{"T1", "T2", "T3", "T4", "T5", "T6"};
    return names[static_cast<std::size_t>(id)];
}

bool RowResult::has_error() const {
    if (!error.empty()) return true;
    return std::any_of(outcomes.begin(), outcomes.end(), [](const MethodOutcome& o) { return !o.quote; });
}

const MethodOutcome* RowResult::outcome(Method m) const {
    for (const auto& o : outcomes)
        if (o.method == m) return &o;
    return nullptr;
}

bool BenchReport::has_errors() const {
    return std::any_of(rows.begin(), rows.end(), [](const RowResult& r) { return r.has_error(); });
}

std::vector<ScenarioRow> builtin_table_rows(TableId id, std::vector<Method> methods) {
    if (methods.empty()) methods.assign(kAllMethods.begin(), kAllMethods.end());
    const auto& defs = table_defs();
    const auto it = std::find_if(defs.begin(), defs.end(), [id](const TableDef& d) { return d.id == id; });
    std::vector<ScenarioRow> rows;
    for (const auto& [t, price] : it->rows) {
        rows.push_back({std::string(to_string(id)), OptionSpec{it->spot, it->strike, t, OptionSide::put}, it->sigma,
                        it->nu, price, fmt::format("published {}", to_string(id)), methods});
    }
    return rows;
}

BenchReport run_scenarios(const std::vector<ScenarioRow>& rows, const BenchConfig& cfg) {
    if (rows.empty()) throw DomainError("no scenarios to run");
    BenchReport report;
    std::map<Method, std::int64_t> elapsed;

    for (const ScenarioRow& row : rows) {
        RowResult result{row, {}, {}, {}};
        try {
            if (row.methods.empty()) throw DomainError("scenario selects no method");
            const VgParams params(row.sigma, row.nu);
            row.spec.validate();
            for (Method m : row.methods) result.outcomes.push_back(price_one(row.spec, params, m, cfg));
        } catch (const std::exception& e) {
            result.error = e.what();
        }

        for (std::size_t i = 0; i < result.outcomes.size(); ++i)
            for (std::size_t j = i + 1; j < result.outcomes.size(); ++j) {
                const auto& a = result.outcomes[i];
                const auto& b = result.outcomes[j];
                if (!a.quote || !b.quote) continue;
                const double diff = std::abs(a.quote->value - b.quote->value);
                result.diffs.push_back({a.method, b.method, diff});
                // statistical noise would swamp the analytic comparison
                if (deterministic(a.method) && deterministic(b.method))
                    report.summary.max_pairwise_diff = std::max(report.summary.max_pairwise_diff, diff);
            }
        for (const auto& o : result.outcomes) {
            if (!o.quote) continue;
            elapsed[o.method] += o.quote->elapsed.count();
            if (row.expected && deterministic(o.method))
                report.summary.max_expected_deviation =
                    std::max(report.summary.max_expected_deviation, std::abs(o.quote->value - *row.expected));
        }
        report.rows.push_back(std::move(result));
    }
    for (Method m : kAllMethods)
        if (elapsed.count(m)) report.summary.elapsed_ns_by_method.emplace_back(m, elapsed[m]);
    return report;
}

BenchReport run_builtin_table(TableId id, const BenchConfig& cfg, std::vector<Method> methods) {
    return run_scenarios(builtin_table_rows(id, std::move(methods)), cfg);
}

ReportFormat parse_report_format(std::string_view text) {
    if (text == "csv") return ReportFormat::csv;
    if (text == "json") return ReportFormat::json;
    if (text == "text") return ReportFormat::text;
    throw DomainError(fmt::format("unknown report format '{}'", text));
}

namespace {

void emit_csv(const BenchReport& report, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const RowResult& row : report.rows) {
        const ScenarioRow& s = row.scenario;
        const std::string ident = fmt::format("{},{},{},{},{},{}", s.table, num(s.spec.maturity), num(s.spec.spot),
                                              num(s.spec.strike), num(s.sigma), num(s.nu));
        const std::string expected = s.expected ? num(*s.expected) : "";
        auto line = [&](Method m, const std::optional<PriceQuote>& q) {
            std::string price, diff, elapsed_ns;
            if (q) {
                price = num(q->value);
                if (s.expected) diff = num(std::abs(q->value - *s.expected));
                elapsed_ns = fmt::format("{}", q->elapsed.count());
            }
            out << fmt::format("{},{},{},{},{},{}\n", ident, to_string(m), price, expected, diff, elapsed_ns);
        };
        if (!row.error.empty()) {
            for (Method m : s.methods) line(m, std::nullopt);
        } else {
            for (const auto& o : row.outcomes) line(o.method, o.quote);
        }
    }
}

json quote_to_json(const PriceQuote& q) {
    return {{"value", q.value},
            {"method", to_string(q.method)},
            {"error_estimate", q.error_estimate ? json(*q.error_estimate) : json(nullptr)},
            {"elapsed_ns", q.elapsed.count()}};
}

json report_to_json(const BenchReport& report) {
    json rows = json::array();
    for (const RowResult& row : report.rows) {
        const ScenarioRow& s = row.scenario;
        json methods = json::array();
        for (Method m : s.methods) methods.push_back(to_string(m));
        json outcomes = json::array();
        for (const auto& o : row.outcomes)
            outcomes.push_back({{"method", to_string(o.method)},
                                {"quote", o.quote ? quote_to_json(*o.quote) : json(nullptr)},
                                {"error", o.error}});
        json diffs = json::array();
        for (const auto& d : row.diffs)
            diffs.push_back({{"first", to_string(d.first)}, {"second", to_string(d.second)}, {"abs_diff", d.abs_diff}});
        rows.push_back({{"scenario",
                         {{"table", s.table},
                          {"t", s.spec.maturity},
                          {"S", s.spec.spot},
                          {"K", s.spec.strike},
                          {"side", to_string(s.spec.side)},
                          {"sigma", s.sigma},
                          {"nu", s.nu},
                          {"expected", s.expected ? json(*s.expected) : json(nullptr)},
                          {"expected_source", s.expected_source},
                          {"methods", methods}}},
                        {"outcomes", outcomes},
                        {"diffs", diffs},
                        {"error", row.error}});
    }
    json elapsed = json::object();
    for (const auto& [m, ns] : report.summary.elapsed_ns_by_method) elapsed[std::string(to_string(m))] = ns;
    return {{"rows", rows},
            {"summary",
             {{"max_pairwise_diff", report.summary.max_pairwise_diff},
              {"max_expected_deviation", report.summary.max_expected_deviation},
              {"elapsed_ns_by_method", elapsed}}}};
}

void emit_text(const BenchReport& report, std::ostream& out) {
    std::string current;
    std::vector<Method> methods;
    for (const RowResult& row : report.rows) {
        const ScenarioRow& s = row.scenario;
        if (s.table != current || s.methods != methods) {
            current = s.table;
            methods = s.methods;
            out << fmt::format("\n{}: S={} K={} sigma={} nu={}\n", s.table, num(s.spec.spot), num(s.spec.strike),
                               num(s.sigma), num(s.nu));
            std::string head = fmt::format("{:>8} {:>10}", "t", "expected");
            for (Method m : methods) head += fmt::format(" {:>12}", to_string(m));
            for (Method m : methods) head += fmt::format(" {:>12}", fmt::format("{} ms", to_string(m)));
            out << head << '\n' << std::string(head.size(), '-') << '\n';
        }
        std::string line = fmt::format("{:>8.4f} {:>10}", s.spec.maturity,
                                       s.expected ? fmt::format("{:.4f}", *s.expected) : std::string("-"));
        if (!row.error.empty()) {
            out << line << "  error: " << row.error << '\n';
            continue;
        }
        for (const auto& o : row.outcomes)
            line += o.quote ? fmt::format(" {:>12.6f}", o.quote->value) : fmt::format(" {:>12}", "error");
        for (const auto& o : row.outcomes)
            line += o.quote ? fmt::format(" {:>12.4f}", o.quote->elapsed.count() * 1e-6)
                            : fmt::format(" {:>12}", "-");
        out << line << '\n';
        for (const auto& o : row.outcomes)
            if (!o.quote) out << fmt::format("{:>8}  {} error: {}\n", "", to_string(o.method), o.error);
    }
    out << fmt::format("\nmax pairwise diff (analytic methods): {:.3e}\n", report.summary.max_pairwise_diff);
    out << fmt::format("max deviation from expected:          {:.3e}\n", report.summary.max_expected_deviation);
    for (const auto& [m, ns] : report.summary.elapsed_ns_by_method)
        out << fmt::format("total elapsed {:<8} {:>12.4f} ms\n", to_string(m), ns * 1e-6);
}

} // namespace

void emit_report(const BenchReport& report, ReportFormat format, std::ostream& out) {
    switch (format) {
    case ReportFormat::csv: emit_csv(report, out); break;
    case ReportFormat::json: out << report_to_json(report).dump(2) << '\n'; break;
    case ReportFormat::text: emit_text(report, out); break;
    }
    if (!out) throw std::runtime_error("failed to write report");
}

BenchReport report_from_json(std::string_view text) {
    const json j = json::parse(text);
    BenchReport report;
    for (const json& r : j.at("rows")) {
        const json& s = r.at("scenario");
        ScenarioRow row;
        row.table = s.at("table").get<std::string>();
        row.spec = OptionSpec{s.at("S").get<double>(), s.at("K").get<double>(), s.at("t").get<double>(),
                              parse_option_side(s.at("side").get<std::string>())};
        row.sigma = s.at("sigma").get<double>();
        row.nu = s.at("nu").get<double>();
        if (!s.at("expected").is_null()) row.expected = s.at("expected").get<double>();
        row.expected_source = s.at("expected_source").get<std::string>();
        for (const json& m : s.at("methods")) row.methods.push_back(parse_method(m.get<std::string>()));

        RowResult result{std::move(row), {}, {}, r.at("error").get<std::string>()};
        for (const json& o : r.at("outcomes")) {
            MethodOutcome out{parse_method(o.at("method").get<std::string>()), std::nullopt,
                              o.at("error").get<std::string>()};
            if (const json& q = o.at("quote"); !q.is_null()) {
                PriceQuote quote;
                quote.value = q.at("value").get<double>();
                quote.method = parse_method(q.at("method").get<std::string>());
                if (!q.at("error_estimate").is_null()) quote.error_estimate = q.at("error_estimate").get<double>();
                quote.elapsed = std::chrono::nanoseconds(q.at("elapsed_ns").get<std::int64_t>());
                out.quote = quote;
            }
            result.outcomes.push_back(std::move(out));
        }
        for (const json& d : r.at("diffs"))
            result.diffs.push_back({parse_method(d.at("first").get<std::string>()),
                                    parse_method(d.at("second").get<std::string>()), d.at("abs_diff").get<double>()});
        report.rows.push_back(std::move(result));
    }
    const json& sum = j.at("summary");
    report.summary.max_pairwise_diff = sum.at("max_pairwise_diff").get<double>();
    report.summary.max_expected_deviation = sum.at("max_expected_deviation").get<double>();
    for (Method m : kAllMethods) {
        const auto& e = sum.at("elapsed_ns_by_method");
        if (auto it = e.find(std::string(to_string(m))); it != e.end())
            report.summary.elapsed_ns_by_method.emplace_back(m, it->get<std::int64_t>());
    }
    return report;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        const auto b = field.find_first_not_of(" \t\r");
        const auto e = field.find_last_not_of(" \t\r");
        fields.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_double(const std::string& text, std::string_view column, int line_no) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw DomainError(fmt::format("line {}: column '{}' is not a number: '{}'", line_no, column, text));
    }
}

} // namespace

std::vector<ScenarioRow> parse_scenarios_csv(std::istream& in) {
    std::string line;
    int line_no = 0;
    std::map<std::string, std::size_t> col;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto fields = split_csv_line(line);
        for (std::size_t i = 0; i < fields.size(); ++i) col[fields[i]] = i;
        break;
    }
    for (const char* required : {"table", "t", "S", "K", "sigma", "nu"})
        if (!col.count(required)) throw DomainError(fmt::format("scenario file lacks column '{}'", required));
    const bool has_method = col.count("method") != 0;
    const bool has_expected = col.count("expected") != 0;

    std::vector<ScenarioRow> rows;
    std::map<std::string, std::size_t> index_of;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto fields = split_csv_line(line);
        fields.resize(std::max(fields.size(), col.size()));
        auto field = [&](const char* name) -> const std::string& { return fields[col.at(name)]; };

        const std::string key = fmt::format("{},{},{},{},{},{}", field("table"), field("t"), field("S"), field("K"),
                                            field("sigma"), field("nu"));
        auto [it, inserted] = index_of.emplace(key, rows.size());
        if (inserted) {
            ScenarioRow row;
            row.table = field("table");
            row.spec = OptionSpec{parse_double(field("S"), "S", line_no), parse_double(field("K"), "K", line_no),
                                  parse_double(field("t"), "t", line_no), OptionSide::put};
            row.sigma = parse_double(field("sigma"), "sigma", line_no);
            row.nu = parse_double(field("nu"), "nu", line_no);
            if (has_expected && !field("expected").empty()) {
                row.expected = parse_double(field("expected"), "expected", line_no);
                row.expected_source = "scenario file";
            }
            if (!has_method) row.methods.assign(kDeterministic.begin(), kDeterministic.end());
            rows.push_back(std::move(row));
        }
        if (has_method) {
            const Method m = parse_method(field("method"));
            auto& methods = rows[it->second].methods;
            if (std::find(methods.begin(), methods.end(), m) == methods.end()) methods.push_back(m);
        }
    }
    return rows;
}

} // namespace vgp
