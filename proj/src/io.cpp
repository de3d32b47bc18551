#include "bandit/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace bandit {

namespace {

std::string fmt_g(double value) {
    if (std::isnan(value)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

std::string fmt_fixed(double value, int digits) {
    if (std::isnan(value)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, value);
    return buf;
}

void csv_row(std::ofstream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        // Fields are numeric or from a closed token set; quoting is never needed.
        if (fields[i].find_first_of(",\"\n") != std::string::npos) {
            throw BanditError(Errc::io_error, "field would need CSV quoting: " + fields[i]);
        }
        if (i > 0) out << ',';
        out << fields[i];
    }
    out << '\n';
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw BanditError(Errc::io_error, "cannot open " + path.string() + " for writing");
    }
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw BanditError(Errc::io_error, "cannot open " + path.string() + " for reading");
    }
    return in;
}

std::string_view trim(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    return text;
}

std::vector<std::string> split_ws(std::string_view text) {
    std::vector<std::string> tokens;
    std::istringstream stream{std::string(text)};
    std::string token;
    while (stream >> token) tokens.push_back(token);
    return tokens;
}

std::vector<std::string> split_csv(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.emplace_back(trim(line.substr(start)));
            break;
        }
        fields.emplace_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

[[noreturn]] void parse_fail(int line, const std::string& what) {
    throw BanditError(Errc::parse_error, "line " + std::to_string(line) + ": " + what);
}

template <typename Int>
Int parse_int(std::string_view token, int line, const char* what) {
    Int value{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        parse_fail(line, std::string("expected an integer for ") + what + ", got '" +
                             std::string(token) + "'");
    }
    return value;
}

double parse_real(std::string_view token, int line, const char* what) {
    std::string text(token);
    char* end = nullptr;
    double value = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || text.empty() || !std::isfinite(value)) {
        parse_fail(line, std::string("expected a number for ") + what + ", got '" + text + "'");
    }
    return value;
}

}  // namespace

ParsedConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);

    struct Entry {
        std::string value;
        int line;
    };
    std::map<std::string, Entry> entries;
    std::vector<std::pair<std::vector<double>, int>> schedule_rows;

    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line{raw};
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            parse_fail(line_no, "expected 'key = value'");
        }
        std::string key{trim(line.substr(0, eq))};
        std::string value{trim(line.substr(eq + 1))};
        if (key.empty() || value.empty()) {
            parse_fail(line_no, "expected 'key = value'");
        }
        if (key == "row") {
            std::vector<double> row;
            for (const auto& token : split_ws(value)) {
                row.push_back(parse_real(token, line_no, "a schedule mean"));
            }
            schedule_rows.emplace_back(std::move(row), line_no);
            continue;
        }
        if (!entries.emplace(key, Entry{value, line_no}).second) {
            parse_fail(line_no, "duplicate key '" + key + "'");
        }
    }

    static const char* const known_keys[] = {
        "arms",  "weeks", "burn_in",          "ts_intro_week", "ts_dagger_intro_week",
        "cohort", "split", "transition_split", "seed",          "means"};
    for (const auto& [key, entry] : entries) {
        if (std::find_if(std::begin(known_keys), std::end(known_keys),
                         [&](const char* k) { return key == k; }) == std::end(known_keys)) {
            parse_fail(entry.line, "unknown key '" + key + "'");
        }
    }
    auto require = [&](const char* key) -> const Entry& {
        auto it = entries.find(key);
        if (it == entries.end()) {
            throw BanditError(Errc::parse_error,
                              "missing required key '" + std::string(key) + "'");
        }
        return it->second;
    };

    ExperimentConfig cfg;
    {
        const Entry& e = require("arms");
        cfg.arms = parse_int<int>(e.value, e.line, "arms");
    }
    {
        const Entry& e = require("weeks");
        cfg.horizon = parse_int<int>(e.value, e.line, "weeks");
    }
    {
        const Entry& e = require("burn_in");
        cfg.burn_in = parse_int<int>(e.value, e.line, "burn_in");
    }
    {
        const Entry& e = require("ts_intro_week");
        cfg.ts_intro_week = parse_int<int>(e.value, e.line, "ts_intro_week");
    }
    {
        const Entry& e = require("ts_dagger_intro_week");
        cfg.ts_dagger_intro_week = parse_int<int>(e.value, e.line, "ts_dagger_intro_week");
    }
    {
        const Entry& e = require("seed");
        cfg.seed = parse_int<std::uint64_t>(e.value, e.line, "seed");
    }
    {
        const Entry& e = require("cohort");
        auto tokens = split_ws(e.value);
        if (!tokens.empty() && tokens[0] == "linear") {
            if (tokens.size() != 3) {
                parse_fail(e.line, "cohort = linear needs first and last sizes");
            }
            cfg.cohort_sizes = ExperimentConfig::linear_cohort(
                parse_int<std::int64_t>(tokens[1], e.line, "cohort first"),
                parse_int<std::int64_t>(tokens[2], e.line, "cohort last"), cfg.horizon);
        } else if (!tokens.empty() && tokens[0] == "constant") {
            if (tokens.size() != 2) {
                parse_fail(e.line, "cohort = constant needs one size");
            }
            cfg.cohort_sizes = ExperimentConfig::constant_cohort(
                parse_int<std::int64_t>(tokens[1], e.line, "cohort size"), cfg.horizon);
        } else {
            for (const auto& token : tokens) {
                cfg.cohort_sizes.push_back(
                    parse_int<std::int64_t>(token, e.line, "a cohort size"));
            }
        }
    }
    {
        const Entry& e = require("split");
        auto tokens = split_ws(e.value);
        if (tokens.size() != cfg.split.size()) {
            parse_fail(e.line, "split needs exactly 3 fractions (UR TS TSD)");
        }
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            cfg.split[i] = parse_real(tokens[i], e.line, "a split fraction");
        }
    }
    {
        const Entry& e = require("transition_split");
        auto tokens = split_ws(e.value);
        if (tokens.size() != cfg.transition_split.size()) {
            parse_fail(e.line, "transition_split needs exactly 2 fractions (UR TS)");
        }
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            cfg.transition_split[i] = parse_real(tokens[i], e.line, "a split fraction");
        }
    }

    const Entry& means = require("means");
    auto mean_tokens = split_ws(means.value);
    bool stationary = !mean_tokens.empty() && mean_tokens[0] == "stationary";
    bool piecewise = !mean_tokens.empty() && mean_tokens[0] == "piecewise";
    if (!stationary && !piecewise) {
        parse_fail(means.line, "means must be 'stationary <p per arm>' or 'piecewise'");
    }
    if (stationary && !schedule_rows.empty()) {
        parse_fail(schedule_rows.front().second, "'row' lines only follow means = piecewise");
    }
    if (piecewise && mean_tokens.size() != 1) {
        parse_fail(means.line, "means = piecewise takes its rows from 'row' lines");
    }

    auto issues = validate_config(cfg);
    std::ostringstream problems;
    for (std::size_t i = 0; i < issues.size(); ++i) {
        if (i > 0) problems << "; ";
        problems << errc_name(issues[i].code) << ": " << issues[i].message;
    }

    // Build the schedule only once the basic shape is known to be sound.
    if (!issues.empty()) {
        throw BanditError(Errc::validation_error, problems.str());
    }

    try {
        if (stationary) {
            std::vector<double> row;
            for (std::size_t i = 1; i < mean_tokens.size(); ++i) {
                row.push_back(parse_real(mean_tokens[i], means.line, "a stationary mean"));
            }
            if (static_cast<int>(row.size()) != cfg.arms) {
                throw BanditError(Errc::bad_dimensions,
                                  "stationary means row has " + std::to_string(row.size()) +
                                      " entries, arms = " + std::to_string(cfg.arms));
            }
            return ParsedConfig{cfg, EnvironmentSchedule::stationary(row, cfg.horizon)};
        }
        std::vector<std::vector<double>> rows;
        rows.reserve(schedule_rows.size());
        for (auto& [row, line] : schedule_rows) {
            if (static_cast<int>(row.size()) != cfg.arms) {
                throw BanditError(Errc::bad_dimensions,
                                  "schedule row at line " + std::to_string(line) + " has " +
                                      std::to_string(row.size()) + " entries, arms = " +
                                      std::to_string(cfg.arms));
            }
            rows.push_back(std::move(row));
        }
        if (static_cast<int>(rows.size()) != cfg.horizon) {
            throw BanditError(Errc::bad_dimensions,
                              "piecewise schedule has " + std::to_string(rows.size()) +
                                  " rows, weeks = " + std::to_string(cfg.horizon));
        }
        return ParsedConfig{cfg, EnvironmentSchedule::piecewise(std::move(rows))};
    } catch (const BanditError& err) {
        if (err.code() == Errc::bad_dimensions || err.code() == Errc::out_of_range) {
            throw BanditError(Errc::validation_error, err.what());
        }
        throw;
    }
}

namespace {

constexpr const char* kLogHeader = "week,policy,arm,assigned,opened";
constexpr const char* kSummaryHeader = "policy,arm,mean_pct,se_pct,n_total";

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

}  // namespace

std::vector<BatchObservation> read_log(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || strip_cr(line) != kLogHeader) {
        throw BanditError(Errc::parse_error,
                          "line 1: expected header '" + std::string(kLogHeader) + "'");
    }

    std::vector<BatchObservation> rows;
    std::set<std::tuple<int, int, int>> seen;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (trim(line).empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != 5) {
            parse_fail(line_no, "expected 5 fields, got " + std::to_string(fields.size()));
        }
        int week = parse_int<int>(fields[0], line_no, "week");
        auto policy = parse_policy(fields[1]);
        if (!policy) {
            parse_fail(line_no, "unknown policy token '" + fields[1] + "'");
        }
        int arm = parse_int<int>(fields[2], line_no, "arm");
        if (arm < 1) {
            parse_fail(line_no, "arm must be >= 1 (arms are 1-based in files)");
        }
        std::int64_t assigned = parse_int<std::int64_t>(fields[3], line_no, "assigned");
        std::int64_t opened = parse_int<std::int64_t>(fields[4], line_no, "opened");

        if (!seen.emplace(week, index_of(*policy), arm).second) {
            throw BanditError(Errc::duplicate_row,
                              "duplicate row for week " + std::to_string(week) + ", policy " +
                                  fields[1] + ", arm " + std::to_string(arm));
        }
        try {
            rows.emplace_back(week, *policy, arm - 1, assigned, opened);
        } catch (const BanditError& err) {
            parse_fail(line_no, err.what());
        }
    }

    std::sort(rows.begin(), rows.end(), [](const BatchObservation& a, const BatchObservation& b) {
        return std::make_tuple(a.week(), index_of(a.policy()), a.arm()) <
               std::make_tuple(b.week(), index_of(b.policy()), b.arm());
    });
    return rows;
}

void write_log(std::span<const BatchObservation> log, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << kLogHeader << '\n';
    for (const auto& obs : log) {
        csv_row(out, {std::to_string(obs.week()), token(obs.policy()),
                      std::to_string(obs.arm() + 1), std::to_string(obs.assigned()),
                      std::to_string(obs.opened())});
    }
}

std::vector<SummaryFileRow> read_summary_rows(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || strip_cr(line) != kSummaryHeader) {
        throw BanditError(Errc::parse_error,
                          "line 1: expected header '" + std::string(kSummaryHeader) + "'");
    }
    std::vector<SummaryFileRow> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (trim(line).empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != 5) {
            parse_fail(line_no, "expected 5 fields, got " + std::to_string(fields.size()));
        }
        auto policy = parse_policy(fields[0]);
        if (!policy) {
            parse_fail(line_no, "unknown policy token '" + fields[0] + "'");
        }
        int arm = parse_int<int>(fields[1], line_no, "arm");
        if (arm < 1) {
            parse_fail(line_no, "arm must be >= 1");
        }
        rows.push_back(SummaryFileRow{*policy, arm - 1,
                                      parse_real(fields[2], line_no, "mean_pct"),
                                      parse_real(fields[3], line_no, "se_pct"),
                                      parse_int<std::int64_t>(fields[4], line_no, "n_total")});
    }
    return rows;
}

std::vector<ArmSummary> summaries_from_rows(std::span<const SummaryFileRow> rows) {
    std::vector<ArmSummary> summaries;
    summaries.reserve(rows.size());
    for (const auto& row : rows) {
        summaries.push_back(make_summary(row.policy, row.arm, row.mean_pct / 100.0, row.n_total));
    }
    return summaries;
}

namespace {

struct SeriesWeek {
    int week;
    std::vector<double> weekly_share;  // per arm
    std::vector<double> cum_mean;      // per arm, NaN when undefined
    std::vector<double> ci_low;
    std::vector<double> ci_high;
};

std::vector<SeriesWeek> weekly_rows_for(const ExperimentTrace& trace, Policy policy) {
    const std::size_t arms = static_cast<std::size_t>(trace.config.arms);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<SeriesWeek> result;

    auto series = reporting_series(trace, policy);
    std::vector<std::int64_t> cum_assigned(arms, 0), cum_opened(arms, 0);

    std::size_t i = 0;
    while (i < series.size()) {
        int week = series[i].week();
        std::vector<std::int64_t> weekly(arms, 0);
        std::int64_t week_total = 0;
        for (; i < series.size() && series[i].week() == week; ++i) {
            const auto& obs = series[i];
            weekly[static_cast<std::size_t>(obs.arm())] += obs.assigned();
            cum_assigned[static_cast<std::size_t>(obs.arm())] += obs.assigned();
            cum_opened[static_cast<std::size_t>(obs.arm())] += obs.opened();
            week_total += obs.assigned();
        }
        if (week_total == 0) continue;  // the policy moved no subjects this week

        SeriesWeek row;
        row.week = week;
        row.weekly_share.assign(arms, 0.0);
        row.cum_mean.assign(arms, nan);
        row.ci_low.assign(arms, nan);
        row.ci_high.assign(arms, nan);
        for (std::size_t k = 0; k < arms; ++k) {
            row.weekly_share[k] =
                static_cast<double>(weekly[k]) / static_cast<double>(week_total);
            if (cum_assigned[k] > 0) {
                double mean = static_cast<double>(cum_opened[k]) /
                              static_cast<double>(cum_assigned[k]);
                ArmSummary summary =
                    make_summary(policy, static_cast<int>(k), mean, cum_assigned[k]);
                auto [low, high] = confidence_interval(summary, 0.95);
                row.cum_mean[k] = mean;
                row.ci_low[k] = low;
                row.ci_high[k] = high;
            }
        }
        result.push_back(std::move(row));
    }
    return result;
}

}  // namespace

void write_wald_csv(std::span<const WaldResult> results, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << "policy,arm_a,arm_b,statistic,p_value,adjusted_threshold,significant\n";
    for (const auto& result : results) {
        csv_row(out, {token(result.policy), std::to_string(result.arms.first + 1),
                      std::to_string(result.arms.second + 1), fmt_g(result.statistic),
                      fmt_g(result.p_value), fmt_g(result.adjusted_threshold),
                      result.significant ? "1" : "0"});
    }
}

std::vector<WaldResult> run_pairwise_analysis(std::span<const ArmSummary> summaries,
                                              double family_alpha) {
    std::vector<WaldResult> all;
    for (Policy p : kPolicies) {
        std::vector<const ArmSummary*> group;
        for (const auto& summary : summaries) {
            if (summary.policy == p && summary.defined()) group.push_back(&summary);
        }
        if (group.size() < 2) continue;
        std::sort(group.begin(), group.end(),
                  [](const ArmSummary* a, const ArmSummary* b) { return a->arm < b->arm; });

        std::vector<WaldResult> family;
        if (group.size() == 3) {
            // Match the usual three-arm presentation: 1v2, 2v3, 3v1.
            family.push_back(wald_test(*group[0], *group[1], family_alpha));
            family.push_back(wald_test(*group[1], *group[2], family_alpha));
            family.push_back(wald_test(*group[2], *group[0], family_alpha));
        } else {
            for (std::size_t i = 0; i < group.size(); ++i) {
                for (std::size_t j = i + 1; j < group.size(); ++j) {
                    family.push_back(wald_test(*group[i], *group[j], family_alpha));
                }
            }
        }
        auto adjusted = bonferroni(std::move(family), family_alpha);
        all.insert(all.end(), adjusted.begin(), adjusted.end());
    }
    return all;
}

void write_trace(const ExperimentTrace& trace, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw BanditError(Errc::io_error,
                          "cannot create " + out_dir.string() + ": " + ec.message());
    }
    const int arms = trace.config.arms;

    {
        std::ofstream out = open_out(out_dir / "weekly.csv");
        out << "week,policy,arm,cum_mean,ci_low,ci_high,weekly_share\n";
        std::array<std::vector<SeriesWeek>, 3> per_policy;
        for (Policy p : kPolicies) {
            per_policy[static_cast<std::size_t>(index_of(p))] = weekly_rows_for(trace, p);
        }
        for (const auto& week : trace.weeks) {
            for (Policy p : kPolicies) {
                const auto& rows = per_policy[static_cast<std::size_t>(index_of(p))];
                auto it = std::find_if(rows.begin(), rows.end(), [&](const SeriesWeek& row) {
                    return row.week == week.week;
                });
                if (it == rows.end()) continue;
                for (int k = 0; k < arms; ++k) {
                    auto idx = static_cast<std::size_t>(k);
                    csv_row(out, {std::to_string(week.week), token(p), std::to_string(k + 1),
                                  fmt_g(it->cum_mean[idx]), fmt_g(it->ci_low[idx]),
                                  fmt_g(it->ci_high[idx]), fmt_g(it->weekly_share[idx])});
                }
            }
        }
    }

    std::vector<ArmSummary> all_summaries;
    for (Policy p : kPolicies) {
        auto series = reporting_series(trace, p);
        auto summaries = summarize(p, series, arms);
        all_summaries.insert(all_summaries.end(), summaries.begin(), summaries.end());
    }

    {
        std::ofstream out = open_out(out_dir / "summary.csv");
        out << kSummaryHeader << '\n';
        for (const auto& summary : all_summaries) {
            csv_row(out, {token(summary.policy), std::to_string(summary.arm + 1),
                          fmt_g(summary.mean * 100.0), fmt_g(summary.se * 100.0),
                          std::to_string(summary.n_total)});
        }
    }

    write_wald_csv(run_pairwise_analysis(all_summaries, 0.05), out_dir / "wald.csv");

    {
        std::ofstream out = open_out(out_dir / "posteriors.csv");
        out << "week,policy,arm,alpha,beta\n";
        for (const auto& week : trace.weeks) {
            for (Policy p : kPolicies) {
                const auto& snapshots = trace.snapshots[static_cast<std::size_t>(index_of(p))];
                const auto& params = snapshots[static_cast<std::size_t>(week.week - 1)];
                for (int k = 0; k < arms; ++k) {
                    csv_row(out, {std::to_string(week.week), token(p), std::to_string(k + 1),
                                  fmt_g(params[static_cast<std::size_t>(k)].alpha()),
                                  fmt_g(params[static_cast<std::size_t>(k)].beta())});
                }
            }
        }
    }

    write_log(trace.observations(), out_dir / "log.csv");
}

namespace {

double quantile_sorted(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
    if (sorted.size() == 1) return sorted.front();
    double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    std::size_t lo = static_cast<std::size_t>(std::floor(h));
    std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    double w = h - std::floor(h);
    return sorted[lo] * (1.0 - w) + sorted[hi] * w;
}

}  // namespace

void write_replications(std::span<const ReplicationResult> results, int arms,
                        const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw BanditError(Errc::io_error,
                          "cannot create " + out_dir.string() + ": " + ec.message());
    }

    {
        std::ofstream out = open_out(out_dir / "replications.csv");
        out << "replication,policy,arm,mean_pct,se_pct,n_total,cumulative_share\n";
        for (const auto& result : results) {
            for (Policy p : kPolicies) {
                auto idx = static_cast<std::size_t>(index_of(p));
                auto summaries = summarize(p, result.assigned[idx], result.opened[idx]);
                for (int k = 0; k < arms; ++k) {
                    const auto& summary = summaries[static_cast<std::size_t>(k)];
                    csv_row(out,
                            {std::to_string(result.replication), token(p), std::to_string(k + 1),
                             fmt_g(summary.mean * 100.0), fmt_g(summary.se * 100.0),
                             std::to_string(summary.n_total),
                             fmt_g(result.cumulative_share[idx][static_cast<std::size_t>(k)])});
                }
            }
        }
    }

    {
        std::ofstream out = open_out(out_dir / "replication_summary.csv");
        out << "policy,arm,metric,p05,p25,p50,p75,p95\n";
        static constexpr double kProbs[] = {0.05, 0.25, 0.50, 0.75, 0.95};
        for (Policy p : kPolicies) {
            auto idx = static_cast<std::size_t>(index_of(p));
            for (int k = 0; k < arms; ++k) {
                std::vector<double> means, shares;
                for (const auto& result : results) {
                    auto arm = static_cast<std::size_t>(k);
                    if (result.assigned[idx][arm] > 0) {
                        means.push_back(100.0 * static_cast<double>(result.opened[idx][arm]) /
                                        static_cast<double>(result.assigned[idx][arm]));
                    }
                    shares.push_back(result.cumulative_share[idx][arm]);
                }
                std::sort(means.begin(), means.end());
                std::sort(shares.begin(), shares.end());
                for (const char* metric : {"mean_pct", "cumulative_share"}) {
                    const auto& values = std::string_view(metric) == "mean_pct" ? means : shares;
                    std::vector<std::string> fields{token(p), std::to_string(k + 1), metric};
                    for (double prob : kProbs) {
                        fields.push_back(fmt_g(quantile_sorted(values, prob)));
                    }
                    csv_row(out, fields);
                }
            }
        }
    }
}

void print_summary_table(std::ostream& out, std::span<const ArmSummary> summaries) {
    out << "policy  arm   mean%     se%     n\n";
    for (const auto& summary : summaries) {
        std::string policy = display_name(summary.policy);
        out << policy;
        // UTF-8 dagger is one column wide but three bytes; pad by display width.
        int width = summary.policy == Policy::TSD ? 3 : static_cast<int>(policy.size());
        for (int i = width; i < 6; ++i) out << ' ';
        out << "  " << std::setw(3) << summary.arm + 1 << "  " << std::setw(6)
            << fmt_fixed(summary.mean * 100.0, 2) << "  " << std::setw(6)
            << fmt_fixed(summary.se * 100.0, 2) << "  " << std::setw(6) << summary.n_total
            << '\n';
    }
}

void print_wald_table(std::ostream& out, std::span<const WaldResult> results) {
    out << "policy  comparison      statistic  p-value  threshold  significant\n";
    for (const auto& result : results) {
        std::string policy = display_name(result.policy);
        out << policy;
        int width = result.policy == Policy::TSD ? 3 : static_cast<int>(policy.size());
        for (int i = width; i < 6; ++i) out << ' ';
        std::string cmp = "arm " + std::to_string(result.arms.first + 1) + " vs arm " +
                          std::to_string(result.arms.second + 1);
        out << "  " << cmp << std::string(cmp.size() < 14 ? 14 - cmp.size() : 0, ' ') << "  "
            << std::setw(9) << fmt_fixed(result.statistic, 3) << "  " << std::setw(7)
            << fmt_fixed(result.p_value, 3) << "  " << std::setw(9)
            << fmt_fixed(result.adjusted_threshold, 4) << "  "
            << (result.significant ? "yes" : "no") << '\n';
    }
}

}  // namespace bandit
