#include "bandit/types.hpp"

#include <cmath>
#include <sstream>

namespace bandit {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::split_not_normalized: return "SPLIT_NOT_NORMALIZED";
        case Errc::bad_week_ordering: return "BAD_WEEK_ORDERING";
        case Errc::empty_cohort: return "EMPTY_COHORT";
        case Errc::bad_dimensions: return "BAD_DIMENSIONS";
        case Errc::out_of_range: return "OUT_OF_RANGE";
        case Errc::reward_exceeds_assigned: return "REWARD_EXCEEDS_ASSIGNED";
        case Errc::policy_not_active: return "POLICY_NOT_ACTIVE";
        case Errc::missing_source: return "MISSING_SOURCE";
        case Errc::incomplete_log: return "INCOMPLETE_LOG";
        case Errc::duplicate_row: return "DUPLICATE_ROW";
        case Errc::parse_error: return "PARSE_ERROR";
        case Errc::validation_error: return "VALIDATION_ERROR";
        case Errc::undefined_summary: return "UNDEFINED_SUMMARY";
        case Errc::io_error: return "IO_ERROR";
    }
    return "UNKNOWN";
}

const char* token(Policy policy) {
    switch (policy) {
        case Policy::UR: return "UR";
        case Policy::TS: return "TS";
        case Policy::TSD: return "TSD";
    }
    return "?";
}

const char* display_name(Policy policy) {
    switch (policy) {
        case Policy::UR: return "UR";
        case Policy::TS: return "TS";
        case Policy::TSD: return "TS†";
    }
    return "?";
}

std::optional<Policy> parse_policy(std::string_view text) {
    if (text == "UR") return Policy::UR;
    if (text == "TS") return Policy::TS;
    if (text == "TSD") return Policy::TSD;
    return std::nullopt;
}

BetaParams::BetaParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!(std::isfinite(alpha) && std::isfinite(beta)) || alpha < 1.0 || beta < 1.0) {
        throw BanditError(Errc::out_of_range,
                          "Beta parameters must be finite and >= 1, got (" +
                              std::to_string(alpha) + ", " + std::to_string(beta) + ")");
    }
}

void BetaParams::add(double successes, double failures) {
    if (!(std::isfinite(successes) && std::isfinite(failures)) || successes < 0.0 ||
        failures < 0.0) {
        throw BanditError(Errc::out_of_range, "posterior increments must be non-negative");
    }
    alpha_ += successes;
    beta_ += failures;
}

BatchObservation::BatchObservation(int week, Policy policy, int arm, std::int64_t assigned,
                                   std::int64_t opened)
    : week_(week), policy_(policy), arm_(arm), assigned_(assigned), opened_(opened) {
    if (week < 1) {
        throw BanditError(Errc::out_of_range, "week must be >= 1");
    }
    if (arm < 0) {
        throw BanditError(Errc::out_of_range, "arm index must be >= 0");
    }
    if (assigned < 0) {
        throw BanditError(Errc::out_of_range, "assigned count must be >= 0");
    }
    if (opened < 0 || opened > assigned) {
        throw BanditError(Errc::reward_exceeds_assigned,
                          "opened=" + std::to_string(opened) + " outside [0, assigned=" +
                              std::to_string(assigned) + "]");
    }
}

std::vector<std::int64_t> ExperimentConfig::constant_cohort(std::int64_t size, int weeks) {
    return std::vector<std::int64_t>(static_cast<std::size_t>(weeks < 0 ? 0 : weeks), size);
}

std::vector<std::int64_t> ExperimentConfig::linear_cohort(std::int64_t first, std::int64_t last,
                                                          int weeks) {
    std::vector<std::int64_t> sizes;
    sizes.reserve(static_cast<std::size_t>(weeks < 0 ? 0 : weeks));
    for (int t = 0; t < weeks; ++t) {
        if (weeks == 1) {
            sizes.push_back(first);
        } else {
            double value = static_cast<double>(first) +
                           static_cast<double>(last - first) * t / (weeks - 1);
            sizes.push_back(std::llround(value));
        }
    }
    return sizes;
}

namespace {

bool normalized(const double* fractions, std::size_t count) {
    double sum = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        if (!(fractions[i] >= 0.0)) return false;
        sum += fractions[i];
    }
    return std::abs(sum - 1.0) <= 1e-12;
}

}  // namespace

std::vector<ConfigIssue> validate_config(const ExperimentConfig& cfg) {
    std::vector<ConfigIssue> issues;
    auto add = [&](Errc code, std::string message) {
        issues.push_back(ConfigIssue{code, std::move(message)});
    };

    if (cfg.arms < 2) {
        add(Errc::bad_dimensions, "arms must be >= 2, got " + std::to_string(cfg.arms));
    }
    if (cfg.horizon < 1) {
        add(Errc::bad_dimensions, "horizon must be >= 1, got " + std::to_string(cfg.horizon));
    }
    if (cfg.burn_in < 0) {
        add(Errc::bad_week_ordering, "burn_in must be >= 0");
    }
    if (!(cfg.burn_in < cfg.ts_intro_week)) {
        add(Errc::bad_week_ordering,
            "burn_in=" + std::to_string(cfg.burn_in) + " must be < ts_intro_week=" +
                std::to_string(cfg.ts_intro_week));
    }
    if (!(cfg.ts_intro_week <= cfg.ts_dagger_intro_week)) {
        add(Errc::bad_week_ordering,
            "ts_intro_week=" + std::to_string(cfg.ts_intro_week) +
                " must be <= ts_dagger_intro_week=" + std::to_string(cfg.ts_dagger_intro_week));
    }
    if (!(cfg.ts_dagger_intro_week <= cfg.horizon + 1)) {
        add(Errc::bad_week_ordering,
            "ts_dagger_intro_week=" + std::to_string(cfg.ts_dagger_intro_week) +
                " must be <= horizon+1=" + std::to_string(cfg.horizon + 1));
    }
    if (cfg.cohort_sizes.size() != static_cast<std::size_t>(cfg.horizon > 0 ? cfg.horizon : 0)) {
        add(Errc::empty_cohort,
            "cohort_sizes has " + std::to_string(cfg.cohort_sizes.size()) + " entries, expected " +
                std::to_string(cfg.horizon));
    }
    for (std::size_t i = 0; i < cfg.cohort_sizes.size(); ++i) {
        if (cfg.cohort_sizes[i] < 1) {
            add(Errc::empty_cohort, "cohort size for week " + std::to_string(i + 1) +
                                        " must be positive, got " +
                                        std::to_string(cfg.cohort_sizes[i]));
        }
    }
    if (!normalized(cfg.split.data(), cfg.split.size())) {
        add(Errc::split_not_normalized,
            "split fractions must be non-negative and sum to 1 within 1e-12");
    }
    if (!normalized(cfg.transition_split.data(), cfg.transition_split.size())) {
        add(Errc::split_not_normalized,
            "transition_split fractions must be non-negative and sum to 1 within 1e-12");
    }
    return issues;
}

void require_valid(const ExperimentConfig& cfg) {
    auto issues = validate_config(cfg);
    if (issues.empty()) return;
    std::ostringstream msg;
    for (std::size_t i = 0; i < issues.size(); ++i) {
        if (i > 0) msg << "; ";
        msg << errc_name(issues[i].code) << ": " << issues[i].message;
    }
    throw BanditError(Errc::validation_error, msg.str());
}

ExperimentConfig reference_config(std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.arms = 3;
    cfg.horizon = 13;
    cfg.burn_in = 5;
    cfg.ts_intro_week = 6;
    cfg.ts_dagger_intro_week = 7;
    cfg.cohort_sizes = ExperimentConfig::linear_cohort(1119, 1025, 13);
    cfg.split = {0.5, 0.25, 0.25};
    cfg.transition_split = {0.5, 0.5};
    cfg.seed = seed;
    return cfg;
}

EnvironmentSchedule::EnvironmentSchedule(int arms, std::vector<std::vector<double>> rows)
    : arms_(arms), rows_(std::move(rows)) {}

EnvironmentSchedule EnvironmentSchedule::stationary(const std::vector<double>& row, int weeks) {
    if (row.empty() || weeks < 0) {
        throw BanditError(Errc::bad_dimensions, "stationary schedule needs a non-empty mean row");
    }
    for (double p : row) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw BanditError(Errc::out_of_range,
                              "mean " + std::to_string(p) + " outside [0,1]");
        }
    }
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(weeks), row);
    return EnvironmentSchedule(static_cast<int>(row.size()), std::move(rows));
}

EnvironmentSchedule EnvironmentSchedule::piecewise(std::vector<std::vector<double>> rows) {
    if (rows.empty()) {
        throw BanditError(Errc::bad_dimensions, "piecewise schedule needs at least one row");
    }
    std::size_t arms = rows.front().size();
    if (arms == 0) {
        throw BanditError(Errc::bad_dimensions, "schedule rows must be non-empty");
    }
    for (std::size_t t = 0; t < rows.size(); ++t) {
        if (rows[t].size() != arms) {
            throw BanditError(Errc::bad_dimensions,
                              "row " + std::to_string(t + 1) + " has " +
                                  std::to_string(rows[t].size()) + " entries, expected " +
                                  std::to_string(arms));
        }
        for (double p : rows[t]) {
            if (!(p >= 0.0 && p <= 1.0)) {
                throw BanditError(Errc::out_of_range,
                                  "mean " + std::to_string(p) + " in row " +
                                      std::to_string(t + 1) + " outside [0,1]");
            }
        }
    }
    return EnvironmentSchedule(static_cast<int>(arms), std::move(rows));
}

const std::vector<double>& EnvironmentSchedule::week_means(int week) const {
    if (week < 1 || week > weeks()) {
        throw BanditError(Errc::out_of_range, "week " + std::to_string(week) +
                                                  " outside schedule of " +
                                                  std::to_string(weeks()) + " weeks");
    }
    return rows_[static_cast<std::size_t>(week - 1)];
}

bool EnvironmentSchedule::is_stationary() const {
    for (std::size_t t = 1; t < rows_.size(); ++t) {
        if (rows_[t] != rows_.front()) return false;
    }
    return true;
}

PolicyState::PolicyState(Policy policy, int arms) : policy_(policy) {
    if (arms < 1) {
        throw BanditError(Errc::bad_dimensions, "policy state needs at least one arm");
    }
    posteriors_.assign(static_cast<std::size_t>(arms), BetaParams{});
}

const BetaParams& PolicyState::posterior(int arm) const {
    if (arm < 0 || arm >= arms()) {
        throw BanditError(Errc::out_of_range, "arm " + std::to_string(arm) + " out of range");
    }
    return posteriors_[static_cast<std::size_t>(arm)];
}

void PolicyState::absorb(const BatchObservation& obs, double weight) {
    if (obs.arm() >= arms()) {
        throw BanditError(Errc::out_of_range,
                          "observation arm " + std::to_string(obs.arm()) + " out of range");
    }
    if (!(weight >= 0.0) || !std::isfinite(weight)) {
        throw BanditError(Errc::out_of_range, "evidence weight must be non-negative");
    }
    posteriors_[static_cast<std::size_t>(obs.arm())].add(
        weight * static_cast<double>(obs.opened()), weight * static_cast<double>(obs.missed()));
    history_.push_back(WeightedObservation{obs, weight});
}

double PolicyState::evidence_total(int arm) const {
    double total = 0.0;
    for (const auto& entry : history_) {
        if (entry.obs.arm() == arm) {
            total += entry.weight * static_cast<double>(entry.obs.assigned());
        }
    }
    return total;
}

}  // namespace bandit
