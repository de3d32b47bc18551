#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bandit/errors.hpp"

namespace bandit {

/// Allocation policies. TSD is the hybrid that allocates like TS but mixes
/// half-weighted evidence from itself and from the uniform arm of the study.
enum class Policy : int { UR = 0, TS = 1, TSD = 2 };

inline constexpr std::array<Policy, 3> kPolicies{Policy::UR, Policy::TS, Policy::TSD};

/// ASCII file token: "UR", "TS", "TSD".
const char* token(Policy policy);

/// Human-readable name; the hybrid renders with its dagger, "TS†".
const char* display_name(Policy policy);

std::optional<Policy> parse_policy(std::string_view text);

inline int index_of(Policy policy) { return static_cast<int>(policy); }

/// Beta posterior pseudo-counts for one arm. Parameters are reals, not
/// integers: the hybrid policy adds half-weighted counts. Both stay >= 1
/// because initialization is (1,1) and updates only add non-negative mass.
class BetaParams {
public:
    BetaParams() = default;
    BetaParams(double alpha, double beta);

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double mean() const { return alpha_ / (alpha_ + beta_); }

    /// Adds successes to alpha and failures to beta. Both must be finite
    /// and non-negative.
    void add(double successes, double failures);

    bool operator==(const BetaParams&) const = default;

private:
    double alpha_ = 1.0;
    double beta_ = 1.0;
};

/// One week's aggregate outcome for one (policy, arm) cell: `assigned`
/// subjects received the arm, `opened` of them produced a reward.
class BatchObservation {
public:
    BatchObservation(int week, Policy policy, int arm, std::int64_t assigned,
                     std::int64_t opened);

    int week() const { return week_; }
    Policy policy() const { return policy_; }
    int arm() const { return arm_; }
    std::int64_t assigned() const { return assigned_; }
    std::int64_t opened() const { return opened_; }
    std::int64_t missed() const { return assigned_ - opened_; }

    bool operator==(const BatchObservation&) const = default;

private:
    int week_;
    Policy policy_;
    int arm_;
    std::int64_t assigned_;
    std::int64_t opened_;
};

/// Full experiment shape. Weeks are 1-based; arms are 0-based internally
/// and 1-based in every file and report.
///
/// Week schedule: weeks 1..burn_in allocate everything uniformly and all
/// three policies share that data. From ts_intro_week the cohort splits
/// between UR and TS by `transition_split`; from ts_dagger_intro_week it
/// splits across all three by `split`. Setting an intro week to horizon+1
/// disables that policy.
struct ExperimentConfig {
    int arms = 3;
    int horizon = 13;
    int burn_in = 5;
    int ts_intro_week = 6;
    int ts_dagger_intro_week = 7;
    std::vector<std::int64_t> cohort_sizes;      // one entry per week
    std::array<double, 3> split{0.5, 0.25, 0.25};       // UR, TS, TSD
    std::array<double, 2> transition_split{0.5, 0.5};   // UR, TS
    std::uint64_t seed = 0;

    static std::vector<std::int64_t> constant_cohort(std::int64_t size, int weeks);
    /// Linear interpolation from `first` to `last`, rounded half away from zero.
    static std::vector<std::int64_t> linear_cohort(std::int64_t first, std::int64_t last,
                                                   int weeks);
};

struct ConfigIssue {
    Errc code;
    std::string message;
};

/// Checks every config invariant and returns one issue per violation;
/// an empty vector means the config is valid.
std::vector<ConfigIssue> validate_config(const ExperimentConfig& cfg);

/// Throws BanditError(validation_error) listing all issues if any exist.
void require_valid(const ExperimentConfig& cfg);

/// The 13-week, 3-arm reference deployment: burn-in of 5 weeks, TS from
/// week 6, the hybrid from week 7, cohort declining 1119 -> 1025.
ExperimentConfig reference_config(std::uint64_t seed);

/// True Bernoulli reward probability per (week, arm).
class EnvironmentSchedule {
public:
    static EnvironmentSchedule stationary(const std::vector<double>& row, int weeks);
    static EnvironmentSchedule piecewise(std::vector<std::vector<double>> rows);

    int weeks() const { return static_cast<int>(rows_.size()); }
    int arms() const { return arms_; }
    /// Means for a 1-based week.
    const std::vector<double>& week_means(int week) const;
    bool is_stationary() const;

private:
    EnvironmentSchedule(int arms, std::vector<std::vector<double>> rows);

    int arms_;
    std::vector<std::vector<double>> rows_;
};

/// Evidence item consumed by a policy's posterior: the observation plus the
/// weight its counts entered with (1 for own/shared data, 0.5 for the
/// hybrid's mixed updates).
struct WeightedObservation {
    BatchObservation obs;
    double weight;
};

/// Posterior state of one policy across all arms, plus the evidence that
/// produced it. Invariant: for every arm, alpha + beta - 2 equals the
/// weight-summed assigned counts of the history entries for that arm.
class PolicyState {
public:
    PolicyState(Policy policy, int arms);

    Policy policy() const { return policy_; }
    int arms() const { return static_cast<int>(posteriors_.size()); }
    const BetaParams& posterior(int arm) const;
    const std::vector<BetaParams>& posteriors() const { return posteriors_; }
    const std::vector<WeightedObservation>& history() const { return history_; }

    /// Folds an observation into the posterior at the given weight and
    /// appends it to the history. Policy update rules live in policies.hpp;
    /// this only maintains the pseudo-count bookkeeping.
    void absorb(const BatchObservation& obs, double weight);

    /// Weight-summed assigned count over the history for one arm
    /// (equals alpha + beta - 2 for that arm).
    double evidence_total(int arm) const;

private:
    Policy policy_;
    std::vector<BetaParams> posteriors_;
    std::vector<WeightedObservation> history_;
};

}  // namespace bandit
