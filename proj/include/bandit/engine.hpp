#pragma once

#include <span>

#include "bandit/environment.hpp"
#include "bandit/policies.hpp"
#include "bandit/types.hpp"

namespace bandit {

/// Everything observed in one week: one BatchObservation per (allocating
/// policy, arm), ordered UR < TS < TSD, then by arm.
struct WeeklyOutcome {
    int week;
    std::vector<BatchObservation> observations;
};

/// Complete record of one experiment run: the raw weekly observations,
/// per-policy posterior snapshots after every week, and the final states.
struct ExperimentTrace {
    ExperimentConfig config;
    std::vector<WeeklyOutcome> weeks;
    /// snapshots[policy][week-1][arm]; one snapshot per week per policy.
    std::array<std::vector<std::vector<BetaParams>>, 3> snapshots;
    std::vector<PolicyState> final_states;  // indexed by Policy

    /// All observations flattened in (week, policy, arm) order.
    std::vector<BatchObservation> observations() const;
};

/// Splits `total` subjects across fractions by largest-remainder rounding;
/// the result sums exactly to `total` and each entry is within 1 of
/// total*fraction. Remainder ties go to the lower index.
std::vector<std::int64_t> split_cohort(std::int64_t total, std::span<const double> fractions);

/// Runs the full weekly schedule: burn-in weeks allocate everything
/// uniformly and feed all three posteriors; from ts_intro_week the cohort
/// splits between UR and TS and the hybrid shadows them with half-weighted
/// updates; from ts_dagger_intro_week all three allocate. `replication`
/// labels the random streams so independent replications never share draws.
ExperimentTrace run_experiment(const ExperimentConfig& cfg, const EnvironmentSchedule& env,
                               std::uint64_t replication);

inline ExperimentTrace run_experiment(const ExperimentConfig& cfg,
                                      const EnvironmentSchedule& env) {
    return run_experiment(cfg, env, 0);
}

/// Rebuilds posterior trajectories from a recorded observation log without
/// any sampling. The weekly schedule (arm count, burn-in, intro weeks) is
/// inferred from which policies appear in which weeks; burn-in is taken to
/// end the week before the first TS rows.
ExperimentTrace replay(std::span<const BatchObservation> log);

/// Replay under an explicit config (needed when the schedule is not
/// inferable, e.g. uniform-only gap weeks after the burn-in).
ExperimentTrace replay(std::span<const BatchObservation> log, const ExperimentConfig& cfg);

/// The observation series a policy's cumulative report is built from:
/// shared burn-in data, then the policy's own allocations. For the hybrid,
/// the transition week duplicates the TS observations that seeded its
/// posterior.
std::vector<BatchObservation> reporting_series(const ExperimentTrace& trace, Policy policy);

/// Per-replication final aggregates over each policy's reporting series.
struct ReplicationResult {
    std::uint64_t replication = 0;
    std::array<std::vector<std::int64_t>, 3> assigned;        // [policy][arm]
    std::array<std::vector<std::int64_t>, 3> opened;          // [policy][arm]
    std::array<std::vector<double>, 3> cumulative_share;      // [policy][arm]
};

ReplicationResult summarize_replication(const ExperimentTrace& trace, std::uint64_t replication);

/// Monte Carlo driver: runs `count` independent replications. Results are
/// a function of (cfg, env, replication index) only, never of worker
/// scheduling. `workers` <= 0 uses all available cores.
std::vector<ReplicationResult> run_replications(const ExperimentConfig& cfg,
                                                const EnvironmentSchedule& env,
                                                std::int64_t count, int workers);

/// Serial reference for run_replications; kept for equivalence tests and
/// benchmarking.
std::vector<ReplicationResult> run_replications_serial(const ExperimentConfig& cfg,
                                                       const EnvironmentSchedule& env,
                                                       std::int64_t count);

}  // namespace bandit
