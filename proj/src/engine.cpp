#include "bandit/engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bandit {

std::vector<BatchObservation> ExperimentTrace::observations() const {
    std::vector<BatchObservation> all;
    for (const auto& week : weeks) {
        all.insert(all.end(), week.observations.begin(), week.observations.end());
    }
    return all;
}

std::vector<std::int64_t> split_cohort(std::int64_t total, std::span<const double> fractions) {
    if (total < 0) {
        throw BanditError(Errc::out_of_range, "cohort total must be >= 0");
    }
    double sum = 0.0;
    for (double f : fractions) {
        if (!(f >= 0.0)) {
            throw BanditError(Errc::split_not_normalized, "fractions must be non-negative");
        }
        sum += f;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw BanditError(Errc::split_not_normalized, "fractions must sum to 1 within 1e-12");
    }

    std::vector<std::int64_t> counts(fractions.size(), 0);
    std::vector<double> remainders(fractions.size(), 0.0);
    std::int64_t assigned = 0;
    for (std::size_t i = 0; i < fractions.size(); ++i) {
        double exact = static_cast<double>(total) * fractions[i];
        counts[i] = static_cast<std::int64_t>(std::floor(exact));
        remainders[i] = exact - std::floor(exact);
        assigned += counts[i];
    }
    std::vector<std::size_t> order(fractions.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
    for (std::size_t i = 0; assigned < total && i < order.size(); ++i, ++assigned) {
        counts[order[i]] += 1;
    }
    return counts;
}

namespace {

enum class WeekPhase { burn_in, gap, transition, full };

WeekPhase phase_of(const ExperimentConfig& cfg, int week) {
    if (week <= cfg.burn_in) return WeekPhase::burn_in;
    if (week < cfg.ts_intro_week) return WeekPhase::gap;
    if (week < cfg.ts_dagger_intro_week) return WeekPhase::transition;
    return WeekPhase::full;
}

void check_environment(const ExperimentConfig& cfg, const EnvironmentSchedule& env) {
    if (env.weeks() != cfg.horizon || env.arms() != cfg.arms) {
        throw BanditError(Errc::bad_dimensions,
                          "environment is " + std::to_string(env.weeks()) + "x" +
                              std::to_string(env.arms()) + ", config needs " +
                              std::to_string(cfg.horizon) + "x" + std::to_string(cfg.arms));
    }
}

void snapshot_week(ExperimentTrace& trace, const std::vector<PolicyState>& states) {
    for (Policy p : kPolicies) {
        trace.snapshots[static_cast<std::size_t>(index_of(p))].push_back(
            states[static_cast<std::size_t>(index_of(p))].posteriors());
    }
}

}  // namespace

ExperimentTrace run_experiment(const ExperimentConfig& cfg, const EnvironmentSchedule& env,
                               std::uint64_t replication) {
    require_valid(cfg);
    check_environment(cfg, env);
    const int arms = cfg.arms;

    std::vector<PolicyState> states;
    states.reserve(kPolicies.size());
    for (Policy p : kPolicies) states.emplace_back(p, arms);

    ExperimentTrace trace;
    trace.config = cfg;

    auto run_policy_week = [&](Policy p, int week, std::int64_t batch,
                               const std::vector<double>& means) {
        RngStream alloc_rng =
            make_stream(cfg.seed, replication, static_cast<std::uint32_t>(week), p,
                        StreamPurpose::allocation);
        AllocationResult alloc =
            p == Policy::UR
                ? ur_allocate(batch, arms, alloc_rng)
                : ts_allocate(states[static_cast<std::size_t>(index_of(p))].posteriors(), batch,
                              alloc_rng);
        RngStream reward_rng = make_stream(cfg.seed, replication, static_cast<std::uint32_t>(week),
                                           p, StreamPurpose::reward);
        std::vector<std::int64_t> opened = draw_rewards(alloc, means, reward_rng);
        std::vector<BatchObservation> obs;
        obs.reserve(static_cast<std::size_t>(arms));
        for (int k = 0; k < arms; ++k) {
            obs.emplace_back(week, p, k, alloc.counts[static_cast<std::size_t>(k)],
                             opened[static_cast<std::size_t>(k)]);
        }
        return obs;
    };

    auto& ur_state = states[static_cast<std::size_t>(index_of(Policy::UR))];
    auto& ts_state = states[static_cast<std::size_t>(index_of(Policy::TS))];
    auto& tsd_state = states[static_cast<std::size_t>(index_of(Policy::TSD))];

    for (int t = 1; t <= cfg.horizon; ++t) {
        const std::vector<double>& means = env.week_means(t);
        const std::int64_t cohort = cfg.cohort_sizes[static_cast<std::size_t>(t - 1)];
        WeeklyOutcome outcome{t, {}};

        switch (phase_of(cfg, t)) {
            case WeekPhase::burn_in: {
                auto ur_obs = run_policy_week(Policy::UR, t, cohort, means);
                for (int k = 0; k < arms; ++k) {
                    const auto& obs = ur_obs[static_cast<std::size_t>(k)];
                    ur_state = ur_update(std::move(ur_state), obs);
                    ts_state = ur_update(std::move(ts_state), obs);
                    tsd_state = ur_update(std::move(tsd_state), obs);
                }
                outcome.observations = std::move(ur_obs);
                break;
            }
            case WeekPhase::gap: {
                // Uniform-only weeks between burn-in and the TS introduction:
                // TS and the hybrid stay frozen, they no longer track UR.
                auto ur_obs = run_policy_week(Policy::UR, t, cohort, means);
                for (int k = 0; k < arms; ++k) {
                    ur_state = ur_update(std::move(ur_state), ur_obs[static_cast<std::size_t>(k)]);
                }
                outcome.observations = std::move(ur_obs);
                break;
            }
            case WeekPhase::transition: {
                auto parts = split_cohort(cohort, cfg.transition_split);
                auto ur_obs = run_policy_week(Policy::UR, t, parts[0], means);
                auto ts_obs = run_policy_week(Policy::TS, t, parts[1], means);
                for (int k = 0; k < arms; ++k) {
                    const auto& ur_k = ur_obs[static_cast<std::size_t>(k)];
                    const auto& ts_k = ts_obs[static_cast<std::size_t>(k)];
                    ur_state = ur_update(std::move(ur_state), ur_k);
                    ts_state = ts_update(std::move(ts_state), ts_k, cfg.ts_intro_week);
                    tsd_state =
                        ts_dagger_update(std::move(tsd_state), ts_k, ur_k, std::nullopt);
                }
                outcome.observations = std::move(ur_obs);
                outcome.observations.insert(outcome.observations.end(), ts_obs.begin(),
                                            ts_obs.end());
                break;
            }
            case WeekPhase::full: {
                auto parts = split_cohort(cohort, cfg.split);
                auto ur_obs = run_policy_week(Policy::UR, t, parts[0], means);
                auto ts_obs = run_policy_week(Policy::TS, t, parts[1], means);
                auto tsd_obs = run_policy_week(Policy::TSD, t, parts[2], means);
                for (int k = 0; k < arms; ++k) {
                    const auto& ur_k = ur_obs[static_cast<std::size_t>(k)];
                    const auto& ts_k = ts_obs[static_cast<std::size_t>(k)];
                    const auto& tsd_k = tsd_obs[static_cast<std::size_t>(k)];
                    ur_state = ur_update(std::move(ur_state), ur_k);
                    ts_state = ts_update(std::move(ts_state), ts_k, cfg.ts_intro_week);
                    tsd_state = ts_dagger_update(std::move(tsd_state), ts_k, ur_k, tsd_k);
                }
                outcome.observations = std::move(ur_obs);
                outcome.observations.insert(outcome.observations.end(), ts_obs.begin(),
                                            ts_obs.end());
                outcome.observations.insert(outcome.observations.end(), tsd_obs.begin(),
                                            tsd_obs.end());
                break;
            }
        }

        trace.weeks.push_back(std::move(outcome));
        snapshot_week(trace, states);
    }

    trace.final_states = std::move(states);
    return trace;
}

namespace {

struct InferredSchedule {
    int arms = 0;
    int horizon = 0;
    int burn_in = 0;
    int ts_intro_week = 0;
    int ts_dagger_intro_week = 0;
};

InferredSchedule infer_schedule(std::span<const BatchObservation> log) {
    InferredSchedule s;
    int first_ts = 0, first_tsd = 0;
    for (const auto& obs : log) {
        s.horizon = std::max(s.horizon, obs.week());
        s.arms = std::max(s.arms, obs.arm() + 1);
        if (obs.policy() == Policy::TS && (first_ts == 0 || obs.week() < first_ts)) {
            first_ts = obs.week();
        }
        if (obs.policy() == Policy::TSD && (first_tsd == 0 || obs.week() < first_tsd)) {
            first_tsd = obs.week();
        }
    }
    s.ts_intro_week = first_ts == 0 ? s.horizon + 1 : first_ts;
    s.ts_dagger_intro_week = first_tsd == 0 ? s.horizon + 1 : first_tsd;
    s.burn_in = std::min(s.ts_intro_week - 1, s.horizon);
    return s;
}

ExperimentTrace replay_impl(std::span<const BatchObservation> log, const InferredSchedule& s,
                            ExperimentConfig cfg_template) {
    if (s.ts_intro_week > s.ts_dagger_intro_week) {
        throw BanditError(Errc::validation_error,
                          "log shows the hybrid allocating before TS (week " +
                              std::to_string(s.ts_dagger_intro_week) + " vs " +
                              std::to_string(s.ts_intro_week) + ")");
    }

    std::map<std::tuple<int, int, int>, const BatchObservation*> cells;
    for (const auto& obs : log) {
        auto key = std::make_tuple(obs.week(), index_of(obs.policy()), obs.arm());
        if (!cells.emplace(key, &obs).second) {
            throw BanditError(Errc::duplicate_row,
                              "duplicate observation for week " + std::to_string(obs.week()) +
                                  ", policy " + token(obs.policy()) + ", arm " +
                                  std::to_string(obs.arm() + 1));
        }
    }

    ExperimentConfig cfg = std::move(cfg_template);
    cfg.arms = s.arms;
    cfg.horizon = s.horizon;
    cfg.burn_in = s.burn_in;
    cfg.ts_intro_week = s.ts_intro_week;
    cfg.ts_dagger_intro_week = s.ts_dagger_intro_week;
    cfg.cohort_sizes.assign(static_cast<std::size_t>(s.horizon), 0);

    ExperimentTrace trace;
    if (s.horizon == 0) {
        trace.config = cfg;
        return trace;
    }

    std::vector<PolicyState> states;
    for (Policy p : kPolicies) states.emplace_back(p, s.arms);
    std::size_t used = 0;

    auto fetch = [&](int week, Policy p, int arm) -> const BatchObservation& {
        auto it = cells.find(std::make_tuple(week, index_of(p), arm));
        if (it == cells.end()) {
            throw BanditError(Errc::incomplete_log,
                              "missing observation for week " + std::to_string(week) +
                                  ", policy " + token(p) + ", arm " + std::to_string(arm + 1));
        }
        ++used;
        return *it->second;
    };

    auto& ur_state = states[static_cast<std::size_t>(index_of(Policy::UR))];
    auto& ts_state = states[static_cast<std::size_t>(index_of(Policy::TS))];
    auto& tsd_state = states[static_cast<std::size_t>(index_of(Policy::TSD))];

    for (int t = 1; t <= s.horizon; ++t) {
        WeeklyOutcome outcome{t, {}};
        const bool shared = t <= s.burn_in;
        const bool ts_active = t >= s.ts_intro_week;
        const bool tsd_active = t >= s.ts_dagger_intro_week;

        std::vector<const BatchObservation*> ur_row, ts_row, tsd_row;
        for (int k = 0; k < s.arms; ++k) ur_row.push_back(&fetch(t, Policy::UR, k));
        if (ts_active) {
            for (int k = 0; k < s.arms; ++k) ts_row.push_back(&fetch(t, Policy::TS, k));
        }
        if (tsd_active) {
            for (int k = 0; k < s.arms; ++k) tsd_row.push_back(&fetch(t, Policy::TSD, k));
        }

        std::int64_t cohort = 0;
        for (int k = 0; k < s.arms; ++k) {
            const auto& ur_k = *ur_row[static_cast<std::size_t>(k)];
            cohort += ur_k.assigned();
            ur_state = ur_update(std::move(ur_state), ur_k);
            if (shared) {
                ts_state = ur_update(std::move(ts_state), ur_k);
                tsd_state = ur_update(std::move(tsd_state), ur_k);
            }
            if (ts_active) {
                const auto& ts_k = *ts_row[static_cast<std::size_t>(k)];
                cohort += ts_k.assigned();
                ts_state = ts_update(std::move(ts_state), ts_k, s.ts_intro_week);
                if (tsd_active) {
                    const auto& tsd_k = *tsd_row[static_cast<std::size_t>(k)];
                    cohort += tsd_k.assigned();
                    tsd_state = ts_dagger_update(std::move(tsd_state), ts_k, ur_k, tsd_k);
                } else {
                    tsd_state = ts_dagger_update(std::move(tsd_state), ts_k, ur_k, std::nullopt);
                }
            }
        }
        cfg.cohort_sizes[static_cast<std::size_t>(t - 1)] = cohort;

        for (const auto* obs : ur_row) outcome.observations.push_back(*obs);
        for (const auto* obs : ts_row) outcome.observations.push_back(*obs);
        for (const auto* obs : tsd_row) outcome.observations.push_back(*obs);
        trace.weeks.push_back(std::move(outcome));
        snapshot_week(trace, states);
    }

    if (used != cells.size()) {
        for (const auto& [key, obs] : cells) {
            const auto& [week, policy, arm] = key;
            bool expected = (policy == index_of(Policy::UR)) ||
                            (policy == index_of(Policy::TS) && week >= s.ts_intro_week) ||
                            (policy == index_of(Policy::TSD) && week >= s.ts_dagger_intro_week);
            if (!expected) {
                throw BanditError(Errc::validation_error,
                                  "log contains a row for inactive policy " +
                                      std::string(token(static_cast<Policy>(policy))) +
                                      " in week " + std::to_string(week));
            }
        }
    }

    trace.config = cfg;
    trace.final_states = std::move(states);
    return trace;
}

}  // namespace

ExperimentTrace replay(std::span<const BatchObservation> log) {
    return replay_impl(log, infer_schedule(log), ExperimentConfig{});
}

ExperimentTrace replay(std::span<const BatchObservation> log, const ExperimentConfig& cfg) {
    InferredSchedule s;
    s.arms = cfg.arms;
    s.horizon = cfg.horizon;
    s.burn_in = cfg.burn_in;
    s.ts_intro_week = cfg.ts_intro_week;
    s.ts_dagger_intro_week = cfg.ts_dagger_intro_week;
    return replay_impl(log, s, cfg);
}

std::vector<BatchObservation> reporting_series(const ExperimentTrace& trace, Policy policy) {
    const auto& cfg = trace.config;
    std::vector<BatchObservation> series;
    for (const auto& week : trace.weeks) {
        for (const auto& obs : week.observations) {
            bool take = false;
            if (obs.policy() == policy) {
                take = true;
            } else if (obs.policy() == Policy::UR && obs.week() <= cfg.burn_in &&
                       policy != Policy::UR) {
                take = true;  // shared burn-in data
            } else if (obs.policy() == Policy::TS && policy == Policy::TSD &&
                       obs.week() >= cfg.ts_intro_week &&
                       obs.week() < cfg.ts_dagger_intro_week) {
                take = true;  // transition week seeds the hybrid's report
            }
            if (take) series.push_back(obs);
        }
    }
    return series;
}

ReplicationResult summarize_replication(const ExperimentTrace& trace, std::uint64_t replication) {
    ReplicationResult result;
    result.replication = replication;
    const std::size_t arms = static_cast<std::size_t>(trace.config.arms);
    for (Policy p : kPolicies) {
        auto idx = static_cast<std::size_t>(index_of(p));
        result.assigned[idx].assign(arms, 0);
        result.opened[idx].assign(arms, 0);
        result.cumulative_share[idx].assign(arms, 0.0);
        std::int64_t total = 0;
        for (const auto& obs : reporting_series(trace, p)) {
            result.assigned[idx][static_cast<std::size_t>(obs.arm())] += obs.assigned();
            result.opened[idx][static_cast<std::size_t>(obs.arm())] += obs.opened();
            total += obs.assigned();
        }
        if (total > 0) {
            for (std::size_t k = 0; k < arms; ++k) {
                result.cumulative_share[idx][k] =
                    static_cast<double>(result.assigned[idx][k]) / static_cast<double>(total);
            }
        }
    }
    return result;
}

std::vector<ReplicationResult> run_replications(const ExperimentConfig& cfg,
                                                const EnvironmentSchedule& env,
                                                std::int64_t count, int workers) {
    require_valid(cfg);
    check_environment(cfg, env);
    if (count < 0) {
        throw BanditError(Errc::out_of_range, "replication count must be >= 0");
    }
    std::vector<ReplicationResult> results(static_cast<std::size_t>(count));

#ifdef _OPENMP
    const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#else
    (void)workers;
#endif
    for (std::int64_t i = 0; i < count; ++i) {
        ExperimentTrace trace = run_experiment(cfg, env, static_cast<std::uint64_t>(i));
        results[static_cast<std::size_t>(i)] =
            summarize_replication(trace, static_cast<std::uint64_t>(i));
    }
    return results;
}

std::vector<ReplicationResult> run_replications_serial(const ExperimentConfig& cfg,
                                                       const EnvironmentSchedule& env,
                                                       std::int64_t count) {
    require_valid(cfg);
    check_environment(cfg, env);
    if (count < 0) {
        throw BanditError(Errc::out_of_range, "replication count must be >= 0");
    }
    std::vector<ReplicationResult> results;
    results.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) {
        ExperimentTrace trace = run_experiment(cfg, env, static_cast<std::uint64_t>(i));
        results.push_back(summarize_replication(trace, static_cast<std::uint64_t>(i)));
    }
    return results;
}

}  // namespace bandit
