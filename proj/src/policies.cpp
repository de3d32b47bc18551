#include "bandit/policies.hpp"

#include <numeric>
#include <string>

namespace bandit {

std::int64_t AllocationResult::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

AllocationResult ur_allocate(std::int64_t batch_size, int arms, RngStream& rng) {
    if (arms < 1) {
        throw BanditError(Errc::bad_dimensions, "ur_allocate needs at least one arm");
    }
    if (batch_size < 0) {
        throw BanditError(Errc::out_of_range, "batch size must be >= 0");
    }
    AllocationResult result{std::vector<std::int64_t>(static_cast<std::size_t>(arms), 0)};
    for (std::int64_t i = 0; i < batch_size; ++i) {
        result.counts[static_cast<std::size_t>(rng.next_below(arms))] += 1;
    }
    return result;
}

double beta_sample(const BetaParams& params, RngStream& rng) {
    double x = rng.next_gamma(params.alpha());
    double y = rng.next_gamma(params.beta());
    return x / (x + y);
}

AllocationResult ts_allocate(std::span<const BetaParams> posteriors, std::int64_t batch_size,
                             RngStream& rng) {
    if (posteriors.empty()) {
        throw BanditError(Errc::bad_dimensions, "ts_allocate needs at least one arm");
    }
    if (batch_size < 0) {
        throw BanditError(Errc::out_of_range, "batch size must be >= 0");
    }
    AllocationResult result{std::vector<std::int64_t>(posteriors.size(), 0)};
    for (std::int64_t i = 0; i < batch_size; ++i) {
        std::size_t best = 0;
        double best_draw = beta_sample(posteriors[0], rng);
        for (std::size_t k = 1; k < posteriors.size(); ++k) {
            double draw = beta_sample(posteriors[k], rng);
            if (draw > best_draw) {
                best = k;
                best_draw = draw;
            }
        }
        result.counts[best] += 1;
    }
    return result;
}

namespace {

void check_reward_bound(const BatchObservation& obs) {
    if (obs.opened() < 0 || obs.opened() > obs.assigned()) {
        throw BanditError(Errc::reward_exceeds_assigned,
                          "opened exceeds assigned for arm " + std::to_string(obs.arm()));
    }
}

}  // namespace

PolicyState ur_update(PolicyState state, const BatchObservation& obs) {
    check_reward_bound(obs);
    state.absorb(obs, 1.0);
    return state;
}

PolicyState ts_update(PolicyState state, const BatchObservation& obs, int ts_intro_week) {
    if (obs.week() < ts_intro_week) {
        throw BanditError(Errc::policy_not_active,
                          "TS does not update from its own data before week " +
                              std::to_string(ts_intro_week));
    }
    check_reward_bound(obs);
    state.absorb(obs, 1.0);
    return state;
}

PolicyState ts_dagger_update(PolicyState state, const std::optional<BatchObservation>& ts_obs,
                             const BatchObservation& ur_obs,
                             const std::optional<BatchObservation>& own_obs) {
    // Own data takes precedence; the TS observation only seeds the very
    // first hybrid update, before the hybrid has allocations of its own.
    const BatchObservation* source = nullptr;
    if (own_obs.has_value()) {
        source = &*own_obs;
    } else if (ts_obs.has_value()) {
        source = &*ts_obs;
    } else {
        throw BanditError(Errc::missing_source,
                          "hybrid update needs either an own or a TS observation for week " +
                              std::to_string(ur_obs.week()));
    }
    if (source->arm() != ur_obs.arm() || source->week() != ur_obs.week()) {
        throw BanditError(Errc::missing_source,
                          "hybrid update observations must share week and arm");
    }
    check_reward_bound(*source);
    check_reward_bound(ur_obs);
    state.absorb(*source, 0.5);
    state.absorb(ur_obs, 0.5);
    return state;
}

}  // namespace bandit
