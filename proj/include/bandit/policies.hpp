#pragma once

#include <optional>
#include <span>

#include "bandit/rng.hpp"
#include "bandit/types.hpp"

namespace bandit {

/// Per-arm assignment counts for one policy in one week.
struct AllocationResult {
    std::vector<std::int64_t> counts;

    std::int64_t total() const;
};

/// Assigns each of `batch_size` subjects to one of `arms` arms uniformly
/// and independently.
AllocationResult ur_allocate(std::int64_t batch_size, int arms, RngStream& rng);

/// One draw from Beta(alpha, beta), built as X/(X+Y) from two Gamma(.,1)
/// draws. Both shapes are >= 1 by the BetaParams invariant.
double beta_sample(const BetaParams& params, RngStream& rng);

/// Thompson assignment: each subject independently gets the arm whose
/// posterior sample is largest. Draws are fresh per subject, so a week's
/// batch never collapses onto one arm deterministically. Argmax ties break
/// to the lowest arm index.
AllocationResult ts_allocate(std::span<const BetaParams> posteriors, std::int64_t batch_size,
                             RngStream& rng);

/// UR update rule: alpha += opened, beta += missed, at weight 1. Also used
/// to fold shared burn-in evidence into the TS and hybrid states.
PolicyState ur_update(PolicyState state, const BatchObservation& obs);

/// TS update rule: own observations at weight 1, only once the policy is
/// active (obs.week >= ts_intro_week).
PolicyState ts_update(PolicyState state, const BatchObservation& obs, int ts_intro_week);

/// Hybrid update rule: half-weighted counts from the source observation
/// plus half-weighted counts from the UR observation for the same arm and
/// week. The source is the policy's own observation when present; at the
/// transition week (before the hybrid has allocated anything) it is the TS
/// observation instead.
PolicyState ts_dagger_update(PolicyState state, const std::optional<BatchObservation>& ts_obs,
                             const BatchObservation& ur_obs,
                             const std::optional<BatchObservation>& own_obs);

}  // namespace bandit
