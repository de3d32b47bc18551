#pragma once

#include <span>

#include "bandit/policies.hpp"
#include "bandit/rng.hpp"
#include "bandit/types.hpp"

namespace bandit {

enum class ScheduleKind { stationary, piecewise };

/// Builds a schedule from mean rows. A stationary schedule takes a single
/// row and replicates it `weeks` times; a piecewise schedule stores the
/// given rows verbatim (one per week).
EnvironmentSchedule make_schedule(ScheduleKind kind, const std::vector<std::vector<double>>& rows,
                                  int weeks);

/// Simulated cohort response: for each arm, draws the number of opens among
/// the assigned subjects as independent Bernoulli(p_k) outcomes. Draws are
/// made subject by subject, arm by ascending index, so stream consumption
/// is a fixed function of the allocation.
std::vector<std::int64_t> draw_rewards(const AllocationResult& alloc,
                                       std::span<const double> true_means, RngStream& rng);

}  // namespace bandit
