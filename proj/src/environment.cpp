#include "bandit/environment.hpp"

#include <string>

namespace bandit {

EnvironmentSchedule make_schedule(ScheduleKind kind, const std::vector<std::vector<double>>& rows,
                                  int weeks) {
    switch (kind) {
        case ScheduleKind::stationary:
            if (rows.size() != 1) {
                throw BanditError(Errc::bad_dimensions,
                                  "stationary schedule takes exactly one mean row, got " +
                                      std::to_string(rows.size()));
            }
            return EnvironmentSchedule::stationary(rows.front(), weeks);
        case ScheduleKind::piecewise:
            if (weeks >= 0 && rows.size() != static_cast<std::size_t>(weeks)) {
                throw BanditError(Errc::bad_dimensions,
                                  "piecewise schedule has " + std::to_string(rows.size()) +
                                      " rows, expected " + std::to_string(weeks));
            }
            return EnvironmentSchedule::piecewise(rows);
    }
    throw BanditError(Errc::bad_dimensions, "unknown schedule kind");
}

std::vector<std::int64_t> draw_rewards(const AllocationResult& alloc,
                                       std::span<const double> true_means, RngStream& rng) {
    if (alloc.counts.size() != true_means.size()) {
        throw BanditError(Errc::bad_dimensions,
                          "allocation has " + std::to_string(alloc.counts.size()) +
                              " arms but means row has " + std::to_string(true_means.size()));
    }
    std::vector<std::int64_t> opened(alloc.counts.size(), 0);
    for (std::size_t k = 0; k < alloc.counts.size(); ++k) {
        double p = true_means[k];
        if (!(p >= 0.0 && p <= 1.0)) {
            throw BanditError(Errc::out_of_range,
                              "true mean " + std::to_string(p) + " outside [0,1]");
        }
        for (std::int64_t i = 0; i < alloc.counts[k]; ++i) {
            if (rng.next_bernoulli(p)) opened[k] += 1;
        }
    }
    return opened;
}

}  // namespace bandit
