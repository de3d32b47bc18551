#pragma once

#include <span>
#include <utility>

#include "bandit/engine.hpp"
#include "bandit/types.hpp"

namespace bandit {

/// Cumulative open-rate summary for one (policy, arm). `se` is the binomial
/// standard error sqrt(mean*(1-mean)/n). An arm with no observations is
/// undefined: mean and se are NaN and must not enter tests.
struct ArmSummary {
    Policy policy;
    int arm;
    double mean;
    double se;
    std::int64_t n_total;

    bool defined() const { return n_total > 0; }
};

/// Pairwise two-proportion z-test result. `significant` always mirrors
/// p_value < adjusted_threshold.
struct WaldResult {
    Policy policy;
    std::pair<int, int> arms;
    double statistic;
    double p_value;
    double adjusted_threshold;
    bool significant;
};

/// Standard normal CDF, computed through the complementary error function.
double normal_cdf(double x);

/// Standard normal quantile: rational approximation (Acklam) polished with
/// one Halley step; absolute error well under 1e-6.
double normal_quantile(double p);

/// Pools a policy's observation series into per-arm cumulative summaries.
std::vector<ArmSummary> summarize(Policy policy, std::span<const BatchObservation> history,
                                  int arms);

/// Same from per-arm totals.
std::vector<ArmSummary> summarize(Policy policy, std::span<const std::int64_t> assigned,
                                  std::span<const std::int64_t> opened);

ArmSummary make_summary(Policy policy, int arm, double mean, std::int64_t n_total);

/// Two-sided Wald z-test on the difference of two arm means with unpooled
/// standard errors: z = |m_a - m_b| / sqrt(se_a^2 + se_b^2). The returned
/// threshold is the unadjusted `alpha`; apply bonferroni() to a family.
WaldResult wald_test(const ArmSummary& a, const ArmSummary& b, double alpha = 0.05);

/// Sets every result's threshold to family_alpha / m and recomputes
/// significance.
std::vector<WaldResult> bonferroni(std::vector<WaldResult> results, double family_alpha);

/// Central interval mean +- z*se at the given level, clamped to [0,1].
std::pair<double, double> confidence_interval(const ArmSummary& summary, double level);

/// Weekly allocation proportions (only for weeks where the policy itself
/// allocated) plus cumulative per-arm shares of the policy's reporting
/// series; `index` is the largest cumulative share.
struct ConcentrationReport {
    std::vector<int> weeks;
    std::vector<std::vector<double>> weekly_share;  // [listed week][arm]
    std::vector<double> cumulative_share;           // [arm]
    double index;
};

ConcentrationReport allocation_concentration(const ExperimentTrace& trace, Policy policy);

}  // namespace bandit
