#include "bandit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace bandit {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

namespace {

// Acklam's rational approximation to the inverse normal CDF.
double quantile_estimate(double p) {
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p <= 1.0 - p_low) {
        double q = p - 0.5;
        double r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

}  // namespace

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw BanditError(Errc::out_of_range, "quantile probability must be in (0,1)");
    }
    double x = quantile_estimate(p);
    // One Halley refinement against the erfc-based CDF.
    double e = normal_cdf(x) - p;
    double u = e * std::sqrt(2.0 * 3.14159265358979323846) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

std::vector<ArmSummary> summarize(Policy policy, std::span<const BatchObservation> history,
                                  int arms) {
    std::vector<std::int64_t> assigned(static_cast<std::size_t>(arms), 0);
    std::vector<std::int64_t> opened(static_cast<std::size_t>(arms), 0);
    for (const auto& obs : history) {
        if (obs.arm() >= arms) {
            throw BanditError(Errc::bad_dimensions,
                              "observation arm " + std::to_string(obs.arm() + 1) +
                                  " outside the " + std::to_string(arms) + "-arm summary");
        }
        assigned[static_cast<std::size_t>(obs.arm())] += obs.assigned();
        opened[static_cast<std::size_t>(obs.arm())] += obs.opened();
    }
    return summarize(policy, assigned, opened);
}

std::vector<ArmSummary> summarize(Policy policy, std::span<const std::int64_t> assigned,
                                  std::span<const std::int64_t> opened) {
    if (assigned.size() != opened.size()) {
        throw BanditError(Errc::bad_dimensions, "assigned/opened vectors differ in length");
    }
    std::vector<ArmSummary> summaries;
    summaries.reserve(assigned.size());
    for (std::size_t k = 0; k < assigned.size(); ++k) {
        if (assigned[k] > 0) {
            double mean = static_cast<double>(opened[k]) / static_cast<double>(assigned[k]);
            summaries.push_back(make_summary(policy, static_cast<int>(k), mean, assigned[k]));
        } else {
            summaries.push_back(ArmSummary{policy, static_cast<int>(k),
                                           std::numeric_limits<double>::quiet_NaN(),
                                           std::numeric_limits<double>::quiet_NaN(), 0});
        }
    }
    return summaries;
}

ArmSummary make_summary(Policy policy, int arm, double mean, std::int64_t n_total) {
    if (!(mean >= 0.0 && mean <= 1.0)) {
        throw BanditError(Errc::out_of_range,
                          "summary mean " + std::to_string(mean) + " outside [0,1]");
    }
    if (n_total <= 0) {
        throw BanditError(Errc::undefined_summary, "summary needs a positive observation count");
    }
    double se = std::sqrt(mean * (1.0 - mean) / static_cast<double>(n_total));
    return ArmSummary{policy, arm, mean, se, n_total};
}

WaldResult wald_test(const ArmSummary& a, const ArmSummary& b, double alpha) {
    if (!a.defined() || !b.defined()) {
        throw BanditError(Errc::undefined_summary,
                          "cannot test arms with zero observations (arm " +
                              std::to_string((a.defined() ? b.arm : a.arm) + 1) + ")");
    }
    double statistic = std::abs(a.mean - b.mean) / std::sqrt(a.se * a.se + b.se * b.se);
    // Two-sided: p = 2*(1 - Phi(z)) = erfc(z / sqrt(2)).
    double p_value = std::erfc(statistic / std::sqrt(2.0));
    return WaldResult{a.policy, {a.arm, b.arm}, statistic, p_value, alpha, p_value < alpha};
}

std::vector<WaldResult> bonferroni(std::vector<WaldResult> results, double family_alpha) {
    if (results.empty()) {
        throw BanditError(Errc::bad_dimensions, "bonferroni needs at least one result");
    }
    if (!(family_alpha > 0.0 && family_alpha < 1.0)) {
        throw BanditError(Errc::out_of_range, "family alpha must be in (0,1)");
    }
    double threshold = family_alpha / static_cast<double>(results.size());
    for (auto& result : results) {
        result.adjusted_threshold = threshold;
        result.significant = result.p_value < threshold;
    }
    return results;
}

std::pair<double, double> confidence_interval(const ArmSummary& summary, double level) {
    if (!(level > 0.0 && level < 1.0)) {
        throw BanditError(Errc::out_of_range, "confidence level must be in (0,1)");
    }
    if (!summary.defined()) {
        throw BanditError(Errc::undefined_summary,
                          "cannot build an interval for an arm with zero observations");
    }
    double z = normal_quantile(0.5 * (1.0 + level));
    double low = std::max(0.0, summary.mean - z * summary.se);
    double high = std::min(1.0, summary.mean + z * summary.se);
    return {low, high};
}

ConcentrationReport allocation_concentration(const ExperimentTrace& trace, Policy policy) {
    ConcentrationReport report;
    const std::size_t arms = static_cast<std::size_t>(trace.config.arms);

    for (const auto& week : trace.weeks) {
        std::vector<std::int64_t> counts(arms, 0);
        std::int64_t total = 0;
        for (const auto& obs : week.observations) {
            if (obs.policy() == policy) {
                counts[static_cast<std::size_t>(obs.arm())] = obs.assigned();
                total += obs.assigned();
            }
        }
        if (total > 0) {
            std::vector<double> share(arms, 0.0);
            for (std::size_t k = 0; k < arms; ++k) {
                share[k] = static_cast<double>(counts[k]) / static_cast<double>(total);
            }
            report.weeks.push_back(week.week);
            report.weekly_share.push_back(std::move(share));
        }
    }

    std::vector<std::int64_t> cumulative(arms, 0);
    std::int64_t total = 0;
    for (const auto& obs : reporting_series(trace, policy)) {
        cumulative[static_cast<std::size_t>(obs.arm())] += obs.assigned();
        total += obs.assigned();
    }
    report.cumulative_share.assign(arms, 0.0);
    if (total > 0) {
        for (std::size_t k = 0; k < arms; ++k) {
            report.cumulative_share[k] =
                static_cast<double>(cumulative[k]) / static_cast<double>(total);
        }
    }
    report.index = report.cumulative_share.empty()
                       ? 0.0
                       : *std::max_element(report.cumulative_share.begin(),
                                           report.cumulative_share.end());
    return report;
}

}  // namespace bandit
