#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>

#include "bandit/analysis.hpp"
#include "bandit/engine.hpp"
#include "bandit/types.hpp"

namespace bandit {

struct ParsedConfig {
    ExperimentConfig config;
    EnvironmentSchedule schedule;
};

/// Reads a key = value config file. Every ExperimentConfig field needs an
/// explicit key; the reward schedule comes from `means = stationary ...` or
/// `means = piecewise` followed by one `row = ...` per week. Parse errors
/// carry line numbers; all config-invariant violations are reported
/// together as one VALIDATION_ERROR.
ParsedConfig parse_config(const std::filesystem::path& path);

/// Reads an observation log CSV with header week,policy,arm,assigned,opened
/// (arm 1-based, policy in {UR,TS,TSD}). Rows come back sorted by
/// (week, policy, arm); duplicates are rejected.
std::vector<BatchObservation> read_log(const std::filesystem::path& path);

void write_log(std::span<const BatchObservation> log, const std::filesystem::path& path);

/// One row of a summary CSV (percent-valued mean and se columns).
struct SummaryFileRow {
    Policy policy;
    int arm;  // 0-based internally
    double mean_pct;
    double se_pct;
    std::int64_t n_total;
};

std::vector<SummaryFileRow> read_summary_rows(const std::filesystem::path& path);

/// Builds test-ready summaries from file rows; the standard error is
/// recomputed from (mean, n) via the binomial formula, the file's se
/// column is informational.
std::vector<ArmSummary> summaries_from_rows(std::span<const SummaryFileRow> rows);

/// Writes the full trace bundle into `out_dir`:
///   weekly.csv      per (week, policy, arm): cumulative mean, CI bounds,
///                   weekly allocation proportion
///   summary.csv     final per-arm cumulative summaries (percent columns)
///   wald.csv        pairwise tests per policy, Bonferroni-adjusted
///   posteriors.csv  per-week alpha/beta snapshots
///   log.csv         the raw observation log
/// Numbers are printed with 6 significant digits; row order is fixed to
/// (week, then UR/TS/TSD, then arm), so identical traces produce
/// byte-identical files.
void write_trace(const ExperimentTrace& trace, const std::filesystem::path& out_dir);

void write_wald_csv(std::span<const WaldResult> results, const std::filesystem::path& path);

/// Per-replication aggregates (replications.csv) plus quantile roll-ups
/// across replications (replication_summary.csv).
void write_replications(std::span<const ReplicationResult> results, int arms,
                        const std::filesystem::path& out_dir);

/// Aligned-text tables for terminals; percentages rounded to two decimals.
void print_summary_table(std::ostream& out, std::span<const ArmSummary> summaries);
void print_wald_table(std::ostream& out, std::span<const WaldResult> results);

/// Groups per-policy summaries (UR, TS, TSD order) and runs the pairwise
/// Wald tests with a per-policy Bonferroni family.
std::vector<WaldResult> run_pairwise_analysis(std::span<const ArmSummary> summaries,
                                              double family_alpha);

}  // namespace bandit
