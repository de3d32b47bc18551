#pragma once

#include <stdexcept>
#include <string>

namespace bandit {

enum class Errc {
    split_not_normalized,
    bad_week_ordering,
    empty_cohort,
    bad_dimensions,
    out_of_range,
    reward_exceeds_assigned,
    policy_not_active,
    missing_source,
    incomplete_log,
    duplicate_row,
    parse_error,
    validation_error,
    undefined_summary,
    io_error,
};

/// Stable upper-case token for an error code, e.g. "SPLIT_NOT_NORMALIZED".
const char* errc_name(Errc code);

class BanditError : public std::runtime_error {
public:
    BanditError(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace bandit
