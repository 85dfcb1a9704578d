#pragma once

#include <stdexcept>
#include <string>

namespace varkit {

/// Machine-checkable failure kinds thrown across the library.
enum class Errc {
    // panel construction and transforms
    missing_value,
    non_numeric_cell,
    duplicate_year,
    year_gap,
    unknown_label,
    invalid_panel,
    division_by_zero,
    non_positive_log,
    // unit-root tests
    constant_series,
    too_short,
    singular_regression,
    mixed_specs,
    zero_p_value,
    // VAR estimation
    insufficient_observations,
    singular_design,
    zero_lag,
    // residual diagnostics
    singular_auxiliary_design,
    // cointegration
    singular_moment_matrix,
    unsupported_dimension,
    // structural analysis
    not_positive_definite,
    bad_ordering,
    too_few_replications,
    // pipeline
    config_error,
    unsupported_format,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace varkit
