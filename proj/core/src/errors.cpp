#include "varkit/errors.hpp"

namespace varkit {

const char* errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::missing_value: return "MissingValue";
        case Errc::non_numeric_cell: return "NonNumericCell";
        case Errc::duplicate_year: return "DuplicateYear";
        case Errc::year_gap: return "YearGap";
        case Errc::unknown_label: return "UnknownLabel";
        case Errc::invalid_panel: return "InvalidPanel";
        case Errc::division_by_zero: return "DivisionByZero";
        case Errc::non_positive_log: return "NonPositiveLog";
        case Errc::constant_series: return "ConstantSeries";
        case Errc::too_short: return "TooShort";
        case Errc::singular_regression: return "SingularRegression";
        case Errc::mixed_specs: return "MixedSpecs";
        case Errc::zero_p_value: return "ZeroPValue";
        case Errc::insufficient_observations: return "InsufficientObservations";
        case Errc::singular_design: return "SingularDesign";
        case Errc::zero_lag: return "ZeroLag";
        case Errc::singular_auxiliary_design: return "SingularAuxiliaryDesign";
        case Errc::singular_moment_matrix: return "SingularMomentMatrix";
        case Errc::unsupported_dimension: return "UnsupportedDimension";
        case Errc::not_positive_definite: return "NotPositiveDefinite";
        case Errc::bad_ordering: return "BadOrdering";
        case Errc::too_few_replications: return "TooFewReplications";
        case Errc::config_error: return "ConfigError";
        case Errc::unsupported_format: return "UnsupportedFormat";
    }
    return "UnknownError";
}

}  // namespace varkit
