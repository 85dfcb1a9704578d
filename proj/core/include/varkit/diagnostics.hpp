#pragma once

#include "varkit/var_model.hpp"

namespace varkit {

/// Hypothesis framing for the residual serial-correlation LM test:
/// at_lag tests "no serial correlation at lag h", cumulative tests
/// "no serial correlation at lags 1..h".
enum class LmMode { at_lag, cumulative };

struct LmTestRow {
    int lag_h = 0;
    LmMode mode = LmMode::at_lag;
    double lre_stat = 0.0;  // Edgeworth-corrected likelihood ratio
    int lre_df = 0;
    double lre_p = 0.0;
    double rao_f = 0.0;     // Rao multivariate F approximation
    int rao_df1 = 0;
    double rao_df2 = 0.0;   // fractional by construction
    double rao_p = 0.0;
};

/// Multivariate LM test regressing the VAR residuals on the original
/// regressors plus lagged residuals (zero-filled before the sample start).
LmTestRow lm_serial_correlation(const VarModel& model, int h, LmMode mode);

struct WhiteTestResult {
    double chi_sq = 0.0;
    int df = 0;
    double p_value = 0.0;
};

/// System White heteroskedasticity test: each residual product u_i*u_j is
/// regressed on a constant plus the squares of the non-constant regressors
/// (optionally adding levels and pairwise cross products); the joint
/// statistic is n times the sum of the component R-squared values.
WhiteTestResult white_heteroskedasticity(const VarModel& model, bool cross_terms = false);

}  // namespace varkit
