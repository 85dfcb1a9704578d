#pragma once

#include <span>
#include <string>
#include <vector>

namespace varkit {

/// Deterministic terms included in a unit-root test regression:
/// - none: no constant or trend
/// - constant: intercept only
/// - constant_trend: intercept and linear trend
enum class Deterministic { none, constant, constant_trend };

enum class UnitRootTest { adf, pp };

const char* deterministic_name(Deterministic spec) noexcept;

/// Lag-length choice for the ADF regression.
///
/// fixed(k) uses exactly k lagged differences. aic/sic scan 0..max_lag on a
/// common sample and keep the criterion minimizer; max_lag <= 0 selects the
/// default rule floor(12 * (T/100)^(1/4)).
struct LagPolicy {
    enum class Kind { fixed, aic, sic };
    Kind kind = Kind::sic;
    int value = -1;

    static LagPolicy fixed(int k) { return {Kind::fixed, k}; }
    static LagPolicy aic(int max_lag = -1) { return {Kind::aic, max_lag}; }
    static LagPolicy sic(int max_lag = -1) { return {Kind::sic, max_lag}; }
};

/// Bandwidth choice for the Phillips-Perron long-run variance.
/// newey_west uses the sample-size rule floor(4 * (n/100)^(2/9)).
struct BandwidthPolicy {
    enum class Kind { fixed, newey_west };
    Kind kind = Kind::newey_west;
    int value = -1;

    static BandwidthPolicy fixed(int b) { return {Kind::fixed, b}; }
    static BandwidthPolicy newey_west() { return {Kind::newey_west, -1}; }
};

struct UnitRootResult {
    std::string series_label;
    UnitRootTest test;
    Deterministic spec;
    double statistic;       // t-ratio on the lagged level (ADF) or Z_t (PP)
    double p_value;
    int lags_or_bandwidth;  // ADF lag count or PP bandwidth
    int n_effective;
};

/// Fisher combination of independent per-series tests:
/// statistic = -2 sum(ln p_i), chi-squared with 2N degrees of freedom.
struct GroupUnitRootResult {
    UnitRootTest test;
    Deterministic spec;
    double statistic;
    int df;
    double p_value;
    std::vector<UnitRootResult> members;
};

/// Augmented Dickey-Fuller test of the unit-root null.
///
/// Regression: dy_t = [det terms] + rho * y_{t-1} + sum_{i=1..k} d_i dy_{t-i} + e_t.
/// The statistic is the t-ratio on rho; its p-value comes from the MacKinnon
/// response surface for the chosen deterministic specification.
UnitRootResult adf_test(std::span<const double> series, Deterministic spec,
                        LagPolicy policy = LagPolicy::sic(), std::string label = "");

/// Phillips-Perron Z_t test with a Bartlett-kernel long-run variance
/// correction. With bandwidth 0 the correction vanishes and the statistic
/// equals the unaugmented Dickey-Fuller t-ratio.
UnitRootResult pp_test(std::span<const double> series, Deterministic spec,
                       BandwidthPolicy policy = BandwidthPolicy::newey_west(), std::string label = "");

GroupUnitRootResult fisher_group(const std::vector<UnitRootResult>& members);

/// MacKinnon response-surface p-value for a Dickey-Fuller t-statistic.
double mackinnon_pvalue(double tau, Deterministic spec);

int default_adf_max_lag(int n_obs);
int default_pp_bandwidth(int n_obs);

}  // namespace varkit
