#pragma once

#include <span>

#include "varkit/panel.hpp"

namespace varkit {

/// Deterministic-term assumption for the VECM behind the cointegration test.
/// "Restricted" terms enter the cointegrating relation; unrestricted ones
/// enter the differenced equations.
enum class VecmDeterministic {
    none = 0,
    restricted_constant = 1,
    constant = 2,          // unrestricted intercept, no trend
    restricted_trend = 3,  // unrestricted intercept, trend in the relation
    trend = 4,             // unrestricted intercept and trend
};

enum class CointStatistic { trace, max_eigenvalue };

const char* vecm_deterministic_name(VecmDeterministic det) noexcept;
VecmDeterministic vecm_deterministic_from_name(std::string_view name);

struct JohansenResult {
    std::vector<std::string> labels;
    VecmDeterministic det_case = VecmDeterministic::constant;
    int t_effective = 0;
    Eigen::VectorXd eigenvalues;             // descending, in [0, 1)
    std::vector<double> trace;               // null rank r = 0..m-1
    std::vector<double> max_eig;
    std::vector<double> crit_5pct_trace;
    std::vector<double> crit_5pct_maxeig;
    std::vector<double> p_trace;
    std::vector<double> p_maxeig;
    int selected_rank_trace = 0;
    int selected_rank_maxeig = 0;
};

/// Johansen maximum-likelihood cointegration analysis of a levels panel,
/// using var_lags_p lags in levels (p-1 differenced lags in the VECM).
JohansenResult johansen(const SeriesPanel& panel, int var_lags_p, VecmDeterministic det_case);

/// Trace statistics -T * sum_{i>r} ln(1 - mu_i) for r = 0..m-1.
std::vector<double> trace_statistics(std::span<const double> eigenvalues, double t_effective);

/// Max-eigenvalue statistics -T * ln(1 - mu_{r+1}) for r = 0..m-1.
std::vector<double> max_eig_statistics(std::span<const double> eigenvalues, double t_effective);

/// Asymptotic p-value from the embedded null-distribution surfaces
/// (Gamma approximations fitted to simulated limiting distributions).
/// Supported dimensions: 1 <= m_minus_r <= 12.
double johansen_pvalue(double stat, CointStatistic kind, int m_minus_r, VecmDeterministic det_case);

/// Embedded 5% critical value, consistent with johansen_pvalue
/// (the p-value at the critical value is exactly 0.05).
double johansen_crit_5pct(CointStatistic kind, int m_minus_r, VecmDeterministic det_case);

/// Smallest null rank that is not rejected: first r with stats[r] below
/// crit_5pct[r]; returns stats.size() when every null is rejected.
int select_rank(std::span<const double> stats, std::span<const double> crit_5pct);

}  // namespace varkit
