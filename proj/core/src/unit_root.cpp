#include "varkit/unit_root.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "varkit/distributions.hpp"
#include "varkit/errors.hpp"
#include "varkit/ols.hpp"

namespace varkit {

namespace {

// MacKinnon response-surface coefficients for Dickey-Fuller t-statistics,
// single series. The p-value is Phi(poly(tau)) with the cubic used on the
// large-p branch and the quadratic below tau_star; outside [tau_min, tau_max]
// the p-value saturates at 0 or 1.
struct TauSurface {
    double tau_min, tau_max, tau_star;
    double small_p[3];  // c0 + c1 t + c2 t^2
    double large_p[4];  // c0 + c1 t + c2 t^2 + c3 t^3
};

constexpr TauSurface kSurfaceNone = {
    -19.04, std::numeric_limits<double>::infinity(), -1.04,
    {0.6344, 1.2378, 0.032496},
    {0.4797, 0.93557, -0.06999, 0.033066}};

constexpr TauSurface kSurfaceConstant = {
    -18.83, 2.74, -1.61,
    {2.1659, 1.4412, 0.038269},
    {1.7339, 0.93202, -0.12745, -0.010368}};

constexpr TauSurface kSurfaceConstantTrend = {
    -16.18, 0.70, -2.89,
    {3.2512, 1.6047, 0.049588},
    {2.5261, 0.61654, -0.37956, -0.060285}};

const TauSurface& surface_for(Deterministic spec) {
    switch (spec) {
        case Deterministic::none: return kSurfaceNone;
        case Deterministic::constant: return kSurfaceConstant;
        case Deterministic::constant_trend: return kSurfaceConstantTrend;
    }
    return kSurfaceConstant;
}

int deterministic_terms(Deterministic spec) {
    switch (spec) {
        case Deterministic::none: return 0;
        case Deterministic::constant: return 1;
        case Deterministic::constant_trend: return 2;
    }
    return 0;
}

void check_series(std::span<const double> y, size_t min_len) {
    if (y.size() < min_len)
        raise(Errc::too_short, "series has " + std::to_string(y.size()) + " observations, need " +
                                   std::to_string(min_len));
    const double first = y[0];
    bool constant = true;
    for (double v : y) {
        if (v != first) {
            constant = false;
            break;
        }
    }
    if (constant) raise(Errc::constant_series, "series is constant");
}

struct DfRegression {
    double t_rho;       // t-ratio on the lagged level
    double se_rho;      // standard error of the lagged-level coefficient
    double s2;          // residual variance, SSR / (n - k)
    Eigen::VectorXd residuals;
    int n;              // effective observations
    int k;              // regressor count
    double ssr;
};

// Dickey-Fuller style regression dy_t = det + rho*y_{t-1} + sum dy lags.
// start_offset positions the first usable dy index (>= lags) so that lag
// selection can run every candidate on a common sample.
DfRegression df_regression(std::span<const double> y, Deterministic spec, int lags, int start_offset) {
    const int t_full = static_cast<int>(y.size());
    const int n = t_full - 1 - start_offset;
    const int ndet = deterministic_terms(spec);
    const int k = ndet + 1 + lags;
    if (n <= k + 1) raise(Errc::too_short, "too few effective observations for the test regression");

    Eigen::VectorXd dy(n);
    Eigen::MatrixXd X(n, k);
    for (int i = 0; i < n; ++i) {
        const int t = start_offset + 1 + i;  // index into y of the dependent dy_t
        dy(i) = y[t] - y[t - 1];
        int col = 0;
        if (ndet >= 1) X(i, col++) = 1.0;
        if (ndet == 2) X(i, col++) = static_cast<double>(i + 1);
        X(i, col++) = y[t - 1];
        for (int l = 1; l <= lags; ++l) X(i, col++) = y[t - l] - y[t - l - 1];
    }

    const Eigen::MatrixXd gram = X.transpose() * X;
    if (gram_condition_number(gram) > kDesignConditionLimit)
        raise(Errc::singular_regression, "test regression design is numerically singular");

    Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    const Eigen::VectorXd beta = ldlt.solve(X.transpose() * dy);
    const Eigen::VectorXd resid = dy - X * beta;
    const double ssr = resid.squaredNorm();
    const double s2 = ssr / static_cast<double>(n - k);
    const Eigen::MatrixXd gram_inv = ldlt.solve(Eigen::MatrixXd::Identity(k, k));
    const int rho_idx = ndet;
    const double se = std::sqrt(s2 * gram_inv(rho_idx, rho_idx));

    DfRegression out;
    out.t_rho = beta(rho_idx) / se;
    out.se_rho = se;
    out.s2 = s2;
    out.residuals = resid;
    out.n = n;
    out.k = k;
    out.ssr = ssr;
    return out;
}

// Gaussian log-likelihood based criterion values for lag selection.
double criterion_value(const DfRegression& reg, LagPolicy::Kind kind) {
    const double n = reg.n;
    const double ll = -0.5 * n * (std::log(2.0 * M_PI * reg.ssr / n) + 1.0);
    const double k = reg.k;
    if (kind == LagPolicy::Kind::aic) return -2.0 * ll + 2.0 * k;
    return -2.0 * ll + k * std::log(n);  // sic
}

}  // namespace

const char* deterministic_name(Deterministic spec) noexcept {
    switch (spec) {
        case Deterministic::none: return "none";
        case Deterministic::constant: return "constant";
        case Deterministic::constant_trend: return "constant-and-trend";
    }
    return "?";
}

int default_adf_max_lag(int n_obs) {
    return static_cast<int>(std::floor(12.0 * std::pow(n_obs / 100.0, 0.25)));
}

int default_pp_bandwidth(int n_obs) {
    return static_cast<int>(std::floor(4.0 * std::pow(n_obs / 100.0, 2.0 / 9.0)));
}

double mackinnon_pvalue(double tau, Deterministic spec) {
    const TauSurface& s = surface_for(spec);
    if (tau > s.tau_max) return 1.0;
    if (tau < s.tau_min) return 0.0;
    double z;
    if (tau <= s.tau_star) {
        z = s.small_p[0] + tau * (s.small_p[1] + tau * s.small_p[2]);
    } else {
        z = s.large_p[0] + tau * (s.large_p[1] + tau * (s.large_p[2] + tau * s.large_p[3]));
    }
    return dist::normal_cdf(z);
}

UnitRootResult adf_test(std::span<const double> series, Deterministic spec, LagPolicy policy,
                        std::string label) {
    int lags = 0;
    if (policy.kind == LagPolicy::Kind::fixed) {
        lags = policy.value;
        if (lags < 0) raise(Errc::too_short, "fixed lag count must be nonnegative");
        check_series(series, static_cast<size_t>(lags) + 10);
    } else {
        const int t_full = static_cast<int>(series.size());
        check_series(series, 15);
        int max_lag = policy.value >= 0 ? policy.value : default_adf_max_lag(t_full);
        // keep every candidate estimable on the common sample
        const int ndet = deterministic_terms(spec);
        const int hard_cap = (t_full - 1) / 2 - ndet - 3;
        max_lag = std::max(0, std::min(max_lag, hard_cap));
        double best = std::numeric_limits<double>::infinity();
        for (int k = 0; k <= max_lag; ++k) {
            const double value = criterion_value(df_regression(series, spec, k, max_lag), policy.kind);
            if (value < best - 1e-12) {
                best = value;
                lags = k;
            }
        }
        check_series(series, static_cast<size_t>(lags) + 10);
    }

    const DfRegression reg = df_regression(series, spec, lags, lags);
    UnitRootResult out;
    out.series_label = std::move(label);
    out.test = UnitRootTest::adf;
    out.spec = spec;
    out.statistic = reg.t_rho;
    out.p_value = mackinnon_pvalue(reg.t_rho, spec);
    out.lags_or_bandwidth = lags;
    out.n_effective = reg.n;
    return out;
}

UnitRootResult pp_test(std::span<const double> series, Deterministic spec, BandwidthPolicy policy,
                       std::string label) {
    check_series(series, 15);
    const DfRegression reg = df_regression(series, spec, 0, 0);
    const int n = reg.n;

    int bandwidth = policy.kind == BandwidthPolicy::Kind::fixed ? policy.value : default_pp_bandwidth(n);
    if (bandwidth < 0) raise(Errc::too_short, "bandwidth must be nonnegative");
    if (bandwidth >= n) bandwidth = n - 1;

    const Eigen::VectorXd& u = reg.residuals;
    const double gamma0 = u.squaredNorm() / n;
    double lambda2 = gamma0;
    for (int j = 1; j <= bandwidth; ++j) {
        double gj = 0.0;
        for (int t = j; t < n; ++t) gj += u(t) * u(t - j);
        gj /= n;
        lambda2 += 2.0 * (1.0 - static_cast<double>(j) / (bandwidth + 1)) * gj;
    }
    if (lambda2 <= 0.0) raise(Errc::singular_regression, "nonpositive long-run variance estimate");

    const double s = std::sqrt(reg.s2);
    const double z_t = std::sqrt(gamma0 / lambda2) * reg.t_rho -
                       (lambda2 - gamma0) * n * reg.se_rho / (2.0 * std::sqrt(lambda2) * s);

    UnitRootResult out;
    out.series_label = std::move(label);
    out.test = UnitRootTest::pp;
    out.spec = spec;
    out.statistic = z_t;
    out.p_value = mackinnon_pvalue(z_t, spec);
    out.lags_or_bandwidth = bandwidth;
    out.n_effective = n;
    return out;
}

GroupUnitRootResult fisher_group(const std::vector<UnitRootResult>& members) {
    if (members.empty()) raise(Errc::mixed_specs, "no member results to combine");
    double stat = 0.0;
    for (const auto& r : members) {
        if (r.test != members.front().test || r.spec != members.front().spec)
            raise(Errc::mixed_specs, "members mix tests or deterministic specifications");
        if (r.p_value <= 0.0) raise(Errc::zero_p_value, "member p-value of zero cannot be combined");
        stat += -2.0 * std::log(r.p_value);
    }
    GroupUnitRootResult out;
    out.test = members.front().test;
    out.spec = members.front().spec;
    out.statistic = stat;
    out.df = 2 * static_cast<int>(members.size());
    out.p_value = dist::chi_squared_sf(stat, out.df);
    out.members = members;
    return out;
}

}  // namespace varkit
