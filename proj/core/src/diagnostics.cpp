#include "varkit/diagnostics.hpp"

#include <cmath>

#include "varkit/distributions.hpp"
#include "varkit/errors.hpp"

namespace varkit {

namespace {

double log_det_cov(const Eigen::MatrixXd& resid, int n) {
    const Eigen::MatrixXd sigma = resid.transpose() * resid / static_cast<double>(n);
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success)
        raise(Errc::singular_auxiliary_design, "auxiliary residual covariance is singular");
    return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

Eigen::MatrixXd residualize(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, Errc on_singular) {
    if (x.cols() == 0) return y;
    if (gram_condition_number(x.transpose() * x) > kDesignConditionLimit)
        raise(on_singular, "auxiliary regression design is numerically singular");
    return y - x * x.householderQr().solve(y);
}

}  // namespace

LmTestRow lm_serial_correlation(const VarModel& model, int h, LmMode mode) {
    if (h < 1) raise(Errc::insufficient_observations, "lag order h must be at least 1");
    const int n = model.n_effective;
    const int m = model.m();
    const int kbar = model.kbar();
    const Eigen::MatrixXd& u = model.residuals;

    const int first_lag = mode == LmMode::at_lag ? h : 1;
    const int q = m * (mode == LmMode::at_lag ? 1 : h);
    if (n <= kbar + q + 1)
        raise(Errc::insufficient_observations, "effective sample too small for the augmented regression");

    // Original regressors plus lagged residuals, pre-sample values zero-filled.
    Eigen::MatrixXd aux(n, kbar + q);
    if (kbar > 0) aux.leftCols(kbar) = model.design;
    int col = kbar;
    for (int lag = first_lag; lag <= h; ++lag) {
        Eigen::MatrixXd shifted = Eigen::MatrixXd::Zero(n, m);
        shifted.bottomRows(n - lag) = u.topRows(n - lag);
        aux.middleCols(col, m) = shifted;
        col += m;
    }

    const Eigen::MatrixXd resid_aux = residualize(aux, u, Errc::singular_auxiliary_design);
    const double log_lambda = log_det_cov(resid_aux, n) - log_det_cov(u, n);

    // Edgeworth-corrected LR and the Rao F approximation share the
    // multiplier c; the constants reproduce the reference degrees of
    // freedom (numerator m*q, fractional denominator) exactly.
    const double c = n - kbar - (q - m + 1) / 2.0;
    const int df1 = m * q;
    const double denom = static_cast<double>(m) * m + static_cast<double>(q) * q - 5.0;
    const double t = denom > 0.0
                         ? std::sqrt((static_cast<double>(m) * m * q * q - 4.0) / denom)
                         : 1.0;
    const double df2 = c * t - (df1 - 2.0) / 2.0;
    if (df2 <= 0.0)
        raise(Errc::insufficient_observations, "denominator degrees of freedom are not positive");

    LmTestRow row;
    row.lag_h = h;
    row.mode = mode;
    row.lre_stat = -c * log_lambda;
    row.lre_df = df1;
    row.lre_p = dist::chi_squared_sf(row.lre_stat, df1);
    row.rao_f = (std::exp(-log_lambda / t) - 1.0) * df2 / df1;
    row.rao_df1 = df1;
    row.rao_df2 = df2;
    row.rao_p = dist::f_sf(row.rao_f, df1, df2);
    return row;
}

WhiteTestResult white_heteroskedasticity(const VarModel& model, bool cross_terms) {
    const int n = model.n_effective;
    const int m = model.m();
    const int n_raw = model.kbar() - (model.has_constant ? 1 : 0);
    if (n_raw == 0)
        raise(Errc::insufficient_observations, "model has no non-constant regressors to test against");
    const Eigen::MatrixXd raw = model.design.rightCols(n_raw);

    const int g = cross_terms ? 2 * n_raw + n_raw * (n_raw - 1) / 2 : n_raw;
    if (n <= g + 2)
        raise(Errc::insufficient_observations, "effective sample too small for the auxiliary regressions");

    Eigen::MatrixXd aux(n, 1 + g);
    aux.col(0).setOnes();
    int col = 1;
    for (int j = 0; j < n_raw; ++j) aux.col(col++) = raw.col(j).array().square();
    if (cross_terms) {
        for (int j = 0; j < n_raw; ++j) aux.col(col++) = raw.col(j);
        for (int j = 0; j < n_raw; ++j)
            for (int k = j + 1; k < n_raw; ++k) aux.col(col++) = raw.col(j).cwiseProduct(raw.col(k));
    }

    // All m(m+1)/2 residual products regressed on the shared design at once.
    const int pairs = m * (m + 1) / 2;
    Eigen::MatrixXd products(n, pairs);
    int pc = 0;
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j)
            products.col(pc++) = model.residuals.col(i).cwiseProduct(model.residuals.col(j));

    const Eigen::MatrixXd resid = residualize(aux, products, Errc::singular_auxiliary_design);
    double sum_r2 = 0.0;
    for (int c = 0; c < pairs; ++c) {
        const double mean = products.col(c).mean();
        const double sst = (products.col(c).array() - mean).matrix().squaredNorm();
        const double ssr = resid.col(c).squaredNorm();
        if (sst > 0.0) sum_r2 += 1.0 - ssr / sst;
    }

    WhiteTestResult out;
    out.chi_sq = n * sum_r2;
    out.df = pairs * g;
    out.p_value = dist::chi_squared_sf(out.chi_sq, out.df);
    return out;
}

}  // namespace varkit
