#include "varkit/var_model.hpp"

#include <algorithm>
#include <cmath>

#include "varkit/distributions.hpp"
#include "varkit/errors.hpp"

namespace varkit {

namespace {

// Design rows [const | y_{t-1} | ... | y_{t-p}] for t = first_row..T-1.
Eigen::MatrixXd build_design(const Eigen::MatrixXd& y, int p, bool constant, int first_row) {
    const Eigen::Index m = y.cols();
    const Eigen::Index n = y.rows() - first_row;
    const Eigen::Index k = (constant ? 1 : 0) + m * p;
    Eigen::MatrixXd x(n, k);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index t = first_row + i;
        Eigen::Index col = 0;
        if (constant) x(i, col++) = 1.0;
        for (int lag = 1; lag <= p; ++lag) {
            x.block(i, col, 1, m) = y.row(t - lag);
            col += m;
        }
    }
    return x;
}

double log_det_spd(const Eigen::MatrixXd& a) {
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() != Eigen::Success)
        raise(Errc::singular_design, "residual covariance is not positive definite");
    return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

double gaussian_loglik(int n, int m, double log_det_sigma) {
    return -0.5 * n * (m * std::log(2.0 * M_PI) + log_det_sigma + m);
}

struct FitOnSample {
    Eigen::MatrixXd coef;       // k x m
    Eigen::MatrixXd residuals;  // n x m
    Eigen::MatrixXd sigma_mle;
    double log_det_sigma;
    double loglik;
};

FitOnSample fit_var_on_sample(const Eigen::MatrixXd& y, int p, bool constant, int first_row,
                              OlsMethod method) {
    const Eigen::Index m = y.cols();
    const Eigen::Index n = y.rows() - first_row;
    const Eigen::MatrixXd resp = y.bottomRows(n);
    FitOnSample fit;
    if (p == 0 && !constant) {
        fit.coef = Eigen::MatrixXd::Zero(0, m);
        fit.residuals = resp;
    } else {
        const Eigen::MatrixXd x = build_design(y, p, constant, first_row);
        fit.coef = ols_solve(x, resp, method);
        fit.residuals = resp - x * fit.coef;
    }
    fit.sigma_mle = fit.residuals.transpose() * fit.residuals / static_cast<double>(n);
    fit.log_det_sigma = log_det_spd(fit.sigma_mle);
    fit.loglik = gaussian_loglik(static_cast<int>(n), static_cast<int>(m), fit.log_det_sigma);
    return fit;
}

}  // namespace

VarModel estimate_var(const SeriesPanel& panel, int p, bool include_constant, OlsMethod method) {
    if (p < 0) raise(Errc::insufficient_observations, "lag order must be nonnegative");
    const int t_total = static_cast<int>(panel.rows());
    const int m = static_cast<int>(panel.cols());
    const int kbar = m * p + (include_constant ? 1 : 0);
    if (t_total - p <= kbar)
        raise(Errc::insufficient_observations,
              "need more than " + std::to_string(kbar + p) + " observations for VAR(" +
                  std::to_string(p) + ") with " + std::to_string(m) + " variables");

    const FitOnSample fit = fit_var_on_sample(panel.values(), p, include_constant, p, method);
    const int n = t_total - p;

    VarModel model;
    model.labels = panel.labels();
    model.p = p;
    model.has_constant = include_constant;
    model.coef_stacked = fit.coef;
    model.design = p == 0 && !include_constant
                       ? Eigen::MatrixXd::Zero(n, 0)
                       : build_design(panel.values(), p, include_constant, p);
    model.residuals = fit.residuals;
    model.sigma_mle = fit.sigma_mle;
    model.sigma_df = fit.residuals.transpose() * fit.residuals / static_cast<double>(n - kbar);
    model.loglik = fit.loglik;
    model.n_effective = n;

    model.intercept = include_constant ? Eigen::VectorXd(fit.coef.row(0).transpose())
                                       : Eigen::VectorXd::Zero(m);
    model.coef.reserve(static_cast<size_t>(p));
    const int offset = include_constant ? 1 : 0;
    for (int lag = 1; lag <= p; ++lag) {
        model.coef.push_back(fit.coef.block(offset + (lag - 1) * m, 0, m, m).transpose());
    }
    return model;
}

LagSelection lag_order_selection(const SeriesPanel& panel, int max_p, bool include_constant) {
    if (max_p < 0) raise(Errc::insufficient_observations, "max lag must be nonnegative");
    const int t_total = static_cast<int>(panel.rows());
    const int m = static_cast<int>(panel.cols());
    const int n = t_total - max_p;
    const int kbar_max = m * max_p + (include_constant ? 1 : 0);
    if (n <= kbar_max + 1)
        raise(Errc::insufficient_observations,
              "common sample of " + std::to_string(n) + " cannot support VAR(" + std::to_string(max_p) + ")");

    LagSelection sel;
    sel.common_sample = n;
    double prev_log_det = 0.0;
    for (int j = 0; j <= max_p; ++j) {
        const FitOnSample fit =
            fit_var_on_sample(panel.values(), j, include_constant, max_p, OlsMethod::qr);
        const int kbar = m * j + (include_constant ? 1 : 0);  // per-equation regressors
        const int k_total = m * kbar;                         // estimated coefficients

        LagSelectionRow row;
        row.lag = j;
        row.loglik = fit.loglik;
        row.aic = (-2.0 * fit.loglik + 2.0 * k_total) / n;
        row.sc = (-2.0 * fit.loglik + k_total * std::log(n)) / n;
        row.hq = (-2.0 * fit.loglik + 2.0 * k_total * std::log(std::log(n))) / n;
        row.fpe = std::pow(static_cast<double>(n + kbar) / (n - kbar), m) * std::exp(fit.log_det_sigma);
        if (j > 0) row.lr = (n - kbar) * (prev_log_det - fit.log_det_sigma);
        prev_log_det = fit.log_det_sigma;
        sel.rows.push_back(row);
    }

    auto argmin = [&](auto key) {
        int best = 0;
        for (size_t i = 1; i < sel.rows.size(); ++i) {
            if (key(sel.rows[i]) < key(sel.rows[static_cast<size_t>(best)]) - 1e-12)
                best = static_cast<int>(i);
        }
        return sel.rows[static_cast<size_t>(best)].lag;
    };
    sel.by_aic = argmin([](const LagSelectionRow& r) { return r.aic; });
    sel.by_sc = argmin([](const LagSelectionRow& r) { return r.sc; });
    sel.by_hq = argmin([](const LagSelectionRow& r) { return r.hq; });
    sel.by_fpe = argmin([](const LagSelectionRow& r) { return r.fpe; });

    // Sequential testing from the top: first lag whose LR rejects at 5%.
    sel.by_lr = 0;
    const double crit = max_p > 0 ? dist::chi_squared_quantile(0.95, m * m) : 0.0;
    for (int j = max_p; j >= 1; --j) {
        if (sel.rows[static_cast<size_t>(j)].lr.value() > crit) {
            sel.by_lr = j;
            break;
        }
    }
    return sel;
}

Eigen::MatrixXd companion_matrix(const VarModel& model) {
    if (model.p < 1) raise(Errc::zero_lag, "companion form needs at least one lag");
    const int m = model.m();
    const int dim = m * model.p;
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < model.p; ++i) c.block(0, i * m, m, m) = model.coef[static_cast<size_t>(i)];
    if (model.p > 1) c.block(m, 0, dim - m, dim - m).setIdentity();
    return c;
}

StabilityReport stability(const VarModel& model) {
    const Eigen::MatrixXd c = companion_matrix(model);
    Eigen::EigenSolver<Eigen::MatrixXd> eig(c, /*computeEigenvectors=*/false);
    StabilityReport report;
    const auto& values = eig.eigenvalues();
    report.roots.reserve(static_cast<size_t>(values.size()));
    for (Eigen::Index i = 0; i < values.size(); ++i) report.roots.push_back(values(i));
    std::sort(report.roots.begin(), report.roots.end(),
              [](const auto& a, const auto& b) { return std::abs(a) > std::abs(b); });
    report.moduli.reserve(report.roots.size());
    for (const auto& r : report.roots) report.moduli.push_back(std::abs(r));
    report.is_stable = report.moduli.empty() || report.moduli.front() < 1.0;
    return report;
}

std::vector<Eigen::MatrixXd> ma_coefficients(const VarModel& model, int horizon) {
    const int m = model.m();
    std::vector<Eigen::MatrixXd> psi;
    psi.reserve(static_cast<size_t>(horizon) + 1);
    psi.push_back(Eigen::MatrixXd::Identity(m, m));
    for (int h = 1; h <= horizon; ++h) {
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(m, m);
        const int top = std::min(h, model.p);
        for (int i = 1; i <= top; ++i)
            acc += model.coef[static_cast<size_t>(i - 1)] * psi[static_cast<size_t>(h - i)];
        psi.push_back(std::move(acc));
    }
    return psi;
}

}  // namespace varkit
