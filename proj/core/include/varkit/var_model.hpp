#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "varkit/ols.hpp"
#include "varkit/panel.hpp"

namespace varkit {

/// Estimated VAR(p): y_t = c + A_1 y_{t-1} + ... + A_p y_{t-p} + u_t.
///
/// The effective-sample design matrix and stacked coefficients are retained
/// so residual diagnostics and coefficient-uncertainty simulation can work
/// from the model alone.
struct VarModel {
    std::vector<std::string> labels;
    int p = 0;
    bool has_constant = true;
    Eigen::VectorXd intercept;           // zero vector when has_constant is false
    std::vector<Eigen::MatrixXd> coef;   // A_1..A_p, each m x m, rows = equations
    Eigen::MatrixXd residuals;           // n_effective x m
    Eigen::MatrixXd sigma_mle;           // U'U / n
    Eigen::MatrixXd sigma_df;            // U'U / (n - kbar)
    double loglik = 0.0;
    int n_effective = 0;

    Eigen::MatrixXd design;              // n_effective x kbar: [const | y_{t-1} | ... | y_{t-p}]
    Eigen::MatrixXd coef_stacked;        // kbar x m, one column per equation

    int m() const { return static_cast<int>(labels.size()); }
    int kbar() const { return m() * p + (has_constant ? 1 : 0); }
};

VarModel estimate_var(const SeriesPanel& panel, int p, bool include_constant = true,
                      OlsMethod method = OlsMethod::qr);

struct LagSelectionRow {
    int lag = 0;
    double loglik = 0.0;
    std::optional<double> lr;  // sequential modified LR vs lag-1 model; absent at lag 0
    double fpe = 0.0;
    double aic = 0.0;
    double sc = 0.0;
    double hq = 0.0;
};

/// Information-criteria comparison of lags 0..max_p, all evaluated on the
/// common sample trimmed to max_p so the criteria are comparable.
struct LagSelection {
    std::vector<LagSelectionRow> rows;
    int common_sample = 0;  // shared effective observation count
    int by_aic = 0;
    int by_sc = 0;
    int by_hq = 0;
    int by_fpe = 0;
    int by_lr = 0;  // largest lag whose sequential LR rejects at 5%
};

LagSelection lag_order_selection(const SeriesPanel& panel, int max_p, bool include_constant = true);

/// Stacks a VAR(p) into its VAR(1) companion form:
/// top block row [A_1 ... A_p], identity blocks on the subdiagonal.
Eigen::MatrixXd companion_matrix(const VarModel& model);

struct StabilityReport {
    std::vector<std::complex<double>> roots;  // companion eigenvalues
    std::vector<double> moduli;               // sorted descending
    bool is_stable = false;                   // all moduli strictly below one
};

StabilityReport stability(const VarModel& model);

/// Moving-average representation Psi_0..Psi_H with Psi_0 = I and
/// Psi_h = sum_{i=1..min(h,p)} A_i Psi_{h-i}.
std::vector<Eigen::MatrixXd> ma_coefficients(const VarModel& model, int horizon);

}  // namespace varkit
