#include "varkit/johansen.hpp"

#include <cmath>

#include "varkit/distributions.hpp"
#include "varkit/errors.hpp"
#include "varkit/ols.hpp"

namespace varkit {

namespace {

struct JohansenNullMoments {
    double mean;
    double variance;
    double cv5;
};

#include "johansen_null_tables.inc"

const JohansenNullMoments& null_moments(CointStatistic kind, int m_minus_r, VecmDeterministic det) {
    if (m_minus_r < 1 || m_minus_r > kJohansenMaxDim)
        raise(Errc::unsupported_dimension,
              "m - r = " + std::to_string(m_minus_r) + " outside the tabulated range 1.." +
                  std::to_string(kJohansenMaxDim));
    const int c = static_cast<int>(det);
    const int k = kind == CointStatistic::trace ? 0 : 1;
    return kJohansenNull[c][k][m_minus_r - 1];
}

}  // namespace

const char* vecm_deterministic_name(VecmDeterministic det) noexcept {
    switch (det) {
        case VecmDeterministic::none: return "none";
        case VecmDeterministic::restricted_constant: return "restricted-constant";
        case VecmDeterministic::constant: return "constant";
        case VecmDeterministic::restricted_trend: return "restricted-trend";
        case VecmDeterministic::trend: return "trend";
    }
    return "?";
}

VecmDeterministic vecm_deterministic_from_name(std::string_view name) {
    if (name == "none" || name == "0") return VecmDeterministic::none;
    if (name == "restricted-constant" || name == "restricted_constant" || name == "1")
        return VecmDeterministic::restricted_constant;
    if (name == "constant" || name == "2") return VecmDeterministic::constant;
    if (name == "restricted-trend" || name == "restricted_trend" || name == "3")
        return VecmDeterministic::restricted_trend;
    if (name == "trend" || name == "4") return VecmDeterministic::trend;
    raise(Errc::config_error, "unknown deterministic case '" + std::string(name) + "'");
}

std::vector<double> trace_statistics(std::span<const double> eigenvalues, double t_effective) {
    const size_t m = eigenvalues.size();
    std::vector<double> out(m, 0.0);
    double acc = 0.0;
    for (size_t i = m; i-- > 0;) {
        acc += -t_effective * std::log1p(-eigenvalues[i]);
        out[i] = acc;
    }
    return out;
}

std::vector<double> max_eig_statistics(std::span<const double> eigenvalues, double t_effective) {
    std::vector<double> out;
    out.reserve(eigenvalues.size());
    for (double mu : eigenvalues) out.push_back(-t_effective * std::log1p(-mu));
    return out;
}

double johansen_pvalue(double stat, CointStatistic kind, int m_minus_r, VecmDeterministic det) {
    const auto& mom = null_moments(kind, m_minus_r, det);
    const double shape = mom.mean * mom.mean / mom.variance;
    const double scale = mom.variance / mom.mean;
    return dist::gamma_sf(stat, shape, scale);
}

double johansen_crit_5pct(CointStatistic kind, int m_minus_r, VecmDeterministic det) {
    return null_moments(kind, m_minus_r, det).cv5;
}

int select_rank(std::span<const double> stats, std::span<const double> crit_5pct) {
    const size_t m = std::min(stats.size(), crit_5pct.size());
    for (size_t r = 0; r < m; ++r) {
        if (stats[r] < crit_5pct[r]) return static_cast<int>(r);
    }
    return static_cast<int>(m);
}

JohansenResult johansen(const SeriesPanel& panel, int var_lags_p, VecmDeterministic det_case) {
    if (var_lags_p < 1) raise(Errc::zero_lag, "the VECM needs at least one lag in levels");
    const int m = static_cast<int>(panel.cols());
    if (m > kJohansenMaxDim)
        raise(Errc::unsupported_dimension, "more than " + std::to_string(kJohansenMaxDim) + " variables");
    const int t_total = static_cast<int>(panel.rows());
    const int p = var_lags_p;
    const int n = t_total - p;
    const bool unrestricted_const = det_case == VecmDeterministic::constant ||
                                    det_case == VecmDeterministic::restricted_trend ||
                                    det_case == VecmDeterministic::trend;
    const bool unrestricted_trend = det_case == VecmDeterministic::trend;
    const int n_short = m * (p - 1) + (unrestricted_const ? 1 : 0) + (unrestricted_trend ? 1 : 0);
    if (n <= m + n_short + 2)
        raise(Errc::insufficient_observations,
              "effective sample of " + std::to_string(n) + " too small for the VECM regression");

    const Eigen::MatrixXd& y = panel.values();
    const bool restricted_col = det_case == VecmDeterministic::restricted_constant ||
                                det_case == VecmDeterministic::restricted_trend;
    const int d1 = m + (restricted_col ? 1 : 0);

    // Z0 = dy_t, Z1 = (y_{t-1} | restricted det), Z2 = lagged differences
    // plus unrestricted deterministic terms; t runs over the effective sample.
    Eigen::MatrixXd z0(n, m), z1(n, d1), z2(n, n_short);
    for (int i = 0; i < n; ++i) {
        const int t = p + i;
        z0.row(i) = y.row(t) - y.row(t - 1);
        z1.block(i, 0, 1, m) = y.row(t - 1);
        if (restricted_col)
            z1(i, m) = det_case == VecmDeterministic::restricted_constant ? 1.0 : static_cast<double>(i + 1);
        int col = 0;
        for (int lag = 1; lag <= p - 1; ++lag) {
            z2.block(i, col, 1, m) = y.row(t - lag) - y.row(t - lag - 1);
            col += m;
        }
        if (unrestricted_const) z2(i, col++) = 1.0;
        if (unrestricted_trend) z2(i, col++) = static_cast<double>(i + 1);
    }

    Eigen::MatrixXd r0 = z0, r1 = z1;
    if (n_short > 0) {
        if (gram_condition_number(z2.transpose() * z2) > kDesignConditionLimit)
            raise(Errc::singular_moment_matrix, "short-run regressor matrix is numerically singular");
        const Eigen::HouseholderQR<Eigen::MatrixXd> qr(z2);
        r0 -= z2 * qr.solve(z0);
        r1 -= z2 * qr.solve(z1);
    }

    const Eigen::MatrixXd s00 = r0.transpose() * r0 / static_cast<double>(n);
    const Eigen::MatrixXd s01 = r0.transpose() * r1 / static_cast<double>(n);
    const Eigen::MatrixXd s11 = r1.transpose() * r1 / static_cast<double>(n);

    const Eigen::LLT<Eigen::MatrixXd> llt_s00(s00);
    if (llt_s00.info() != Eigen::Success)
        raise(Errc::singular_moment_matrix, "S00 moment matrix is not positive definite");
    const Eigen::LLT<Eigen::MatrixXd> llt_s11(s11);
    if (llt_s11.info() != Eigen::Success)
        raise(Errc::singular_moment_matrix, "S11 moment matrix is not positive definite");

    // Whiten S11 and solve the symmetric eigenproblem
    // L^-1 S10 S00^-1 S01 L^-T with S11 = L L'.
    const Eigen::MatrixXd mid = s01.transpose() * llt_s00.solve(s01);
    const Eigen::MatrixXd l_inv =
        llt_s11.matrixL().solve(Eigen::MatrixXd::Identity(d1, d1));
    const Eigen::MatrixXd whitened = l_inv * mid * l_inv.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(whitened, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success)
        raise(Errc::singular_moment_matrix, "eigenvalue extraction failed");

    // Largest m of the d1 eigenvalues, clamped into [0, 1).
    Eigen::VectorXd mu(m);
    for (int i = 0; i < m; ++i) {
        double v = eig.eigenvalues()(d1 - 1 - i);
        if (v >= 1.0 - 1e-12)
            raise(Errc::singular_moment_matrix, "canonical correlation of one: collinear levels");
        mu(i) = std::max(v, 0.0);
    }

    JohansenResult res;
    res.labels = panel.labels();
    res.det_case = det_case;
    res.t_effective = n;
    res.eigenvalues = mu;
    const std::span<const double> mu_span(mu.data(), static_cast<size_t>(m));
    res.trace = trace_statistics(mu_span, n);
    res.max_eig = max_eig_statistics(mu_span, n);
    for (int r = 0; r < m; ++r) {
        res.crit_5pct_trace.push_back(johansen_crit_5pct(CointStatistic::trace, m - r, det_case));
        res.crit_5pct_maxeig.push_back(johansen_crit_5pct(CointStatistic::max_eigenvalue, m - r, det_case));
        res.p_trace.push_back(johansen_pvalue(res.trace[static_cast<size_t>(r)], CointStatistic::trace,
                                              m - r, det_case));
        res.p_maxeig.push_back(johansen_pvalue(res.max_eig[static_cast<size_t>(r)],
                                               CointStatistic::max_eigenvalue, m - r, det_case));
    }
    res.selected_rank_trace = select_rank(res.trace, res.crit_5pct_trace);
    res.selected_rank_maxeig = select_rank(res.max_eig, res.crit_5pct_maxeig);
    return res;
}

}  // namespace varkit
