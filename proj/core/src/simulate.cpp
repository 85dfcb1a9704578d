#include "varkit/simulate.hpp"

#include <random>

#include "varkit/errors.hpp"

namespace varkit {

Eigen::MatrixXd simulate_var(const VarProcess& process, int T, std::uint64_t seed, int burn_in) {
    const Eigen::Index m = process.shock_loading.rows();
    const int p = static_cast<int>(process.coef.size());
    if (m == 0 || process.shock_loading.cols() != m)
        raise(Errc::invalid_panel, "shock loading must be square and non-empty");
    for (const auto& a : process.coef) {
        if (a.rows() != m || a.cols() != m) raise(Errc::invalid_panel, "coefficient matrix shape mismatch");
    }
    const Eigen::VectorXd c =
        process.intercept.size() == m ? process.intercept : Eigen::VectorXd::Zero(m);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    const int total = T + burn_in;
    Eigen::MatrixXd path(total + p, m);
    path.topRows(p).setZero();
    Eigen::VectorXd e(m);
    for (int t = 0; t < total; ++t) {
        for (Eigen::Index j = 0; j < m; ++j) e(j) = gauss(rng);
        Eigen::VectorXd y = c + process.shock_loading * e;
        for (int i = 0; i < p; ++i) y += process.coef[static_cast<size_t>(i)] * path.row(p + t - 1 - i).transpose();
        path.row(p + t) = y.transpose();
    }
    return path.bottomRows(T);
}

Eigen::MatrixXd standard_normal_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd out(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = gauss(rng);
    return out;
}

}  // namespace varkit
