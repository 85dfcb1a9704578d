#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace varkit {

/// Data-generating process y_t = c + A_1 y_{t-1} + ... + A_p y_{t-p} + P e_t
/// with e_t iid standard normal and P a square shock-loading matrix.
struct VarProcess {
    Eigen::VectorXd intercept;
    std::vector<Eigen::MatrixXd> coef;
    Eigen::MatrixXd shock_loading;  // typically a Cholesky factor of the shock covariance
};

/// Simulates T observations after `burn_in` discarded ones. Deterministic in
/// (process, T, seed, burn_in).
Eigen::MatrixXd simulate_var(const VarProcess& process, int T, std::uint64_t seed, int burn_in = 200);

/// Seeded standard-normal matrix draw, for test harnesses.
Eigen::MatrixXd standard_normal_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed);

}  // namespace varkit
