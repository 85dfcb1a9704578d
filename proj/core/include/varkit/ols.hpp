#pragma once

#include <Eigen/Dense>

namespace varkit {

/// Solver route for multivariate least squares. The two routes are kept as
/// independent code paths so they can cross-check each other.
enum class OlsMethod { qr, normal_equations };

/// Condition number of a symmetric PSD matrix from its eigenvalue spread.
double gram_condition_number(const Eigen::MatrixXd& gram);

/// Designs whose cross-product condition number exceeds this are rejected
/// instead of being silently regularized.
inline constexpr double kDesignConditionLimit = 1e12;

/// Least-squares coefficients of Y (n x m) on X (n x k), returned as k x m.
/// Throws SingularDesign when X'X is ill-conditioned past the limit.
Eigen::MatrixXd ols_solve(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                          OlsMethod method = OlsMethod::qr);

}  // namespace varkit
