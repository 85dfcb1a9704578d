#include "varkit/ols.hpp"

#include "varkit/errors.hpp"

namespace varkit {

double gram_condition_number(const Eigen::MatrixXd& gram) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (hi <= 0.0) return std::numeric_limits<double>::infinity();
    if (lo <= 0.0) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

Eigen::MatrixXd ols_solve(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, OlsMethod method) {
    if (X.rows() != Y.rows()) raise(Errc::singular_design, "design and response row counts differ");
    if (X.cols() == 0) return Eigen::MatrixXd::Zero(0, Y.cols());
    if (X.rows() < X.cols()) raise(Errc::singular_design, "fewer observations than regressors");

    const Eigen::MatrixXd gram = X.transpose() * X;
    if (gram_condition_number(gram) > kDesignConditionLimit)
        raise(Errc::singular_design, "design cross-product condition number exceeds 1e12");

    if (method == OlsMethod::normal_equations) {
        return gram.ldlt().solve(X.transpose() * Y);
    }
    return X.householderQr().solve(Y);
}

}  // namespace varkit
