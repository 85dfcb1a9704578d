#pragma once

#include <cstdint>

#include "varkit/var_model.hpp"

namespace varkit {

/// Lower-triangular P with P P' = sigma and a strictly positive diagonal.
/// Throws NotPositiveDefinite for asymmetric, indefinite, or near-singular
/// input (minimum eigenvalue at or below 1e-12 of the maximum).
Eigen::MatrixXd cholesky_factor(const Eigen::MatrixXd& sigma);

enum class BandMethod { none, monte_carlo };

/// Orthogonalized impulse responses under a recursive (Cholesky) ordering.
///
/// point[h](i, j) is the response of the i-th variable of `ordering` at
/// horizon h to a one-standard-deviation shock in the j-th; point[0] is
/// lower triangular. lower/upper are point -/+ 2 empirical standard errors
/// when bands were computed, empty otherwise.
struct IrfResult {
    std::vector<std::string> ordering;
    int horizons = 0;  // entries 0..H
    std::vector<Eigen::MatrixXd> point;
    std::vector<Eigen::MatrixXd> lower;
    std::vector<Eigen::MatrixXd> upper;
    BandMethod band_method = BandMethod::none;
    int replications = 0;
    std::uint64_t seed = 0;
    bool stable_warning = false;  // set when the model failed the stability check
};

IrfResult irf(const VarModel& model, int horizon, const std::vector<std::string>& ordering);

/// Adds +-2 standard-error bands from Monte Carlo draws of the coefficient
/// estimator's asymptotic normal distribution (covariance kept fixed at the
/// point estimate). Each replication uses its own seed-derived stream, so
/// the bands are bitwise identical for any worker count.
IrfResult irf_bands(const VarModel& model, int horizon, const std::vector<std::string>& ordering,
                    int replications, std::uint64_t seed, int workers = 1);

/// Forecast-error variance decomposition of one variable: rows are horizons
/// 1..H, columns are percentage contributions per impulse, each row summing
/// to 100.
struct FevdTable {
    std::string target;
    std::vector<std::string> impulses;
    Eigen::MatrixXd shares;  // H x m
};

std::vector<FevdTable> fevd(const VarModel& model, int horizon, const std::vector<std::string>& ordering);

}  // namespace varkit
