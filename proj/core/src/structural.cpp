#include "varkit/structural.hpp"

#include <cmath>
#include <random>

#include "varkit/errors.hpp"
#include "varkit/parallel.hpp"

namespace varkit {

namespace {

// Ordering indices into the model's label order; must be a permutation.
std::vector<Eigen::Index> ordering_indices(const VarModel& model,
                                           const std::vector<std::string>& ordering) {
    const size_t m = model.labels.size();
    if (ordering.size() != m)
        raise(Errc::bad_ordering, "ordering must list all " + std::to_string(m) + " variables");
    std::vector<Eigen::Index> idx;
    std::vector<bool> used(m, false);
    idx.reserve(m);
    for (const auto& label : ordering) {
        auto it = std::find(model.labels.begin(), model.labels.end(), label);
        if (it == model.labels.end())
            raise(Errc::bad_ordering, "ordering names unknown variable '" + label + "'");
        const size_t j = static_cast<size_t>(it - model.labels.begin());
        if (used[j]) raise(Errc::bad_ordering, "ordering repeats variable '" + label + "'");
        used[j] = true;
        idx.push_back(static_cast<Eigen::Index>(j));
    }
    return idx;
}

Eigen::MatrixXd permute(const Eigen::MatrixXd& a, const std::vector<Eigen::Index>& idx) {
    Eigen::MatrixXd out(a.rows(), a.cols());
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j < idx.size(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(idx[i], idx[j]);
    return out;
}

// Theta_h = Q Psi_h Q' P for h = 0..H, everything in ordering space.
std::vector<Eigen::MatrixXd> orthogonalized_responses(const std::vector<Eigen::MatrixXd>& psi,
                                                      const std::vector<Eigen::Index>& idx,
                                                      const Eigen::MatrixXd& chol_ordered) {
    std::vector<Eigen::MatrixXd> theta;
    theta.reserve(psi.size());
    const Eigen::Index m = chol_ordered.rows();
    for (const auto& ph : psi) {
        Eigen::MatrixXd reordered(m, m);
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < m; ++j)
                reordered(i, j) = ph(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(j)]);
        theta.push_back(reordered * chol_ordered);
    }
    return theta;
}

std::vector<Eigen::MatrixXd> ma_from_coef(const std::vector<Eigen::MatrixXd>& coef, int m, int horizon) {
    std::vector<Eigen::MatrixXd> psi;
    psi.reserve(static_cast<size_t>(horizon) + 1);
    psi.push_back(Eigen::MatrixXd::Identity(m, m));
    const int p = static_cast<int>(coef.size());
    for (int h = 1; h <= horizon; ++h) {
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(m, m);
        for (int i = 1; i <= std::min(h, p); ++i)
            acc += coef[static_cast<size_t>(i - 1)] * psi[static_cast<size_t>(h - i)];
        psi.push_back(std::move(acc));
    }
    return psi;
}

}  // namespace

Eigen::MatrixXd cholesky_factor(const Eigen::MatrixXd& sigma) {
    if (sigma.rows() != sigma.cols())
        raise(Errc::not_positive_definite, "covariance matrix must be square");
    if (!sigma.isApprox(sigma.transpose(), 1e-10))
        raise(Errc::not_positive_definite, "covariance matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (hi <= 0.0 || lo <= 1e-12 * hi)
        raise(Errc::not_positive_definite, "covariance matrix is not positive definite");
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success)
        raise(Errc::not_positive_definite, "Cholesky factorization failed");
    return llt.matrixL();
}

IrfResult irf(const VarModel& model, int horizon, const std::vector<std::string>& ordering) {
    if (horizon < 0) raise(Errc::bad_ordering, "horizon must be nonnegative");
    const auto idx = ordering_indices(model, ordering);
    const Eigen::MatrixXd chol_ordered = cholesky_factor(permute(model.sigma_df, idx));

    IrfResult out;
    out.ordering = ordering;
    out.horizons = horizon + 1;
    out.point = orthogonalized_responses(ma_coefficients(model, horizon), idx, chol_ordered);
    if (model.p >= 1) out.stable_warning = !stability(model).is_stable;
    return out;
}

IrfResult irf_bands(const VarModel& model, int horizon, const std::vector<std::string>& ordering,
                    int replications, std::uint64_t seed, int workers) {
    if (replications < 100)
        raise(Errc::too_few_replications, "need at least 100 replications, got " +
                                              std::to_string(replications));
    if (model.kbar() == 0 || model.design.rows() == 0)
        raise(Errc::bad_ordering, "band simulation needs an estimated model with regressors");
    IrfResult out = irf(model, horizon, ordering);

    const auto idx = ordering_indices(model, ordering);
    const Eigen::MatrixXd chol_ordered = cholesky_factor(permute(model.sigma_df, idx));
    const int m = model.m();
    const int kbar = model.kbar();
    const int hsteps = horizon + 1;

    // vec(B) ~ N(vec(Bhat), sigma_df (x) (X'X)^-1): draws B* = Bhat + Lz G Ls'
    // with G iid standard normal, Lz Lz' = (X'X)^-1 and Ls Ls' = sigma_df.
    const Eigen::MatrixXd gram = model.design.transpose() * model.design;
    const Eigen::MatrixXd gram_inv = gram.llt().solve(Eigen::MatrixXd::Identity(kbar, kbar));
    const Eigen::MatrixXd lz = Eigen::LLT<Eigen::MatrixXd>(
                                   (gram_inv + gram_inv.transpose()) / 2.0)
                                   .matrixL();
    const Eigen::MatrixXd ls = cholesky_factor(model.sigma_df);
    const int offset = model.has_constant ? 1 : 0;

    std::vector<std::vector<Eigen::MatrixXd>> draws(static_cast<size_t>(replications));
    parallel_for(replications, workers, [&](int rep) {
        std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(rep)));
        std::normal_distribution<double> gauss(0.0, 1.0);
        Eigen::MatrixXd g(kbar, m);
        for (int i = 0; i < kbar; ++i)
            for (int j = 0; j < m; ++j) g(i, j) = gauss(rng);
        const Eigen::MatrixXd b_star = model.coef_stacked + lz * g * ls.transpose();

        std::vector<Eigen::MatrixXd> coef_star;
        coef_star.reserve(static_cast<size_t>(model.p));
        for (int lag = 1; lag <= model.p; ++lag)
            coef_star.push_back(b_star.block(offset + (lag - 1) * m, 0, m, m).transpose());
        draws[static_cast<size_t>(rep)] =
            orthogonalized_responses(ma_from_coef(coef_star, m, horizon), idx, chol_ordered);
    });

    out.lower.resize(static_cast<size_t>(hsteps));
    out.upper.resize(static_cast<size_t>(hsteps));
    for (int h = 0; h < hsteps; ++h) {
        Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(m, m);
        for (const auto& d : draws) mean += d[static_cast<size_t>(h)];
        mean /= replications;
        Eigen::MatrixXd var = Eigen::MatrixXd::Zero(m, m);
        for (const auto& d : draws) {
            const Eigen::MatrixXd dev = d[static_cast<size_t>(h)] - mean;
            var += dev.cwiseProduct(dev);
        }
        var /= (replications - 1);
        const Eigen::MatrixXd two_se = 2.0 * var.cwiseSqrt();
        out.lower[static_cast<size_t>(h)] = out.point[static_cast<size_t>(h)] - two_se;
        out.upper[static_cast<size_t>(h)] = out.point[static_cast<size_t>(h)] + two_se;
    }
    out.band_method = BandMethod::monte_carlo;
    out.replications = replications;
    out.seed = seed;
    return out;
}

std::vector<FevdTable> fevd(const VarModel& model, int horizon,
                            const std::vector<std::string>& ordering) {
    if (horizon < 1) raise(Errc::bad_ordering, "horizon must be at least 1");
    const IrfResult responses = irf(model, horizon - 1, ordering);
    const int m = model.m();

    std::vector<FevdTable> tables;
    tables.reserve(static_cast<size_t>(m));
    Eigen::MatrixXd cum = Eigen::MatrixXd::Zero(m, m);  // sum of squared responses up to h-1
    std::vector<Eigen::MatrixXd> shares(static_cast<size_t>(m),
                                        Eigen::MatrixXd::Zero(horizon, m));
    for (int h = 1; h <= horizon; ++h) {
        const auto& theta = responses.point[static_cast<size_t>(h - 1)];
        cum += theta.cwiseProduct(theta);
        for (int i = 0; i < m; ++i) {
            const double total = cum.row(i).sum();
            for (int j = 0; j < m; ++j)
                shares[static_cast<size_t>(i)](h - 1, j) = 100.0 * (cum(i, j) / total);
        }
    }
    for (int i = 0; i < m; ++i) {
        FevdTable table;
        table.target = ordering[static_cast<size_t>(i)];
        table.impulses = ordering;
        table.shares = std::move(shares[static_cast<size_t>(i)]);
        tables.push_back(std::move(table));
    }
    return tables;
}

}  // namespace varkit
