#include <doctest.h>

#include <random>

#include "test_support.hpp"
#include "varkit/errors.hpp"
#include "varkit/johansen.hpp"
#include "varkit/parallel.hpp"

using varkit::CointStatistic;
using varkit::VecmDeterministic;

namespace {

Eigen::MatrixXd random_walks(std::mt19937_64& rng, int t_obs, int m) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd y(t_obs, m);
    Eigen::VectorXd level = Eigen::VectorXd::Zero(m);
    for (int t = 0; t < t_obs; ++t) {
        for (int j = 0; j < m; ++j) level(j) += gauss(rng);
        y.row(t) = level.transpose();
    }
    return y;
}

}  // namespace

TEST_CASE("max-eigenvalue statistics reproduce the closed form") {
    const std::vector<double> eigenvalues = {0.852411, 0.556673};
    const auto stats = varkit::max_eig_statistics(eigenvalues, 26.0);
    CHECK(stats[0] == doctest::Approx(49.74645).epsilon(2e-4));
    CHECK(stats[1] == doctest::Approx(21.14966).epsilon(2e-4));
}

TEST_CASE("trace equals the cumulative sum of max-eigenvalue terms") {
    const std::vector<double> eigenvalues = {0.8, 0.5, 0.2, 0.05};
    const auto trace = varkit::trace_statistics(eigenvalues, 100.0);
    const auto maxeig = varkit::max_eig_statistics(eigenvalues, 100.0);
    for (size_t r = 0; r < eigenvalues.size(); ++r) {
        double acc = 0.0;
        for (size_t i = r; i < eigenvalues.size(); ++i) acc += maxeig[i];
        CHECK(std::abs(trace[r] - acc) < 1e-10);
    }
    CHECK(trace.back() == doctest::Approx(maxeig.back()));  // last rows coincide
    for (size_t r = 0; r + 1 < trace.size(); ++r) CHECK(trace[r] >= maxeig[r]);
}

TEST_CASE("rank selection from printed statistics and critical values") {
    const std::vector<double> stats = {98.04050, 46.02958};
    const std::vector<double> crits = {69.81889, 47.85613};
    CHECK(varkit::select_rank(stats, crits) == 1);

    // all nulls rejected selects the full rank
    CHECK(varkit::select_rank(std::vector<double>{100.0, 60.0},
                              std::vector<double>{69.8, 47.9}) == 2);
    // nothing rejected keeps rank zero
    CHECK(varkit::select_rank(std::vector<double>{10.0, 5.0},
                              std::vector<double>{69.8, 47.9}) == 0);
}

TEST_CASE("p-value surface behaves") {
    for (VecmDeterministic det :
         {VecmDeterministic::none, VecmDeterministic::restricted_constant, VecmDeterministic::constant,
          VecmDeterministic::restricted_trend, VecmDeterministic::trend}) {
        for (CointStatistic kind : {CointStatistic::trace, CointStatistic::max_eigenvalue}) {
            for (int n = 1; n <= 12; ++n) {
                const double cv = varkit::johansen_crit_5pct(kind, n, det);
                const double p_at_cv = varkit::johansen_pvalue(cv, kind, n, det);
                CHECK(std::abs(p_at_cv - 0.05) < 0.005);
                CHECK(varkit::johansen_pvalue(0.0, kind, n, det) >= 0.99);
                // monotone decreasing in the statistic
                CHECK(varkit::johansen_pvalue(cv * 0.5, kind, n, det) >
                      varkit::johansen_pvalue(cv, kind, n, det));
                CHECK(varkit::johansen_pvalue(cv, kind, n, det) >
                      varkit::johansen_pvalue(cv * 1.5, kind, n, det));
            }
        }
    }
    CHECK_THROWS_AS((void)varkit::johansen_pvalue(10.0, CointStatistic::trace, 13,
                                                  VecmDeterministic::constant),
                    varkit::Error);
}

TEST_CASE("critical values are close to the standard tabulations (constant case)") {
    const double trace_refs[] = {3.841466, 15.49471, 29.79707, 47.85613, 69.81889};
    const double maxeig_refs[] = {3.841466, 14.26460, 21.13162, 27.58434, 33.87687};
    for (int n = 1; n <= 5; ++n) {
        const double tr = varkit::johansen_crit_5pct(CointStatistic::trace, n, VecmDeterministic::constant);
        const double me =
            varkit::johansen_crit_5pct(CointStatistic::max_eigenvalue, n, VecmDeterministic::constant);
        CHECK(std::abs(tr - trace_refs[n - 1]) / trace_refs[n - 1] < 0.02);
        CHECK(std::abs(me - maxeig_refs[n - 1]) / maxeig_refs[n - 1] < 0.02);
    }
}

TEST_CASE("printed trace statistic yields a p-value near its published level") {
    const double p = varkit::johansen_pvalue(46.02958, CointStatistic::trace, 4, VecmDeterministic::constant);
    CHECK(std::abs(p - 0.0735) < 0.03);
}

TEST_CASE("johansen eigenvalues live in [0,1) and are scale invariant") {
    std::mt19937_64 rng(202);
    const auto y = random_walks(rng, 200, 3);
    const auto panel = testkit::panel_from_matrix(y);
    const auto res = varkit::johansen(panel, 2, VecmDeterministic::constant);

    REQUIRE(res.eigenvalues.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(res.eigenvalues(i) >= 0.0);
        CHECK(res.eigenvalues(i) < 1.0);
        if (i) CHECK(res.eigenvalues(i) <= res.eigenvalues(i - 1));
    }
    for (double s : res.trace) CHECK(s >= 0.0);
    CHECK(res.t_effective == 198);

    Eigen::MatrixXd scaled = y;
    scaled.col(1) *= 250.0;
    const auto res2 = varkit::johansen(testkit::panel_from_matrix(scaled), 2, VecmDeterministic::constant);
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(res.eigenvalues(i) - res2.eigenvalues(i)) < 1e-8);
}

TEST_CASE("trace block equals cumulated max-eig block on estimated output") {
    std::mt19937_64 rng(404);
    const auto panel = testkit::panel_from_matrix(random_walks(rng, 150, 2));
    const auto res = varkit::johansen(panel, 1, VecmDeterministic::restricted_constant);
    for (size_t r = 0; r < res.trace.size(); ++r) {
        double acc = 0.0;
        for (size_t i = r; i < res.max_eig.size(); ++i) acc += res.max_eig[i];
        CHECK(std::abs(res.trace[r] - acc) < 1e-10);
    }
}

TEST_CASE("rank recovery on known processes (smoke)") {
    // the unrestricted-constant tables presume drifting levels, so the
    // data-generating processes drift
    const int reps = 60;
    std::vector<int> rank0_hits(static_cast<size_t>(reps), 0);
    std::vector<int> rank1_hits(static_cast<size_t>(reps), 0);

    varkit::parallel_for(reps, 2, [&](int rep) {
        std::mt19937_64 rng(varkit::mix_seed(7070, static_cast<std::uint64_t>(rep)));
        std::normal_distribution<double> gauss(0.0, 1.0);
        const int t_obs = 400;

        // two independent drifting random walks: rank 0
        Eigen::MatrixXd indep(t_obs, 2);
        double a = 0.0, b = 0.0;
        for (int t = 0; t < t_obs; ++t) {
            a += 0.3 + gauss(rng);
            b += -0.2 + gauss(rng);
            indep(t, 0) = a;
            indep(t, 1) = b;
        }
        const auto r0 =
            varkit::johansen(testkit::panel_from_matrix(indep), 1, VecmDeterministic::constant);
        rank0_hits[static_cast<size_t>(rep)] = r0.selected_rank_trace == 0 ? 1 : 0;

        // one exact cointegrating relation around a common drifting trend: rank 1
        Eigen::MatrixXd y(t_obs, 2);
        double walk = 0.0;
        for (int t = 0; t < t_obs; ++t) {
            walk += 0.4 + gauss(rng);
            y(t, 0) = walk;
            y(t, 1) = walk + gauss(rng);  // stationary spread
        }
        const auto r1 = varkit::johansen(testkit::panel_from_matrix(y), 1, VecmDeterministic::constant);
        rank1_hits[static_cast<size_t>(rep)] = r1.selected_rank_trace == 1 ? 1 : 0;
    });

    int rank0_total = 0, rank1_total = 0;
    for (int v : rank0_hits) rank0_total += v;
    for (int v : rank1_hits) rank1_total += v;
    CHECK(static_cast<double>(rank0_total) / reps >= 0.85);
    CHECK(static_cast<double>(rank1_total) / reps >= 0.85);
}

TEST_CASE("error paths") {
    std::mt19937_64 rng(99);
    const auto panel = testkit::panel_from_matrix(random_walks(rng, 60, 2));
    CHECK_THROWS_AS((void)varkit::johansen(panel, 0, VecmDeterministic::constant), varkit::Error);

    // perfectly collinear levels
    Eigen::MatrixXd y = random_walks(rng, 60, 1);
    Eigen::MatrixXd dup(60, 2);
    dup.col(0) = y.col(0);
    dup.col(1) = 2.0 * y.col(0);
    CHECK_THROWS_AS((void)varkit::johansen(testkit::panel_from_matrix(dup), 1, VecmDeterministic::constant),
                    varkit::Error);
}

TEST_CASE("deterministic case names round-trip") {
    for (VecmDeterministic det :
         {VecmDeterministic::none, VecmDeterministic::restricted_constant, VecmDeterministic::constant,
          VecmDeterministic::restricted_trend, VecmDeterministic::trend}) {
        CHECK(varkit::vecm_deterministic_from_name(varkit::vecm_deterministic_name(det)) == det);
    }
    CHECK(varkit::vecm_deterministic_from_name("2") == VecmDeterministic::constant);
}
