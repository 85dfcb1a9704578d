#include <doctest.h>

#include <random>

#include "test_support.hpp"
#include "varkit/diagnostics.hpp"
#include "varkit/errors.hpp"
#include "varkit/parallel.hpp"

using varkit::LmMode;

namespace {

varkit::VarModel five_variable_var2(int t_obs, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto process = testkit::random_stable_process(rng, 5, 2, 0.8);
    const auto panel = testkit::panel_from_matrix(varkit::simulate_var(process, t_obs, seed));
    return varkit::estimate_var(panel, 2, true);
}

}  // namespace

TEST_CASE("reference degrees of freedom for a five-variable VAR(2)") {
    const auto model = five_variable_var2(60, 5);

    SUBCASE("LM numerator df is 25 at lag one") {
        const auto row = varkit::lm_serial_correlation(model, 1, LmMode::at_lag);
        CHECK(row.rao_df1 == 25);
        CHECK(row.lre_df == 25);
    }
    SUBCASE("cumulative lag-two df is 50") {
        const auto row = varkit::lm_serial_correlation(model, 2, LmMode::cumulative);
        CHECK(row.rao_df1 == 50);
        CHECK(row.lre_df == 50);
    }
    SUBCASE("White df is 150 without cross terms") {
        const auto res = varkit::white_heteroskedasticity(model, false);
        CHECK(res.df == 150);
    }
    SUBCASE("White df with cross terms counts levels, squares and products") {
        // g = 2*10 + 45 = 65 regressors over 15 products
        const auto res = varkit::white_heteroskedasticity(five_variable_var2(120, 6), true);
        CHECK(res.df == 15 * 65);
    }
}

TEST_CASE("denominator df reproduces the (25, 46.1) and (50, 35.3) pairs at n=27") {
    // m=5, p=2 on 29 observations: effective sample 27
    const auto model = five_variable_var2(29, 77);
    REQUIRE(model.n_effective == 27);

    const auto at1 = varkit::lm_serial_correlation(model, 1, LmMode::at_lag);
    CHECK(at1.rao_df2 == doctest::Approx(46.0799444).epsilon(1e-7));

    const auto at2 = varkit::lm_serial_correlation(model, 2, LmMode::at_lag);
    CHECK(at2.rao_df2 == doctest::Approx(46.0799444).epsilon(1e-7));

    const auto cum2 = varkit::lm_serial_correlation(model, 2, LmMode::cumulative);
    CHECK(cum2.rao_df2 == doctest::Approx(35.2891).epsilon(1e-4));
}

TEST_CASE("at-lag and cumulative coincide at h=1") {
    const auto model = five_variable_var2(80, 11);
    const auto a = varkit::lm_serial_correlation(model, 1, LmMode::at_lag);
    const auto b = varkit::lm_serial_correlation(model, 1, LmMode::cumulative);
    CHECK(a.lre_stat == b.lre_stat);
    CHECK(a.rao_f == b.rao_f);
    CHECK(a.rao_df2 == b.rao_df2);
}

TEST_CASE("lm statistic is invariant to variable relabeling") {
    std::mt19937_64 rng(13);
    const auto process = testkit::random_stable_process(rng, 3, 1, 0.8);
    const auto values = varkit::simulate_var(process, 200, 13);
    const auto panel = testkit::panel_from_matrix(values);
    const auto model = varkit::estimate_var(panel, 1, true);

    const auto shuffledPanel = varkit::subpanel(panel, {"X3", "X1", "X2"});
    const auto shuffledModel = varkit::estimate_var(shuffledPanel, 1, true);

    for (LmMode mode : {LmMode::at_lag, LmMode::cumulative}) {
        const auto a = varkit::lm_serial_correlation(model, 2, mode);
        const auto b = varkit::lm_serial_correlation(shuffledModel, 2, mode);
        CHECK(a.lre_stat == doctest::Approx(b.lre_stat).epsilon(1e-9));
        CHECK(a.rao_f == doctest::Approx(b.rao_f).epsilon(1e-9));
    }
    const auto wa = varkit::white_heteroskedasticity(model, false);
    const auto wb = varkit::white_heteroskedasticity(shuffledModel, false);
    CHECK(wa.chi_sq == doctest::Approx(wb.chi_sq).epsilon(1e-9));
    CHECK(wa.df == wb.df);
}

TEST_CASE("white statistic is invariant to rescaling a single variable") {
    std::mt19937_64 rng(19);
    const auto process = testkit::random_stable_process(rng, 3, 1, 0.8);
    const auto values = varkit::simulate_var(process, 150, 19);
    const auto panel = testkit::panel_from_matrix(values);

    Eigen::MatrixXd scaled = values;
    scaled.col(1) *= 37.5;
    const auto scaledPanel = testkit::panel_from_matrix(scaled);

    const auto a = varkit::white_heteroskedasticity(varkit::estimate_var(panel, 1, true), false);
    const auto b = varkit::white_heteroskedasticity(varkit::estimate_var(scaledPanel, 1, true), false);
    CHECK(a.chi_sq == doctest::Approx(b.chi_sq).epsilon(1e-9));
    CHECK(a.df == b.df);
}

namespace {

Eigen::MatrixXd persistent_coef() {
    Eigen::MatrixXd a(2, 2);
    a << 0.80, 0.10, 0.05, 0.75;
    return a;
}

}  // namespace

TEST_CASE("lm size (smoke) and power at T=500") {
    const int reps = 200;
    std::vector<int> size_rejects(static_cast<size_t>(reps), 0);
    std::vector<int> power_rejects(static_cast<size_t>(reps), 0);
    const Eigen::MatrixXd a = persistent_coef();

    varkit::parallel_for(reps, 2, [&](int rep) {
        std::mt19937_64 rng(varkit::mix_seed(4242, static_cast<std::uint64_t>(rep)));
        std::normal_distribution<double> gauss(0.0, 1.0);
        const int t_obs = 500;

        // clean shocks: nominal size
        varkit::VarProcess process;
        process.coef = {a};
        process.shock_loading = Eigen::MatrixXd::Identity(2, 2);
        process.intercept = Eigen::VectorXd::Zero(2);
        const auto clean =
            testkit::panel_from_matrix(varkit::simulate_var(process, t_obs, 10000 + rep));
        const auto row =
            varkit::lm_serial_correlation(varkit::estimate_var(clean, 1, true), 1, LmMode::at_lag);
        size_rejects[static_cast<size_t>(rep)] = row.rao_p < 0.05 ? 1 : 0;

        // shocks contaminated with AR(1) coefficient 0.6: the test should fire
        Eigen::MatrixXd shocked(t_obs, 2);
        Eigen::VectorXd carry = Eigen::VectorXd::Zero(2);
        Eigen::VectorXd prev = Eigen::VectorXd::Zero(2);
        for (int t = 0; t < t_obs; ++t) {
            Eigen::VectorXd e(2);
            e << gauss(rng), gauss(rng);
            carry = 0.6 * carry + e;
            prev = a * prev + carry;
            shocked.row(t) = prev.transpose();
        }
        const auto dirty = testkit::panel_from_matrix(shocked);
        const auto drow =
            varkit::lm_serial_correlation(varkit::estimate_var(dirty, 1, true), 1, LmMode::at_lag);
        power_rejects[static_cast<size_t>(rep)] = drow.rao_p < 0.05 ? 1 : 0;
    });

    int size_total = 0, power_total = 0;
    for (int v : size_rejects) size_total += v;
    for (int v : power_rejects) power_total += v;
    CHECK(static_cast<double>(size_total) / reps <= 0.10);  // acceptance pins [0.02, 0.09] at 500 reps
    CHECK(static_cast<double>(power_total) / reps >= 0.95);
}

TEST_CASE("white size (smoke) and power against a mid-sample variance break at T=500") {
    const int reps = 200;
    std::vector<int> size_rejects(static_cast<size_t>(reps), 0);
    std::vector<int> power_rejects(static_cast<size_t>(reps), 0);
    const Eigen::MatrixXd a = persistent_coef();

    varkit::parallel_for(reps, 2, [&](int rep) {
        std::mt19937_64 rng(varkit::mix_seed(515, static_cast<std::uint64_t>(rep)));
        std::normal_distribution<double> gauss(0.0, 1.0);
        const int t_obs = 500;

        varkit::VarProcess process;
        process.coef = {a};
        process.shock_loading = Eigen::MatrixXd::Identity(2, 2);
        process.intercept = Eigen::VectorXd::Zero(2);
        const auto clean = testkit::panel_from_matrix(varkit::simulate_var(process, t_obs, 999 + rep));
        const auto w = varkit::white_heteroskedasticity(varkit::estimate_var(clean, 1, true), false);
        size_rejects[static_cast<size_t>(rep)] = w.p_value < 0.05 ? 1 : 0;

        // shock scale doubles mid-sample
        Eigen::MatrixXd shocked(t_obs, 2);
        Eigen::VectorXd prev = Eigen::VectorXd::Zero(2);
        const double late_scale = 2.0;
        for (int t = 0; t < t_obs; ++t) {
            Eigen::VectorXd e(2);
            e << gauss(rng), gauss(rng);
            if (t >= t_obs / 2) e *= late_scale;
            prev = a * prev + e;
            shocked.row(t) = prev.transpose();
        }
        const auto dirty = testkit::panel_from_matrix(shocked);
        const auto dw = varkit::white_heteroskedasticity(varkit::estimate_var(dirty, 1, true), false);
        power_rejects[static_cast<size_t>(rep)] = dw.p_value < 0.05 ? 1 : 0;
    });

    int size_total = 0, power_total = 0;
    for (int v : size_rejects) size_total += v;
    for (int v : power_rejects) power_total += v;
    CHECK(static_cast<double>(size_total) / reps <= 0.10);
    CHECK(static_cast<double>(power_total) / reps >= 0.90);
}

TEST_CASE("insufficient observations are reported") {
    const auto model = five_variable_var2(30, 3);
    CHECK_THROWS_AS((void)varkit::lm_serial_correlation(model, 4, LmMode::cumulative), varkit::Error);
}
