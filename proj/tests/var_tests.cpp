#include <doctest.h>

#include <random>

#include "test_support.hpp"
#include "varkit/errors.hpp"
#include "varkit/ols.hpp"
#include "varkit/parallel.hpp"
#include "varkit/var_model.hpp"

using varkit::Errc;
using varkit::OlsMethod;

TEST_CASE("dual-route ols solvers agree") {
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 40 + rep * 7;
        const int k = 3 + rep % 5;
        const int m = 1 + rep % 3;
        Eigen::MatrixXd x(n, k), y(n, m);
        for (int i = 0; i < n; ++i) {
            x(i, 0) = 1.0;
            for (int j = 1; j < k; ++j) x(i, j) = gauss(rng);
            for (int j = 0; j < m; ++j) y(i, j) = gauss(rng);
        }
        const Eigen::MatrixXd via_qr = varkit::ols_solve(x, y, OlsMethod::qr);
        const Eigen::MatrixXd via_normal = varkit::ols_solve(x, y, OlsMethod::normal_equations);
        CHECK((via_qr - via_normal).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("collinear design is rejected") {
    Eigen::MatrixXd x(30, 3);
    std::mt19937_64 rng(9);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int i = 0; i < 30; ++i) {
        x(i, 0) = 1.0;
        x(i, 1) = gauss(rng);
        x(i, 2) = 2.0 * x(i, 1);  // exact collinearity
    }
    Eigen::MatrixXd y = Eigen::MatrixXd::Ones(30, 1);
    try {
        (void)varkit::ols_solve(x, y);
        CHECK(false);
    } catch (const varkit::Error& e) {
        CHECK(e.code() == Errc::singular_design);
    }
}

TEST_CASE("estimate_var recovers a known VAR(1)") {
    Eigen::MatrixXd a(2, 2);
    a << 0.5, 0.0, 0.0, 0.3;
    varkit::VarProcess process;
    process.coef = {a};
    process.shock_loading = Eigen::MatrixXd::Identity(2, 2);
    process.intercept = Eigen::VectorXd::Zero(2);
    const auto panel = testkit::panel_from_matrix(varkit::simulate_var(process, 10000, 99), 1);

    const auto model = varkit::estimate_var(panel, 1, true);
    CHECK((model.coef[0] - a).cwiseAbs().maxCoeff() < 0.05);
    CHECK(model.intercept.cwiseAbs().maxCoeff() < 0.05);
    CHECK(model.n_effective == 9999);
}

TEST_CASE("too small a sample is rejected") {
    // T = m*p + 1 with a constant leaves no degrees of freedom
    Eigen::MatrixXd values(3, 2);
    values << 1.0, 2.0, 1.5, 2.5, 2.0, 1.0;
    const auto panel = testkit::panel_from_matrix(values);
    try {
        (void)varkit::estimate_var(panel, 1, true);
        CHECK(false);
    } catch (const varkit::Error& e) {
        CHECK(e.code() == Errc::insufficient_observations);
    }
}

TEST_CASE("VAR(0) with constant reduces to column means") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> gauss(3.0, 2.0);
    Eigen::MatrixXd values(60, 3);
    for (Eigen::Index i = 0; i < values.rows(); ++i)
        for (Eigen::Index j = 0; j < values.cols(); ++j) values(i, j) = gauss(rng);
    const auto panel = testkit::panel_from_matrix(values);
    const auto model = varkit::estimate_var(panel, 0, true);
    const Eigen::VectorXd means = values.colwise().mean();
    CHECK((model.intercept - means).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::MatrixXd demeaned = values.rowwise() - means.transpose();
    CHECK((model.residuals - demeaned).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("fitted plus residual reproduces the sample exactly") {
    std::mt19937_64 rng(31);
    const auto process = testkit::random_stable_process(rng, 3, 2);
    const auto panel = testkit::panel_from_matrix(varkit::simulate_var(process, 250, 8));
    const auto model = varkit::estimate_var(panel, 2, true);

    const Eigen::MatrixXd actual = panel.values().bottomRows(model.n_effective);
    const Eigen::MatrixXd fitted = model.design * model.coef_stacked;
    CHECK((actual - (fitted + model.residuals)).cwiseAbs().maxCoeff() < 1e-12);

    SUBCASE("residual columns have near-zero means with a constant") {
        for (int j = 0; j < model.m(); ++j) {
            const double sd = std::sqrt(model.sigma_mle(j, j));
            CHECK(std::abs(model.residuals.col(j).mean()) <= 1e-8 * sd);
        }
    }
    SUBCASE("loglik matches its closed form") {
        const double n = model.n_effective;
        const double m = model.m();
        const double logdet = std::log(model.sigma_mle.determinant());
        const double expect = -0.5 * n * (m * std::log(2 * M_PI) + logdet + m);
        CHECK(model.loglik == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("equation-wise and joint estimation coincide") {
    std::mt19937_64 rng(47);
    const auto process = testkit::random_stable_process(rng, 3, 1);
    const auto panel = testkit::panel_from_matrix(varkit::simulate_var(process, 300, 12));
    const auto joint = varkit::estimate_var(panel, 1, true, OlsMethod::qr);
    const auto perEq = varkit::estimate_var(panel, 1, true, OlsMethod::normal_equations);
    CHECK((joint.coef_stacked - perEq.coef_stacked).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("lag selection behaves on the common sample") {
    std::mt19937_64 rng(53);
    const auto process = testkit::random_stable_process(rng, 2, 2);
    const auto panel = testkit::panel_from_matrix(varkit::simulate_var(process, 400, 21));
    const auto sel = varkit::lag_order_selection(panel, 4, true);

    REQUIRE(sel.rows.size() == 5);
    CHECK(sel.common_sample == 396);
    CHECK_FALSE(sel.rows[0].lr.has_value());
    for (size_t j = 1; j < sel.rows.size(); ++j) CHECK(sel.rows[j].lr.has_value());

    SUBCASE("loglik never decreases with an extra lag") {
        for (size_t j = 1; j < sel.rows.size(); ++j)
            CHECK(sel.rows[j].loglik >= sel.rows[j - 1].loglik - 1e-8);
    }
    SUBCASE("fpe positive") {
        for (const auto& row : sel.rows) CHECK(row.fpe > 0.0);
    }
}

TEST_CASE("criteria formulas are internally consistent") {
    std::mt19937_64 rng(59);
    const auto process = testkit::random_stable_process(rng, 2, 1);
    const auto panel = testkit::panel_from_matrix(varkit::simulate_var(process, 200, 5));
    const auto sel = varkit::lag_order_selection(panel, 2, true);
    const double n = sel.common_sample;
    for (const auto& row : sel.rows) {
        const double k = 2.0 * (2.0 * row.lag + 1.0);  // m * kbar
        CHECK(row.aic == doctest::Approx((-2.0 * row.loglik + 2.0 * k) / n).epsilon(1e-12));
        CHECK(row.sc == doctest::Approx((-2.0 * row.loglik + k * std::log(n)) / n).epsilon(1e-12));
        CHECK(row.hq ==
              doctest::Approx((-2.0 * row.loglik + 2.0 * k * std::log(std::log(n))) / n).epsilon(1e-12));
    }
}

TEST_CASE("annual five-variable panel produces the three-row selection table") {
    const auto panel = varkit::load_panel_file(std::string(VARKIT_TEST_DATA_DIR) + "/demo_panel.csv");
    REQUIRE(panel.rows() == 29);
    REQUIRE(panel.cols() == 5);
    const auto sel = varkit::lag_order_selection(panel, 2, true);
    REQUIRE(sel.rows.size() == 3);
    CHECK(sel.common_sample == 27);
    for (int j = 0; j <= 2; ++j) CHECK(sel.rows[static_cast<size_t>(j)].lag == j);
    // the chosen lag is the AIC argmin over the displayed rows
    int argmin = 0;
    for (int j = 1; j <= 2; ++j)
        if (sel.rows[static_cast<size_t>(j)].aic < sel.rows[static_cast<size_t>(argmin)].aic) argmin = j;
    CHECK(sel.by_aic == argmin);
}

TEST_CASE("white-noise panel selects lag zero by SC (smoke)") {
    int zero_picks = 0;
    const int reps = 40;
    for (int rep = 0; rep < reps; ++rep) {
        std::mt19937_64 rng(varkit::mix_seed(888, static_cast<std::uint64_t>(rep)));
        varkit::VarProcess process;
        process.shock_loading = Eigen::MatrixXd::Identity(2, 2);
        process.intercept = Eigen::VectorXd::Zero(2);
        const auto panel = testkit::panel_from_matrix(varkit::simulate_var(process, 400, rep + 1));
        if (varkit::lag_order_selection(panel, 3, true).by_sc == 0) ++zero_picks;
    }
    CHECK(zero_picks >= 36);
}

TEST_CASE("companion matrix layout") {
    SUBCASE("m=1 p=1") {
        Eigen::MatrixXd a(1, 1);
        a << 0.5;
        const auto model = testkit::model_from_parameters({a}, Eigen::MatrixXd::Identity(1, 1));
        const auto c = varkit::companion_matrix(model);
        CHECK(c.rows() == 1);
        CHECK(c(0, 0) == 0.5);
    }
    SUBCASE("m=1 p=2 textbook form") {
        Eigen::MatrixXd a1(1, 1), a2(1, 1);
        a1 << 0.7;
        a2 << -0.2;
        const auto model = testkit::model_from_parameters({a1, a2}, Eigen::MatrixXd::Identity(1, 1));
        const auto c = varkit::companion_matrix(model);
        CHECK(c.rows() == 2);
        CHECK(c(0, 0) == 0.7);
        CHECK(c(0, 1) == -0.2);
        CHECK(c(1, 0) == 1.0);
        CHECK(c(1, 1) == 0.0);
    }
    SUBCASE("m=2 p=2 has an identity lower-left block") {
        Eigen::MatrixXd a1 = Eigen::MatrixXd::Constant(2, 2, 0.1);
        Eigen::MatrixXd a2 = Eigen::MatrixXd::Constant(2, 2, 0.05);
        const auto model = testkit::model_from_parameters({a1, a2}, Eigen::MatrixXd::Identity(2, 2));
        const auto c = varkit::companion_matrix(model);
        CHECK(c.rows() == 4);
        CHECK(c.block(0, 0, 2, 2) == a1);
        CHECK(c.block(0, 2, 2, 2) == a2);
        CHECK(c.block(2, 0, 2, 2) == Eigen::MatrixXd::Identity(2, 2));
        CHECK(c.block(2, 2, 2, 2) == Eigen::MatrixXd::Zero(2, 2));
    }
    SUBCASE("zero lag model has no companion form") {
        varkit::VarModel model = testkit::model_from_parameters({}, Eigen::MatrixXd::Identity(2, 2));
        CHECK_THROWS_AS((void)varkit::companion_matrix(model), varkit::Error);
    }
}

TEST_CASE("stability report") {
    SUBCASE("scalar AR(1) with a = 0.5 is stable") {
        Eigen::MatrixXd a(1, 1);
        a << 0.5;
        const auto report = varkit::stability(
            testkit::model_from_parameters({a}, Eigen::MatrixXd::Identity(1, 1)));
        REQUIRE(report.moduli.size() == 1);
        CHECK(report.moduli[0] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(report.is_stable);
    }
    SUBCASE("unit root is flagged unstable") {
        Eigen::MatrixXd a(1, 1);
        a << 1.0;
        const auto report = varkit::stability(
            testkit::model_from_parameters({a}, Eigen::MatrixXd::Identity(1, 1)));
        CHECK(report.moduli[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK_FALSE(report.is_stable);
    }
    SUBCASE("AR(2) with only a second lag has a complex pair of modulus one half") {
        Eigen::MatrixXd a1(1, 1), a2(1, 1);
        a1 << 0.0;
        a2 << -0.25;
        const auto report = varkit::stability(
            testkit::model_from_parameters({a1, a2}, Eigen::MatrixXd::Identity(1, 1)));
        REQUIRE(report.moduli.size() == 2);
        CHECK(std::abs(report.moduli[0] - 0.5) < 1e-10);
        CHECK(std::abs(report.moduli[1] - 0.5) < 1e-10);
        CHECK(std::abs(report.roots[0].imag()) > 0.4);
        CHECK(report.is_stable);
    }
}

TEST_CASE("moving-average coefficients") {
    std::mt19937_64 rng(61);
    SUBCASE("psi_0 is the identity") {
        const auto process = testkit::random_stable_process(rng, 3, 2);
        const auto model = testkit::model_from_parameters(
            process.coef, process.shock_loading * process.shock_loading.transpose());
        const auto psi = varkit::ma_coefficients(model, 4);
        CHECK(psi[0] == Eigen::MatrixXd::Identity(3, 3));
    }
    SUBCASE("VAR(1) gives matrix powers") {
        Eigen::MatrixXd a(2, 2);
        a << 0.4, 0.1, -0.2, 0.5;
        const auto model = testkit::model_from_parameters({a}, Eigen::MatrixXd::Identity(2, 2));
        const auto psi = varkit::ma_coefficients(model, 10);
        Eigen::MatrixXd power = Eigen::MatrixXd::Identity(2, 2);
        for (int h = 0; h <= 10; ++h) {
            CHECK((psi[static_cast<size_t>(h)] - power).cwiseAbs().maxCoeff() < 1e-12);
            power = a * power;
        }
    }
    SUBCASE("stable models have vanishing long-horizon coefficients") {
        for (int rep = 0; rep < 5; ++rep) {
            const auto process = testkit::random_stable_process(rng, 2, 2, 0.85);
            const auto model = testkit::model_from_parameters(
                process.coef, process.shock_loading * process.shock_loading.transpose());
            const auto psi = varkit::ma_coefficients(model, 200);
            CHECK(psi.back().cwiseAbs().maxCoeff() < 1e-6);
        }
    }
}
