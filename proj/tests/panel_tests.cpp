#include <doctest.h>

#include <random>

#include "test_support.hpp"
#include "varkit/errors.hpp"
#include "varkit/panel.hpp"

using varkit::Errc;
using varkit::Error;
using varkit::SeriesPanel;
using varkit::Transform;

namespace {

bool throws_with(Errc code, const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

}  // namespace

TEST_CASE("load_panel parses a small csv") {
    const auto panel = varkit::load_panel("year,A,B\n2000,1.0,2.0\n2001,1.5,2.5\n");
    CHECK(panel.rows() == 2);
    CHECK(panel.cols() == 2);
    CHECK(panel.labels() == std::vector<std::string>{"A", "B"});
    CHECK(panel.years() == std::vector<int>{2000, 2001});
    CHECK(panel.values()(1, 1) == 2.5);
}

TEST_CASE("load_panel error paths") {
    CHECK(throws_with(Errc::missing_value,
                      [] { varkit::load_panel("year,A,B\n2000,1.0,\n2001,1.5,2.5\n"); }));
    CHECK(throws_with(Errc::non_numeric_cell,
                      [] { varkit::load_panel("year,A\n2000,1.0\n2001,abc\n"); }));
    CHECK(throws_with(Errc::duplicate_year,
                      [] { varkit::load_panel("year,A\n2000,1.0\n2000,2.0\n"); }));
    CHECK(throws_with(Errc::year_gap,
                      [] { varkit::load_panel("year,A\n2000,1.0\n2002,2.0\n"); }));
    CHECK(throws_with(Errc::unknown_label, [] {
        varkit::load_panel("year,A\n2000,1.0\n2001,2.0\n", {"Missing"});
    }));
}

TEST_CASE("load_panel reorders columns to expected labels") {
    const auto panel =
        varkit::load_panel("year,A,B\n2000,1.0,2.0\n2001,1.5,2.5\n", {"B", "A"});
    CHECK(panel.labels() == std::vector<std::string>{"B", "A"});
    CHECK(panel.values()(0, 0) == 2.0);
    CHECK(panel.values()(0, 1) == 1.0);
}

TEST_CASE("demo panel loads with 29 annual rows and 5 series") {
    const auto panel = varkit::load_panel_file(std::string(VARKIT_TEST_DATA_DIR) + "/demo_panel.csv");
    CHECK(panel.rows() == 29);
    CHECK(panel.cols() == 5);
    CHECK(panel.years().front() == 1995);
    CHECK(panel.years().back() == 2023);
}

TEST_CASE("csv round-trip is exact") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss(0.0, 10.0);
    Eigen::MatrixXd values(12, 3);
    for (Eigen::Index i = 0; i < values.rows(); ++i)
        for (Eigen::Index j = 0; j < values.cols(); ++j) values(i, j) = gauss(rng);
    const auto panel = testkit::panel_from_matrix(values);
    CHECK(varkit::load_panel(varkit::to_csv(panel)) == panel);
}

TEST_CASE("transforms") {
    const auto panel = varkit::load_panel("year,A\n2000,100\n2001,110\n");
    SUBCASE("percent change of [100, 110] is [10]") {
        const auto out = varkit::transform(panel, Transform::percent_change);
        CHECK(out.rows() == 1);
        CHECK(out.years() == std::vector<int>{2001});
        CHECK(out.values()(0, 0) == doctest::Approx(10.0));
    }
    SUBCASE("identity returns the panel unchanged") {
        CHECK(varkit::transform(panel, Transform::identity) == panel);
    }
    SUBCASE("percent change of [100, 100, 90]") {
        const auto longer = varkit::load_panel("year,A\n2000,100\n2001,100\n2002,90\n");
        const auto out = varkit::transform(longer, Transform::percent_change);
        CHECK(out.values()(0, 0) == doctest::Approx(0.0));
        CHECK(out.values()(1, 0) == doctest::Approx(-10.0));
    }
    SUBCASE("percent change over zero fails") {
        const auto zero = varkit::load_panel("year,A\n2000,0\n2001,1\n2002,2\n");
        CHECK(throws_with(Errc::division_by_zero,
                          [&] { varkit::transform(zero, Transform::percent_change); }));
    }
    SUBCASE("log difference of nonpositive values fails") {
        const auto negative = varkit::load_panel("year,A\n2000,-1\n2001,1\n2002,2\n");
        CHECK(throws_with(Errc::non_positive_log,
                          [&] { varkit::transform(negative, Transform::log_difference); }));
    }
}

TEST_CASE("first difference then cumulative sum reconstructs the series") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> gauss(0.0, 5.0);
    Eigen::MatrixXd values(40, 2);
    for (Eigen::Index i = 0; i < values.rows(); ++i)
        for (Eigen::Index j = 0; j < values.cols(); ++j) values(i, j) = gauss(rng);
    const auto panel = testkit::panel_from_matrix(values);
    const auto diffed = varkit::transform(panel, Transform::first_difference);
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
        double level = values(0, j);
        for (Eigen::Index i = 0; i < diffed.rows(); ++i) {
            level += diffed.values()(i, j);
            const double truth = values(i + 1, j);
            CHECK(std::abs(level - truth) <= 1e-12 * std::max(1.0, std::abs(truth)));
        }
    }
}

TEST_CASE("subpanel projects and permutes") {
    const auto panel = varkit::load_panel_file(std::string(VARKIT_TEST_DATA_DIR) + "/demo_panel.csv");
    SUBCASE("single column") {
        const auto sub = varkit::subpanel(panel, {"GSYIH"});
        CHECK(sub.cols() == 1);
        CHECK(sub.values().col(0) == panel.column("GSYIH"));
    }
    SUBCASE("full selection in original order is identity") {
        CHECK(varkit::subpanel(panel, panel.labels()) == panel);
    }
    SUBCASE("unknown label fails") {
        CHECK(throws_with(Errc::unknown_label, [&] { varkit::subpanel(panel, {"NOPE"}); }));
    }
    SUBCASE("permutation followed by its inverse restores the order") {
        const std::vector<std::string> shuffled = {"KIMYA", "GSYIH", "ENERJI", "IMALAT", "MADEN"};
        const auto once = varkit::subpanel(panel, shuffled);
        CHECK(varkit::subpanel(once, panel.labels()) == panel);
    }
}
