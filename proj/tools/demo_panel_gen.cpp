// Regenerates data/demo_panel.csv: a seeded synthetic five-sector growth
// panel shaped like an annual percent-change macro dataset. The values are
// simulated from a fixed stable VAR(2) and carry no real-world meaning.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "varkit/simulate.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Write the bundled synthetic demo panel"};
    std::string out_path = "data/demo_panel.csv";
    std::uint64_t seed = 19950101;
    int first_year = 1995;
    int years = 29;
    app.add_option("--out", out_path, "Output CSV path");
    app.add_option("--seed", seed, "Simulation seed");
    app.add_option("--first-year", first_year, "First year stamp");
    app.add_option("--years", years, "Number of annual observations");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::string> labels = {"GSYIH", "IMALAT", "KIMYA", "MADEN", "ENERJI"};
    const int m = static_cast<int>(labels.size());

    varkit::VarProcess process;
    process.intercept = Eigen::VectorXd(m);
    process.intercept << 2.5, 2.0, 2.2, 1.0, 1.8;
    Eigen::MatrixXd a1(m, m), a2(m, m), loading(m, m);
    a1 << 0.55, 0.20, 0.05, 0.02, 0.03,
          0.25, 0.45, 0.05, 0.03, 0.02,
          0.10, 0.15, 0.45, 0.00, 0.02,
          0.05, 0.10, 0.02, 0.40, 0.01,
          0.04, 0.03, 0.02, 0.01, 0.50;
    a2 << 0.25, -0.20, 0.02, 0.01, 0.00,
          0.15, 0.20, -0.03, 0.02, 0.01,
          0.05, 0.05, 0.22, 0.01, 0.00,
          0.03, 0.03, 0.00, 0.20, 0.01,
          0.02, 0.02, 0.01, 0.00, 0.25;
    loading << 2.2, 0.0, 0.0, 0.0, 0.0,
               1.1, 1.5, 0.0, 0.0, 0.0,
               0.5, 0.4, 1.3, 0.0, 0.0,
               0.4, 0.3, 0.2, 1.4, 0.0,
               0.2, 0.1, 0.1, 0.1, 1.0;
    process.coef = {a1, a2};
    process.shock_loading = loading;

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    companion.topLeftCorner(m, m) = a1;
    companion.topRightCorner(m, m) = a2;
    companion.bottomLeftCorner(m, m).setIdentity();
    const double radius =
        Eigen::EigenSolver<Eigen::MatrixXd>(companion, false).eigenvalues().cwiseAbs().maxCoeff();
    std::cout << "process spectral radius: " << radius << "\n";
    if (radius >= 1.0) {
        std::cerr << "refusing to simulate an explosive process\n";
        return 1;
    }

    const Eigen::MatrixXd values = varkit::simulate_var(process, years, seed);

    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot write " << out_path << "\n";
        return 1;
    }
    out << "# synthetic demo data, simulated from a fixed stable VAR(2); see tools/demo_panel_gen.cpp\n";
    out << "year";
    for (const auto& label : labels) out << "," << label;
    out << "\n";
    char cell[32];
    for (int t = 0; t < years; ++t) {
        out << (first_year + t);
        for (int j = 0; j < m; ++j) {
            std::snprintf(cell, sizeof(cell), ",%.4f", values(t, j));
            out << cell;
        }
        out << "\n";
    }
    std::cout << "wrote " << out_path << "\n";
    return 0;
}
