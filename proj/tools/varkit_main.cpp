#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "varkit/varkit.hpp"

namespace {

struct Overrides {
    std::string config_path;
    std::string out_dir;
    std::string formats;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int workers = 0;
    bool workers_set = false;
};

void add_common_options(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("--config", ov.config_path, "Pipeline config file")->required();
    cmd->add_option("--out-dir", ov.out_dir, "Output directory (overrides config and VARKIT_OUT_DIR)");
    cmd->add_option("--format", ov.formats, "Comma-separated output formats: text,csv,json");
    cmd->add_option("--seed", ov.seed, "Random seed for band replications")
        ->each([&](const std::string&) { ov.seed_set = true; });
    cmd->add_option("--workers", ov.workers, "Worker threads for band replications")
        ->each([&](const std::string&) { ov.workers_set = true; });
}

varkit::PipelineConfig build_config(const Overrides& ov) {
    varkit::PipelineConfig cfg = varkit::PipelineConfig::from_file(ov.config_path);
    if (ov.seed_set) cfg.seed = ov.seed;
    if (ov.workers_set) cfg.workers = ov.workers;
    if (!ov.formats.empty()) {
        cfg.formats.clear();
        std::stringstream ss(ov.formats);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) cfg.formats.push_back(varkit::format_from_name(item));
        }
    }
    if (!ov.out_dir.empty()) {
        cfg.out_dir = ov.out_dir;
    } else if (cfg.out_dir.empty()) {
        if (const char* env = std::getenv("VARKIT_OUT_DIR")) cfg.out_dir = env;
    }
    cfg.validate();
    return cfg;
}

int finish(const varkit::RunReport& report) {
    std::cout << varkit::describe(report);
    if (!report.ok) {
        std::cerr << report.error << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"varkit: VAR analysis pipeline (unit roots, lag selection, estimation,\n"
                 "diagnostics, cointegration, impulse responses, variance decomposition)"};
    app.require_subcommand(1);

    Overrides run_ov, stage_ov;
    std::string stage_arg;

    CLI::App* run_cmd = app.add_subcommand("run", "Run every configured stage in order");
    add_common_options(run_cmd, run_ov);

    CLI::App* stage_cmd = app.add_subcommand("stage", "Run a single stage");
    stage_cmd->add_option("name", stage_arg,
                          "One of: unit_roots, lag_selection, var, stability, serial_lm, white, "
                          "johansen, irf, fevd")
        ->required();
    add_common_options(stage_cmd, stage_ov);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            return finish(varkit::run_pipeline(build_config(run_ov)));
        }
        const varkit::Stage stage = varkit::stage_from_name(stage_arg);
        return finish(varkit::run_single_stage(build_config(stage_ov), stage));
    } catch (const varkit::Error& e) {
        std::cerr << "[stage:config] " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
