#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>

#include "varkit/render.hpp"

namespace varkit {

/// Pipeline stages in their fixed execution order.
enum class Stage {
    unit_roots,
    lag_selection,
    var,
    stability,
    serial_lm,
    white,
    johansen,
    irf,
    fevd,
};

inline constexpr std::array<Stage, 9> kAllStages = {
    Stage::unit_roots, Stage::lag_selection, Stage::var,  Stage::stability, Stage::serial_lm,
    Stage::white,      Stage::johansen,      Stage::irf,  Stage::fevd,
};

const char* stage_name(Stage stage) noexcept;
Stage stage_from_name(std::string_view name);

/// Configuration for a full pipeline run, parsed from a plain-text
/// key = value file ('#' starts a comment).
struct PipelineConfig {
    std::string input_path;
    std::vector<std::string> labels;         // series selection and VAR order; empty = all columns
    std::vector<std::string> irf_ordering;   // Cholesky ordering; empty = labels
    std::map<std::string, Transform> transforms;  // per label; absent = identity

    std::vector<Deterministic> unit_root_specs = {Deterministic::constant,
                                                  Deterministic::constant_trend,
                                                  Deterministic::none};
    LagPolicy adf_lag_policy = LagPolicy::sic();
    BandwidthPolicy pp_bandwidth = BandwidthPolicy::newey_west();

    int max_lag = 2;
    std::optional<int> chosen_lag;  // default: AIC minimizer from lag selection
    bool include_constant = true;

    int lm_max_lag = 2;
    bool white_cross_terms = false;

    VecmDeterministic det_case = VecmDeterministic::constant;

    int irf_horizon = 10;
    BandMethod band_method = BandMethod::monte_carlo;
    int irf_replications = 999;

    std::uint64_t seed = 1;
    int workers = 1;

    std::string out_dir;  // empty: resolved to "out" (the CLI consults VARKIT_OUT_DIR first)
    std::vector<OutputFormat> formats = {OutputFormat::csv};
    std::vector<Stage> stages{kAllStages.begin(), kAllStages.end()};

    static PipelineConfig from_file(const std::string& path);
    static PipelineConfig parse(std::string_view text, const std::string& base_dir = "");

    /// Throws ConfigError on contradictions (unknown stages or labels are
    /// caught at parse/run time; cross-field rules here).
    void validate() const;
};

struct StageReport {
    Stage stage = Stage::unit_roots;
    std::string status;  // "ok" or a failure note
    std::vector<std::string> artifacts;
    std::vector<std::string> warnings;
    double wall_ms = 0.0;
};

struct RunReport {
    std::vector<StageReport> stages;  // requested stages, execution order
    bool ok = true;
    std::string error;  // stage-tagged message when !ok
};

/// Runs the configured stages in order, writing one artifact per requested
/// stage and format into out_dir. Computations a later stage depends on run
/// even when their own artifact is skipped. Halts on the first failure.
RunReport run_pipeline(const PipelineConfig& config);

/// Convenience for the CLI's single-stage mode: same run with the artifact
/// emission restricted to one stage.
RunReport run_single_stage(const PipelineConfig& config, Stage stage);

/// Human-readable run summary (statuses, timings, warnings, artifacts).
std::string describe(const RunReport& report);

}  // namespace varkit
