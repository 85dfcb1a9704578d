#include "varkit/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>
#include <span>
#include <sstream>

#include "varkit/errors.hpp"

namespace varkit {

namespace fs = std::filesystem;

namespace {

std::string trim_copy(std::string_view s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string_view::npos) return {};
    return std::string(s.substr(a, b - a + 1));
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim_copy(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

int parse_int(const std::string& value, const std::string& key) {
    try {
        size_t used = 0;
        const int out = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return out;
    } catch (const std::exception&) {
        raise(Errc::config_error, "key '" + key + "' expects an integer, got '" + value + "'");
    }
}

bool parse_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "yes" || value == "1") return true;
    if (value == "false" || value == "no" || value == "0") return false;
    raise(Errc::config_error, "key '" + key + "' expects true/false, got '" + value + "'");
}

LagPolicy parse_lag_policy(const std::string& value) {
    const size_t colon = value.find(':');
    const std::string head = colon == std::string::npos ? value : value.substr(0, colon);
    const int arg = colon == std::string::npos ? -1 : parse_int(value.substr(colon + 1), "adf_lags");
    if (head == "fixed") {
        if (arg < 0) raise(Errc::config_error, "adf_lags = fixed:<k> needs a nonnegative k");
        return LagPolicy::fixed(arg);
    }
    if (head == "aic") return LagPolicy::aic(arg);
    if (head == "sic") return LagPolicy::sic(arg);
    raise(Errc::config_error, "adf_lags expects fixed:<k>, aic[:max] or sic[:max], got '" + value + "'");
}

BandwidthPolicy parse_bandwidth(const std::string& value) {
    if (value == "auto" || value == "newey-west") return BandwidthPolicy::newey_west();
    const size_t colon = value.find(':');
    if (colon != std::string::npos && value.substr(0, colon) == "fixed") {
        const int b = parse_int(value.substr(colon + 1), "pp_bandwidth");
        if (b < 0) raise(Errc::config_error, "pp_bandwidth = fixed:<b> needs a nonnegative b");
        return BandwidthPolicy::fixed(b);
    }
    raise(Errc::config_error, "pp_bandwidth expects auto or fixed:<b>, got '" + value + "'");
}

Deterministic parse_unit_root_spec(const std::string& name) {
    if (name == "constant") return Deterministic::constant;
    if (name == "constant-and-trend" || name == "constant-trend" || name == "constant_trend")
        return Deterministic::constant_trend;
    if (name == "none") return Deterministic::none;
    raise(Errc::config_error, "unknown unit-root spec '" + name + "'");
}

struct StageArtifactSlot {
    Stage stage;
    int index;  // 1-based position in the canonical order
};

StageArtifactSlot slot_for(Stage stage) {
    for (size_t i = 0; i < kAllStages.size(); ++i)
        if (kAllStages[i] == stage) return {stage, static_cast<int>(i) + 1};
    return {stage, 0};
}

}  // namespace

const char* stage_name(Stage stage) noexcept {
    switch (stage) {
        case Stage::unit_roots: return "unit_roots";
        case Stage::lag_selection: return "lag_selection";
        case Stage::var: return "var";
        case Stage::stability: return "stability";
        case Stage::serial_lm: return "serial_lm";
        case Stage::white: return "white";
        case Stage::johansen: return "johansen";
        case Stage::irf: return "irf";
        case Stage::fevd: return "fevd";
    }
    return "?";
}

Stage stage_from_name(std::string_view name) {
    for (Stage stage : kAllStages)
        if (name == stage_name(stage)) return stage;
    raise(Errc::config_error, "unknown stage '" + std::string(name) + "'");
}

PipelineConfig PipelineConfig::parse(std::string_view text, const std::string& base_dir) {
    PipelineConfig cfg;
    bool stages_set = false;
    size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string line = trim_copy(text.substr(pos, nl - pos));
        pos = nl + 1;
        ++line_no;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = trim_copy(line.substr(0, hash));
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            raise(Errc::config_error, "line " + std::to_string(line_no) + " is not key = value");
        const std::string key = trim_copy(line.substr(0, eq));
        const std::string value = trim_copy(line.substr(eq + 1));

        if (key == "input") {
            cfg.input_path = value;
        } else if (key == "labels") {
            cfg.labels = split_list(value);
        } else if (key == "ordering") {
            cfg.irf_ordering = split_list(value);
        } else if (key == "transform") {
            for (const auto& item : split_list(value)) {
                const size_t colon = item.find(':');
                if (colon == std::string::npos) {
                    // a bare transform name is the default for every column
                    cfg.transforms["*"] = transform_from_name(item);
                } else {
                    cfg.transforms[trim_copy(item.substr(0, colon))] =
                        transform_from_name(trim_copy(item.substr(colon + 1)));
                }
            }
        } else if (key == "unit_root_specs") {
            cfg.unit_root_specs.clear();
            for (const auto& item : split_list(value)) cfg.unit_root_specs.push_back(parse_unit_root_spec(item));
        } else if (key == "adf_lags") {
            cfg.adf_lag_policy = parse_lag_policy(value);
        } else if (key == "pp_bandwidth") {
            cfg.pp_bandwidth = parse_bandwidth(value);
        } else if (key == "max_lag") {
            cfg.max_lag = parse_int(value, key);
        } else if (key == "chosen_lag") {
            if (!value.empty()) cfg.chosen_lag = parse_int(value, key);
        } else if (key == "constant") {
            cfg.include_constant = parse_bool(value, key);
        } else if (key == "lm_max_lag") {
            cfg.lm_max_lag = parse_int(value, key);
        } else if (key == "white_cross_terms") {
            cfg.white_cross_terms = parse_bool(value, key);
        } else if (key == "det_case") {
            cfg.det_case = vecm_deterministic_from_name(value);
        } else if (key == "horizon") {
            cfg.irf_horizon = parse_int(value, key);
        } else if (key == "bands") {
            if (value == "none") cfg.band_method = BandMethod::none;
            else if (value == "monte-carlo" || value == "monte_carlo")
                cfg.band_method = BandMethod::monte_carlo;
            else raise(Errc::config_error, "bands expects none or monte-carlo, got '" + value + "'");
        } else if (key == "replications") {
            cfg.irf_replications = parse_int(value, key);
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(std::stoull(value));
        } else if (key == "workers") {
            cfg.workers = parse_int(value, key);
        } else if (key == "out_dir") {
            cfg.out_dir = value;
        } else if (key == "formats" || key == "format") {
            cfg.formats.clear();
            for (const auto& item : split_list(value)) cfg.formats.push_back(format_from_name(item));
        } else if (key == "stages") {
            cfg.stages.clear();
            stages_set = true;
            for (const auto& item : split_list(value)) cfg.stages.push_back(stage_from_name(item));
        } else {
            raise(Errc::config_error, "unknown key '" + key + "'");
        }
    }
    (void)stages_set;
    if (!base_dir.empty() && !cfg.input_path.empty() && fs::path(cfg.input_path).is_relative())
        cfg.input_path = (fs::path(base_dir) / cfg.input_path).string();
    cfg.validate();
    return cfg;
}

PipelineConfig PipelineConfig::from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::config_error, "cannot open config '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), fs::path(path).parent_path().string());
}

void PipelineConfig::validate() const {
    if (input_path.empty()) raise(Errc::config_error, "input path is required");
    if (max_lag < 0) raise(Errc::config_error, "max_lag must be nonnegative");
    if (chosen_lag && *chosen_lag < 0) raise(Errc::config_error, "chosen_lag must be nonnegative");
    if (lm_max_lag < 1) raise(Errc::config_error, "lm_max_lag must be at least 1");
    if (irf_horizon < 1) raise(Errc::config_error, "horizon must be at least 1");
    if (workers < 1) raise(Errc::config_error, "workers must be at least 1");
    if (formats.empty()) raise(Errc::config_error, "at least one output format is required");
    if (stages.empty()) raise(Errc::config_error, "at least one stage is required");
    if (unit_root_specs.empty()) raise(Errc::config_error, "at least one unit-root spec is required");

    const bool irf_requested =
        std::find(stages.begin(), stages.end(), Stage::irf) != stages.end();
    if (irf_requested && band_method == BandMethod::monte_carlo && irf_replications < 100)
        raise(Errc::config_error, "bands need at least 100 replications, got " +
                                      std::to_string(irf_replications));

    for (const auto& label : irf_ordering) {
        if (labels.empty()) break;
        if (std::find(labels.begin(), labels.end(), label) == labels.end())
            raise(Errc::config_error, "ordering names label '" + label + "' outside the configured labels");
    }
    for (const auto& [label, t] : transforms) {
        (void)t;
        if (label == "*" || labels.empty()) continue;
        if (std::find(labels.begin(), labels.end(), label) == labels.end())
            raise(Errc::config_error, "transform names label '" + label + "' outside the configured labels");
    }
    for (size_t i = 0; i < stages.size(); ++i)
        for (size_t j = i + 1; j < stages.size(); ++j)
            if (stages[i] == stages[j])
                raise(Errc::config_error, std::string("stage '") + stage_name(stages[i]) + "' listed twice");
}

namespace {

class PipelineRunner {
  public:
    explicit PipelineRunner(const PipelineConfig& config) : cfg_(config) {
        for (Stage stage : cfg_.stages) requested_.insert(stage);
    }

    RunReport run() {
        RunReport report;
        try {
            prepare_panel();
        } catch (const Error& e) {
            report.ok = false;
            report.error = std::string("[stage:config] ") + e.what();
            return report;
        }
        Stage current = Stage::unit_roots;
        try {
            for (Stage stage : kAllStages) {
                current = stage;
                const bool emit = requested_.count(stage) > 0;
                if (!emit && !needed_internally(stage)) continue;
                const auto start = std::chrono::steady_clock::now();
                StageReport sr;
                sr.stage = stage;
                compute(stage, sr);
                if (emit) {
                    write_artifacts(stage, sr);
                    sr.status = "ok";
                    sr.wall_ms = std::chrono::duration<double, std::milli>(
                                     std::chrono::steady_clock::now() - start)
                                     .count();
                    report.stages.push_back(std::move(sr));
                }
            }
        } catch (const Error& e) {
            report.ok = false;
            report.error = std::string("[stage:") + stage_name(current) + "] " + e.what();
        }
        return report;
    }

  private:
    bool needed_internally(Stage stage) const {
        switch (stage) {
            case Stage::lag_selection:
                return !cfg_.chosen_lag.has_value() && var_needed();
            case Stage::var:
                return var_needed();
            default:
                return false;
        }
    }

    bool var_needed() const {
        for (Stage s : {Stage::var, Stage::stability, Stage::serial_lm, Stage::white, Stage::irf,
                        Stage::fevd})
            if (requested_.count(s)) return true;
        // the cointegration stage reuses the chosen lag but not the estimate
        return false;
    }

    void prepare_panel() {
        try {
            const std::vector<std::string>& want = cfg_.labels;
            SeriesPanel raw = load_panel_file(cfg_.input_path, want);
            std::vector<Transform> specs(static_cast<size_t>(raw.cols()), Transform::identity);
            auto star = cfg_.transforms.find("*");
            for (size_t j = 0; j < specs.size(); ++j) {
                if (star != cfg_.transforms.end()) specs[j] = star->second;
                auto it = cfg_.transforms.find(raw.labels()[j]);
                if (it != cfg_.transforms.end()) specs[j] = it->second;
            }
            panel_.emplace(transform(raw, specs));
            ordering_ = cfg_.irf_ordering.empty() ? panel_->labels() : cfg_.irf_ordering;
            for (const auto& label : ordering_) panel_->column_index(label);
        } catch (const Error& e) {
            if (e.code() == Errc::unknown_label)
                raise(Errc::config_error, e.what());  // config named a missing series
            throw;
        }
    }

    int chosen_lag() const {
        if (cfg_.chosen_lag) return *cfg_.chosen_lag;
        return selection_->by_aic;
    }

    void compute(Stage stage, StageReport& sr) {
        switch (stage) {
            case Stage::unit_roots: {
                unit_roots_.emplace();
                unit_roots_->note =
                    "Pooled statistic: Fisher chi-square combination of the per-series "
                    "MacKinnon p-values (-2 sum ln p, df = 2N).";
                for (Deterministic spec : cfg_.unit_root_specs) {
                    std::vector<UnitRootResult> adf_members, pp_members;
                    for (const auto& label : panel_->labels()) {
                        const Eigen::VectorXd y = panel_->column(label);
                        const std::span<const double> view(y.data(), static_cast<size_t>(y.size()));
                        adf_members.push_back(adf_test(view, spec, cfg_.adf_lag_policy, label));
                        pp_members.push_back(pp_test(view, spec, cfg_.pp_bandwidth, label));
                    }
                    unit_roots_->groups.push_back(fisher_group(adf_members));
                    unit_roots_->groups.push_back(fisher_group(pp_members));
                }
                sr.warnings.push_back(unit_roots_->note);
                break;
            }
            case Stage::lag_selection:
                selection_ = lag_order_selection(*panel_, cfg_.max_lag, cfg_.include_constant);
                break;
            case Stage::var:
                model_ = estimate_var(*panel_, chosen_lag(), cfg_.include_constant);
                break;
            case Stage::stability:
                stability_ = stability(*model_);
                if (!stability_->is_stable)
                    sr.warnings.push_back("VAR fails the stability condition: max root modulus " +
                                          format_number(stability_->moduli.front()));
                break;
            case Stage::serial_lm: {
                lm_rows_.emplace();
                for (int h = 1; h <= cfg_.lm_max_lag; ++h)
                    lm_rows_->push_back(lm_serial_correlation(*model_, h, LmMode::at_lag));
                for (int h = 1; h <= cfg_.lm_max_lag; ++h)
                    lm_rows_->push_back(lm_serial_correlation(*model_, h, LmMode::cumulative));
                break;
            }
            case Stage::white:
                white_ = white_heteroskedasticity(*model_, cfg_.white_cross_terms);
                break;
            case Stage::johansen: {
                const int p = std::max(1, effective_lag_for_johansen());
                johansen_ = johansen(*panel_, p, cfg_.det_case);
                sr.warnings.push_back(std::string("deterministic case taken from config: ") +
                                      vecm_deterministic_name(cfg_.det_case));
                break;
            }
            case Stage::irf:
                if (cfg_.band_method == BandMethod::monte_carlo) {
                    irf_ = irf_bands(*model_, cfg_.irf_horizon, ordering_, cfg_.irf_replications,
                                     cfg_.seed, cfg_.workers);
                } else {
                    irf_ = irf(*model_, cfg_.irf_horizon, ordering_);
                }
                if (irf_->stable_warning)
                    sr.warnings.push_back("impulse responses computed from an unstable VAR");
                break;
            case Stage::fevd:
                fevd_ = fevd(*model_, cfg_.irf_horizon, ordering_);
                break;
        }
    }

    int effective_lag_for_johansen() const {
        if (cfg_.chosen_lag) return *cfg_.chosen_lag;
        if (selection_) return selection_->by_aic;
        // cointegration requested without the VAR chain: select here
        return lag_order_selection(*panel_, cfg_.max_lag, cfg_.include_constant).by_aic;
    }

    std::string render_stage(Stage stage, OutputFormat format) const {
        switch (stage) {
            case Stage::unit_roots: return render_unit_roots(*unit_roots_, format);
            case Stage::lag_selection: return render_lag_selection(*selection_, format);
            case Stage::var: return render_var(*model_, format);
            case Stage::stability: return render_stability(*stability_, format);
            case Stage::serial_lm: return render_lm(*lm_rows_, format);
            case Stage::white: return render_white(*white_, format);
            case Stage::johansen: return render_johansen(*johansen_, format);
            case Stage::irf: return render_irf(*irf_, format);
            case Stage::fevd: return render_fevd(*fevd_, format);
        }
        raise(Errc::unsupported_format, "unreachable stage");
    }

    void write_artifacts(Stage stage, StageReport& sr) {
        const std::string out_dir = cfg_.out_dir.empty() ? "out" : cfg_.out_dir;
        fs::create_directories(out_dir);
        const auto slot = slot_for(stage);
        for (OutputFormat format : cfg_.formats) {
            char prefix[8];
            std::snprintf(prefix, sizeof(prefix), "%02d_", slot.index);
            const fs::path path = fs::path(out_dir) /
                                  (std::string(prefix) + stage_name(stage) + format_extension(format));
            std::ofstream out(path, std::ios::binary);
            if (!out) raise(Errc::config_error, "cannot write artifact '" + path.string() + "'");
            out << render_stage(stage, format);
            sr.artifacts.push_back(path.string());
        }
    }

    const PipelineConfig& cfg_;
    std::set<Stage> requested_;
    std::optional<SeriesPanel> panel_;
    std::vector<std::string> ordering_;

    std::optional<UnitRootStageResult> unit_roots_;
    std::optional<LagSelection> selection_;
    std::optional<VarModel> model_;
    std::optional<StabilityReport> stability_;
    std::optional<std::vector<LmTestRow>> lm_rows_;
    std::optional<WhiteTestResult> white_;
    std::optional<JohansenResult> johansen_;
    std::optional<IrfResult> irf_;
    std::optional<std::vector<FevdTable>> fevd_;
};

}  // namespace

RunReport run_pipeline(const PipelineConfig& config) {
    config.validate();
    return PipelineRunner(config).run();
}

RunReport run_single_stage(const PipelineConfig& config, Stage stage) {
    PipelineConfig cfg = config;
    cfg.stages = {stage};
    cfg.validate();
    return PipelineRunner(cfg).run();
}

std::string describe(const RunReport& report) {
    std::string out;
    for (const auto& sr : report.stages) {
        char line[128];
        std::snprintf(line, sizeof(line), "%-14s %-6s %8.1f ms", stage_name(sr.stage),
                      sr.status.c_str(), sr.wall_ms);
        out += line;
        out += '\n';
        for (const auto& artifact : sr.artifacts) out += "    wrote " + artifact + "\n";
        for (const auto& warning : sr.warnings) out += "    note: " + warning + "\n";
    }
    if (!report.ok) out += "error: " + report.error + "\n";
    return out;
}

}  // namespace varkit
