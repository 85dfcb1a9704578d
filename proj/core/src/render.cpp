#include "varkit/render.hpp"

#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "varkit/errors.hpp"

namespace varkit {

namespace {

using ordered_json = nlohmann::ordered_json;

// Numbers entering JSON artifacts are rounded the same way as the tables.
double json_number(double x) { return std::stod(format_number(x)); }

std::string csv_join(const std::vector<std::string>& cells) {
    std::string line;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    line += '\n';
    return line;
}

// Fixed-width text table with right-aligned numeric columns.
class TextTable {
  public:
    explicit TextTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    std::string str() const {
        std::vector<size_t> width(header_.size(), 0);
        for (size_t j = 0; j < header_.size(); ++j) width[j] = header_[j].size();
        for (const auto& row : rows_)
            for (size_t j = 0; j < row.size() && j < width.size(); ++j)
                width[j] = std::max(width[j], row[j].size());

        std::string out;
        auto emit = [&](const std::vector<std::string>& row, bool left_first) {
            for (size_t j = 0; j < row.size(); ++j) {
                if (j) out += "  ";
                const size_t pad = width[j] - row[j].size();
                if (j == 0 && left_first) {
                    out += row[j];
                    out.append(pad, ' ');
                } else {
                    out.append(pad, ' ');
                    out += row[j];
                }
            }
            while (!out.empty() && out.back() == ' ') out.pop_back();
            out += '\n';
        };
        emit(header_, true);
        for (const auto& row : rows_) emit(row, true);
        return out;
    }

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

std::string num(double x) { return format_number(x); }

const char* lm_mode_name(LmMode mode) { return mode == LmMode::at_lag ? "at-lag" : "cumulative"; }

std::string rank_label(int r) { return r == 0 ? std::string("None") : "At most " + std::to_string(r); }

std::string regressor_name(const VarModel& model, int index) {
    const int m = model.m();
    if (model.has_constant) {
        if (index == 0) return "const";
        --index;
    }
    const int lag = index / m + 1;
    const int var = index % m;
    return "L" + std::to_string(lag) + "." + model.labels[static_cast<size_t>(var)];
}

[[noreturn]] void empty_result(const char* what) {
    raise(Errc::unsupported_format, std::string("empty stage result: ") + what);
}

}  // namespace

OutputFormat format_from_name(std::string_view name) {
    if (name == "text" || name == "txt") return OutputFormat::text;
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    raise(Errc::unsupported_format, "unknown format '" + std::string(name) + "'");
}

const char* format_name(OutputFormat format) noexcept {
    switch (format) {
        case OutputFormat::text: return "text";
        case OutputFormat::csv: return "csv";
        case OutputFormat::json: return "json";
    }
    return "?";
}

const char* format_extension(OutputFormat format) noexcept {
    switch (format) {
        case OutputFormat::text: return ".txt";
        case OutputFormat::csv: return ".csv";
        case OutputFormat::json: return ".json";
    }
    return ".txt";
}

std::string format_number(double x) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

std::string render_unit_roots(const UnitRootStageResult& result, OutputFormat format) {
    if (result.groups.empty()) empty_result("unit-root tests");

    // Pair ADF and PP groups by deterministic spec, in report order.
    const Deterministic spec_order[] = {Deterministic::constant, Deterministic::constant_trend,
                                        Deterministic::none};
    auto find_group = [&](UnitRootTest test, Deterministic spec) -> const GroupUnitRootResult* {
        for (const auto& g : result.groups)
            if (g.test == test && g.spec == spec) return &g;
        return nullptr;
    };

    if (format == OutputFormat::csv) {
        std::string out = "spec,adf_stat,adf_p,pp_stat,pp_p\n";
        for (Deterministic spec : spec_order) {
            const auto* adf = find_group(UnitRootTest::adf, spec);
            const auto* pp = find_group(UnitRootTest::pp, spec);
            if (!adf && !pp) continue;
            out += csv_join({deterministic_name(spec), adf ? num(adf->statistic) : "",
                             adf ? num(adf->p_value) : "", pp ? num(pp->statistic) : "",
                             pp ? num(pp->p_value) : ""});
        }
        return out;
    }
    if (format == OutputFormat::json) {
        ordered_json j;
        j["note"] = result.note;
        j["groups"] = ordered_json::array();
        for (const auto& g : result.groups) {
            ordered_json jg;
            jg["test"] = g.test == UnitRootTest::adf ? "ADF" : "PP";
            jg["spec"] = deterministic_name(g.spec);
            jg["statistic"] = json_number(g.statistic);
            jg["df"] = g.df;
            jg["p_value"] = json_number(g.p_value);
            jg["members"] = ordered_json::array();
            for (const auto& r : g.members) {
                ordered_json jr;
                jr["series"] = r.series_label;
                jr["statistic"] = json_number(r.statistic);
                jr["p_value"] = json_number(r.p_value);
                jr["lags_or_bandwidth"] = r.lags_or_bandwidth;
                jr["n_effective"] = r.n_effective;
                jg["members"].push_back(jr);
            }
            j["groups"].push_back(jg);
        }
        return j.dump(2) + "\n";
    }

    std::string out = "Group unit-root tests\n";
    if (!result.note.empty()) out += result.note + "\n";
    out += '\n';
    TextTable table({"Spec", "ADF stat", "ADF p", "PP stat", "PP p"});
    for (Deterministic spec : spec_order) {
        const auto* adf = find_group(UnitRootTest::adf, spec);
        const auto* pp = find_group(UnitRootTest::pp, spec);
        if (!adf && !pp) continue;
        table.add_row({deterministic_name(spec), adf ? num(adf->statistic) : "-",
                       adf ? num(adf->p_value) : "-", pp ? num(pp->statistic) : "-",
                       pp ? num(pp->p_value) : "-"});
    }
    out += table.str();

    out += "\nPer-series results\n";
    TextTable detail({"Series", "Test", "Spec", "Statistic", "p-value", "Lags/Bw", "N"});
    for (const auto& g : result.groups) {
        for (const auto& r : g.members) {
            detail.add_row({r.series_label, g.test == UnitRootTest::adf ? "ADF" : "PP",
                            deterministic_name(r.spec), num(r.statistic), num(r.p_value),
                            std::to_string(r.lags_or_bandwidth), std::to_string(r.n_effective)});
        }
    }
    out += detail.str();
    return out;
}

std::string render_lag_selection(const LagSelection& selection, OutputFormat format) {
    if (selection.rows.empty()) empty_result("lag selection");
    auto mark = [&](double value, int lag, int chosen) {
        std::string s = num(value);
        if (lag == chosen) s += '*';
        return s;
    };

    if (format == OutputFormat::json) {
        ordered_json j;
        j["common_sample"] = selection.common_sample;
        j["rows"] = ordered_json::array();
        for (const auto& r : selection.rows) {
            ordered_json jr;
            jr["lag"] = r.lag;
            jr["loglik"] = json_number(r.loglik);
            if (r.lr) jr["lr"] = json_number(*r.lr);
            else jr["lr"] = nullptr;
            jr["fpe"] = json_number(r.fpe);
            jr["aic"] = json_number(r.aic);
            jr["sc"] = json_number(r.sc);
            jr["hq"] = json_number(r.hq);
            j["rows"].push_back(jr);
        }
        j["chosen"] = {{"lr", selection.by_lr},
                       {"fpe", selection.by_fpe},
                       {"aic", selection.by_aic},
                       {"sc", selection.by_sc},
                       {"hq", selection.by_hq}};
        return j.dump(2) + "\n";
    }

    std::vector<std::string> header = {"Lag", "LogL", "LR", "FPE", "AIC", "SC", "HQ"};
    std::vector<std::vector<std::string>> body;
    for (const auto& r : selection.rows) {
        body.push_back({std::to_string(r.lag), num(r.loglik),
                        r.lr ? mark(*r.lr, r.lag, selection.by_lr) : "NA",
                        mark(r.fpe, r.lag, selection.by_fpe), mark(r.aic, r.lag, selection.by_aic),
                        mark(r.sc, r.lag, selection.by_sc), mark(r.hq, r.lag, selection.by_hq)});
    }
    if (format == OutputFormat::csv) {
        std::string out = csv_join(header);
        for (auto& row : body) out += csv_join(row);
        return out;
    }
    std::string out = "Lag order selection (common sample: " +
                      std::to_string(selection.common_sample) + " observations)\n";
    out += "* marks the selected lag per criterion\n\n";
    TextTable table(header);
    for (auto& row : body) table.add_row(row);
    out += table.str();
    return out;
}

std::string render_var(const VarModel& model, OutputFormat format) {
    if (model.labels.empty()) empty_result("VAR estimate");
    const int kbar = model.kbar();
    const int m = model.m();

    if (format == OutputFormat::json) {
        ordered_json j;
        j["labels"] = model.labels;
        j["p"] = model.p;
        j["constant"] = model.has_constant;
        j["n_effective"] = model.n_effective;
        j["loglik"] = json_number(model.loglik);
        j["coefficients"] = ordered_json::object();
        for (int eq = 0; eq < m; ++eq) {
            ordered_json je = ordered_json::object();
            for (int k = 0; k < kbar; ++k)
                je[regressor_name(model, k)] = json_number(model.coef_stacked(k, eq));
            j["coefficients"][model.labels[static_cast<size_t>(eq)]] = je;
        }
        j["sigma_df"] = ordered_json::array();
        for (int i = 0; i < m; ++i) {
            ordered_json row = ordered_json::array();
            for (int k = 0; k < m; ++k) row.push_back(json_number(model.sigma_df(i, k)));
            j["sigma_df"].push_back(row);
        }
        return j.dump(2) + "\n";
    }

    std::vector<std::string> header = {"Regressor"};
    for (const auto& label : model.labels) header.push_back(label);
    std::vector<std::vector<std::string>> body;
    for (int k = 0; k < kbar; ++k) {
        std::vector<std::string> row = {regressor_name(model, k)};
        for (int eq = 0; eq < m; ++eq) row.push_back(num(model.coef_stacked(k, eq)));
        body.push_back(std::move(row));
    }
    if (format == OutputFormat::csv) {
        std::string out = csv_join(header);
        for (auto& row : body) out += csv_join(row);
        return out;
    }
    std::string out = "VAR(" + std::to_string(model.p) + ") estimate, " +
                      std::to_string(model.n_effective) + " effective observations, log-likelihood " +
                      num(model.loglik) + "\n\n";
    TextTable table(header);
    for (auto& row : body) table.add_row(row);
    out += table.str();
    out += "\nResidual covariance (d.f. adjusted)\n";
    TextTable sigma(header);
    for (int i = 0; i < m; ++i) {
        std::vector<std::string> row = {model.labels[static_cast<size_t>(i)]};
        for (int k = 0; k < m; ++k) row.push_back(num(model.sigma_df(i, k)));
        sigma.add_row(row);
    }
    out += sigma.str();
    return out;
}

std::string render_stability(const StabilityReport& report, OutputFormat format) {
    if (report.roots.empty()) empty_result("stability report");
    if (format == OutputFormat::csv) {
        std::string out = "root_re,root_im,modulus\n";
        for (const auto& r : report.roots)
            out += csv_join({num(r.real()), num(r.imag()), num(std::abs(r))});
        return out;
    }
    if (format == OutputFormat::json) {
        ordered_json j;
        j["is_stable"] = report.is_stable;
        j["roots"] = ordered_json::array();
        for (const auto& r : report.roots) {
            j["roots"].push_back({{"re", json_number(r.real())},
                                  {"im", json_number(r.imag())},
                                  {"modulus", json_number(std::abs(r))}});
        }
        return j.dump(2) + "\n";
    }
    std::string out = "Inverse roots of the AR characteristic polynomial\n\n";
    TextTable table({"Real", "Imaginary", "Modulus"});
    for (const auto& r : report.roots) table.add_row({num(r.real()), num(r.imag()), num(std::abs(r))});
    out += table.str();
    out += report.is_stable ? "\nAll roots inside the unit circle: VAR satisfies the stability condition.\n"
                            : "\nAt least one root on or outside the unit circle: VAR is NOT stable.\n";
    return out;
}

std::string render_lm(const std::vector<LmTestRow>& rows, OutputFormat format) {
    if (rows.empty()) empty_result("serial-correlation LM test");
    if (format == OutputFormat::csv) {
        std::string out = "mode,lag,lre_stat,lre_df,lre_p,rao_f,rao_df1,rao_df2,rao_p\n";
        for (const auto& r : rows) {
            out += csv_join({lm_mode_name(r.mode), std::to_string(r.lag_h), num(r.lre_stat),
                             std::to_string(r.lre_df), num(r.lre_p), num(r.rao_f),
                             std::to_string(r.rao_df1), num(r.rao_df2), num(r.rao_p)});
        }
        return out;
    }
    if (format == OutputFormat::json) {
        ordered_json j = ordered_json::array();
        for (const auto& r : rows) {
            j.push_back({{"mode", lm_mode_name(r.mode)},
                         {"lag", r.lag_h},
                         {"lre_stat", json_number(r.lre_stat)},
                         {"lre_df", r.lre_df},
                         {"lre_p", json_number(r.lre_p)},
                         {"rao_f", json_number(r.rao_f)},
                         {"rao_df", {r.rao_df1, json_number(r.rao_df2)}},
                         {"rao_p", json_number(r.rao_p)}});
        }
        return j.dump(2) + "\n";
    }

    std::string out = "Residual serial-correlation LM tests\n";
    for (LmMode mode : {LmMode::at_lag, LmMode::cumulative}) {
        bool any = false;
        TextTable table({"Lag", "LRE* stat", "df", "Prob.", "Rao F-stat", "df", "Prob."});
        for (const auto& r : rows) {
            if (r.mode != mode) continue;
            any = true;
            table.add_row({std::to_string(r.lag_h), num(r.lre_stat), std::to_string(r.lre_df),
                           num(r.lre_p), num(r.rao_f),
                           "(" + std::to_string(r.rao_df1) + ", " + num(r.rao_df2) + ")",
                           num(r.rao_p)});
        }
        if (!any) continue;
        out += mode == LmMode::at_lag ? "\nNull: no serial correlation at lag h\n"
                                      : "\nNull: no serial correlation at lags 1..h\n";
        out += table.str();
    }
    return out;
}

std::string render_white(const WhiteTestResult& result, OutputFormat format) {
    if (result.df == 0) empty_result("heteroskedasticity test");
    if (format == OutputFormat::csv) {
        return "chi_sq,df,p_value\n" +
               csv_join({num(result.chi_sq), std::to_string(result.df), num(result.p_value)});
    }
    if (format == OutputFormat::json) {
        ordered_json j = {{"chi_sq", json_number(result.chi_sq)},
                          {"df", result.df},
                          {"p_value", json_number(result.p_value)}};
        return j.dump(2) + "\n";
    }
    std::string out = "Residual heteroskedasticity test (joint)\n\n";
    TextTable table({"Chi-sq", "df", "Prob."});
    table.add_row({num(result.chi_sq), std::to_string(result.df), num(result.p_value)});
    out += table.str();
    return out;
}

std::string render_johansen(const JohansenResult& result, OutputFormat format) {
    if (result.eigenvalues.size() == 0) empty_result("cointegration test");
    const int m = static_cast<int>(result.eigenvalues.size());

    if (format == OutputFormat::csv) {
        std::string out = "block,null_rank,eigenvalue,statistic,crit_5pct,p_value\n";
        for (int r = 0; r < m; ++r)
            out += csv_join({"trace", std::to_string(r), num(result.eigenvalues(r)),
                             num(result.trace[static_cast<size_t>(r)]),
                             num(result.crit_5pct_trace[static_cast<size_t>(r)]),
                             num(result.p_trace[static_cast<size_t>(r)])});
        for (int r = 0; r < m; ++r)
            out += csv_join({"max-eigenvalue", std::to_string(r), num(result.eigenvalues(r)),
                             num(result.max_eig[static_cast<size_t>(r)]),
                             num(result.crit_5pct_maxeig[static_cast<size_t>(r)]),
                             num(result.p_maxeig[static_cast<size_t>(r)])});
        return out;
    }
    if (format == OutputFormat::json) {
        ordered_json j;
        j["labels"] = result.labels;
        j["det_case"] = vecm_deterministic_name(result.det_case);
        j["t_effective"] = result.t_effective;
        j["eigenvalues"] = ordered_json::array();
        for (int r = 0; r < m; ++r) j["eigenvalues"].push_back(json_number(result.eigenvalues(r)));
        auto block = [&](const std::vector<double>& stats, const std::vector<double>& crit,
                         const std::vector<double>& pv, int rank) {
            ordered_json jb;
            jb["statistics"] = ordered_json::array();
            for (double s : stats) jb["statistics"].push_back(json_number(s));
            jb["crit_5pct"] = ordered_json::array();
            for (double c : crit) jb["crit_5pct"].push_back(json_number(c));
            jb["p_values"] = ordered_json::array();
            for (double p : pv) jb["p_values"].push_back(json_number(p));
            jb["selected_rank"] = rank;
            return jb;
        };
        j["trace"] = block(result.trace, result.crit_5pct_trace, result.p_trace,
                           result.selected_rank_trace);
        j["max_eigenvalue"] = block(result.max_eig, result.crit_5pct_maxeig, result.p_maxeig,
                                    result.selected_rank_maxeig);
        return j.dump(2) + "\n";
    }

    std::string out = "Johansen cointegration test (deterministic case: " +
                      std::string(vecm_deterministic_name(result.det_case)) +
                      ", effective sample: " + std::to_string(result.t_effective) + ")\n";
    out += "\nTrace test\n";
    TextTable trace({"Null", "Eigenvalue", "Trace stat", "5% critical", "Prob."});
    for (int r = 0; r < m; ++r)
        trace.add_row({rank_label(r), num(result.eigenvalues(r)),
                       num(result.trace[static_cast<size_t>(r)]),
                       num(result.crit_5pct_trace[static_cast<size_t>(r)]),
                       num(result.p_trace[static_cast<size_t>(r)])});
    out += trace.str();
    out += "Selected rank (trace): " + std::to_string(result.selected_rank_trace) + "\n";
    out += "\nMax-eigenvalue test\n";
    TextTable maxeig({"Null", "Eigenvalue", "Max-eig stat", "5% critical", "Prob."});
    for (int r = 0; r < m; ++r)
        maxeig.add_row({rank_label(r), num(result.eigenvalues(r)),
                        num(result.max_eig[static_cast<size_t>(r)]),
                        num(result.crit_5pct_maxeig[static_cast<size_t>(r)]),
                        num(result.p_maxeig[static_cast<size_t>(r)])});
    out += maxeig.str();
    out += "Selected rank (max-eigenvalue): " + std::to_string(result.selected_rank_maxeig) + "\n";
    return out;
}

std::string render_irf(const IrfResult& result, OutputFormat format) {
    if (result.point.empty()) empty_result("impulse responses");
    const int m = static_cast<int>(result.ordering.size());
    const bool bands = !result.lower.empty();

    if (format == OutputFormat::csv || format == OutputFormat::text) {
        std::string out;
        if (format == OutputFormat::text) {
            out += "Orthogonalized impulse responses (one-standard-deviation shocks";
            if (bands) out += ", +-2 SE bands, " + std::to_string(result.replications) + " replications";
            out += ")\n";
            if (result.stable_warning)
                out += "Warning: the VAR failed the stability check; responses may diverge.\n";
            out += "\n";
        }
        out += bands ? "response,impulse,horizon,point,lower,upper\n"
                     : "response,impulse,horizon,point\n";
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                for (int h = 0; h < result.horizons; ++h) {
                    std::vector<std::string> cells = {
                        result.ordering[static_cast<size_t>(i)],
                        result.ordering[static_cast<size_t>(j)], std::to_string(h),
                        num(result.point[static_cast<size_t>(h)](i, j))};
                    if (bands) {
                        cells.push_back(num(result.lower[static_cast<size_t>(h)](i, j)));
                        cells.push_back(num(result.upper[static_cast<size_t>(h)](i, j)));
                    }
                    out += csv_join(cells);
                }
            }
        }
        return out;
    }

    ordered_json j;
    j["ordering"] = result.ordering;
    j["horizons"] = result.horizons;
    j["band_method"] = result.band_method == BandMethod::none ? "none" : "monte-carlo";
    if (result.band_method != BandMethod::none) {
        j["replications"] = result.replications;
        j["seed"] = result.seed;
    }
    j["stable_warning"] = result.stable_warning;
    auto dump_surface = [&](const std::vector<Eigen::MatrixXd>& surface) {
        ordered_json arr = ordered_json::array();
        for (const auto& mat : surface) {
            ordered_json jm = ordered_json::array();
            for (int i = 0; i < m; ++i) {
                ordered_json row = ordered_json::array();
                for (int k = 0; k < m; ++k) row.push_back(json_number(mat(i, k)));
                jm.push_back(row);
            }
            arr.push_back(jm);
        }
        return arr;
    };
    j["point"] = dump_surface(result.point);
    if (bands) {
        j["lower"] = dump_surface(result.lower);
        j["upper"] = dump_surface(result.upper);
    }
    return j.dump(2) + "\n";
}

std::string render_fevd(const std::vector<FevdTable>& tables, OutputFormat format) {
    if (tables.empty()) empty_result("variance decomposition");

    if (format == OutputFormat::csv) {
        std::string out = "target,period";
        for (const auto& label : tables.front().impulses) out += "," + label;
        out += '\n';
        for (const auto& table : tables) {
            for (Eigen::Index h = 0; h < table.shares.rows(); ++h) {
                out += table.target + "," + std::to_string(h + 1);
                for (Eigen::Index j = 0; j < table.shares.cols(); ++j)
                    out += "," + num(table.shares(h, j));
                out += '\n';
            }
        }
        return out;
    }
    if (format == OutputFormat::json) {
        ordered_json j = ordered_json::array();
        for (const auto& table : tables) {
            ordered_json jt;
            jt["target"] = table.target;
            jt["impulses"] = table.impulses;
            jt["rows"] = ordered_json::array();
            for (Eigen::Index h = 0; h < table.shares.rows(); ++h) {
                ordered_json row = ordered_json::array();
                for (Eigen::Index k = 0; k < table.shares.cols(); ++k)
                    row.push_back(json_number(table.shares(h, k)));
                jt["rows"].push_back(row);
            }
            j.push_back(jt);
        }
        return j.dump(2) + "\n";
    }

    std::string out;
    for (const auto& table : tables) {
        out += "Variance decomposition of " + table.target + "\n";
        std::vector<std::string> header = {"Period"};
        for (const auto& label : table.impulses) header.push_back(label);
        TextTable text(header);
        for (Eigen::Index h = 0; h < table.shares.rows(); ++h) {
            std::vector<std::string> row = {std::to_string(h + 1)};
            for (Eigen::Index k = 0; k < table.shares.cols(); ++k)
                row.push_back(num(table.shares(h, k)));
            text.add_row(row);
        }
        out += text.str();
        out += '\n';
    }
    out.pop_back();
    return out;
}

}  // namespace varkit
