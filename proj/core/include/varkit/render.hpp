#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "varkit/diagnostics.hpp"
#include "varkit/johansen.hpp"
#include "varkit/structural.hpp"
#include "varkit/unit_root.hpp"
#include "varkit/var_model.hpp"

namespace varkit {

enum class OutputFormat { text, csv, json };

OutputFormat format_from_name(std::string_view name);
const char* format_name(OutputFormat format) noexcept;
const char* format_extension(OutputFormat format) noexcept;

/// Rendered numbers use six significant digits with a period decimal
/// separator, independent of locale.
std::string format_number(double x);

/// Per-series results grouped by (test, deterministic spec) with a Fisher
/// pooled statistic per group.
struct UnitRootStageResult {
    std::vector<GroupUnitRootResult> groups;
    std::string note;  // methodology note shown on the rendered report
};

/// Every renderer is deterministic: identical inputs give byte-identical
/// output. Empty stage results raise UnsupportedFormat.
std::string render_unit_roots(const UnitRootStageResult& result, OutputFormat format);
std::string render_lag_selection(const LagSelection& selection, OutputFormat format);
std::string render_var(const VarModel& model, OutputFormat format);
std::string render_stability(const StabilityReport& report, OutputFormat format);
std::string render_lm(const std::vector<LmTestRow>& rows, OutputFormat format);
std::string render_white(const WhiteTestResult& result, OutputFormat format);
std::string render_johansen(const JohansenResult& result, OutputFormat format);
std::string render_irf(const IrfResult& result, OutputFormat format);
std::string render_fevd(const std::vector<FevdTable>& tables, OutputFormat format);

}  // namespace varkit
