#pragma once

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <vector>

namespace varkit {

/// Aligned multivariate annual time series: T observations of m variables.
///
/// Invariants enforced at construction: strictly consecutive integer years,
/// all cells finite, unique labels, T >= 2, m >= 1. Instances are immutable
/// after construction and safe to share across threads.
class SeriesPanel {
  public:
    SeriesPanel(std::vector<std::string> labels, std::vector<int> years, Eigen::MatrixXd values);

    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::vector<int>& years() const noexcept { return years_; }
    const Eigen::MatrixXd& values() const noexcept { return values_; }

    Eigen::Index rows() const noexcept { return values_.rows(); }
    Eigen::Index cols() const noexcept { return values_.cols(); }

    /// Column index of `label`; throws UnknownLabel if absent.
    Eigen::Index column_index(std::string_view label) const;
    Eigen::VectorXd column(std::string_view label) const;

    bool operator==(const SeriesPanel& other) const;

  private:
    std::vector<std::string> labels_;
    std::vector<int> years_;
    Eigen::MatrixXd values_;
};

/// Column transform applied before analysis.
enum class Transform {
    identity,
    percent_change,   // 100 * (y_t - y_{t-1}) / y_{t-1}
    log_difference,   // ln y_t - ln y_{t-1}
    first_difference  // y_t - y_{t-1}
};

Transform transform_from_name(std::string_view name);
const char* transform_name(Transform t) noexcept;

/// Parses a CSV panel: header row, first column "year", remaining columns one
/// series each. Decimal points only, no thousands separators. When
/// `expected_labels` is non-empty the columns are permuted into that order
/// (all requested labels must exist).
SeriesPanel load_panel(std::string_view csv_text,
                       const std::vector<std::string>& expected_labels = {});

/// Reads the file at `path` and forwards to load_panel.
SeriesPanel load_panel_file(const std::string& path,
                            const std::vector<std::string>& expected_labels = {});

/// Emits the CSV form read back losslessly by load_panel.
std::string to_csv(const SeriesPanel& panel);

/// Applies one transform per column. Any differencing transform shortens the
/// panel by one row (the first year is dropped for every column).
SeriesPanel transform(const SeriesPanel& panel, const std::vector<Transform>& specs);
SeriesPanel transform(const SeriesPanel& panel, Transform spec);

/// Column projection in the requested order.
SeriesPanel subpanel(const SeriesPanel& panel, const std::vector<std::string>& labels);

}  // namespace varkit
