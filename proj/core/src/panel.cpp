#include "varkit/panel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "varkit/errors.hpp"

namespace varkit {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
    std::vector<std::string_view> cells;
    size_t start = 0;
    while (true) {
        size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.push_back(trim(line.substr(start)));
            break;
        }
        cells.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return cells;
}

double parse_cell(std::string_view cell, size_t row, size_t col) {
    if (cell.empty()) {
        raise(Errc::missing_value,
              "empty cell at row " + std::to_string(row) + ", column " + std::to_string(col));
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
        raise(Errc::non_numeric_cell, "cell '" + std::string(cell) + "' at row " + std::to_string(row) +
                                          ", column " + std::to_string(col));
    }
    return value;
}

}  // namespace

SeriesPanel::SeriesPanel(std::vector<std::string> labels, std::vector<int> years, Eigen::MatrixXd values)
    : labels_(std::move(labels)), years_(std::move(years)), values_(std::move(values)) {
    if (labels_.empty()) raise(Errc::invalid_panel, "panel needs at least one series");
    // T = 1 can arise from differencing a two-row panel; loaded panels
    // require two rows (see load_panel)
    if (values_.rows() < 1) raise(Errc::invalid_panel, "panel needs at least one observation");
    if (static_cast<Eigen::Index>(labels_.size()) != values_.cols())
        raise(Errc::invalid_panel, "label count does not match value columns");
    if (static_cast<Eigen::Index>(years_.size()) != values_.rows())
        raise(Errc::invalid_panel, "year count does not match value rows");

    std::set<std::string> seen;
    for (const auto& label : labels_) {
        if (label.empty()) raise(Errc::invalid_panel, "empty series label");
        if (!seen.insert(label).second) raise(Errc::invalid_panel, "duplicate series label '" + label + "'");
    }
    for (size_t i = 1; i < years_.size(); ++i) {
        if (years_[i] == years_[i - 1])
            raise(Errc::duplicate_year, "year " + std::to_string(years_[i]) + " repeats");
        if (years_[i] != years_[i - 1] + 1)
            raise(Errc::year_gap, "gap between " + std::to_string(years_[i - 1]) + " and " +
                                      std::to_string(years_[i]) + " (annual frequency required)");
    }
    if (!values_.allFinite()) raise(Errc::invalid_panel, "panel contains non-finite cells");
}

Eigen::Index SeriesPanel::column_index(std::string_view label) const {
    for (size_t j = 0; j < labels_.size(); ++j) {
        if (labels_[j] == label) return static_cast<Eigen::Index>(j);
    }
    raise(Errc::unknown_label, "no series named '" + std::string(label) + "'");
}

Eigen::VectorXd SeriesPanel::column(std::string_view label) const {
    return values_.col(column_index(label));
}

bool SeriesPanel::operator==(const SeriesPanel& other) const {
    return labels_ == other.labels_ && years_ == other.years_ && values_ == other.values_;
}

SeriesPanel load_panel(std::string_view csv_text, const std::vector<std::string>& expected_labels) {
    std::vector<std::string_view> lines;
    size_t pos = 0;
    while (pos <= csv_text.size()) {
        size_t nl = csv_text.find('\n', pos);
        if (nl == std::string_view::npos) nl = csv_text.size();
        std::string_view line = trim(csv_text.substr(pos, nl - pos));
        if (!line.empty() && line.front() != '#') lines.push_back(line);
        pos = nl + 1;
    }
    if (lines.size() < 3) raise(Errc::invalid_panel, "need a header row and at least two data rows");

    auto header = split_csv_line(lines[0]);
    if (header.size() < 2) raise(Errc::invalid_panel, "header must name a year column and one series");
    if (header[0] != "year") raise(Errc::invalid_panel, "first header cell must be 'year'");
    std::vector<std::string> labels(header.begin() + 1, header.end());

    const size_t m = labels.size();
    const size_t t = lines.size() - 1;
    std::vector<int> years(t);
    Eigen::MatrixXd values(t, m);
    std::set<int> seen_years;
    for (size_t i = 0; i < t; ++i) {
        auto cells = split_csv_line(lines[i + 1]);
        if (cells.size() != m + 1) {
            if (cells.size() < m + 1)
                raise(Errc::missing_value, "row " + std::to_string(i + 1) + " has " +
                                               std::to_string(cells.size()) + " cells, expected " +
                                               std::to_string(m + 1));
            raise(Errc::invalid_panel, "row " + std::to_string(i + 1) + " has extra cells");
        }
        double year_val = parse_cell(cells[0], i + 1, 0);
        if (year_val != std::floor(year_val))
            raise(Errc::non_numeric_cell, "year stamp '" + std::string(cells[0]) + "' is not an integer");
        years[i] = static_cast<int>(year_val);
        if (!seen_years.insert(years[i]).second)
            raise(Errc::duplicate_year, "year " + std::to_string(years[i]) + " appears twice");
        for (size_t j = 0; j < m; ++j) {
            values(i, j) = parse_cell(cells[j + 1], i + 1, j + 1);
        }
    }

    SeriesPanel panel(std::move(labels), std::move(years), std::move(values));
    if (!expected_labels.empty()) return subpanel(panel, expected_labels);
    return panel;
}

SeriesPanel load_panel_file(const std::string& path, const std::vector<std::string>& expected_labels) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::invalid_panel, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_panel(buf.str(), expected_labels);
}

std::string to_csv(const SeriesPanel& panel) {
    std::string out = "year";
    for (const auto& label : panel.labels()) {
        out += ',';
        out += label;
    }
    out += '\n';
    char cell[64];
    for (Eigen::Index i = 0; i < panel.rows(); ++i) {
        out += std::to_string(panel.years()[static_cast<size_t>(i)]);
        for (Eigen::Index j = 0; j < panel.cols(); ++j) {
            // max_digits10 so the round-trip through load_panel is exact
            std::snprintf(cell, sizeof(cell), ",%.17g", panel.values()(i, j));
            out += cell;
        }
        out += '\n';
    }
    return out;
}

Transform transform_from_name(std::string_view name) {
    if (name == "identity") return Transform::identity;
    if (name == "percent-change" || name == "percent_change") return Transform::percent_change;
    if (name == "log-difference" || name == "log_difference") return Transform::log_difference;
    if (name == "first-difference" || name == "first_difference") return Transform::first_difference;
    raise(Errc::config_error, "unknown transform '" + std::string(name) + "'");
}

const char* transform_name(Transform t) noexcept {
    switch (t) {
        case Transform::identity: return "identity";
        case Transform::percent_change: return "percent-change";
        case Transform::log_difference: return "log-difference";
        case Transform::first_difference: return "first-difference";
    }
    return "?";
}

SeriesPanel transform(const SeriesPanel& panel, const std::vector<Transform>& specs) {
    if (specs.size() != static_cast<size_t>(panel.cols()))
        raise(Errc::invalid_panel, "need one transform per column");
    const bool all_identity =
        std::all_of(specs.begin(), specs.end(), [](Transform t) { return t == Transform::identity; });
    if (all_identity) return panel;

    const Eigen::Index t_out = panel.rows() - 1;
    Eigen::MatrixXd out(t_out, panel.cols());
    for (Eigen::Index j = 0; j < panel.cols(); ++j) {
        const auto& y = panel.values().col(j);
        const std::string& label = panel.labels()[static_cast<size_t>(j)];
        for (Eigen::Index i = 0; i < t_out; ++i) {
            switch (specs[static_cast<size_t>(j)]) {
                case Transform::identity:
                    out(i, j) = y(i + 1);
                    break;
                case Transform::percent_change:
                    if (y(i) == 0.0)
                        raise(Errc::division_by_zero, "percent-change over zero in '" + label + "'");
                    out(i, j) = 100.0 * (y(i + 1) - y(i)) / y(i);
                    break;
                case Transform::log_difference:
                    if (y(i) <= 0.0 || y(i + 1) <= 0.0)
                        raise(Errc::non_positive_log, "log-difference of non-positive value in '" + label + "'");
                    out(i, j) = std::log(y(i + 1)) - std::log(y(i));
                    break;
                case Transform::first_difference:
                    out(i, j) = y(i + 1) - y(i);
                    break;
            }
        }
    }
    std::vector<int> years(panel.years().begin() + 1, panel.years().end());
    return SeriesPanel(panel.labels(), std::move(years), std::move(out));
}

SeriesPanel transform(const SeriesPanel& panel, Transform spec) {
    return transform(panel, std::vector<Transform>(static_cast<size_t>(panel.cols()), spec));
}

SeriesPanel subpanel(const SeriesPanel& panel, const std::vector<std::string>& labels) {
    if (labels.empty()) raise(Errc::unknown_label, "no series selected");
    Eigen::MatrixXd out(panel.rows(), static_cast<Eigen::Index>(labels.size()));
    for (size_t j = 0; j < labels.size(); ++j) {
        out.col(static_cast<Eigen::Index>(j)) = panel.values().col(panel.column_index(labels[j]));
    }
    return SeriesPanel(labels, panel.years(), std::move(out));
}

}  // namespace varkit
