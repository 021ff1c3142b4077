#include <algorithm>
#include <cmath>
#include <string>

#include "gridmix/design.hpp"

namespace gridmix {

ParseError::ParseError(const std::string& message, int line, int column)
    : Error(line > 0 ? message + " (line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ")"
                     : message),
      line_(line),
      column_(column) {}

namespace {

std::size_t horizontal_index(const GridDesign& d, int row, int col) {
    return static_cast<std::size_t>(row * (d.cols - 1) + col);
}

std::size_t vertical_index(const GridDesign& d, int row, int col) {
    return static_cast<std::size_t>(row * d.cols + col);
}

std::string pair_name(char tag, int row, int col) {
    return std::string(1, tag) + ":" + std::to_string(row) + "," + std::to_string(col);
}

}  // namespace

GridDesign GridDesign::empty(int rows, int cols) {
    GridDesign d;
    d.rows = rows;
    d.cols = cols;
    d.horizontal.assign(static_cast<std::size_t>(std::max(0, rows * (cols - 1))), false);
    d.vertical.assign(static_cast<std::size_t>(std::max(0, (rows - 1) * cols)), false);
    return d;
}

GridDesign GridDesign::full(int rows, int cols) {
    GridDesign d = empty(rows, cols);
    std::fill(d.horizontal.begin(), d.horizontal.end(), true);
    std::fill(d.vertical.begin(), d.vertical.end(), true);
    return d;
}

bool GridDesign::has_horizontal(int row, int col) const {
    if (row < 0 || row >= rows || col < 0 || col + 1 >= cols) return false;
    return horizontal[horizontal_index(*this, row, col)];
}

bool GridDesign::has_vertical(int row, int col) const {
    if (row < 0 || row + 1 >= rows || col < 0 || col >= cols) return false;
    return vertical[vertical_index(*this, row, col)];
}

void GridDesign::set_horizontal(int row, int col, bool present) {
    if (row < 0 || row >= rows || col < 0 || col + 1 >= cols)
        throw Error("horizontal channel " + pair_name('h', row, col) + " is outside the grid");
    horizontal[horizontal_index(*this, row, col)] = present;
}

void GridDesign::set_vertical(int row, int col, bool present) {
    if (row < 0 || row + 1 >= rows || col < 0 || col >= cols)
        throw Error("vertical channel " + pair_name('v', row, col) + " is outside the grid");
    vertical[vertical_index(*this, row, col)] = present;
}

std::size_t GridDesign::channel_count() const {
    return static_cast<std::size_t>(std::count(horizontal.begin(), horizontal.end(), true) +
                                    std::count(vertical.begin(), vertical.end(), true));
}

bool ValidationReport::has_errors() const { return error_count() > 0; }

std::size_t ValidationReport::error_count() const {
    return static_cast<std::size_t>(std::count_if(
        issues.begin(), issues.end(), [](const Issue& i) { return i.severity == Severity::Error; }));
}

std::size_t ValidationReport::warning_count() const { return issues.size() - error_count(); }

std::string ValidationReport::first_error() const {
    for (const auto& i : issues)
        if (i.severity == Severity::Error) return i.location + ": " + i.message;
    return {};
}

InvalidDesign::InvalidDesign(ValidationReport report)
    : Error(report.has_errors() ? "invalid design: " + report.first_error() : "invalid design"),
      report_(std::move(report)) {}

ValidationReport check_invariants(const GridDesign& d) {
    ValidationReport report;
    auto error = [&](std::string location, std::string message) {
        report.issues.push_back({Severity::Error, std::move(location), std::move(message)});
    };

    if (d.rows < 1 || d.cols < 1) {
        error("grid", "rows and cols must be positive");
        return report;
    }
    if (d.horizontal.size() != static_cast<std::size_t>(d.rows * (d.cols - 1)) ||
        d.vertical.size() != static_cast<std::size_t>((d.rows - 1) * d.cols)) {
        error("grid", "channel flag arrays do not match the grid size");
        return report;
    }
    if (!(d.channel_width > 0.0) || !std::isfinite(d.channel_width))
        error("grid", "channel width must be positive");
    if (!(d.channel_length > 0.0) || !std::isfinite(d.channel_length))
        error("grid", "channel length must be positive");
    if (!(d.fluid.diffusion > 0.0) || !std::isfinite(d.fluid.diffusion))
        error("fluid", "diffusion coefficient must be positive");

    if (d.inlets.empty()) error("inlets", "design needs at least one inlet");
    if (d.outlets.empty()) error("outlets", "design needs at least one outlet");

    for (std::size_t k = 0; k < d.inlets.size(); ++k) {
        const Inlet& in = d.inlets[k];
        std::string where = "inlet:" + std::to_string(k);
        if (in.col < 0 || in.col >= d.cols) error(where, "inlet column out of range");
        if (!(in.concentration >= 0.0 && in.concentration <= 1.0))
            error(where, "inlet concentration must lie in [0, 1]");
        if (!(in.velocity > 0.0) || !std::isfinite(in.velocity))
            error(where, "inlet velocity must be positive");
        if (k > 0) {
            const Inlet& prev = d.inlets[k - 1];
            if (in.col <= prev.col) error(where, "inlet columns must be strictly increasing");
            if (in.concentration > prev.concentration)
                error(where, "inlet monotonicity violated: concentrations must be non-increasing "
                             "from left to right");
        }
    }
    for (std::size_t k = 0; k < d.outlets.size(); ++k) {
        std::string where = "outlet:" + std::to_string(k);
        if (d.outlets[k] < 0 || d.outlets[k] >= d.cols) error(where, "outlet column out of range");
        if (k > 0 && d.outlets[k] <= d.outlets[k - 1])
            error(where, "outlet columns must be strictly increasing");
    }
    return report;
}

ValidationReport validate(const GridDesign& d) {
    ValidationReport report = check_invariants(d);
    if (report.has_errors()) return report;

    Liveness live = live_channels(d);
    for (std::size_t k = 0; k < d.inlets.size(); ++k)
        if (!live.inlets[k])
            report.issues.push_back({Severity::Error, "inlet:" + std::to_string(k),
                                     "inlet is not connected to any outlet"});
    for (std::size_t k = 0; k < d.outlets.size(); ++k)
        if (!live.outlets[k])
            report.issues.push_back({Severity::Error, "outlet:" + std::to_string(k),
                                     "outlet is not connected to any inlet"});
    for (int r = 0; r < d.rows; ++r)
        for (int c = 0; c + 1 < d.cols; ++c)
            if (d.has_horizontal(r, c) && !live.horizontal[horizontal_index(d, r, c)])
                report.issues.push_back({Severity::Warning, pair_name('h', r, c),
                                         "dead-end channel: on no inlet-to-outlet path"});
    for (int r = 0; r + 1 < d.rows; ++r)
        for (int c = 0; c < d.cols; ++c)
            if (d.has_vertical(r, c) && !live.vertical[vertical_index(d, r, c)])
                report.issues.push_back({Severity::Warning, pair_name('v', r, c),
                                         "dead-end channel: on no inlet-to-outlet path"});
    return report;
}

GridDesign mirrored(const GridDesign& d, bool complement) {
    GridDesign m = GridDesign::empty(d.rows, d.cols);
    m.channel_width = d.channel_width;
    m.channel_length = d.channel_length;
    m.fluid = d.fluid;
    for (int r = 0; r < d.rows; ++r)
        for (int c = 0; c + 1 < d.cols; ++c)
            if (d.has_horizontal(r, c)) m.set_horizontal(r, d.cols - 2 - c);
    for (int r = 0; r + 1 < d.rows; ++r)
        for (int c = 0; c < d.cols; ++c)
            if (d.has_vertical(r, c)) m.set_vertical(r, d.cols - 1 - c);
    for (auto it = d.inlets.rbegin(); it != d.inlets.rend(); ++it) {
        Inlet in = *it;
        in.col = d.cols - 1 - in.col;
        if (complement) in.concentration = 1.0 - in.concentration;
        m.inlets.push_back(in);
    }
    for (auto it = d.outlets.rbegin(); it != d.outlets.rend(); ++it)
        m.outlets.push_back(d.cols - 1 - *it);
    return m;
}

}  // namespace gridmix
