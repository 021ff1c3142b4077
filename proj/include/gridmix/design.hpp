#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "gridmix/errors.hpp"

namespace gridmix {

// Units throughout: millimetres, seconds, mm/s, mm^2/s.
inline constexpr double kDefaultChannelWidth = 0.2;
inline constexpr double kDefaultChannelLength = 1.5;
inline constexpr double kSodiumDiffusion = 1.33e-4;

struct FluidSpec {
    double diffusion = kSodiumDiffusion;

    bool operator==(const FluidSpec&) const = default;
};

/// A top-edge inlet feeding grid node (0, col).
struct Inlet {
    int col = 0;
    double concentration = 0.0;
    double velocity = 1.0;

    bool operator==(const Inlet&) const = default;
};

/// Rectilinear grid mixer. Grid nodes are (row, col) with row in [0, rows)
/// and col in [0, cols). Horizontal channel (r, c) joins (r, c)-(r, c+1);
/// vertical channel (r, c) joins (r, c)-(r+1, c). Every inlet enters node
/// (0, col) through a vertical stub of the channel length; every outlet
/// leaves node (rows-1, col) the same way.
struct GridDesign {
    int rows = 1;
    int cols = 1;
    double channel_width = kDefaultChannelWidth;
    double channel_length = kDefaultChannelLength;
    std::vector<bool> horizontal;  // rows * (cols - 1), row-major
    std::vector<bool> vertical;    // (rows - 1) * cols, row-major
    std::vector<Inlet> inlets;     // strictly increasing columns
    std::vector<int> outlets;      // strictly increasing columns
    FluidSpec fluid;

    /// A rows x cols design with no channels, inlets or outlets.
    static GridDesign empty(int rows, int cols);
    /// A rows x cols design with every channel present.
    static GridDesign full(int rows, int cols);

    bool has_horizontal(int row, int col) const;
    bool has_vertical(int row, int col) const;
    void set_horizontal(int row, int col, bool present = true);
    void set_vertical(int row, int col, bool present = true);

    std::size_t channel_count() const;

    bool operator==(const GridDesign&) const = default;
};

enum class Severity { Error, Warning };

struct Issue {
    Severity severity = Severity::Error;
    std::string location;  // channel or port name, e.g. "h:2,3", "inlet:1"
    std::string message;

    bool operator==(const Issue&) const = default;
};

struct ValidationReport {
    std::vector<Issue> issues;

    bool empty() const { return issues.empty(); }
    bool has_errors() const;
    std::size_t error_count() const;
    std::size_t warning_count() const;
    /// First error message, or an empty string.
    std::string first_error() const;
};

/// A design that fails validation. Carries the full report.
class InvalidDesign : public Error {
public:
    explicit InvalidDesign(ValidationReport report);

    const ValidationReport& report() const noexcept { return report_; }

private:
    ValidationReport report_;
};

/// Checks only the structural invariants of the type (sizes, ranges, port
/// ordering, inlet monotonicity, physical parameters).
ValidationReport check_invariants(const GridDesign& design);

/// Structural invariants plus connectivity: every inlet and outlet must lie
/// on an inlet-to-outlet path (errors), and every channel that lies on no
/// such path is reported as a dead end (warning).
ValidationReport validate(const GridDesign& design);

/// Channel liveness before flow is known: a channel is live when it lies on
/// at least one simple undirected inlet-to-outlet path.
struct Liveness {
    std::vector<bool> horizontal;
    std::vector<bool> vertical;
    std::vector<bool> inlets;
    std::vector<bool> outlets;

    bool any() const;
};

Liveness live_channels(const GridDesign& design);

/// Removes every channel that lies on no inlet-to-outlet path. Inlets and
/// outlets are kept. Throws NoPathError when nothing is live.
GridDesign prune_dead_ends(const GridDesign& design);

/// Parses the JSON design format. Throws ParseError for malformed text and
/// InvalidDesign when the structural invariants do not hold.
GridDesign parse_design(std::string_view text);

/// Deterministic JSON text; parse_design(serialize_design(d)) == d.
std::string serialize_design(const GridDesign& design);

/// Left-right mirror image. With complement set, inlet concentrations map
/// c -> 1 - c, which keeps them non-increasing after the column reversal.
GridDesign mirrored(const GridDesign& design, bool complement);

}  // namespace gridmix
