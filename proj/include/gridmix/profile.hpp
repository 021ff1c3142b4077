#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace gridmix {

/// Three-piece linear concentration profile across a channel of `width`:
/// constant `left` on [0, left_flat], constant `right` on
/// [width - right_flat, width], linear in between. The ramp width equals
/// twice the diffusion length. A zero-width ramp is a step.
///
/// Position 0 is the wall reached by turning the flow direction a quarter
/// turn clockwise; the profile axis points counter-clockwise to the flow.
/// Uniform profiles are stored with left_flat = right_flat = width / 2.
struct SPProfile {
    double left = 0.0;
    double right = 0.0;
    double left_flat = 0.0;
    double right_flat = 0.0;
    double width = 0.0;

    static SPProfile uniform(double value, double width);
    /// Canonicalizes: equal end values become the uniform form.
    static SPProfile make(double left, double right, double left_flat, double right_flat,
                          double width);

    bool is_uniform() const { return left == right; }
    double ramp_width() const { return width - left_flat - right_flat; }
    double diffusion_length() const { return ramp_width() / 2.0; }
    double area() const;
    double mean() const { return is_uniform() ? left : area() / width; }
    double min_value() const;
    double max_value() const;

    /// Value approached from the left / from the right at x. They differ
    /// only at a step.
    double limit_from_left(double x) const;
    double limit_from_right(double x) const;

    bool operator==(const SPProfile&) const = default;
};

/// True when the representation invariants hold within `tol`.
bool is_well_formed(const SPProfile& p, double tol = 1e-12);

/// A profile carried by a stream with the given speed.
struct Stream {
    SPProfile profile;
    double velocity = 0.0;
};

enum class DiffusionCase : std::uint8_t {
    BothFlats = 1,   // left_flat > 0, right_flat > 0
    NoFlats = 2,     // ramp spans the channel
    LeftFlat = 3,    // only the left flat remains
    RightFlat = 4,   // only the right flat remains
};

struct DiffusionPhase {
    DiffusionCase kind;
    double duration = 0.0;
    double implied_time_start = 0.0;  // mixing time implied at phase entry
    double implied_time_end = 0.0;
    SPProfile start;
    SPProfile end;
};

/// Lets a profile diffuse for `duration` seconds with diffusion coefficient
/// `diffusion` (mm^2/s). Area is preserved.
SPProfile diffuse(const SPProfile& p, double duration, double diffusion);

/// Same as diffuse, also returning the sequence of constant-form phases.
std::vector<DiffusionPhase> diffusion_phases(const SPProfile& p, double duration,
                                             double diffusion);

/// Length used for residence time: the geometric length plus half a channel
/// width for mixing inside the nodes.
inline double effective_length(double length, double width) { return length + width / 2.0; }

/// Profile at the end of a straight channel of geometric `length` traversed
/// at `velocity`.
SPProfile advance_straight(const SPProfile& p, double length, double velocity, double diffusion);

/// Piecewise-linear function on [0, width]; possibly discontinuous between
/// segments.
struct Segment {
    double x0, x1;
    double y0, y1;
};

/// Side-by-side concatenation of the inflow profiles, each occupying a share
/// of `width` proportional to its velocity.
std::vector<Segment> combined_profile(std::span<const Stream> inflows, double width);

/// Exact area under a piecewise-linear function.
double area_of(std::span<const Segment> segments);

/// Joins 2 or 3 inflows (ordered left to right) into one profile of `width`
/// with the same area as their combined profile.
SPProfile join_profiles(std::span<const Stream> inflows, double width);

/// Splits a profile among outflows (ordered left to right) in proportion to
/// their velocities; each piece is rescaled to the full channel width.
std::vector<SPProfile> split_profile(const SPProfile& p, std::span<const double> velocities);

/// Join followed by split.
std::vector<SPProfile> join_split(std::span<const Stream> inflows,
                                  std::span<const double> out_velocities, double width);

}  // namespace gridmix
