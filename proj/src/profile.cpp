#include <algorithm>
#include <cmath>
#include <optional>

#include "gridmix/errors.hpp"
#include "gridmix/profile.hpp"

namespace gridmix {

namespace {

// Flats narrower than this fraction of the width count as absent.
constexpr double kFlatSnap = 1e-12;
// Value tolerance when recognising a combined profile as three-piece.
constexpr double kShapeTol = 1e-12;
// Largest increase tolerated between neighbouring joined inflows.
constexpr double kOrderTol = 1e-9;

double ramp_value(const SPProfile& p, double x) {
    return p.left + (p.right - p.left) * (x - p.left_flat) / p.ramp_width();
}

}  // namespace

SPProfile SPProfile::uniform(double value, double width) {
    return SPProfile{value, value, width / 2.0, width / 2.0, width};
}

SPProfile SPProfile::make(double left, double right, double left_flat, double right_flat,
                          double width) {
    if (left == right) return uniform(left, width);
    left_flat = std::clamp(left_flat, 0.0, width);
    right_flat = std::clamp(right_flat, 0.0, width);
    if (left_flat < kFlatSnap * width) left_flat = 0.0;
    if (right_flat < kFlatSnap * width) right_flat = 0.0;
    if (left_flat + right_flat > width) right_flat = width - left_flat;
    return SPProfile{left, right, left_flat, right_flat, width};
}

double SPProfile::area() const {
    if (is_uniform()) return left * width;
    return left * left_flat + right * right_flat + 0.5 * (left + right) * ramp_width();
}

double SPProfile::min_value() const { return std::min(left, right); }
double SPProfile::max_value() const { return std::max(left, right); }

double SPProfile::limit_from_left(double x) const {
    if (is_uniform() || x <= left_flat) return left;
    if (x > width - right_flat) return right;
    return ramp_value(*this, x);
}

double SPProfile::limit_from_right(double x) const {
    if (is_uniform() || x < left_flat) return left;
    if (x >= width - right_flat) return right;
    return ramp_value(*this, x);
}

bool is_well_formed(const SPProfile& p, double tol) {
    if (!(p.width > 0.0)) return false;
    if (p.right < -tol || p.left > 1.0 + tol || p.right > p.left + tol) return false;
    if (p.left_flat < -tol * p.width || p.right_flat < -tol * p.width) return false;
    if (p.left_flat + p.right_flat > p.width * (1.0 + tol)) return false;
    if (p.is_uniform())
        return std::abs(p.left_flat - p.width / 2) <= tol * p.width &&
               std::abs(p.right_flat - p.width / 2) <= tol * p.width;
    return true;
}

namespace {

SPProfile diffuse_impl(SPProfile p, double remaining, double diff,
                       std::vector<DiffusionPhase>* log) {
    const double w = p.width;
    auto record = [&](DiffusionCase kind, double duration, double t0, double t1,
                      const SPProfile& from, const SPProfile& to) {
        if (log) log->push_back({kind, duration, t0, t1, from, to});
    };

    for (int guard = 0; guard < 8; ++guard) {
        if (p.is_uniform() || !(remaining > 0.0)) return p;
        p = SPProfile::make(p.left, p.right, p.left_flat, p.right_flat, w);
        const SPProfile start = p;

        if (p.left_flat > 0.0 && p.right_flat > 0.0) {
            const double len = p.diffusion_length();
            const double t0 = len * len / (4.0 * diff);
            const double shift_to_event = std::min(p.left_flat, p.right_flat);
            const double len_event = len + shift_to_event;
            const double dt_event = len_event * len_event / (4.0 * diff) - t0;
            if (remaining < dt_event) {
                const double len_new = std::sqrt(len * len + 4.0 * diff * remaining);
                const double shift = len_new - len;
                p = SPProfile::make(p.left, p.right, std::max(0.0, p.left_flat - shift),
                                    std::max(0.0, p.right_flat - shift), w);
                record(DiffusionCase::BothFlats, remaining, t0, t0 + remaining, start, p);
                return p;
            }
            double lf = p.left_flat - shift_to_event;
            double rf = p.right_flat - shift_to_event;
            if (p.left_flat <= p.right_flat) lf = 0.0;
            if (p.right_flat <= p.left_flat) rf = 0.0;
            p = SPProfile{p.left, p.right, lf, rf, w};
            record(DiffusionCase::BothFlats, dt_event, t0, t0 + dt_event, start, p);
            remaining -= dt_event;
            continue;
        }

        if (p.left_flat > 0.0 || p.right_flat > 0.0) {
            const bool left_side = p.left_flat > 0.0;
            const double flat = left_side ? p.left_flat : p.right_flat;
            const double len = w - flat;
            const double t0 = len * len / (4.0 * diff);
            const double dt_event = (w * w - len * len) / (4.0 * diff);
            const bool event = remaining >= dt_event;
            const double dt = event ? dt_event : remaining;
            const double len_new = event ? w : std::sqrt(len * len + 4.0 * diff * dt);
            const double flat_new = event ? 0.0 : std::max(0.0, flat - (len_new - len));
            const double gap = len * (p.left - p.right) / len_new;
            if (left_side)
                p = SPProfile{p.left, p.left - gap, flat_new, 0.0, w};
            else
                p = SPProfile{p.right + gap, p.right, 0.0, flat_new, w};
            record(left_side ? DiffusionCase::LeftFlat : DiffusionCase::RightFlat, dt, t0,
                   len_new * len_new / (4.0 * diff), start, p);
            remaining -= dt;
            if (!event) return p;
            continue;
        }

        // The ramp spans the channel: treat it as the middle of a virtual
        // wider channel with diffusion length w/2, so the half-difference of
        // the wall values decays as sqrt(t / t').
        const double t = w * w / (16.0 * diff);
        const double t_end = t + remaining;
        const double decay = 1.0 - std::sqrt(t / t_end);
        const double half_gap = 0.5 * (p.left - p.right);
        p = SPProfile::make(p.left - half_gap * decay, p.right + half_gap * decay, 0.0, 0.0, w);
        record(DiffusionCase::NoFlats, remaining, t, t_end, start, p);
        return p;
    }
    throw InternalError("diffusion phase loop did not terminate");
}

}  // namespace

SPProfile diffuse(const SPProfile& p, double duration, double diffusion) {
    return diffuse_impl(p, duration, diffusion, nullptr);
}

std::vector<DiffusionPhase> diffusion_phases(const SPProfile& p, double duration,
                                             double diffusion) {
    std::vector<DiffusionPhase> log;
    diffuse_impl(p, duration, diffusion, &log);
    return log;
}

SPProfile advance_straight(const SPProfile& p, double length, double velocity, double diffusion) {
    return diffuse(p, effective_length(length, p.width) / velocity, diffusion);
}

std::vector<Segment> combined_profile(std::span<const Stream> inflows, double width) {
    double total = 0.0;
    for (const Stream& s : inflows) {
        if (!(s.velocity > 0.0)) throw Error("join inflow velocities must be positive");
        total += s.velocity;
    }
    std::vector<Segment> segs;
    double offset = 0.0;
    for (std::size_t i = 0; i < inflows.size(); ++i) {
        const SPProfile& p = inflows[i].profile;
        const double share = i + 1 == inflows.size() ? width - offset
                                                      : width * inflows[i].velocity / total;
        const double end = offset + share;
        const double scale = share / p.width;
        if (p.is_uniform()) {
            segs.push_back({offset, end, p.left, p.left});
        } else {
            const double a = offset + p.left_flat * scale;
            const double b = end - p.right_flat * scale;
            if (p.left_flat > 0.0) segs.push_back({offset, a, p.left, p.left});
            if (b > a) segs.push_back({a, b, p.left, p.right});
            if (p.right_flat > 0.0) segs.push_back({b, end, p.right, p.right});
        }
        offset = end;
    }
    return segs;
}

double area_of(std::span<const Segment> segments) {
    double a = 0.0;
    for (const Segment& s : segments) a += (s.x1 - s.x0) * 0.5 * (s.y0 + s.y1);
    return a;
}

namespace {

bool is_flat(const Segment& s) { return std::abs(s.y1 - s.y0) <= kShapeTol; }

bool continuous(const Segment& a, const Segment& b) { return std::abs(a.y1 - b.y0) <= kShapeTol; }

/// The combined profile as a three-piece profile, when it already is one.
std::optional<SPProfile> as_three_piece(std::span<const Segment> segs, double width) {
    std::vector<Segment> merged;
    for (const Segment& s : segs) {
        if (s.x1 - s.x0 <= kFlatSnap * width) continue;
        if (!merged.empty()) {
            Segment& m = merged.back();
            if (continuous(m, s)) {
                const double slope = (s.y1 - m.y0) / (s.x1 - m.x0);
                const double at_joint = m.y0 + slope * (m.x1 - m.x0);
                if (std::abs(at_joint - m.y1) <= kShapeTol && std::abs(at_joint - s.y0) <= kShapeTol) {
                    m.x1 = s.x1;
                    m.y1 = s.y1;
                    continue;
                }
            }
        }
        merged.push_back(s);
    }
    auto len = [](const Segment& s) { return s.x1 - s.x0; };
    switch (merged.size()) {
        case 1:
            if (is_flat(merged[0])) return SPProfile::uniform(merged[0].y0, width);
            if (merged[0].y0 > merged[0].y1)
                return SPProfile::make(merged[0].y0, merged[0].y1, 0.0, 0.0, width);
            return std::nullopt;
        case 2: {
            const Segment& a = merged[0];
            const Segment& b = merged[1];
            if (is_flat(a) && is_flat(b) && a.y0 > b.y0)
                return SPProfile::make(a.y0, b.y0, len(a), len(b), width);
            if (!continuous(a, b)) return std::nullopt;
            if (is_flat(a) && !is_flat(b) && b.y0 > b.y1)
                return SPProfile::make(a.y0, b.y1, len(a), 0.0, width);
            if (!is_flat(a) && is_flat(b) && a.y0 > a.y1)
                return SPProfile::make(a.y0, b.y0, 0.0, len(b), width);
            return std::nullopt;
        }
        case 3: {
            const Segment& a = merged[0];
            const Segment& m = merged[1];
            const Segment& b = merged[2];
            if (is_flat(a) && !is_flat(m) && is_flat(b) && continuous(a, m) && continuous(m, b) &&
                m.y0 > m.y1)
                return SPProfile::make(a.y0, b.y0, len(a), len(b), width);
            return std::nullopt;
        }
        default: return std::nullopt;
    }
}

double sp_area(double left, double right, double lf, double rf, double w) {
    return left * lf + right * rf + 0.5 * (left + right) * (w - lf - rf);
}

}  // namespace

SPProfile join_profiles(std::span<const Stream> inflows, double width) {
    if (inflows.empty()) throw Error("join needs at least one inflow");
    const std::vector<Segment> segs = combined_profile(inflows, width);
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const bool rising = segs[i].y1 > segs[i].y0 + kOrderTol ||
                            (i > 0 && segs[i].y0 > segs[i - 1].y1 + kOrderTol);
        if (rising) throw InternalError("joined inflows are not ordered by concentration");
    }
    const double target = area_of(segs);
    if (auto sp = as_three_piece(segs, width)) return *sp;

    // Tentative profile: the outer flats of the leftmost and rightmost
    // inflows. A uniform inflow contributes its whole share as a flat.
    double total = 0.0;
    for (const Stream& s : inflows) total += s.velocity;
    const Stream& first = inflows.front();
    const Stream& last = inflows.back();
    const double first_share = width * first.velocity / total;
    const double last_share = width * last.velocity / total;
    const double left = first.profile.left;
    const double right = last.profile.right;
    double lf = first.profile.is_uniform() ? first_share
                                           : first.profile.left_flat * first_share / first.profile.width;
    double rf = last.profile.is_uniform() ? last_share
                                          : last.profile.right_flat * last_share / last.profile.width;
    if (!(left > right)) return SPProfile::uniform(target / width, width);

    const double tentative = sp_area(left, right, lf, rf, width);
    const double half_gap = 0.5 * (left - right);
    if (tentative < target) {
        // Keep the left flat; shrink the right flat, then raise the right value.
        rf -= (target - tentative) / half_gap;
        if (rf >= 0.0) return SPProfile::make(left, right, lf, rf, width);
        if (width - lf <= 0.0) return SPProfile::uniform(target / width, width);
        const double raised = 2.0 * (target - left * lf) / (width - lf) - left;
        if (raised >= left) return SPProfile::uniform(target / width, width);
        return SPProfile::make(left, raised, lf, 0.0, width);
    }
    if (tentative > target) {
        lf -= (tentative - target) / half_gap;
        if (lf >= 0.0) return SPProfile::make(left, right, lf, rf, width);
        if (width - rf <= 0.0) return SPProfile::uniform(target / width, width);
        const double lowered = 2.0 * (target - right * rf) / (width - rf) - right;
        if (lowered <= right) return SPProfile::uniform(target / width, width);
        return SPProfile::make(lowered, right, 0.0, rf, width);
    }
    return SPProfile::make(left, right, lf, rf, width);
}

namespace {

SPProfile slice(const SPProfile& p, double a, double b) {
    if (p.is_uniform()) return p;
    const double w = p.width;
    const double scale = w / (b - a);
    const double left = p.limit_from_right(a);
    const double right = p.limit_from_left(b);
    const double lf = std::max(0.0, std::min(p.left_flat, b) - a) * scale;
    const double rf = std::max(0.0, b - std::max(w - p.right_flat, a)) * scale;
    return SPProfile::make(left, right, lf, rf, w);
}

}  // namespace

std::vector<SPProfile> split_profile(const SPProfile& p, std::span<const double> velocities) {
    if (velocities.empty()) throw Error("split needs at least one outflow");
    double total = 0.0;
    for (double v : velocities) {
        if (!(v > 0.0)) throw Error("split outflow velocities must be positive");
        total += v;
    }
    std::vector<SPProfile> out;
    out.reserve(velocities.size());
    double cumulative = 0.0;
    double a = 0.0;
    for (std::size_t i = 0; i < velocities.size(); ++i) {
        cumulative += velocities[i];
        const double b = i + 1 == velocities.size() ? p.width : p.width * cumulative / total;
        out.push_back(slice(p, a, b));
        a = b;
    }
    return out;
}

std::vector<SPProfile> join_split(std::span<const Stream> inflows,
                                  std::span<const double> out_velocities, double width) {
    return split_profile(join_profiles(inflows, width), out_velocities);
}

}  // namespace gridmix
