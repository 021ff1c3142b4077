#include <algorithm>
#include <cmath>

#include "gridmix/generator.hpp"

namespace gridmix {

void check_params(const GeneratorParams& p) {
    if (p.rows < 1 || p.cols < 1) throw Error("rows and cols must be at least 1");
    if (!(p.density > 0.0 && p.density <= 1.0)) throw Error("density must be in (0, 1]");
    const auto k_in = static_cast<int>(p.inlets.size());
    if (k_in < 1 || k_in > p.cols) throw Error("inlet count must be between 1 and cols");
    if (p.outlet_count < 1 || p.outlet_count > p.cols) throw Error("outlet count must be between 1 and cols");
    for (std::size_t i = 0; i < p.inlets.size(); ++i) {
        const InletSpec& s = p.inlets[i];
        if (!(s.concentration >= 0.0 && s.concentration <= 1.0))
            throw Error("inlet concentration must be in [0, 1]");
        if (!(s.velocity > 0.0)) throw Error("inlet velocity must be positive");
        if (i > 0 && s.concentration > p.inlets[i - 1].concentration)
            throw Error("inlet concentrations must be non-increasing from left to right");
    }
    if (p.max_attempts < 1) throw Error("max attempts must be at least 1");
    if (!(p.channel_width > 0.0) || !(p.channel_length > 0.0) || !(p.diffusion > 0.0))
        throw Error("channel width, channel length and diffusion must be positive");
}

namespace {

std::vector<int> spread_columns(int count, int cols) {
    std::vector<int> out;
    if (count == 1) return {(cols - 1) / 2};
    for (int i = 0; i < count; ++i)
        out.push_back(static_cast<int>(std::lround(static_cast<double>(i) * (cols - 1) / (count - 1))));
    return out;
}

std::vector<int> random_columns(int count, int cols, std::mt19937_64& rng) {
    // Partial Fisher-Yates with the portable uniform draw.
    std::vector<int> pool(static_cast<std::size_t>(cols));
    for (int c = 0; c < cols; ++c) pool[static_cast<std::size_t>(c)] = c;
    for (int i = 0; i < count; ++i) {
        const int span = cols - i;
        const int j = i + std::min(span - 1, static_cast<int>(unit_uniform(rng) * span));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    pool.resize(static_cast<std::size_t>(count));
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace

Simulation generate_simulated(const GeneratorParams& p) {
    check_params(p);
    std::mt19937_64 rng(p.seed);
    const auto k_in = static_cast<int>(p.inlets.size());
    for (int attempt = 0; attempt < p.max_attempts; ++attempt) {
        GridDesign d = GridDesign::empty(p.rows, p.cols);
        d.channel_width = p.channel_width;
        d.channel_length = p.channel_length;
        d.fluid.diffusion = p.diffusion;
        const std::vector<int> in_cols = p.placement == Placement::Spread
                                             ? spread_columns(k_in, p.cols)
                                             : random_columns(k_in, p.cols, rng);
        const std::vector<int> out_cols = p.placement == Placement::Spread
                                              ? spread_columns(p.outlet_count, p.cols)
                                              : random_columns(p.outlet_count, p.cols, rng);
        for (int i = 0; i < k_in; ++i) {
            const InletSpec& s = p.inlets[static_cast<std::size_t>(i)];
            d.inlets.push_back({in_cols[static_cast<std::size_t>(i)], s.concentration, s.velocity});
        }
        d.outlets = out_cols;
        for (std::size_t i = 0; i < d.horizontal.size(); ++i) d.horizontal[i] = unit_uniform(rng) < p.density;
        for (std::size_t i = 0; i < d.vertical.size(); ++i) d.vertical[i] = unit_uniform(rng) < p.density;

        if (validate(d).has_errors()) continue;
        try {
            return run_simulation(d);
        } catch (const InvalidDesign&) {
            throw;
        } catch (const Error&) {
            // Flow patterns the engine cannot classify; draw again.
        }
    }
    throw GenerationFailure("no valid design after " + std::to_string(p.max_attempts) + " attempts");
}

GridDesign random_grid(const GeneratorParams& params) { return generate_simulated(params).design; }

}  // namespace gridmix
