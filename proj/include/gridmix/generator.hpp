#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gridmix/design.hpp"
#include "gridmix/simulate.hpp"

namespace gridmix {

enum class Placement : std::uint8_t {
    Spread,  // columns evenly spaced across the grid, first and last included
    Random,  // distinct columns drawn per attempt
};

struct InletSpec {
    double concentration = 0.0;
    double velocity = 1.0;
};

struct GeneratorParams {
    int rows = 12;
    int cols = 12;
    double density = 0.6;  // probability that a channel is present
    std::vector<InletSpec> inlets{{1.0, 1.0}, {0.0, 1.0}};  // left to right
    int outlet_count = 3;
    Placement placement = Placement::Spread;
    std::uint64_t seed = 1;
    int max_attempts = 1000;
    double channel_width = kDefaultChannelWidth;
    double channel_length = kDefaultChannelLength;
    double diffusion = kSodiumDiffusion;
};

/// Throws Error when the parameters cannot describe a valid design.
void check_params(const GeneratorParams& params);

/// Uniform double in [0, 1) from 53 random bits; identical on every
/// platform, unlike std::uniform_real_distribution.
inline double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Draws channel subsets until one connects every inlet and outlet and
/// simulates cleanly, and returns its simulation (whose design is pruned).
/// Throws GenerationFailure after params.max_attempts draws.
Simulation generate_simulated(const GeneratorParams& params);

/// The pruned design of generate_simulated.
GridDesign random_grid(const GeneratorParams& params);

}  // namespace gridmix
