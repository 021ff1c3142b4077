#pragma once

#include <string>

#include "gridmix/design.hpp"
#include "gridmix/simulate.hpp"

namespace gridmix {

/// SVG drawing of the design. With a simulation, channels are coloured by
/// their mean exit concentration (blue 0, red 1) and outlets are labelled
/// with their concentrations.
std::string render_svg(const GridDesign& design, const Simulation* sim = nullptr);

}  // namespace gridmix
