#pragma once

#include <string>

#include <json.hpp>

#include "gridmix/design.hpp"
#include "gridmix/dual_order.hpp"
#include "gridmix/simulate.hpp"

namespace gridmix {

using ordered_json = nlohmann::ordered_json;

struct ReportOptions {
    bool velocities = false;  // signed velocity per channel (rightward/downward positive)
    bool profiles = false;    // exit profile per channel
};

/// {"outlets":[{"concentration":..,"velocity":..}, ...]} plus the optional
/// sections. Shared by the CLI and the HTTP service.
ordered_json report_json(const Simulation& sim, const ReportOptions& options = {});

/// Compact one-line text of report_json.
std::string report_text(const Simulation& sim, const ReportOptions& options = {});

ordered_json profile_json(const SPProfile& p);

/// The flow system and its solution: unknown nodes, matrix, right-hand
/// side, node pressures and channel velocities.
ordered_json flow_dump_json(const Simulation& sim);

/// Faces (with boundary vertices) and dual edges.
ordered_json dual_dump_json(const DirectedGrid& grid, const DualGraph& dual);

/// {"error": first error, "issues":[{"severity","location","message"}]}
ordered_json issues_json(const ValidationReport& report);

}  // namespace gridmix
