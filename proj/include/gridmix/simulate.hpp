#pragma once

#include <vector>

#include "gridmix/design.hpp"
#include "gridmix/flow.hpp"
#include "gridmix/profile.hpp"
#include "gridmix/stage_plan.hpp"

namespace gridmix {

struct OutletResult {
    int outlet = -1;
    int col = 0;
    double concentration = 0.0;
    double velocity = 0.0;
};

struct OutletReport {
    std::vector<OutletResult> outlets;
};

/// Profiles at the entry and exit of every channel that carries flow,
/// indexed by network edge id.
struct ProfileState {
    std::vector<bool> present;
    std::vector<SPProfile> entry;
    std::vector<SPProfile> exit;

    /// Entry and exit per edge, in the shape check_monotonicity expects.
    std::vector<std::vector<SPProfile>> recorded() const;
};

/// Everything computed for one design.
struct Simulation {
    GridDesign design;  // after dead-end pruning
    FlowSolution flow;
    DirectedGrid grid;
    StagePlan plan;
    ProfileState profiles;
    OutletReport report;
    ValidationReport warnings;
};

/// Validates, prunes, solves the flow, orients, plans and propagates
/// profiles. Throws InvalidDesign when validation reports errors.
Simulation run_simulation(const GridDesign& design);

inline OutletReport simulate(const GridDesign& design) { return run_simulation(design).report; }

/// Propagates inlet profiles through an oriented grid along `plan`.
ProfileState propagate(const GridDesign& design, const DirectedGrid& grid, const StagePlan& plan);

}  // namespace gridmix
