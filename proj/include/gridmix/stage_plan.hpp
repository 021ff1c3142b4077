#pragma once

#include <variant>
#include <vector>

#include "gridmix/flow.hpp"

namespace gridmix {

/// A maximal run of channels joined through straight (1-in/1-out) nodes,
/// corners included. `length` is the geometric length of the run.
struct StraightPart {
    std::vector<int> edges;
    double length = 0.0;
    double speed = 0.0;
};

struct JoinPart {
    int node = -1;
    std::vector<int> inflows;  // left to right
    int outflow = -1;
};

struct SplitPart {
    int node = -1;
    int inflow = -1;
    std::vector<int> outflows;  // left to right
};

struct JoinSplitPart {
    int node = -1;
    std::vector<int> inflows;
    std::vector<int> outflows;
};

using StagePart = std::variant<StraightPart, JoinPart, SplitPart, JoinSplitPart>;

/// Parts in an order consistent with the flow: every part comes after all
/// parts that feed it.
struct StagePlan {
    std::vector<StagePart> parts;
};

/// Topological sort of the parts. Ties are broken row-major by the anchor
/// node (the node itself, or the tail of a straight run's first channel).
StagePlan plan_stages(const DirectedGrid& grid);

}  // namespace gridmix
