#include <optional>

#include "gridmix/simulate.hpp"

namespace gridmix {

std::vector<std::vector<SPProfile>> ProfileState::recorded() const {
    std::vector<std::vector<SPProfile>> out(present.size());
    for (std::size_t e = 0; e < present.size(); ++e)
        if (present[e]) out[e] = {entry[e], exit[e]};
    return out;
}

ProfileState propagate(const GridDesign& design, const DirectedGrid& grid, const StagePlan& plan) {
    const Network& net = grid.network;
    const double w = design.channel_width;
    const double diff = design.fluid.diffusion;
    const std::size_t edge_count = grid.edges.size();

    ProfileState state;
    state.present.assign(edge_count, false);
    state.entry.assign(edge_count, SPProfile{});
    state.exit.assign(edge_count, SPProfile{});
    std::vector<std::optional<SPProfile>> start(edge_count);

    for (int k = 0; k < net.inlet_count(); ++k) {
        const int stub = net.node(net.inlet_node(k)).links[static_cast<std::size_t>(index_of(Direction::South))];
        start[static_cast<std::size_t>(stub)] =
            SPProfile::uniform(design.inlets[static_cast<std::size_t>(k)].concentration, w);
    }

    auto exit_of = [&](int e) -> const SPProfile& {
        if (!state.present[static_cast<std::size_t>(e)])
            throw InternalError("profile of " + net.edge(e).ref.name() + " used before it was computed");
        return state.exit[static_cast<std::size_t>(e)];
    };
    auto streams_of = [&](const std::vector<int>& inflows) {
        std::vector<Stream> s;
        s.reserve(inflows.size());
        for (int e : inflows) s.push_back({exit_of(e), grid.edges[static_cast<std::size_t>(e)].speed});
        return s;
    };
    auto speeds_of = [&](const std::vector<int>& outflows) {
        std::vector<double> v;
        v.reserve(outflows.size());
        for (int e : outflows) v.push_back(grid.edges[static_cast<std::size_t>(e)].speed);
        return v;
    };
    auto assign_starts = [&](const std::vector<int>& outflows, const std::vector<SPProfile>& ps) {
        for (std::size_t i = 0; i < outflows.size(); ++i) start[static_cast<std::size_t>(outflows[i])] = ps[i];
    };

    for (const StagePart& part : plan.parts) {
        if (const auto* run = std::get_if<StraightPart>(&part)) {
            const auto first = static_cast<std::size_t>(run->edges.front());
            if (!start[first]) throw InternalError("straight run starts without a profile");
            const SPProfile p = *start[first];
            const double total = effective_length(run->length, w) / run->speed;
            const auto k = static_cast<double>(run->edges.size());
            SPProfile entry = p;
            for (std::size_t j = 0; j < run->edges.size(); ++j) {
                const auto e = static_cast<std::size_t>(run->edges[j]);
                const SPProfile exit = j + 1 == run->edges.size()
                                           ? diffuse(p, total, diff)
                                           : diffuse(p, total * static_cast<double>(j + 1) / k, diff);
                state.present[e] = true;
                state.entry[e] = entry;
                state.exit[e] = exit;
                entry = exit;
            }
        } else if (const auto* join = std::get_if<JoinPart>(&part)) {
            const std::vector<Stream> s = streams_of(join->inflows);
            start[static_cast<std::size_t>(join->outflow)] = join_profiles(s, w);
        } else if (const auto* split = std::get_if<SplitPart>(&part)) {
            assign_starts(split->outflows, split_profile(exit_of(split->inflow), speeds_of(split->outflows)));
        } else if (const auto* js = std::get_if<JoinSplitPart>(&part)) {
            const std::vector<Stream> s = streams_of(js->inflows);
            const std::vector<double> v = speeds_of(js->outflows);
            assign_starts(js->outflows, join_split(s, v, w));
        }
    }
    return state;
}

Simulation run_simulation(const GridDesign& design) {
    ValidationReport report = validate(design);
    if (report.has_errors()) throw InvalidDesign(std::move(report));

    GridDesign pruned = prune_dead_ends(design);
    FlowSolution flow = solve_flow(pruned);
    DirectedGrid grid = orient(pruned, flow);
    StagePlan plan = plan_stages(grid);
    ProfileState profiles = propagate(pruned, grid, plan);

    const Network& net = grid.network;
    OutletReport out;
    for (int k = 0; k < net.outlet_count(); ++k) {
        const int stub = net.node(net.outlet_node(k)).links[static_cast<std::size_t>(index_of(Direction::North))];
        if (stub < 0 || !profiles.present[static_cast<std::size_t>(stub)])
            throw InternalError("outlet " + std::to_string(k) + " receives no flow");
        const SPProfile& p = profiles.exit[static_cast<std::size_t>(stub)];
        out.outlets.push_back({k, pruned.outlets[static_cast<std::size_t>(k)], p.mean(),
                               flow.velocity[static_cast<std::size_t>(stub)]});
    }
    return Simulation{std::move(pruned), std::move(flow), std::move(grid), std::move(plan),
                      std::move(profiles), std::move(out), std::move(report)};
}

}  // namespace gridmix
