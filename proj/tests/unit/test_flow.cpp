#include <doctest.h>

#include "fixtures.hpp"
#include "gridmix/flow.hpp"
#include "gridmix/stage_plan.hpp"
#include "oracles.hpp"

using namespace gridmix;

namespace {

double velocity_of(const FlowSolution& f, const std::string& name) {
    const int e = f.network.find_edge(name);
    REQUIRE(e >= 0);
    return f.velocity[static_cast<std::size_t>(e)];
}

int edge(const DirectedGrid& g, const std::string& name) { return g.network.find_edge(name); }

}  // namespace

TEST_CASE("single path carries the inlet velocity") {
    const FlowSolution f = solve_flow(fixtures::single_path(3, 0.5));
    for (const auto& e : f.network.edges()) CHECK(f.velocity[static_cast<std::size_t>(&e - f.network.edges().data())] == doctest::Approx(1.0));
    CHECK(f.max_residual() < 1e-12);
}

TEST_CASE("joined inflows add up") {
    const FlowSolution f = solve_flow(fixtures::two_into_one(3));
    CHECK(velocity_of(f, "h:0,0") == doctest::Approx(1.0));
    CHECK(velocity_of(f, "h:0,1") == doctest::Approx(-1.0));
    CHECK(velocity_of(f, "out:0") == doctest::Approx(2.0));
}

TEST_CASE("velocities match the full Kirchhoff system") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        gridmix::GeneratorParams p = fixtures::paper_params(seed);
        p.rows = 6;
        p.cols = 6;
        p.inlets = {{1.0, 1.0}, {0.5, 2.5}, {0.0, 0.7}};
        p.outlet_count = 2;
        p.placement = Placement::Random;
        const GridDesign d = random_grid(p);
        const FlowSolution f = solve_flow(d);
        const auto ref = oracle::kirchhoff_velocities(d);
        for (std::size_t e = 0; e < f.network.edges().size(); ++e)
            CHECK(f.velocity[e] == doctest::Approx(ref.at(f.network.edges()[e].ref.name())).epsilon(1e-10));
        CHECK(f.max_residual() < 1e-9);
    }
}

TEST_CASE("join node orders inflows left to right across the outflow") {
    const GridDesign d = fixtures::two_into_one(2);
    const DirectedGrid g = orient(d, solve_flow(d));
    const DirectedNode& n = g.nodes[static_cast<std::size_t>(g.network.grid_node(0, 1))];
    CHECK(n.kind == NodeKind::Join);
    // Flowing south, the profile starts at the west wall.
    REQUIRE(n.inflows.size() == 2);
    CHECK(n.inflows[0] == edge(g, "h:0,0"));
    CHECK(n.inflows[1] == edge(g, "h:0,1"));
}

TEST_CASE("split node orders outflows left to right across the inflow") {
    const GridDesign d = fixtures::make(2, 3, {{0, 0}, {0, 1}}, {{0, 0}, {0, 2}}, {{1, 1.0, 1.0}}, {0, 2});
    const DirectedGrid g = orient(d, solve_flow(d));
    const DirectedNode& n = g.nodes[static_cast<std::size_t>(g.network.grid_node(0, 1))];
    CHECK(n.kind == NodeKind::Split);
    REQUIRE(n.outflows.size() == 2);
    CHECK(n.outflows[0] == edge(g, "h:0,0"));
    CHECK(n.outflows[1] == edge(g, "h:0,1"));
    CHECK(g.nodes[static_cast<std::size_t>(g.network.grid_node(0, 0))].kind == NodeKind::Straight);
}

TEST_CASE("join-split node with adjacent inflows") {
    // Inflows from north and west into (0,1); outflows east and south.
    const GridDesign d = fixtures::make(2, 3, {{0, 0}, {0, 1}}, {{0, 1}, {0, 2}}, {{0, 1.0, 1.0}, {1, 0.0, 1.0}}, {1, 2});
    const DirectedGrid g = orient(d, solve_flow(d));
    const DirectedNode& n = g.nodes[static_cast<std::size_t>(g.network.grid_node(0, 1))];
    CHECK(n.kind == NodeKind::JoinSplit);
    REQUIRE(n.inflows.size() == 2);
    REQUIRE(n.outflows.size() == 2);
    // Out block is east+south; clockwise after it: west, then north.
    CHECK(n.inflows[0] == edge(g, "h:0,0"));
    CHECK(n.inflows[1] == edge(g, "in:1"));
    // Counter-clockwise after the in block: south, then east.
    CHECK(n.outflows[0] == edge(g, "v:0,1"));
    CHECK(n.outflows[1] == edge(g, "h:0,1"));
}

TEST_CASE("channels without flow are dropped") {
    // Symmetric H: the crossbar carries no flow.
    const GridDesign d = fixtures::make(2, 3, {{1, 0}, {1, 1}}, {{0, 0}, {0, 2}}, {{0, 1.0, 1.0}, {2, 0.0, 1.0}}, {0, 2});
    const FlowSolution f = solve_flow(d);
    CHECK(std::abs(velocity_of(f, "h:1,0")) < 1e-12);
    const DirectedGrid g = orient(d, f);
    CHECK_FALSE(g.edges[static_cast<std::size_t>(edge(g, "h:1,0"))].active);
    CHECK(g.nodes[static_cast<std::size_t>(g.network.grid_node(1, 1))].kind == NodeKind::Unused);
    CHECK(g.nodes[static_cast<std::size_t>(g.network.grid_node(1, 0))].kind == NodeKind::Straight);
}

TEST_CASE("stage plan respects data dependencies") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const GridDesign d = random_grid(fixtures::paper_params(seed));
        const DirectedGrid g = orient(d, solve_flow(d));
        const StagePlan plan = plan_stages(g);
        std::vector<bool> done(g.edges.size(), false);
        std::vector<bool> started(g.edges.size(), false);
        int covered = 0;
        for (const StagePart& part : plan.parts) {
            if (const auto* run = std::get_if<StraightPart>(&part)) {
                const DirectedNode& tail = g.nodes[static_cast<std::size_t>(g.edges[static_cast<std::size_t>(run->edges.front())].tail)];
                CHECK((tail.kind == NodeKind::Inlet || started[static_cast<std::size_t>(run->edges.front())]));
                CHECK(run->length == doctest::Approx(d.channel_length * static_cast<double>(run->edges.size())));
                for (int e : run->edges) {
                    CHECK_FALSE(done[static_cast<std::size_t>(e)]);
                    done[static_cast<std::size_t>(e)] = true;
                    ++covered;
                }
            } else {
                std::vector<int> ins;
                std::vector<int> outs;
                if (const auto* j = std::get_if<JoinPart>(&part)) ins = j->inflows, outs = {j->outflow};
                if (const auto* s = std::get_if<SplitPart>(&part)) ins = {s->inflow}, outs = s->outflows;
                if (const auto* js = std::get_if<JoinSplitPart>(&part)) ins = js->inflows, outs = js->outflows;
                for (int e : ins) CHECK(done[static_cast<std::size_t>(e)]);
                for (int e : outs) started[static_cast<std::size_t>(e)] = true;
            }
        }
        CHECK(covered == g.active_edge_count());
    }
}
