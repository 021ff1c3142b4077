#pragma once

#include <vector>

#include "gridmix/design.hpp"
#include "gridmix/network.hpp"

namespace gridmix {

/// Nodal form of the flow equations. Each channel obeys dP = v * R with
/// R = 1; substituting that relation into conservation leaves one equation
/// per grid node that carries a channel. Inlet stubs contribute their
/// prescribed velocity to the right-hand side; outlet pressures are 0.
struct FlowSystem {
    std::vector<int> unknown_nodes;  // network node id of each unknown
    std::vector<int> unknown_of;     // per network node: unknown index or -1
    std::vector<std::vector<double>> matrix;  // dense, row-major
    std::vector<double> rhs;
};

FlowSystem assemble_flow_system(const Network& network, const GridDesign& design);

/// Pressures (relative units, R = 1) and signed channel velocities along the
/// reference orientation (rightward, downward).
struct FlowSolution {
    explicit FlowSolution(Network net) : network(std::move(net)) {}

    Network network;
    std::vector<double> pressure;  // per network node; 0 for unused grid nodes
    std::vector<double> velocity;  // per network edge
    double max_inlet_velocity = 0.0;

    /// Net inflow at a grid node (zero when conserved).
    double node_residual(int node) const;
    /// Largest |node_residual| over all grid nodes.
    double max_residual() const;
};

/// Solves conservation + Hagen-Poiseuille for a pruned, valid design by dense
/// Gaussian elimination with partial pivoting. Throws SingularSystemError.
FlowSolution solve_flow(const GridDesign& design);

/// Relative threshold below which a channel counts as carrying no flow.
inline constexpr double kZeroFlowFraction = 1e-9;

enum class NodeKind : std::uint8_t { Unused, Inlet, Outlet, Straight, Join, Split, JoinSplit };

const char* to_string(NodeKind kind);

struct DirectedEdge {
    bool active = false;
    int tail = -1;
    int head = -1;
    double speed = 0.0;                     // |velocity|, mm/s
    Direction heading = Direction::South;   // flow direction, tail to head
};

/// Inflows are ordered left to right as they sit across the outgoing
/// profile (clockwise from the outflow block); outflows left to right across
/// the incoming profile (counter-clockwise from the inflow block).
struct DirectedNode {
    NodeKind kind = NodeKind::Unused;
    std::vector<int> inflows;
    std::vector<int> outflows;
};

/// The flow-oriented grid: a planar DAG whose zero-flow channels are dropped.
struct DirectedGrid {
    explicit DirectedGrid(Network net) : network(std::move(net)) {}

    Network network;
    std::vector<DirectedEdge> edges;  // indexed by network edge id
    std::vector<DirectedNode> nodes;  // indexed by network node id
    std::vector<int> topological_order;  // nodes with at least one active edge
    double channel_length = kDefaultChannelLength;
    double channel_width = kDefaultChannelWidth;
    double flow_threshold = 0.0;

    int active_edge_count() const;
};

/// Orients every channel by the sign of its velocity, removes channels with
/// |v| below kZeroFlowFraction * max inlet velocity and classifies nodes.
/// Throws CycleError or UnclassifiableNodeError.
DirectedGrid orient(const GridDesign& design, const FlowSolution& flow);

}  // namespace gridmix
