#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <queue>

#include "gridmix/flow.hpp"

namespace gridmix {

FlowSystem assemble_flow_system(const Network& net, const GridDesign& design) {
    FlowSystem sys;
    sys.unknown_of.assign(net.nodes().size(), -1);
    for (int id = 0; id < static_cast<int>(net.nodes().size()); ++id) {
        const NetworkNode& n = net.node(id);
        if (n.role != NodeRole::Grid || n.degree() == 0) continue;
        sys.unknown_of[static_cast<std::size_t>(id)] = static_cast<int>(sys.unknown_nodes.size());
        sys.unknown_nodes.push_back(id);
    }
    const std::size_t n = sys.unknown_nodes.size();
    sys.matrix.assign(n, std::vector<double>(n, 0.0));
    sys.rhs.assign(n, 0.0);
    auto idx = [&](int node) { return static_cast<std::size_t>(sys.unknown_of[static_cast<std::size_t>(node)]); };

    for (const NetworkEdge& e : net.edges()) {
        switch (e.ref.kind) {
            case ChannelKind::InletStub:
                sys.rhs[idx(e.to)] += design.inlets[static_cast<std::size_t>(e.ref.port)].velocity;
                break;
            case ChannelKind::OutletStub: sys.matrix[idx(e.from)][idx(e.from)] += 1.0; break;
            case ChannelKind::Horizontal:
            case ChannelKind::Vertical: {
                const auto a = idx(e.from);
                const auto b = idx(e.to);
                sys.matrix[a][a] += 1.0;
                sys.matrix[b][b] += 1.0;
                sys.matrix[a][b] -= 1.0;
                sys.matrix[b][a] -= 1.0;
                break;
            }
        }
    }
    return sys;
}

double FlowSolution::node_residual(int node) const {
    const NetworkNode& n = network.node(node);
    double net_in = 0.0;
    for (Direction d : kDirections) {
        int e = n.links[static_cast<std::size_t>(index_of(d))];
        if (e < 0) continue;
        const double v = velocity[static_cast<std::size_t>(e)];
        net_in += network.edge(e).to == node ? v : -v;
    }
    return net_in;
}

double FlowSolution::max_residual() const {
    double worst = 0.0;
    for (int id = 0; id < static_cast<int>(network.nodes().size()); ++id)
        if (network.node(id).role == NodeRole::Grid)
            worst = std::max(worst, std::abs(node_residual(id)));
    return worst;
}

FlowSolution solve_flow(const GridDesign& design) {
    FlowSolution sol{Network(design)};
    const Network& net = sol.network;
    const FlowSystem sys = assemble_flow_system(net, design);
    const auto n = static_cast<Eigen::Index>(sys.unknown_nodes.size());

    Eigen::MatrixXd a(n, n);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        b(i) = sys.rhs[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < n; ++j)
            a(i, j) = sys.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    Eigen::VectorXd p;
    if (n > 0) {
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
        if (!(lu.rcond() > 1e-13)) throw SingularSystemError("flow system is singular");
        p = lu.solve(b);
        if (!p.allFinite()) throw SingularSystemError("flow system produced non-finite pressures");
    }

    sol.pressure.assign(net.nodes().size(), 0.0);
    for (std::size_t i = 0; i < sys.unknown_nodes.size(); ++i)
        sol.pressure[static_cast<std::size_t>(sys.unknown_nodes[i])] = p(static_cast<Eigen::Index>(i));

    sol.velocity.assign(net.edges().size(), 0.0);
    for (std::size_t i = 0; i < net.edges().size(); ++i) {
        const NetworkEdge& e = net.edges()[i];
        if (e.ref.kind == ChannelKind::InletStub) {
            const double v = design.inlets[static_cast<std::size_t>(e.ref.port)].velocity;
            sol.velocity[i] = v;
            sol.pressure[static_cast<std::size_t>(e.from)] = sol.pressure[static_cast<std::size_t>(e.to)] + v;
            sol.max_inlet_velocity = std::max(sol.max_inlet_velocity, v);
        } else {
            sol.velocity[i] = sol.pressure[static_cast<std::size_t>(e.from)] -
                              sol.pressure[static_cast<std::size_t>(e.to)];
        }
    }
    return sol;
}

const char* to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::Unused: return "unused";
        case NodeKind::Inlet: return "inlet";
        case NodeKind::Outlet: return "outlet";
        case NodeKind::Straight: return "straight";
        case NodeKind::Join: return "join";
        case NodeKind::Split: return "split";
        case NodeKind::JoinSplit: return "join-split";
    }
    return "?";
}

int DirectedGrid::active_edge_count() const {
    return static_cast<int>(std::count_if(edges.begin(), edges.end(),
                                          [](const DirectedEdge& e) { return e.active; }));
}

namespace {

enum class Port : std::uint8_t { None, In, Out };

void classify(const Network& net, int id, const std::array<Port, 4>& ports,
              const std::array<int, 4>& links, DirectedNode& node) {
    auto port_at = [&](int dir) { return ports[static_cast<std::size_t>(((dir % 4) + 4) % 4)]; };
    auto link_at = [&](int dir) { return links[static_cast<std::size_t>(((dir % 4) + 4) % 4)]; };
    int ins = 0;
    int outs = 0;
    for (Port p : ports) {
        ins += p == Port::In ? 1 : 0;
        outs += p == Port::Out ? 1 : 0;
    }
    const NetworkNode& nn = net.node(id);
    if (ins == 0 && outs == 0) {
        node.kind = NodeKind::Unused;
        return;
    }
    if (nn.role == NodeRole::Inlet) {
        if (ins != 0 || outs != 1)
            throw UnclassifiableNodeError(net.node_name(id) + ": inlet without outflow");
        node.kind = NodeKind::Inlet;
    } else if (nn.role == NodeRole::Outlet) {
        if (ins != 1 || outs != 0)
            throw UnclassifiableNodeError(net.node_name(id) + ": outlet without inflow");
        node.kind = NodeKind::Outlet;
    } else if (ins == 0 || outs == 0) {
        throw UnclassifiableNodeError(net.node_name(id) + ": flow is not conserved");
    } else if (ins == 1 && outs == 1) {
        node.kind = NodeKind::Straight;
    } else if (outs == 1) {
        node.kind = NodeKind::Join;
    } else if (ins == 1) {
        node.kind = NodeKind::Split;
    } else {
        node.kind = NodeKind::JoinSplit;
        bool adjacent = false;
        for (int d = 0; d < 4; ++d)
            if (port_at(d) == Port::In && port_at(d + 1) == Port::In) adjacent = true;
        if (!adjacent)
            throw UnclassifiableNodeError(net.node_name(id) +
                                          ": join-split node with opposite inflows");
    }

    // Inflows: clockwise, starting right after the last outflow seen when
    // walking clockwise. Outflows: counter-clockwise after the inflow block.
    if (ins > 0) {
        int start = 0;
        for (int d = 0; d < 4; ++d)
            if (port_at(d) == Port::Out && port_at(d - 1) != Port::Out) start = d;
        for (int k = 1; k <= 3; ++k)
            if (port_at(start - k) == Port::In) node.inflows.push_back(link_at(start - k));
    }
    if (outs > 0) {
        int start = 0;
        for (int d = 0; d < 4; ++d)
            if (port_at(d) == Port::In && port_at(d + 1) != Port::In) start = d;
        if (ins == 0) start = index_of(Direction::North);  // inlet: its stub leaves southward
        for (int k = 1; k <= 3; ++k)
            if (port_at(start + k) == Port::Out) node.outflows.push_back(link_at(start + k));
    }
}

}  // namespace

DirectedGrid orient(const GridDesign& design, const FlowSolution& flow) {
    DirectedGrid dg{flow.network};
    const Network& net = dg.network;
    dg.channel_length = design.channel_length;
    dg.channel_width = design.channel_width;
    dg.flow_threshold = kZeroFlowFraction * flow.max_inlet_velocity;

    dg.edges.resize(net.edges().size());
    for (std::size_t i = 0; i < net.edges().size(); ++i) {
        const NetworkEdge& e = net.edges()[i];
        const double v = flow.velocity[i];
        DirectedEdge& de = dg.edges[i];
        if (!(std::abs(v) >= dg.flow_threshold) || v == 0.0) continue;
        de.active = true;
        de.speed = std::abs(v);
        if (v > 0) {
            de.tail = e.from;
            de.head = e.to;
            de.heading = e.heading;
        } else {
            de.tail = e.to;
            de.head = e.from;
            de.heading = opposite(e.heading);
        }
    }

    dg.nodes.resize(net.nodes().size());
    for (int id = 0; id < static_cast<int>(net.nodes().size()); ++id) {
        const NetworkNode& n = net.node(id);
        std::array<Port, 4> ports{};
        std::array<int, 4> links{-1, -1, -1, -1};
        for (Direction d : kDirections) {
            const auto slot = static_cast<std::size_t>(index_of(d));
            const int e = n.links[slot];
            if (e < 0 || !dg.edges[static_cast<std::size_t>(e)].active) continue;
            links[slot] = e;
            ports[slot] = dg.edges[static_cast<std::size_t>(e)].head == id ? Port::In : Port::Out;
        }
        classify(net, id, ports, links, dg.nodes[static_cast<std::size_t>(id)]);
    }

    // Kahn's algorithm; doubles as the acyclicity check.
    std::vector<int> indegree(net.nodes().size(), 0);
    std::size_t used = 0;
    for (std::size_t id = 0; id < dg.nodes.size(); ++id) {
        if (dg.nodes[id].kind == NodeKind::Unused) continue;
        ++used;
        indegree[id] = static_cast<int>(dg.nodes[id].inflows.size());
    }
    std::queue<int> ready;
    for (std::size_t id = 0; id < dg.nodes.size(); ++id)
        if (dg.nodes[id].kind != NodeKind::Unused && indegree[id] == 0) ready.push(static_cast<int>(id));
    while (!ready.empty()) {
        int id = ready.front();
        ready.pop();
        dg.topological_order.push_back(id);
        for (int e : dg.nodes[static_cast<std::size_t>(id)].outflows) {
            const auto h = static_cast<std::size_t>(dg.edges[static_cast<std::size_t>(e)].head);
            if (--indegree[h] == 0) ready.push(static_cast<int>(h));
        }
    }
    if (dg.topological_order.size() != used) throw CycleError("oriented flow graph has a cycle");
    return dg;
}

}  // namespace gridmix
