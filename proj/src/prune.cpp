#include <algorithm>
#include <utility>
#include <vector>

#include "gridmix/design.hpp"
#include "gridmix/network.hpp"

namespace gridmix {

namespace {

struct Frame {
    int node;
    int parent_edge;
    std::size_t next;
};

/// Biconnected-component label of every edge (Tarjan, iterative).
std::vector<int> edge_blocks(int node_count, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(node_count));
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [a, b] = edges[e];
        adj[static_cast<std::size_t>(a)].emplace_back(b, static_cast<int>(e));
        adj[static_cast<std::size_t>(b)].emplace_back(a, static_cast<int>(e));
    }
    std::vector<int> disc(static_cast<std::size_t>(node_count), -1);
    std::vector<int> low(static_cast<std::size_t>(node_count), 0);
    std::vector<int> block(edges.size(), -1);
    std::vector<int> edge_stack;
    std::vector<Frame> frames;
    int timer = 0;
    int blocks = 0;

    for (int root = 0; root < node_count; ++root) {
        if (disc[static_cast<std::size_t>(root)] >= 0) continue;
        disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
        frames.push_back({root, -1, 0});
        while (!frames.empty()) {
            Frame& f = frames.back();
            const auto v = static_cast<std::size_t>(f.node);
            if (f.next < adj[v].size()) {
                auto [w, e] = adj[v][f.next++];
                if (e == f.parent_edge) continue;
                const auto wi = static_cast<std::size_t>(w);
                if (disc[wi] < 0) {
                    edge_stack.push_back(e);
                    disc[wi] = low[wi] = timer++;
                    frames.push_back({w, e, 0});
                } else if (disc[wi] < disc[v]) {
                    edge_stack.push_back(e);
                    low[v] = std::min(low[v], disc[wi]);
                }
                continue;
            }
            const int tree_edge = f.parent_edge;
            const int child = f.node;
            frames.pop_back();
            if (frames.empty()) break;
            const auto u = static_cast<std::size_t>(frames.back().node);
            const auto c = static_cast<std::size_t>(child);
            low[u] = std::min(low[u], low[c]);
            if (low[c] >= disc[u]) {
                while (!edge_stack.empty()) {
                    int e = edge_stack.back();
                    edge_stack.pop_back();
                    block[static_cast<std::size_t>(e)] = blocks;
                    if (e == tree_edge) break;
                }
                ++blocks;
            }
        }
    }
    return block;
}

}  // namespace

bool Liveness::any() const {
    return std::find(inlets.begin(), inlets.end(), true) != inlets.end();
}

// An edge lies on a simple source-sink path exactly when it shares a
// biconnected component with an added source-sink edge. Source and sink are
// super-nodes tied to every inlet and every outlet.
Liveness live_channels(const GridDesign& design) {
    const Network net(design);
    const int n = static_cast<int>(net.nodes().size());
    const int source = n;
    const int sink = n + 1;

    std::vector<std::pair<int, int>> edges;
    edges.reserve(net.edges().size() + static_cast<std::size_t>(net.inlet_count() + net.outlet_count()) + 1);
    for (const auto& e : net.edges()) edges.emplace_back(e.from, e.to);
    for (int k = 0; k < net.inlet_count(); ++k) edges.emplace_back(source, net.inlet_node(k));
    for (int k = 0; k < net.outlet_count(); ++k) edges.emplace_back(net.outlet_node(k), sink);
    const std::size_t bridge = edges.size();
    edges.emplace_back(source, sink);

    const std::vector<int> block = edge_blocks(n + 2, edges);
    const int live_block = block[bridge];

    Liveness live;
    live.horizontal.assign(design.horizontal.size(), false);
    live.vertical.assign(design.vertical.size(), false);
    live.inlets.assign(design.inlets.size(), false);
    live.outlets.assign(design.outlets.size(), false);
    for (std::size_t i = 0; i < net.edges().size(); ++i) {
        if (block[i] != live_block) continue;
        const ChannelRef& ref = net.edges()[i].ref;
        switch (ref.kind) {
            case ChannelKind::InletStub: live.inlets[static_cast<std::size_t>(ref.port)] = true; break;
            case ChannelKind::OutletStub: live.outlets[static_cast<std::size_t>(ref.port)] = true; break;
            case ChannelKind::Horizontal:
                live.horizontal[static_cast<std::size_t>(ref.row * (design.cols - 1) + ref.col)] = true;
                break;
            case ChannelKind::Vertical:
                live.vertical[static_cast<std::size_t>(ref.row * design.cols + ref.col)] = true;
                break;
        }
    }
    return live;
}

GridDesign prune_dead_ends(const GridDesign& design) {
    Liveness live = live_channels(design);
    if (!live.any()) throw NoPathError("no inlet-to-outlet path exists");
    GridDesign pruned = design;
    for (std::size_t i = 0; i < pruned.horizontal.size(); ++i)
        pruned.horizontal[i] = pruned.horizontal[i] && live.horizontal[i];
    for (std::size_t i = 0; i < pruned.vertical.size(); ++i)
        pruned.vertical[i] = pruned.vertical[i] && live.vertical[i];
    return pruned;
}

}  // namespace gridmix
