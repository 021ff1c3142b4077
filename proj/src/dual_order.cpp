#include <algorithm>
#include <array>
#include <queue>

#include "gridmix/dual_order.hpp"

namespace gridmix {

namespace {

enum Corner { TopLeft = 0, TopRight = 1, BottomLeft = 2, BottomRight = 3 };

}  // namespace

int DualGraph::left_face(int channel) const {
    const int e = edge_of_channel[static_cast<std::size_t>(channel)];
    return e < 0 ? -1 : edges[static_cast<std::size_t>(e)].to;
}

int DualGraph::right_face(int channel) const {
    const int e = edge_of_channel[static_cast<std::size_t>(channel)];
    return e < 0 ? -1 : edges[static_cast<std::size_t>(e)].from;
}

std::vector<int> DualGraph::boundary(int face) const {
    std::vector<int> out;
    const int start = face_start[static_cast<std::size_t>(face)];
    int h = start;
    do {
        out.push_back(half_edges[static_cast<std::size_t>(h)].tail);
        h = half_edges[static_cast<std::size_t>(h)].next;
    } while (h != start);
    return out;
}

std::string vertex_name(const Network& net, int vertex) {
    const int n = static_cast<int>(net.nodes().size());
    if (vertex < n) return net.node_name(vertex);
    static const char* const names[] = {"corner:tl", "corner:tr", "corner:bl", "corner:br"};
    return names[vertex - n];
}

DualGraph build_dual(const DirectedGrid& dg) {
    const Network& net = dg.network;
    const int n = static_cast<int>(net.nodes().size());
    DualGraph dual;
    dual.vertex_count = n + 4;
    std::vector<std::array<int, 4>> links(static_cast<std::size_t>(dual.vertex_count),
                                          std::array<int, 4>{-1, -1, -1, -1});
    std::vector<int> forward(dg.edges.size(), -1);

    auto add_pair = [&](int a, int b, Direction heading, int channel) {
        const int id = static_cast<int>(dual.half_edges.size());
        dual.half_edges.push_back({a, b, heading, channel, -1, -1});
        dual.half_edges.push_back({b, a, opposite(heading), channel, -1, -1});
        links[static_cast<std::size_t>(a)][static_cast<std::size_t>(index_of(heading))] = id;
        links[static_cast<std::size_t>(b)][static_cast<std::size_t>(index_of(opposite(heading)))] = id + 1;
        return id;
    };

    for (std::size_t c = 0; c < dg.edges.size(); ++c) {
        const DirectedEdge& e = dg.edges[c];
        if (!e.active) continue;
        forward[c] = add_pair(e.tail, e.head, e.heading, static_cast<int>(c));
    }
    const int tl = n + TopLeft;
    const int tr = n + TopRight;
    const int bl = n + BottomLeft;
    const int br = n + BottomRight;
    int prev = tl;
    for (int k = 0; k < net.inlet_count(); ++k) {
        add_pair(prev, net.inlet_node(k), Direction::East, -1);
        prev = net.inlet_node(k);
    }
    add_pair(prev, tr, Direction::East, -1);
    prev = bl;
    for (int k = 0; k < net.outlet_count(); ++k) {
        add_pair(prev, net.outlet_node(k), Direction::East, -1);
        prev = net.outlet_node(k);
    }
    add_pair(prev, br, Direction::East, -1);
    const int left_side = add_pair(tl, bl, Direction::South, -1);
    const int right_side = add_pair(tr, br, Direction::South, -1);

    // Walk each face keeping it on the left: at every vertex take the first
    // edge clockwise from the one we arrived on.
    for (auto& h : dual.half_edges) {
        const Direction back = opposite(h.heading);
        const auto& out = links[static_cast<std::size_t>(h.head)];
        for (int k = 1; k <= 4; ++k) {
            const int cand = out[static_cast<std::size_t>(index_of(rotate(back, -k)))];
            if (cand >= 0) {
                h.next = cand;
                break;
            }
        }
    }
    for (std::size_t start = 0; start < dual.half_edges.size(); ++start) {
        if (dual.half_edges[start].face >= 0) continue;
        const int face = dual.face_count++;
        dual.face_start.push_back(static_cast<int>(start));
        auto h = static_cast<int>(start);
        while (dual.half_edges[static_cast<std::size_t>(h)].face < 0) {
            dual.half_edges[static_cast<std::size_t>(h)].face = face;
            h = dual.half_edges[static_cast<std::size_t>(h)].next;
        }
        if (h != static_cast<int>(start)) throw InternalError("face traversal did not close");
    }
    dual.outer = dual.half_edges[static_cast<std::size_t>(left_side + 1)].face;
    dual.source = dual.half_edges[static_cast<std::size_t>(left_side)].face;
    dual.sink = dual.half_edges[static_cast<std::size_t>(right_side + 1)].face;

    dual.edge_of_channel.assign(dg.edges.size(), -1);
    std::vector<std::vector<int>> succ(static_cast<std::size_t>(dual.face_count));
    std::vector<int> indegree(static_cast<std::size_t>(dual.face_count), 0);
    for (std::size_t c = 0; c < dg.edges.size(); ++c) {
        if (forward[c] < 0) continue;
        const int to = dual.half_edges[static_cast<std::size_t>(forward[c])].face;
        const int from = dual.half_edges[static_cast<std::size_t>(forward[c] + 1)].face;
        if (to == from || to == dual.outer || from == dual.outer)
            throw InternalError("channel " + net.edge(static_cast<int>(c)).ref.name() +
                                " does not separate two inner faces");
        dual.edge_of_channel[c] = static_cast<int>(dual.edges.size());
        dual.edges.push_back({from, to, static_cast<int>(c)});
        succ[static_cast<std::size_t>(from)].push_back(to);
        ++indegree[static_cast<std::size_t>(to)];
    }

    std::queue<int> ready;
    for (int f = 0; f < dual.face_count; ++f) {
        if (f == dual.outer) continue;
        const bool no_in = indegree[static_cast<std::size_t>(f)] == 0;
        const bool no_out = succ[static_cast<std::size_t>(f)].empty();
        if (no_in && f != dual.source) throw InternalError("dual graph has a second source");
        if (no_out && f != dual.sink) throw InternalError("dual graph has a second sink");
        if (no_in) ready.push(f);
    }
    while (!ready.empty()) {
        const int f = ready.front();
        ready.pop();
        dual.topological_order.push_back(f);
        for (int g : succ[static_cast<std::size_t>(f)])
            if (--indegree[static_cast<std::size_t>(g)] == 0) ready.push(g);
    }
    if (static_cast<int>(dual.topological_order.size()) != dual.face_count - 1)
        throw CycleError("dual graph has a cycle");
    return dual;
}

const char* to_string(Order order) {
    switch (order) {
        case Order::Precedes: return "precedes";
        case Order::Succeeds: return "succeeds";
        case Order::Related: return "related";
    }
    return "?";
}

bool DualOrderQuery::test(const Bits& bits, int i) {
    return (bits[static_cast<std::size_t>(i) / 64] >> (static_cast<unsigned>(i) % 64)) & 1U;
}

DualOrderQuery::DualOrderQuery(const DirectedGrid& dg, const DualGraph& dual)
    : dg_(&dg), dual_(&dual) {
    const std::size_t n = dg.nodes.size();
    const std::size_t words = (n + 63) / 64;
    node_reach_.assign(n, Bits(words, 0));
    for (auto it = dg.topological_order.rbegin(); it != dg.topological_order.rend(); ++it) {
        Bits& r = node_reach_[static_cast<std::size_t>(*it)];
        r[static_cast<std::size_t>(*it) / 64] |= std::uint64_t{1} << (static_cast<unsigned>(*it) % 64);
        for (int e : dg.nodes[static_cast<std::size_t>(*it)].outflows) {
            const Bits& s = node_reach_[static_cast<std::size_t>(dg.edges[static_cast<std::size_t>(e)].head)];
            for (std::size_t w = 0; w < words; ++w) r[w] |= s[w];
        }
    }

    const auto faces = static_cast<std::size_t>(dual.face_count);
    const std::size_t fwords = (faces + 63) / 64;
    std::vector<std::vector<int>> succ(faces);
    for (const DualEdge& e : dual.edges) succ[static_cast<std::size_t>(e.from)].push_back(e.to);
    face_reach_.assign(faces, Bits(fwords, 0));
    for (auto it = dual.topological_order.rbegin(); it != dual.topological_order.rend(); ++it) {
        Bits& r = face_reach_[static_cast<std::size_t>(*it)];
        r[static_cast<std::size_t>(*it) / 64] |= std::uint64_t{1} << (static_cast<unsigned>(*it) % 64);
        for (int g : succ[static_cast<std::size_t>(*it)]) {
            const Bits& s = face_reach_[static_cast<std::size_t>(g)];
            for (std::size_t w = 0; w < fwords; ++w) r[w] |= s[w];
        }
    }
}

bool DualOrderQuery::related(int channel, int other) const {
    if (channel == other) return true;
    const DirectedEdge& a = dg_->edges[static_cast<std::size_t>(channel)];
    const DirectedEdge& b = dg_->edges[static_cast<std::size_t>(other)];
    return test(node_reach_[static_cast<std::size_t>(a.head)], b.tail) ||
           test(node_reach_[static_cast<std::size_t>(b.head)], a.tail);
}

Order DualOrderQuery::compare(int channel, int other) const {
    if (related(channel, other)) return Order::Related;
    const bool forward = test(face_reach_[static_cast<std::size_t>(dual_->left_face(channel))],
                              dual_->right_face(other));
    const bool backward = test(face_reach_[static_cast<std::size_t>(dual_->left_face(other))],
                               dual_->right_face(channel));
    if (forward != backward) return forward ? Order::Precedes : Order::Succeeds;
    const Network& net = dg_->network;
    throw AmbiguousOrderError("dual order undecided between " + net.edge(channel).ref.name() +
                              " and " + net.edge(other).ref.name());
}

std::vector<MonotonicityViolation> check_monotonicity(const DirectedGrid& dg,
                                                      const DualOrderQuery& q,
                                                      const std::vector<std::vector<SPProfile>>& profiles,
                                                      double tol) {
    using Kind = MonotonicityViolation::Kind;
    std::vector<MonotonicityViolation> out;
    std::vector<int> channels;
    std::vector<double> lo;
    std::vector<double> hi;
    for (std::size_t c = 0; c < profiles.size() && c < dg.edges.size(); ++c) {
        if (profiles[c].empty() || !dg.edges[c].active) continue;
        double mn = profiles[c].front().min_value();
        double mx = profiles[c].front().max_value();
        for (const SPProfile& p : profiles[c]) {
            if (p.right > p.left + tol)
                out.push_back({Kind::Increasing, static_cast<int>(c), -1, p.right - p.left});
            mn = std::min(mn, p.min_value());
            mx = std::max(mx, p.max_value());
        }
        channels.push_back(static_cast<int>(c));
        lo.push_back(mn);
        hi.push_back(mx);
    }
    for (std::size_t i = 0; i < channels.size(); ++i) {
        for (std::size_t j = i + 1; j < channels.size(); ++j) {
            const Order o = q.compare(channels[i], channels[j]);
            if (o == Order::Related) continue;
            const std::size_t a = o == Order::Precedes ? i : j;
            const std::size_t b = o == Order::Precedes ? j : i;
            if (lo[a] < hi[b] - tol)
                out.push_back({Kind::Ordering, channels[a], channels[b], hi[b] - lo[a]});
        }
    }
    auto check_ports = [&](const std::vector<int>& ports) {
        for (std::size_t k = 0; k + 1 < ports.size(); ++k)
            if (q.compare(ports[k], ports[k + 1]) != Order::Precedes)
                out.push_back({Kind::PortOrder, ports[k], ports[k + 1], 0.0});
    };
    for (const DirectedNode& node : dg.nodes) {
        check_ports(node.inflows);
        check_ports(node.outflows);
    }
    return out;
}

}  // namespace gridmix
