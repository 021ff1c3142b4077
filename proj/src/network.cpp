#include "gridmix/network.hpp"

#include <charconv>

namespace gridmix {

int NetworkNode::degree() const {
    int n = 0;
    for (int e : links) n += e >= 0 ? 1 : 0;
    return n;
}

std::string ChannelRef::name() const {
    switch (kind) {
        case ChannelKind::InletStub: return "in:" + std::to_string(port);
        case ChannelKind::OutletStub: return "out:" + std::to_string(port);
        case ChannelKind::Horizontal:
            return "h:" + std::to_string(row) + "," + std::to_string(col);
        case ChannelKind::Vertical:
            return "v:" + std::to_string(row) + "," + std::to_string(col);
    }
    return {};
}

namespace {

bool parse_int(std::string_view s, int& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

std::optional<ChannelRef> parse_channel_name(std::string_view name) {
    auto colon = name.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    std::string_view tag = name.substr(0, colon);
    std::string_view rest = name.substr(colon + 1);
    ChannelRef ref;
    if (tag == "in" || tag == "out") {
        ref.kind = tag == "in" ? ChannelKind::InletStub : ChannelKind::OutletStub;
        if (!parse_int(rest, ref.port)) return std::nullopt;
        return ref;
    }
    if (tag != "h" && tag != "v") return std::nullopt;
    ref.kind = tag == "h" ? ChannelKind::Horizontal : ChannelKind::Vertical;
    auto comma = rest.find(',');
    if (comma == std::string_view::npos) return std::nullopt;
    if (!parse_int(rest.substr(0, comma), ref.row) || !parse_int(rest.substr(comma + 1), ref.col))
        return std::nullopt;
    return ref;
}

Network::Network(const GridDesign& design)
    : rows_(design.rows),
      cols_(design.cols),
      inlet_count_(static_cast<int>(design.inlets.size())),
      outlet_count_(static_cast<int>(design.outlets.size())) {
    if (rows_ < 1 || cols_ < 1) throw Error("grid must have positive size");
    for (const Inlet& in : design.inlets)
        if (in.col < 0 || in.col >= cols_) throw Error("inlet column out of range");
    for (int col : design.outlets)
        if (col < 0 || col >= cols_) throw Error("outlet column out of range");
    nodes_.resize(static_cast<std::size_t>(rows_ * cols_ + inlet_count_ + outlet_count_));
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) {
            auto& n = nodes_[static_cast<std::size_t>(grid_node(r, c))];
            n.row = r;
            n.col = c;
        }
    for (int k = 0; k < inlet_count_; ++k) {
        auto& n = nodes_[static_cast<std::size_t>(inlet_node(k))];
        n.role = NodeRole::Inlet;
        n.row = -1;
        n.col = design.inlets[static_cast<std::size_t>(k)].col;
        n.port = k;
    }
    for (int k = 0; k < outlet_count_; ++k) {
        auto& n = nodes_[static_cast<std::size_t>(outlet_node(k))];
        n.role = NodeRole::Outlet;
        n.row = rows_;
        n.col = design.outlets[static_cast<std::size_t>(k)];
        n.port = k;
    }

    auto add = [&](ChannelRef ref, int from, int to, Direction heading) {
        int id = static_cast<int>(edges_.size());
        edges_.push_back({ref, from, to, heading});
        nodes_[static_cast<std::size_t>(from)].links[static_cast<std::size_t>(index_of(heading))] = id;
        nodes_[static_cast<std::size_t>(to)]
            .links[static_cast<std::size_t>(index_of(opposite(heading)))] = id;
    };

    for (int k = 0; k < inlet_count_; ++k) {
        int col = design.inlets[static_cast<std::size_t>(k)].col;
        add({ChannelKind::InletStub, 0, col, k}, inlet_node(k), grid_node(0, col), Direction::South);
    }
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c + 1 < cols_; ++c)
            if (design.has_horizontal(r, c))
                add({ChannelKind::Horizontal, r, c, -1}, grid_node(r, c), grid_node(r, c + 1),
                    Direction::East);
    for (int r = 0; r + 1 < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            if (design.has_vertical(r, c))
                add({ChannelKind::Vertical, r, c, -1}, grid_node(r, c), grid_node(r + 1, c),
                    Direction::South);
    for (int k = 0; k < outlet_count_; ++k) {
        int col = design.outlets[static_cast<std::size_t>(k)];
        add({ChannelKind::OutletStub, rows_ - 1, col, k}, grid_node(rows_ - 1, col), outlet_node(k),
            Direction::South);
    }
}

int Network::find_edge(std::string_view name) const {
    auto ref = parse_channel_name(name);
    if (!ref) return -1;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const ChannelRef& e = edges_[i].ref;
        if (e.kind != ref->kind) continue;
        bool stub = e.kind == ChannelKind::InletStub || e.kind == ChannelKind::OutletStub;
        if (stub ? e.port == ref->port : (e.row == ref->row && e.col == ref->col))
            return static_cast<int>(i);
    }
    return -1;
}

int Network::other_end(int edge, int node) const {
    const auto& e = this->edge(edge);
    return e.from == node ? e.to : e.from;
}

Direction Network::direction_from(int edge, int node) const {
    const auto& e = this->edge(edge);
    return e.from == node ? e.heading : opposite(e.heading);
}

std::string Network::node_name(int id) const {
    const auto& n = node(id);
    switch (n.role) {
        case NodeRole::Inlet: return "inlet:" + std::to_string(n.port);
        case NodeRole::Outlet: return "outlet:" + std::to_string(n.port);
        case NodeRole::Grid: break;
    }
    return "n:" + std::to_string(n.row) + "," + std::to_string(n.col);
}

}  // namespace gridmix
