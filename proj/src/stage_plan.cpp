#include <queue>
#include <tuple>

#include "gridmix/stage_plan.hpp"

namespace gridmix {

namespace {

bool is_event(NodeKind k) {
    return k == NodeKind::Join || k == NodeKind::Split || k == NodeKind::JoinSplit;
}

}  // namespace

StagePlan plan_stages(const DirectedGrid& dg) {
    const Network& net = dg.network;
    const auto node_count = dg.nodes.size();

    std::vector<StagePart> parts;
    std::vector<int> node_part(node_count, -1);
    std::vector<int> anchor;  // node whose position orders the part

    for (std::size_t id = 0; id < node_count; ++id) {
        const DirectedNode& n = dg.nodes[id];
        const int nid = static_cast<int>(id);
        switch (n.kind) {
            case NodeKind::Join: parts.emplace_back(JoinPart{nid, n.inflows, n.outflows.front()}); break;
            case NodeKind::Split: parts.emplace_back(SplitPart{nid, n.inflows.front(), n.outflows}); break;
            case NodeKind::JoinSplit: parts.emplace_back(JoinSplitPart{nid, n.inflows, n.outflows}); break;
            default: continue;
        }
        node_part[id] = static_cast<int>(parts.size()) - 1;
        anchor.push_back(nid);
    }

    // Straight runs start at every outflow of an inlet or event node.
    std::vector<std::vector<int>> successors;
    std::vector<int> indegree;
    std::vector<std::pair<int, int>> run_links;  // (from part, to part)
    for (std::size_t id = 0; id < node_count; ++id) {
        const DirectedNode& n = dg.nodes[id];
        if (n.kind != NodeKind::Inlet && !is_event(n.kind)) continue;
        for (int first : n.outflows) {
            StraightPart run;
            int e = first;
            for (std::size_t guard = 0;; ++guard) {
                if (guard > dg.edges.size()) throw CycleError("straight run does not terminate");
                run.edges.push_back(e);
                const int head = dg.edges[static_cast<std::size_t>(e)].head;
                const DirectedNode& hn = dg.nodes[static_cast<std::size_t>(head)];
                if (hn.kind != NodeKind::Straight) break;
                e = hn.outflows.front();
            }
            run.length = dg.channel_length * static_cast<double>(run.edges.size());
            run.speed = dg.edges[static_cast<std::size_t>(first)].speed;
            parts.emplace_back(std::move(run));
            const int self = static_cast<int>(parts.size()) - 1;
            anchor.push_back(static_cast<int>(id));
            if (node_part[id] >= 0) run_links.emplace_back(node_part[id], self);
            const auto& edges = std::get<StraightPart>(parts.back()).edges;
            const auto end_node = static_cast<std::size_t>(dg.edges[static_cast<std::size_t>(edges.back())].head);
            if (node_part[end_node] >= 0) run_links.emplace_back(self, node_part[end_node]);
        }
    }

    successors.assign(parts.size(), {});
    indegree.assign(parts.size(), 0);
    for (auto [from, to] : run_links) {
        successors[static_cast<std::size_t>(from)].push_back(to);
        ++indegree[static_cast<std::size_t>(to)];
    }

    using Key = std::tuple<int, int, int, int>;  // row, col, kind (nodes first), part id
    auto key_of = [&](int part) {
        const NetworkNode& n = net.node(anchor[static_cast<std::size_t>(part)]);
        const int straight = std::holds_alternative<StraightPart>(parts[static_cast<std::size_t>(part)]) ? 1 : 0;
        return Key{n.row, n.col, straight, part};
    };
    std::priority_queue<Key, std::vector<Key>, std::greater<>> ready;
    for (std::size_t p = 0; p < parts.size(); ++p)
        if (indegree[p] == 0) ready.push(key_of(static_cast<int>(p)));

    StagePlan plan;
    plan.parts.reserve(parts.size());
    while (!ready.empty()) {
        const int p = std::get<3>(ready.top());
        ready.pop();
        plan.parts.push_back(parts[static_cast<std::size_t>(p)]);
        for (int s : successors[static_cast<std::size_t>(p)])
            if (--indegree[static_cast<std::size_t>(s)] == 0) ready.push(key_of(s));
    }
    if (plan.parts.size() != parts.size()) throw CycleError("stage plan has a cycle");
    return plan;
}

}  // namespace gridmix
