#include "gridmix/json_output.hpp"

namespace gridmix {

ordered_json profile_json(const SPProfile& p) {
    ordered_json j;
    j["aL"] = p.left;
    j["aR"] = p.right;
    j["dL"] = p.left_flat;
    j["dR"] = p.right_flat;
    return j;
}

ordered_json report_json(const Simulation& sim, const ReportOptions& options) {
    ordered_json j;
    ordered_json outlets = ordered_json::array();
    for (const OutletResult& o : sim.report.outlets) {
        ordered_json e;
        e["concentration"] = o.concentration;
        e["velocity"] = o.velocity;
        outlets.push_back(std::move(e));
    }
    j["outlets"] = std::move(outlets);
    const Network& net = sim.flow.network;
    if (options.velocities) {
        ordered_json v = ordered_json::object();
        for (std::size_t e = 0; e < net.edges().size(); ++e)
            v[net.edges()[e].ref.name()] = sim.flow.velocity[e];
        j["velocities"] = std::move(v);
    }
    if (options.profiles) {
        ordered_json p = ordered_json::object();
        for (std::size_t e = 0; e < net.edges().size(); ++e)
            if (sim.profiles.present[e]) p[net.edges()[e].ref.name()] = profile_json(sim.profiles.exit[e]);
        j["profiles"] = std::move(p);
    }
    return j;
}

std::string report_text(const Simulation& sim, const ReportOptions& options) {
    return report_json(sim, options).dump();
}

ordered_json flow_dump_json(const Simulation& sim) {
    const Network& net = sim.flow.network;
    const FlowSystem sys = assemble_flow_system(net, sim.design);
    ordered_json j;
    ordered_json unknowns = ordered_json::array();
    for (int id : sys.unknown_nodes) unknowns.push_back(net.node_name(id));
    j["unknowns"] = std::move(unknowns);
    j["matrix"] = sys.matrix;
    j["rhs"] = sys.rhs;
    ordered_json pressure = ordered_json::object();
    for (std::size_t n = 0; n < net.nodes().size(); ++n)
        if (net.nodes()[n].degree() > 0) pressure[net.node_name(static_cast<int>(n))] = sim.flow.pressure[n];
    j["pressure"] = std::move(pressure);
    ordered_json velocity = ordered_json::object();
    for (std::size_t e = 0; e < net.edges().size(); ++e) velocity[net.edges()[e].ref.name()] = sim.flow.velocity[e];
    j["velocity"] = std::move(velocity);
    j["maxResidual"] = sim.flow.max_residual();
    return j;
}

ordered_json dual_dump_json(const DirectedGrid& grid, const DualGraph& dual) {
    const Network& net = grid.network;
    ordered_json faces = ordered_json::array();
    for (int f = 0; f < dual.face_count; ++f) {
        ordered_json face;
        face["id"] = f;
        face["role"] = f == dual.outer ? "outer" : f == dual.source ? "source" : f == dual.sink ? "sink" : "inner";
        ordered_json boundary = ordered_json::array();
        for (int v : dual.boundary(f)) boundary.push_back(vertex_name(net, v));
        face["boundary"] = std::move(boundary);
        faces.push_back(std::move(face));
    }
    ordered_json edges = ordered_json::array();
    for (const DualEdge& e : dual.edges) {
        ordered_json d;
        d["channel"] = net.edge(e.channel).ref.name();
        d["from"] = e.from;
        d["to"] = e.to;
        edges.push_back(std::move(d));
    }
    ordered_json j;
    j["faces"] = std::move(faces);
    j["edges"] = std::move(edges);
    return j;
}

ordered_json issues_json(const ValidationReport& report) {
    ordered_json j;
    j["error"] = report.first_error();
    ordered_json issues = ordered_json::array();
    for (const Issue& i : report.issues) {
        ordered_json e;
        e["severity"] = i.severity == Severity::Error ? "error" : "warning";
        e["location"] = i.location;
        e["message"] = i.message;
        issues.push_back(std::move(e));
    }
    j["issues"] = std::move(issues);
    return j;
}

}  // namespace gridmix
