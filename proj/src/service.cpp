#include <set>

#include <httplib.h>

#include "gridmix/design_io.hpp"
#include "gridmix/json_output.hpp"
#include "gridmix/service.hpp"

namespace gridmix {

namespace {

HttpReply error_reply(int status, const std::string& message) {
    nlohmann::ordered_json j;
    j["error"] = message;
    return {status, j.dump()};
}

HttpReply invalid_reply(const ValidationReport& report) { return {422, issues_json(report).dump()}; }

HttpReply schema_reply(const std::string& message) {
    ValidationReport report;
    report.issues.push_back({Severity::Error, "design", message});
    return invalid_reply(report);
}

template <class T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    try {
        return it->get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ParseError(std::string("parameter '") + key + "' has the wrong type");
    }
}

}  // namespace

GeneratorParams params_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("generator parameters must be a JSON object");
    static const std::set<std::string> known{"rows",         "cols",    "density",     "inlets",
                                             "outletCount",  "placement", "seed",      "maxAttempts",
                                             "channelWidth", "channelLength", "diffusionCoefficient"};
    for (const auto& item : j.items())
        if (!known.count(item.key())) throw ParseError("unknown parameter '" + item.key() + "'");
    GeneratorParams p;
    p.rows = get_or(j, "rows", p.rows);
    p.cols = get_or(j, "cols", p.cols);
    p.density = get_or(j, "density", p.density);
    p.outlet_count = get_or(j, "outletCount", p.outlet_count);
    p.seed = get_or(j, "seed", p.seed);
    p.max_attempts = get_or(j, "maxAttempts", p.max_attempts);
    p.channel_width = get_or(j, "channelWidth", p.channel_width);
    p.channel_length = get_or(j, "channelLength", p.channel_length);
    p.diffusion = get_or(j, "diffusionCoefficient", p.diffusion);
    const std::string placement = get_or<std::string>(j, "placement", "spread");
    if (placement == "spread") p.placement = Placement::Spread;
    else if (placement == "random") p.placement = Placement::Random;
    else throw ParseError("placement must be \"spread\" or \"random\"");
    if (auto it = j.find("inlets"); it != j.end()) {
        if (!it->is_array()) throw ParseError("parameter 'inlets' must be an array");
        p.inlets.clear();
        for (const auto& in : *it) {
            if (!in.is_object()) throw ParseError("inlet entries must be objects");
            InletSpec s;
            s.concentration = get_or(in, "concentration", s.concentration);
            s.velocity = get_or(in, "velocity", s.velocity);
            p.inlets.push_back(s);
        }
    }
    return p;
}

HttpReply handle_simulate(std::string_view body) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
        return error_reply(400, std::string("malformed JSON: ") + e.what());
    }
    try {
        ReportOptions options{.velocities = true, .profiles = false};
        if (j.is_object()) {
            if (auto it = j.find("includeProfiles"); it != j.end()) {
                if (!it->is_boolean()) return schema_reply("'includeProfiles' must be a boolean");
                options.profiles = it->get<bool>();
                j.erase(it);
            }
        }
        const GridDesign design = design_from_json(j);
        return {200, report_text(run_simulation(design), options)};
    } catch (const InvalidDesign& e) {
        return invalid_reply(e.report());
    } catch (const ParseError& e) {
        return schema_reply(e.what());
    } catch (const std::exception& e) {
        return error_reply(500, e.what());
    }
}

HttpReply handle_generate(std::string_view body) {
    nlohmann::json j = nlohmann::json::object();
    if (body.find_first_not_of(" \t\r\n") != std::string_view::npos) {
        try {
            j = nlohmann::json::parse(body);
        } catch (const nlohmann::json::parse_error& e) {
            return error_reply(400, std::string("malformed JSON: ") + e.what());
        }
    }
    GeneratorParams params;
    try {
        params = params_from_json(j);
        check_params(params);
    } catch (const Error& e) {
        return error_reply(422, e.what());
    }
    try {
        return {200, design_to_json(random_grid(params)).dump()};
    } catch (const GenerationFailure& e) {
        return error_reply(422, e.what());
    } catch (const std::exception& e) {
        return error_reply(500, e.what());
    }
}

HttpReply handle_health() { return {200, R"({"status":"ok"})"}; }

void install_routes(httplib::Server& server) {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
    auto send = [](httplib::Response& res, const HttpReply& r) {
        res.status = r.status;
        res.set_content(r.body, "application/json");
    };
    server.Post("/api/simulate", [send](const httplib::Request& req, httplib::Response& res) {
        send(res, handle_simulate(req.body));
    });
    server.Post("/api/generate", [send](const httplib::Request& req, httplib::Response& res) {
        send(res, handle_generate(req.body));
    });
    server.Get("/api/health", [send](const httplib::Request&, httplib::Response& res) { send(res, handle_health()); });
    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

}  // namespace gridmix
